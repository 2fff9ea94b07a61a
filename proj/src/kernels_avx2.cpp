#include "bes/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)
#include <immintrin.h>

#include <bit>

#define BES_AVX2 __attribute__((target("avx2,popcnt")))

namespace bes::kernels {
namespace {

BES_AVX2 inline __m256i popcnt64(__m256i v) {
    const __m256i lut = _mm256_setr_epi8(0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4,
                                         0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4);
    const __m256i low = _mm256_set1_epi8(0x0f);
    __m256i lo = _mm256_and_si256(v, low);
    __m256i hi = _mm256_and_si256(_mm256_srli_epi16(v, 4), low);
    __m256i cnt = _mm256_add_epi8(_mm256_shuffle_epi8(lut, lo), _mm256_shuffle_epi8(lut, hi));
    return _mm256_sad_epu8(cnt, _mm256_setzero_si256());
}

// bit i set when lane i has popcount(m | p) <= l
BES_AVX2 inline int le_lanes(const std::uint64_t* m, __m256i p, __m256i l) {
    __m256i v = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(m));
    __m256i c = popcnt64(_mm256_or_si256(v, p));
    __m256i gt = _mm256_cmpgt_epi64(c, l);
    return ~_mm256_movemask_pd(_mm256_castsi256_pd(gt)) & 0xf;
}

BES_AVX2 std::size_t count_union_le_v(const std::uint64_t* m, std::size_t n, std::uint64_t p, int l) {
    __m256i pv = _mm256_set1_epi64x(static_cast<long long>(p));
    __m256i lv = _mm256_set1_epi64x(l);
    std::size_t c = 0, i = 0;
    for (; i + 4 <= n; i += 4) c += std::popcount(unsigned(le_lanes(m + i, pv, lv)));
    for (; i < n; ++i) c += std::popcount(m[i] | p) <= l;
    return c;
}

BES_AVX2 std::size_t find_union_le_v(const std::uint64_t* m, std::size_t n, std::uint64_t p, int l) {
    __m256i pv = _mm256_set1_epi64x(static_cast<long long>(p));
    __m256i lv = _mm256_set1_epi64x(l);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        if (int b = le_lanes(m + i, pv, lv)) return i + std::countr_zero(unsigned(b));
    for (; i < n; ++i)
        if (std::popcount(m[i] | p) <= l) return i;
    return n;
}

BES_AVX2 std::size_t popcount_or_v(const std::uint64_t* a, const std::uint64_t* b, std::size_t w) {
    __m256i acc = _mm256_setzero_si256();
    std::size_t i = 0;
    for (; i + 4 <= w; i += 4) {
        __m256i x = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
        __m256i y = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
        acc = _mm256_add_epi64(acc, popcnt64(_mm256_or_si256(x, y)));
    }
    alignas(32) std::uint64_t lanes[4];
    _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), acc);
    std::size_t c = lanes[0] + lanes[1] + lanes[2] + lanes[3];
    for (; i < w; ++i) c += std::popcount(a[i] | b[i]);
    return c;
}

BES_AVX2 std::size_t count_meet_ge_v(const std::uint64_t* m, std::size_t n, std::uint64_t p, int need) {
    __m256i pv = _mm256_set1_epi64x(static_cast<long long>(p));
    __m256i nv = _mm256_set1_epi64x(need - 1);
    std::size_t c = 0, i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256i v = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(m + i));
        __m256i gt = _mm256_cmpgt_epi64(popcnt64(_mm256_and_si256(v, pv)), nv);
        c += std::popcount(unsigned(_mm256_movemask_pd(_mm256_castsi256_pd(gt))));
    }
    for (; i < n; ++i) c += std::popcount(m[i] & p) >= need;
    return c;
}

}  // namespace

const Table* avx2() {
    static const bool ok = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("popcnt");
    static const Table t{"avx2", count_union_le_v, find_union_le_v, popcount_or_v, count_meet_ge_v};
    return ok ? &t : nullptr;
}

}  // namespace bes::kernels

#else

namespace bes::kernels {
const Table* avx2() { return nullptr; }
}  // namespace bes::kernels

#endif
