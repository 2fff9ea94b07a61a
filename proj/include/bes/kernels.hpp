#pragma once

#include <cstddef>
#include <cstdint>
#include <string>

// Bitset kernels used by the subset searches. Each has a scalar reference and
// an AVX2 variant; the variant is chosen once at startup.
namespace bes::kernels {

struct Table {
    const char* name;
    // number of i with popcount(masks[i] | probe) <= limit
    std::size_t (*count_union_le)(const std::uint64_t* masks, std::size_t n, std::uint64_t probe, int limit);
    // smallest such i, or n if none
    std::size_t (*find_union_le)(const std::uint64_t* masks, std::size_t n, std::uint64_t probe, int limit);
    // popcount(a | b) over `words` words
    std::size_t (*popcount_or)(const std::uint64_t* a, const std::uint64_t* b, std::size_t words);
    // number of i with popcount(masks[i] & probe) >= need
    std::size_t (*count_meet_ge)(const std::uint64_t* masks, std::size_t n, std::uint64_t probe, int need);
};

const Table& scalar();
// null when the binary or the cpu lacks AVX2
const Table* avx2();
// the selected table; BES_KERNELS=scalar forces the reference path
const Table& active();

inline std::size_t count_union_le(const std::uint64_t* m, std::size_t n, std::uint64_t p, int l) {
    return active().count_union_le(m, n, p, l);
}
inline std::size_t find_union_le(const std::uint64_t* m, std::size_t n, std::uint64_t p, int l) {
    return active().find_union_le(m, n, p, l);
}
inline std::size_t popcount_or(const std::uint64_t* a, const std::uint64_t* b, std::size_t w) {
    return active().popcount_or(a, b, w);
}
inline std::size_t count_meet_ge(const std::uint64_t* m, std::size_t n, std::uint64_t p, int need) {
    return active().count_meet_ge(m, n, p, need);
}

}  // namespace bes::kernels
