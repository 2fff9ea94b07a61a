#include <bit>

#include "bes/kernels.hpp"

namespace bes::kernels {
namespace {

std::size_t count_union_le_s(const std::uint64_t* m, std::size_t n, std::uint64_t p, int l) {
    std::size_t c = 0;
    for (std::size_t i = 0; i < n; ++i) c += std::popcount(m[i] | p) <= l;
    return c;
}

std::size_t find_union_le_s(const std::uint64_t* m, std::size_t n, std::uint64_t p, int l) {
    for (std::size_t i = 0; i < n; ++i)
        if (std::popcount(m[i] | p) <= l) return i;
    return n;
}

std::size_t popcount_or_s(const std::uint64_t* a, const std::uint64_t* b, std::size_t w) {
    std::size_t c = 0;
    for (std::size_t i = 0; i < w; ++i) c += std::popcount(a[i] | b[i]);
    return c;
}

std::size_t count_meet_ge_s(const std::uint64_t* m, std::size_t n, std::uint64_t p, int need) {
    std::size_t c = 0;
    for (std::size_t i = 0; i < n; ++i) c += std::popcount(m[i] & p) >= need;
    return c;
}

}  // namespace

const Table& scalar() {
    static const Table t{"scalar", count_union_le_s, find_union_le_s, popcount_or_s, count_meet_ge_s};
    return t;
}

}  // namespace bes::kernels
