#include "bes/freeness.hpp"

#include <algorithm>
#include <bit>
#include <regex>
#include <stdexcept>

#include "bes/excess.hpp"
#include "bes/kernels.hpp"

namespace bes {

ForbiddenFamily ForbiddenFamily::g(int r, int k) {
    if (k < 2) throw std::invalid_argument("k must be >= 2");
    ForbiddenFamily f{r, k, {}, true};
    for (int l = 2; l < k; ++l) f.checks.emplace_back((r - 2) * l + 1, l);
    f.checks.emplace_back((r - 2) * k + 2, k);
    return f;
}

ForbiddenFamily ForbiddenFamily::single(int r, int s, int k) {
    if (k < 1) throw std::invalid_argument("k must be >= 1");
    return ForbiddenFamily{r, k, {{s, k}}, false};
}

ForbiddenFamily ForbiddenFamily::k_config(int r, int k) { return single(r, (r - 2) * k + 2, k); }
ForbiddenFamily ForbiddenFamily::k_minus(int r, int k) { return single(r, (r - 2) * k + 1, k); }

ForbiddenFamily ForbiddenFamily::parse(int r, const std::string& tag) {
    std::smatch m;
    if (std::regex_match(tag, m, std::regex(R"(g(\d+))"))) return g(r, std::stoi(m[1]));
    if (std::regex_match(tag, m, std::regex(R"(k(\d+)-)"))) return k_minus(r, std::stoi(m[1]));
    if (std::regex_match(tag, m, std::regex(R"(k(\d+))"))) return k_config(r, std::stoi(m[1]));
    if (std::regex_match(tag, m, std::regex(R"(s(\d+)k(\d+))")))
        return single(r, std::stoi(m[1]), std::stoi(m[2]));
    throw std::invalid_argument("unknown family tag: " + tag);
}

namespace {

// support fits in one word: vertex masks, last level through the kernel
std::optional<std::vector<std::uint32_t>> search_masks(const Hypergraph& g, int s, int k) {
    auto sup = g.support();
    std::vector<std::uint64_t> masks;
    masks.reserve(g.size());
    for (auto& e : g.edges()) {
        std::uint64_t m = 0;
        for (Vertex v : e) m |= 1ull << (std::lower_bound(sup.begin(), sup.end(), v) - sup.begin());
        masks.push_back(m);
    }
    const std::size_t n = masks.size();
    std::vector<std::uint32_t> pick;
    auto rec = [&](auto&& self, std::size_t from, std::uint64_t u) -> bool {
        int depth = int(pick.size());
        if (depth == k - 1) {
            std::size_t j = kernels::find_union_le(masks.data() + from, n - from, u, s);
            if (j == n - from) return false;
            pick.push_back(std::uint32_t(from + j));
            return true;
        }
        for (std::size_t j = from; j + (k - depth) <= n; ++j) {
            std::uint64_t w = u | masks[j];
            if (std::popcount(w) > s) continue;
            pick.push_back(std::uint32_t(j));
            if (self(self, j + 1, w)) return true;
            pick.pop_back();
        }
        return false;
    };
    if (rec(rec, 0, 0)) return pick;
    return std::nullopt;
}

// general case: vertex multiplicity counters
std::optional<std::vector<std::uint32_t>> search_counts(const Hypergraph& g, int s, int k) {
    const std::size_t n = g.size();
    std::vector<std::uint32_t> cnt(g.n(), 0);
    std::vector<std::uint32_t> pick;
    int span = 0;
    auto rec = [&](auto&& self, std::size_t from) -> bool {
        int depth = int(pick.size());
        for (std::size_t j = from; j + (k - depth) <= n; ++j) {
            auto& e = g.edge(j);
            int add = 0;
            for (Vertex v : e) add += cnt[v] == 0;
            if (span + add > s) continue;
            pick.push_back(std::uint32_t(j));
            if (depth + 1 == k) return true;
            for (Vertex v : e) ++cnt[v];
            span += add;
            bool ok = self(self, j + 1);
            span -= add;
            for (Vertex v : e) --cnt[v];
            if (ok) return true;
            pick.pop_back();
        }
        return false;
    };
    if (rec(rec, 0)) return pick;
    return std::nullopt;
}

}  // namespace

std::optional<ConfigWitness> find_configuration(const Hypergraph& g, int s, int k) {
    if (k < 1) throw std::invalid_argument("k must be >= 1");
    if (g.size() < std::size_t(k)) return std::nullopt;
    auto w = g.support().size() <= 64 ? search_masks(g, s, k) : search_counts(g, s, k);
    if (!w) return std::nullopt;
    return ConfigWitness{*w, int(span(g, *w)), k, s};
}

std::optional<ConfigWitness> connected_violation_scan(const Hypergraph& g, int k_max, int threads) {
    if (k_max < 2 || k_max > 16) throw std::invalid_argument("k_max must be in [2,16]");
    ExcessScanOptions opt;
    opt.max_tight = k_max - 1;
    opt.top = k_max;
    opt.collect_tight = false;
    opt.threads = threads;
    auto sc = excess_scan(g, opt);
    if (!sc.violation) return std::nullopt;
    int j = int(sc.violation->size());
    int bound = (g.r() - 2) * j + (j == k_max ? 2 : 1);
    return ConfigWitness{*sc.violation, sc.violation_span, j, bound};
}

FreeResult is_free(const Hypergraph& g, const ForbiddenFamily& fam, int threads) {
    if (fam.r != g.r()) throw std::invalid_argument("family uniformity differs from the graph");
    FreeResult res;
    if (fam.g_family && g.size() > kExactEdgeCap) {
        res.method = "connectivity reduction";
        res.witness = connected_violation_scan(g, fam.k, threads);
        res.free = !res.witness;
        return res;
    }
    res.method = "exhaustive";
    for (auto [s, l] : fam.checks) {
        if (auto w = find_configuration(g, s, l)) {
            res.free = false;
            res.witness = std::move(w);
            return res;
        }
    }
    return res;
}

}  // namespace bes
