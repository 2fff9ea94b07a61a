#include "bes/claims.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

#include "bes/excess.hpp"
#include "bes/grow.hpp"

namespace bes {

std::vector<int> ClaimSet::members() const {
    std::vector<int> m;
    for (int i = 0; i <= kMaxClaimIndex; ++i)
        if (bits >> i & 1) m.push_back(i);
    return m;
}

namespace {

ClaimBits to_bits(const std::vector<int>& xs) {
    ClaimBits b = 0;
    for (int i : xs) {
        if (i < 0 || i > kMaxClaimIndex) throw std::invalid_argument("claim index out of range");
        b |= ClaimBits(1) << i;
    }
    return b;
}

void check_imax(int imax) {
    if (imax < 1 || imax > kMaxClaimIndex) throw std::invalid_argument("i_max must be in [1,16]");
}

constexpr std::size_t kExhaustiveLimit = 64;

// vertex masks over the compacted support
struct Compact {
    std::vector<Vertex> support;
    std::vector<std::uint64_t> masks;
    explicit Compact(const Hypergraph& g) : support(g.support()) {
        if (support.size() > kExhaustiveLimit || g.size() > kExhaustiveLimit)
            throw std::runtime_error(
                "graph is not locally sparse and exceeds the exhaustive claim enumeration limit (64 vertices/edges)");
        for (auto& e : g.edges()) {
            std::uint64_t m = 0;
            for (Vertex v : e) m |= 1ull << index(v);
            masks.push_back(m);
        }
    }
    int index(Vertex v) const {
        auto it = std::lower_bound(support.begin(), support.end(), v);
        if (it == support.end() || *it != v) return -1;
        return int(it - support.begin());
    }
};

}  // namespace

ClaimBits ClaimQuery::claimed_bits() const { return to_bits(claimed); }
ClaimBits ClaimQuery::forbidden_bits() const { return to_bits(forbidden); }

bool locally_sparse(const Hypergraph& g, int imax) {
    ExcessScanOptions opt;
    opt.max_tight = imax;
    opt.collect_tight = false;
    return !excess_scan(g, opt).violation.has_value();
}

ClaimMap ClaimMap::compute(const Hypergraph& g, int imax, int threads) {
    check_imax(imax);
    ClaimMap cm;
    cm.imax_ = imax;
    cm.support_ = g.support();
    ExcessScanOptions opt;
    opt.max_tight = imax;
    opt.threads = threads;
    auto scan = excess_scan(g, opt);
    if (!scan.violation) {
        cm.method_ = Method::Tight;
        std::vector<Vertex> vs;
        for (auto& T : scan.tight) {
            vs.clear();
            for (auto e : T) vs.insert(vs.end(), g.edge(e).begin(), g.edge(e).end());
            std::sort(vs.begin(), vs.end());
            vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
            ClaimBits bit = ClaimBits(1) << T.size();
            for (std::size_t a = 0; a < vs.size(); ++a)
                for (std::size_t b = a + 1; b < vs.size(); ++b) {
                    auto& slot = cm.bits_[Pair(vs[a], vs[b]).key()];
                    slot |= bit | 1;
                }
        }
        return cm;
    }
    cm.method_ = Method::Exhaustive;
    Compact c(g);
    const int r = g.r();
    const std::size_t S = c.support.size();
    ClaimBits all = 0;
    std::vector<ClaimBits> vb(S, 0);
    std::vector<ClaimBits> pb(S * S, 0);
    const int cap = (r - 2) * imax + 2;
    auto rec = [&](auto&& self, std::size_t from, int size, std::uint64_t mask) -> void {
        for (std::size_t j = from; j < c.masks.size(); ++j) {
            std::uint64_t m = mask | c.masks[j];
            int s = std::popcount(m);
            if (s > cap) continue;
            int i = size + 1;
            int b = (r - 2) * i + 2;
            ClaimBits bit = ClaimBits(1) << i;
            if (s <= b - 2) {
                all |= bit;
            } else if (s == b - 1) {
                for (std::uint64_t t = m; t; t &= t - 1) vb[std::countr_zero(t)] |= bit;
            } else if (s == b) {
                for (std::uint64_t t = m; t; t &= t - 1) {
                    int x = std::countr_zero(t);
                    for (std::uint64_t u = t & (t - 1); u; u &= u - 1) pb[x * S + std::countr_zero(u)] |= bit;
                }
            }
            if (i < imax) self(self, j + 1, i, m);
        }
    };
    rec(rec, 0, 0, 0);
    for (std::size_t x = 0; x < S; ++x)
        for (std::size_t y = x + 1; y < S; ++y) {
            ClaimBits b = 1 | all | vb[x] | vb[y] | pb[x * S + y];
            if (b != 1) cm.bits_[Pair(c.support[x], c.support[y]).key()] = b;
        }
    return cm;
}

std::vector<Pair> ClaimMap::matching(const ClaimQuery& q) const {
    ClaimBits need = q.claimed_bits(), bad = q.forbidden_bits();
    std::vector<Pair> out;
    if (bad & 1) return out;
    if (need & ~ClaimBits(1)) {
        for (auto& [k, b] : bits_)
            if ((b & need) == need && !(b & bad)) out.push_back(Pair::from_key(k));
    } else {
        for (std::size_t a = 0; a < support_.size(); ++a)
            for (std::size_t c = a + 1; c < support_.size(); ++c) {
                Pair p(support_[a], support_[c]);
                ClaimBits b = get(p);
                if (!(b & bad)) out.push_back(p);
            }
    }
    std::sort(out.begin(), out.end());
    return out;
}

ClaimSet claim_set_exhaustive(const Hypergraph& g, Pair p, int imax) {
    check_imax(imax);
    ClaimSet cs{p, 1};
    if (g.empty()) return cs;
    Compact c(g);
    const int r = g.r();
    int ix = c.index(p.u), iy = c.index(p.v);
    int outside = (ix < 0) + (iy < 0);
    std::uint64_t pm = (ix >= 0 ? 1ull << ix : 0) | (iy >= 0 ? 1ull << iy : 0);
    const int cap = (r - 2) * imax + 2;
    auto rec = [&](auto&& self, std::size_t from, int size, std::uint64_t mask) -> void {
        for (std::size_t j = from; j < c.masks.size(); ++j) {
            std::uint64_t m = mask | c.masks[j];
            int s = std::popcount(m) + outside;
            if (s > cap) continue;
            int i = size + 1;
            if (s <= (r - 2) * i + 2) cs.bits |= ClaimBits(1) << i;
            if (i < imax) self(self, j + 1, i, m);
        }
    };
    rec(rec, 0, 0, pm);
    return cs;
}

ClaimSet claim_set_seeded(const Hypergraph& g, Pair p, int imax) {
    check_imax(imax);
    ClaimSet cs{p, 1};
    const int r = g.r();
    std::vector<std::uint32_t> seeds;
    for (std::uint32_t i = 0; i < g.size(); ++i) {
        auto& e = g.edge(i);
        if (std::binary_search(e.begin(), e.end(), p.u) || std::binary_search(e.begin(), e.end(), p.v))
            seeds.push_back(i);
    }
    if (seeds.empty()) return cs;
    GrowSpec spec;
    spec.max_size = imax;
    spec.hit_span.assign(imax + 1, -1);
    for (int l = 1; l <= imax; ++l) spec.hit_span[l] = (r - 2) * l + 2;
    spec.span_cap = (r - 2) * imax + 2;
    spec.stop_at_hit = false;
    Grower grower(g);
    grower.run(spec, seeds, [&](const std::vector<std::uint32_t>& s, int sp) {
        bool hu = false, hv = false;
        for (auto e : s) {
            auto& ed = g.edge(e);
            hu |= std::binary_search(ed.begin(), ed.end(), p.u);
            hv |= std::binary_search(ed.begin(), ed.end(), p.v);
        }
        int total = sp + !hu + !hv;
        int i = int(s.size());
        if (total <= (r - 2) * i + 2) cs.bits |= ClaimBits(1) << i;
        return Visit::Continue;
    });
    return cs;
}

ClaimSet claim_set(const Hypergraph& g, Pair p, int imax) {
    check_imax(imax);
    auto cm = ClaimMap::compute(g, imax);
    if (cm.method() == ClaimMap::Method::Exhaustive) return claim_set_exhaustive(g, p, imax);
    return ClaimSet{p, cm.get(p)};
}

std::set<Pair> claimed_pairs(const Hypergraph& g, const ClaimQuery& q, int imax) {
    auto v = ClaimMap::compute(g, imax).matching(q);
    return std::set<Pair>(v.begin(), v.end());
}

std::set<Pair> pairs_leq_t(const Hypergraph& g, int t) {
    if (t < 1) throw std::invalid_argument("t must be >= 1");
    auto cm = ClaimMap::compute(g, t);
    std::set<Pair> out;
    ClaimBits mask = ((ClaimBits(1) << (t + 1)) - 1) & ~ClaimBits(1);
    for (auto& [k, b] : cm.raw())
        if (b & mask) out.insert(Pair::from_key(k));
    return out;
}

bool sumset_contains_k(const std::vector<ClaimBits>& sets, int k) {
    if (k < 0) return false;
    std::vector<bool> reach(k + 1, false), next;
    reach[0] = true;
    for (ClaimBits b : sets) {
        next.assign(k + 1, false);
        for (int s = 0; s <= k; ++s) {
            if (!reach[s]) continue;
            for (int i = 0; i <= kMaxClaimIndex && s + i <= k; ++i)
                if (b >> i & 1) next[s + i] = true;
        }
        reach.swap(next);
    }
    return reach[k];
}

bool sumset_contains_k(const std::vector<ClaimSet>& sets, int k) {
    std::vector<ClaimBits> b;
    for (auto& s : sets) b.push_back(s.bits);
    return sumset_contains_k(b, k);
}

}  // namespace bes
