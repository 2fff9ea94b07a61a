#include "bes/weights.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_map>

#include "bes/freeness.hpp"

namespace bes {

WeightScheme WeightScheme::r5(int r) {
    if (r < 5) throw std::invalid_argument("r5 weights need r >= 5");
    return {Tag::R5, r};
}

WeightScheme WeightScheme::r4() { return {Tag::R4, 4}; }

WeightScheme WeightScheme::for_uniformity(int r) {
    if (r == 4) return r4();
    if (r >= 5) return r5(r);
    throw std::invalid_argument("no weight scheme for r < 4");
}

std::string WeightScheme::str() const { return tag == Tag::R4 ? "r4" : "r5"; }

Rational pair_weight(ClaimBits c, const WeightScheme& s, bool in_shadow) {
    auto has = [&](int i) { return (c >> i & 1) != 0; };
    if (s.tag == WeightScheme::Tag::R5) {
        if (has(1)) return Rational(1);
        if (has(2)) return Rational(1, 3);
        return Rational(0);
    }
    Rational w(0);
    if (has(1)) w = std::max(w, Rational(1));
    if (has(2)) w = std::max(w, Rational(1, 3));
    if (has(2) && has(4)) w = std::max(w, Rational(1, 2));
    if (!in_shadow && has(3) && has(4) && has(5)) w = std::max(w, Rational(1, 2));
    if (!in_shadow && has(3) && has(5) && has(6)) w = std::max(w, Rational(1));
    return w;
}

Rational pair_weight(const Hypergraph& g, const EdgeSubset& F, Pair p, const WeightScheme& s,
                     const std::unordered_set<std::uint64_t>* shadow) {
    if (g.r() != s.r) throw std::invalid_argument("weight scheme does not match uniformity");
    if (s.tag == WeightScheme::Tag::R4 && !shadow) throw std::invalid_argument("r4 weights need the shadow of G");
    auto c = claim_set(subgraph(g, F), p, s.imax()).bits;
    return pair_weight(c, s, shadow && shadow->count(p.key()));
}

std::string WeightViolation::str() const {
    std::ostringstream os;
    switch (kind) {
        case Kind::PairOver: os << "pair weight above 1"; break;
        case Kind::ClusterUnder: os << "cluster weight below C(r,2)|F|"; break;
        case Kind::ClaimConflict: os << "pair 1-claimed by one cluster and 2-claimed by another"; break;
        case Kind::SumsetHit: os << "claim sets of the clusters sum to 8"; break;
        case Kind::CountIdentity: os << "shadow count identity fails"; break;
    }
    if (pair) os << " at " << pair->u << "," << pair->v;
    if (part) os << " in cluster " << *part;
    if (kind == Kind::PairOver || kind == Kind::ClusterUnder)
        os << " (" << value.numerator() << "/" << value.denominator() << ")";
    return os.str();
}

WeightReport verify_bounds(const Hypergraph& G, const Partition& M2, const WeightScheme& s, int threads) {
    if (G.r() != s.r) throw std::invalid_argument("weight scheme does not match uniformity");
    auto fr = is_free(G, ForbiddenFamily::g(G.r(), 8), threads);
    if (!fr.free) throw NotFree("graph is not G_8-free", fr.witness ? fr.witness->indices : std::vector<std::uint32_t>{});

    WeightReport rep;
    rep.scheme = s;
    rep.n = G.support().size();
    std::unordered_set<std::uint64_t> sh;
    for (auto& p : shadow(G)) sh.insert(p.key());
    const Rational per_edge(std::int64_t(binom(G.r(), 2)));

    // pair -> claim bits of every cluster touching it
    std::unordered_map<std::uint64_t, std::vector<std::pair<std::size_t, ClaimBits>>> at;
    std::unordered_map<std::uint64_t, Rational> tot;
    for (std::size_t j = 0; j < M2.parts.size(); ++j) {
        const auto& part = M2.parts[j];
        auto cm = ClaimMap::compute(subgraph(G, part), 8, threads);
        ClusterWeight cw;
        cw.edges = part;
        cw.composition = composition_of(M2, j);
        cw.target = per_edge * std::int64_t(part.size());
        for (auto [key, bits] : cm.raw()) {
            at[key].push_back({j, bits});
            Rational w = pair_weight(bits, s, sh.count(key) > 0);
            if (w != Rational(0)) {
                cw.weight += w;
                tot[key] += w;
            }
        }
        cw.identity_ok = check_pair_count_identity(G, part, cw.composition);
        if (cw.weight < cw.target)
            rep.violations.push_back({WeightViolation::Kind::ClusterUnder, std::nullopt, j, cw.weight});
        if (!cw.identity_ok) rep.violations.push_back({WeightViolation::Kind::CountIdentity, std::nullopt, j, {}});
        rep.per_cluster.push_back(std::move(cw));
    }
    for (auto& [key, w] : tot) {
        Pair p = Pair::from_key(key);
        rep.per_pair[p] = w;
        rep.max_pair = std::max(rep.max_pair, w);
        if (w > Rational(1)) rep.violations.push_back({WeightViolation::Kind::PairOver, p, std::nullopt, w});
    }
    for (auto& [key, list] : at) {
        Pair p = Pair::from_key(key);
        bool one = false, two = false;
        std::vector<ClaimBits> sets;
        for (auto& [j, bits] : list) {
            sets.push_back(bits);
            if (bits >> 1 & 1) one = true;
            if (bits >> 2 & 1) two = true;
        }
        // a single cluster both 1- and 2-claiming is fine; two clusters are not
        if (one && two) {
            for (auto& [j, b1] : list)
                for (auto& [l, b2] : list)
                    if (j != l && (b1 >> 1 & 1) && (b2 >> 2 & 1)) {
                        rep.violations.push_back({WeightViolation::Kind::ClaimConflict, p, j, {}});
                        goto next;
                    }
        }
    next:
        if (sumset_contains_k(sets, 8)) rep.violations.push_back({WeightViolation::Kind::SumsetHit, p, std::nullopt, {}});
    }
    std::sort(rep.violations.begin(), rep.violations.end(), [](const auto& a, const auto& b) {
        return std::tie(a.kind, a.part, a.pair) < std::tie(b.kind, b.part, b.pair);
    });
    if (rep.ok()) rep.edge_bound = Rational(std::int64_t(binom(rep.n, 2)), std::int64_t(binom(G.r(), 2)));
    return rep;
}

WeightReport verify_bounds(const Hypergraph& G, const WeightScheme& s, int threads) {
    if (G.r() != s.r) throw std::invalid_argument("weight scheme does not match uniformity");
    auto fr = is_free(G, ForbiddenFamily::g(G.r(), 8), threads);
    if (!fr.free) throw NotFree("graph is not G_8-free", fr.witness ? fr.witness->indices : std::vector<std::uint32_t>{});
    return verify_bounds(G, two_clusters(G), s, threads);
}

PairCounts pair_counts(const Hypergraph& g, const EdgeSubset& F, const Composition& comp) {
    PairCounts pc;
    auto cm = ClaimMap::compute(subgraph(g, F), 2);
    for (auto [key, bits] : cm.raw()) {
        if (bits >> 1 & 1)
            ++pc.p1;
        else if (bits >> 2 & 1)
            ++pc.p12;
    }
    const std::int64_t c = std::int64_t(binom(g.r(), 2)), d = std::int64_t(g.r() - 2) * (g.r() - 2);
    pc.p12_lower = 1 - std::int64_t(comp.sizes.size());
    for (int e : comp.sizes) {
        pc.p1_expected += e * c - e + 1;
        pc.p12_lower += (e - 1) * d;
    }
    return pc;
}

bool check_pair_count_identity(const Hypergraph& g, const EdgeSubset& F, const Composition& comp) {
    return pair_counts(g, F, comp).ok();
}

GrResult gr_quadratic(int p) {
    if (p < 6 || p % 2) throw std::invalid_argument("p must be even and at least 6");
    GrResult res;
    res.k = p / 2 - 1;
    if (res.k > 8) throw std::invalid_argument("pi(4," + std::to_string(res.k) + ") is not tabulated");
    res.q_quad = std::int64_t(binom(p, 2)) - p / 2 + 2;
    if (res.k % 2 == 0) {
        res.pi = Rational(1, 12);
        res.source = "pi(4,k) = 1/(r^2-r) = 1/12 for even k in [2,8]";
    } else {
        res.pi = Rational(1, 11);
        res.source = "pi(4,k) = 1/(r^2-r-1) = 1/11 for odd k in [3,7]";
    }
    res.limit = Rational(1, 2) - res.pi;
    return res;
}

}  // namespace bes
