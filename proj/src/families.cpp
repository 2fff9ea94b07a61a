#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include "bes/weights.hpp"

namespace bes {

std::string FamilyTag::str() const {
    switch (kind) {
        case Kind::A: return "A";
        case Kind::B: return "B";
        case Kind::C1: return "C1";
        case Kind::C2: return "C2";
        case Kind::E: return "E";
        case Kind::F: return "F";
        case Kind::S: return "S" + std::to_string(i);
        case Kind::None: break;
    }
    return "none";
}

FamilyTag FamilyTag::parse(const std::string& s) {
    if (s == "A") return {Kind::A};
    if (s == "B") return {Kind::B};
    if (s == "C1") return {Kind::C1};
    if (s == "C2") return {Kind::C2};
    if (s == "E") return {Kind::E};
    if (s == "F") return {Kind::F};
    if (s == "none") return {};
    if (s.size() >= 2 && s[0] == 'S' && std::all_of(s.begin() + 1, s.end(), ::isdigit) && s.size() < 6)
        return {Kind::S, std::stoi(s.substr(1))};
    throw std::invalid_argument("unknown family tag: " + s);
}

namespace {

struct Builder {
    int r;
    std::mt19937_64 rng;
    Vertex next = 0;
    std::vector<Edge> edges;

    Builder(int r_, std::uint64_t seed) : r(r_), rng(seed) {}

    Vertex fresh() { return next++; }
    void fill(Edge& e) {
        while (int(e.size()) < r) e.push_back(fresh());
    }
    std::size_t add(Edge e) {
        edges.push_back(std::move(e));
        return edges.size() - 1;
    }
    template <class T>
    T pick(const std::vector<T>& v) {
        if (v.empty()) throw std::logic_error("family recipe ran out of choices");
        return v[rng() % v.size()];
    }

    // two edges meeting in a fresh pair; 2-claims ab and nothing of its own
    // contains a or b together. Returns the two edges.
    std::pair<Edge, Edge> diamond(Vertex a, Vertex b) {
        Vertex p = fresh(), q = fresh();
        Edge y1{a, p, q}, y2{b, p, q};
        fill(y1);
        fill(y2);
        add(y1);
        add(y2);
        return {y1, y2};
    }

    // diamond on a pair of e that uses one of the vertices in must
    void diamond_touching(const Edge& e, const std::vector<Vertex>& must, std::set<Pair>& used) {
        std::vector<Pair> opts;
        for (Vertex x : must)
            for (Vertex y : e)
                if (x != y && !used.count(Pair(x, y))) opts.push_back(Pair(x, y));
        Pair p = pick(opts);
        used.insert(p);
        diamond(p.u, p.v);
    }

    struct Path {
        std::vector<Edge> edges;
        std::vector<std::vector<Vertex>> fresh;  // vertices new at each edge
    };

    // m-path. The first edge contains start; when b is given the second
    // edge contains b, so the path 2-claims (start[0], b). Attachment pairs
    // avoid the vertices in avoid.
    Path path(int m, std::vector<Vertex> start, std::optional<Vertex> b, const std::set<Vertex>& avoid) {
        Path P;
        Edge x1 = start;
        std::vector<Vertex> nw;
        fill(x1);
        for (Vertex v : x1)
            if (!avoid.count(v)) nw.push_back(v);
        add(x1);
        P.edges.push_back(x1);
        P.fresh.push_back(nw);
        for (int j = 1; j < m; ++j) {
            const Edge& prev = P.edges.back();
            std::vector<Vertex> cand;
            for (Vertex v : prev)
                if (!avoid.count(v)) cand.push_back(v);
            std::vector<Pair> opts;
            for (std::size_t s = 0; s < cand.size(); ++s)
                for (std::size_t t = s + 1; t < cand.size(); ++t) {
                    const auto& f = P.fresh.back();
                    bool new_one = j == 1 || std::count(f.begin(), f.end(), cand[s]) ||
                                   std::count(f.begin(), f.end(), cand[t]);
                    if (new_one) opts.push_back(Pair(cand[s], cand[t]));
                }
            Pair p = pick(opts);
            Edge e{p.u, p.v};
            std::vector<Vertex> f;
            if (j == 1 && b) {
                e.push_back(*b);
            }
            while (int(e.size()) < r) {
                e.push_back(fresh());
                f.push_back(e.back());
            }
            add(e);
            P.edges.push_back(e);
            P.fresh.push_back(f);
        }
        return P;
    }

    Edge single() {
        Edge x;
        fill(x);
        add(x);
        return x;
    }

    std::vector<Pair> pairs_of(const Edge& e) {
        std::vector<Pair> out;
        for (std::size_t s = 0; s < e.size(); ++s)
            for (std::size_t t = s + 1; t < e.size(); ++t) out.push_back(Pair(e[s], e[t]));
        return out;
    }

    // two distinct pairs of e, randomly ordered endpoints
    std::pair<Pair, Pair> two_pairs(const Edge& e) {
        auto ps = pairs_of(e);
        std::shuffle(ps.begin(), ps.end(), rng);
        return {ps[0], ps[1]};
    }

    std::vector<Vertex> minus(const Edge& e, const Edge& f) {
        std::vector<Vertex> out;
        for (Vertex v : e)
            if (std::find(f.begin(), f.end(), v) == f.end()) out.push_back(v);
        return out;
    }

    Hypergraph finish() {
        std::vector<Vertex> perm(next);
        std::iota(perm.begin(), perm.end(), Vertex(0));
        std::shuffle(perm.begin(), perm.end(), rng);
        std::vector<Edge> es = edges;
        for (auto& e : es) {
            for (auto& v : e) v = perm[v];
            std::sort(e.begin(), e.end());
        }
        std::shuffle(es.begin(), es.end(), rng);
        return Hypergraph(r, next, es);
    }
};

// path on one side: private vertices of its two end edges
std::pair<std::vector<Vertex>, std::vector<Vertex>> ends(Builder& B, const Builder::Path& P) {
    const auto& e = P.edges;
    return {B.minus(e.front(), e[1]), B.minus(e.back(), e[e.size() - 2])};
}

Hypergraph gen_c(Builder& B, bool extra) {
    auto P = B.path(3, {}, std::nullopt, {});
    auto [a1, a3] = ends(B, P);
    std::set<Pair> used;
    Vertex x1 = B.pick(a1), x3 = B.pick(a3);
    B.diamond_touching(P.edges.front(), {x1}, used);
    B.diamond_touching(P.edges.back(), {x3}, used);
    // second diamond on one end uses another private vertex
    auto other = [&](const std::vector<Vertex>& A, Vertex x) {
        std::vector<Vertex> o;
        for (Vertex v : A)
            if (v != x) o.push_back(v);
        return o;
    };
    bool left = B.rng() % 2;
    if (left)
        B.diamond_touching(P.edges.front(), other(a1, x1), used);
    else
        B.diamond_touching(P.edges.back(), other(a3, x3), used);
    if (extra) {
        if (left)
            B.diamond_touching(P.edges.back(), other(a3, x3), used);
        else
            B.diamond_touching(P.edges.front(), other(a1, x1), used);
    }
    return B.finish();
}

}  // namespace

Hypergraph generate_family(const FamilyTag& t, int r, std::uint64_t seed) {
    if (r < 4) throw std::invalid_argument("families need r >= 4");
    if (r > kMaxUniformity) throw std::invalid_argument("uniformity too large");
    Builder B(r, seed * 0x9e3779b97f4a7c15ULL + std::uint64_t(t.kind) * 131 + std::uint64_t(t.i));
    std::set<Pair> used;
    switch (t.kind) {
        case FamilyTag::Kind::A: {
            auto P = B.path(5, {}, std::nullopt, {});
            auto [a1, a5] = ends(B, P);
            B.diamond_touching(P.edges.front(), a1, used);
            B.diamond_touching(P.edges.back(), a5, used);
            return B.finish();
        }
        case FamilyTag::Kind::B: {
            Edge X = B.single();
            auto [p1, p2] = B.two_pairs(X);
            B.diamond(p1.u, p1.v);
            std::set<Vertex> avoid(X.begin(), X.end());
            auto P = B.path(4, {p2.u}, p2.v, avoid);
            B.diamond_touching(P.edges.back(), P.fresh.back(), used);
            return B.finish();
        }
        case FamilyTag::Kind::C1: return gen_c(B, false);
        case FamilyTag::Kind::C2: return gen_c(B, true);
        case FamilyTag::Kind::E: {
            Edge X = B.single();
            auto [p1, p2] = B.two_pairs(X);
            B.diamond(p1.u, p1.v);
            std::set<Vertex> avoid(X.begin(), X.end());
            auto P = B.path(3, {p2.u}, p2.v, avoid);
            // S4 1-claims a pair 2-claimed by T2, T3 and 1-claimed by no edge
            Vertex c = B.pick(P.fresh[2]);
            std::vector<Vertex> ds;
            for (Vertex v : B.minus(P.edges[1], P.edges[2]))
                if (!avoid.count(v)) ds.push_back(v);
            Vertex d = B.pick(ds);
            Edge S4{c, d};
            B.fill(S4);
            B.add(S4);
            B.diamond_touching(S4, {S4.begin() + 2, S4.end()}, used);
            return B.finish();
        }
        case FamilyTag::Kind::F: {
            Edge X = B.single();
            auto [p1, p2] = B.two_pairs(X);
            auto d2 = B.diamond(p1.u, p1.v);
            auto d3 = B.diamond(p2.u, p2.v);
            auto& [y1, y2] = (B.rng() % 2) ? d2 : d3;
            // y1 and y2 each hold r-3 vertices of their own
            Vertex f = B.pick(std::vector<Vertex>(y1.begin() + 3, y1.end()));
            Vertex g = B.pick(std::vector<Vertex>(y2.begin() + 3, y2.end()));
            Vertex p = B.fresh(), q = B.fresh();
            Edge z1{f, g, p, q}, z2{p, q};
            B.fill(z1);
            B.fill(z2);
            B.add(z1);
            B.add(z2);
            B.diamond_touching(z2, {z2.begin() + 2, z2.end()}, used);
            return B.finish();
        }
        case FamilyTag::Kind::S: {
            const int c = int(binom(r, 2));
            if (t.i < 4 || t.i > 3 * c)
                throw std::invalid_argument("S_i needs i in [4, " + std::to_string(3 * c) + "]");
            Edge X = B.single();
            auto ps = B.pairs_of(X);
            std::vector<Pair> slots;
            for (auto& p : ps) slots.insert(slots.end(), 3, p);
            std::shuffle(slots.begin(), slots.end(), B.rng);
            for (int j = 0; j < t.i; ++j) B.diamond(slots[j].u, slots[j].v);
            return B.finish();
        }
        case FamilyTag::Kind::None: break;
    }
    throw std::invalid_argument("no recipe for tag none");
}

Classification classify_cluster(const Hypergraph& g, const Partition& M2, std::size_t part) {
    if (part >= M2.parts.size()) throw std::out_of_range("no such part");
    const auto& F = M2.parts[part];
    if (F.size() < 9) throw std::invalid_argument("cluster has fewer than 9 edges");
    Classification out;
    auto M1 = one_clusters(g);
    const auto& mem = M2.members[part];
    std::vector<const EdgeSubset*> T;
    for (auto m : mem) T.push_back(&M1.parts[m]);
    for (auto* t : T)
        if (is_m_tree(g, *t) != int(t->size())) {
            out.diagnostic = "a 1-cluster is not a tree";
            return out;
        }
    out.probes.push_back("1-clusters are trees");

    std::vector<int> sizes;
    for (auto* t : T) sizes.push_back(int(t->size()));
    std::sort(sizes.rbegin(), sizes.rend());
    auto is = [&](std::vector<int> want) { return sizes == want; };

    // reachability from the single edge through "1-claims a pair the other 2-claims"
    auto reach_from_edge = [&]() {
        std::vector<PartClaims> pc;
        for (auto* t : T) pc.push_back(part_claims(g, *t, 2));
        std::size_t root = T.size();
        for (std::size_t j = 0; j < T.size(); ++j)
            if (T[j]->size() == 1) root = j;
        std::vector<char> seen(T.size(), 0);
        std::vector<std::size_t> stack{root};
        seen[root] = 1;
        while (!stack.empty()) {
            auto j = stack.back();
            stack.pop_back();
            for (auto e : *T[j]) {
                const Edge& ed = g.edge(e);
                for (std::size_t s = 0; s < ed.size(); ++s)
                    for (std::size_t u = s + 1; u < ed.size(); ++u)
                        for (std::size_t l = 0; l < T.size(); ++l)
                            if (!seen[l] && (pc[l].bits(Pair(ed[s], ed[u])) >> 2 & 1)) {
                                seen[l] = 1;
                                stack.push_back(l);
                            }
            }
        }
        return std::size_t(std::count(seen.begin(), seen.end(), 0));
    };

    using K = FamilyTag::Kind;
    if (is({5, 2, 2})) {
        for (auto* t : T)
            if (t->size() == 5 && flexible(g, *t).count() != 2) {
                out.diagnostic = "composition (5,2,2) but the 5-tree does not have two flexible sets";
                return out;
            }
        out.probes.push_back("5-tree with two flexible sets");
        out.tag = {K::A};
    } else if (is({4, 2, 2, 1})) {
        out.tag = {K::B};
    } else if (is({3, 2, 2, 2})) {
        out.tag = {K::C1};
    } else if (is({3, 2, 2, 2, 2})) {
        out.tag = {K::C2};
    } else if (is({3, 2, 2, 1, 1})) {
        out.tag = {K::E};
    } else if (sizes.size() >= 5 && sizes.back() == 1 &&
               std::all_of(sizes.begin(), sizes.end() - 1, [](int s) { return s == 2; })) {
        int i = int(sizes.size()) - 1;
        auto missed = reach_from_edge();
        if (missed == 0) {
            if (i > 3 * int(binom(g.r(), 2))) {
                out.diagnostic = "too many diamonds";
                return out;
            }
            out.probes.push_back("every diamond reachable from the edge");
            out.tag = {K::S, i};
        } else if (i == 4 && missed == 2) {
            out.probes.push_back("two diamonds hang off another diamond");
            out.tag = {K::F};
        } else {
            out.diagnostic = "diamonds not reachable from the edge";
        }
        return out;
    } else {
        out.diagnostic = "composition matches no family";
        return out;
    }
    out.probes.push_back("composition");
    return out;
}

}  // namespace bes
