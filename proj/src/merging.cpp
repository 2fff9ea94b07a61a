#include "bes/merging.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <numeric>
#include <queue>
#include <random>
#include <regex>
#include <set>
#include <sstream>
#include <stdexcept>

namespace bes {

// ---------------------------------------------------------------- rules

namespace {

ClaimBits bits_of(const std::vector<int>& xs) {
    ClaimBits b = 0;
    for (int i : xs) {
        if (i < 1 || i > kMaxClaimIndex) throw std::invalid_argument("merge rule indices must be in [1,16]");
        b |= ClaimBits(1) << i;
    }
    return b;
}

std::vector<int> parse_index_set(const std::string& s) {
    std::vector<int> out;
    std::string t;
    for (char c : s)
        if (c != '{' && c != '}' && c != ' ') t += c;
    std::stringstream ss(t);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos)
            throw std::invalid_argument("bad merge rule index: '" + tok + "'");
        out.push_back(std::stoi(tok));
    }
    return out;
}

std::string set_str(ClaimBits b) {
    std::vector<int> xs;
    for (int i = 1; i <= kMaxClaimIndex; ++i)
        if (b >> i & 1) xs.push_back(i);
    std::string s;
    for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? "," : "") + std::to_string(xs[i]);
    return xs.size() == 1 ? s : "{" + s + "}";
}

int top_index(const MergeRule& r) { return 31 - std::countl_zero(r.A | r.B); }

}  // namespace

MergeRule MergeRule::make(const std::vector<int>& a, const std::vector<int>& b, bool oriented) {
    MergeRule r{bits_of(a), bits_of(b), oriented};
    if (!r.A || !r.B) throw std::invalid_argument("merge rule sides must be nonempty");
    return r;
}

MergeRule MergeRule::parse(const std::string& s0) {
    std::string s = s0;
    bool oriented = false;
    if (!s.empty() && s[0] == 'o') {
        oriented = true;
        s = s.substr(1);
    }
    if (s.size() >= 2 && s.front() == '(' && s.back() == ')') s = s.substr(1, s.size() - 2);
    auto bar = s.find('|');
    if (bar == std::string::npos || s.find('|', bar + 1) != std::string::npos)
        throw std::invalid_argument("merge rule must look like A|B: " + s0);
    return make(parse_index_set(s.substr(0, bar)), parse_index_set(s.substr(bar + 1)), oriented);
}

std::string MergeRule::str() const {
    return std::string(oriented ? "o" : "") + "(" + set_str(A) + "|" + set_str(B) + ")";
}

// ------------------------------------------------------------ partitions

const char* stage_name(Partition::Stage s) {
    switch (s) {
        case Partition::Stage::Trivial: return "trivial";
        case Partition::Stage::M1: return "M1";
        case Partition::Stage::M2: return "M2";
        default: return "other";
    }
}

std::vector<std::uint32_t> Partition::part_of(std::size_t m) const {
    std::vector<std::uint32_t> out(m, UINT32_MAX);
    for (std::size_t i = 0; i < parts.size(); ++i)
        for (auto e : parts[i]) out.at(e) = std::uint32_t(i);
    return out;
}

namespace {

Partition finish(std::vector<EdgeSubset> parts, Partition::Stage st) {
    for (auto& p : parts) std::sort(p.begin(), p.end());
    std::sort(parts.begin(), parts.end());
    Partition P;
    P.stage = st;
    P.parts = std::move(parts);
    for (std::size_t i = 0; i < P.parts.size(); ++i) {
        P.members.push_back({std::uint32_t(i)});
        P.history.emplace_back();
        P.base_sizes.push_back(P.parts[i].size());
    }
    return P;
}

struct Dsu {
    std::vector<std::uint32_t> p;
    explicit Dsu(std::size_t n) : p(n) { std::iota(p.begin(), p.end(), 0u); }
    std::uint32_t find(std::uint32_t x) {
        while (p[x] != x) x = p[x] = p[p[x]];
        return x;
    }
    void unite(std::uint32_t a, std::uint32_t b) {
        a = find(a), b = find(b);
        if (a != b) p[std::max(a, b)] = std::min(a, b);
    }
};

// for each edge of `part`, the later edges of `part` sharing >= 2 vertices,
// with the shared count
template <class Fn>
void for_each_close_pair(const Hypergraph& g, const EdgeSubset& part, Fn fn) {
    std::unordered_map<Vertex, std::vector<std::uint32_t>> inc;
    for (auto e : part)
        for (Vertex v : g.edge(e)) inc[v].push_back(e);
    std::unordered_map<std::uint32_t, int> cnt;
    for (auto e : part) {
        cnt.clear();
        for (Vertex v : g.edge(e))
            for (auto f : inc[v])
                if (f > e) ++cnt[f];
        for (auto [f, c] : cnt)
            if (c >= 2) fn(e, f, c);
    }
}

}  // namespace

Partition trivial_partition(const Hypergraph& g) {
    std::vector<EdgeSubset> parts;
    for (std::uint32_t i = 0; i < g.size(); ++i) parts.push_back({i});
    return finish(std::move(parts), Partition::Stage::Trivial);
}

Partition one_clusters(const Hypergraph& g) {
    EdgeSubset all(g.size());
    std::iota(all.begin(), all.end(), 0u);
    Dsu d(g.size());
    for_each_close_pair(g, all, [&](std::uint32_t e, std::uint32_t f, int) { d.unite(e, f); });
    std::map<std::uint32_t, EdgeSubset> groups;
    for (std::uint32_t i = 0; i < g.size(); ++i) groups[d.find(i)].push_back(i);
    std::vector<EdgeSubset> parts;
    for (auto& [k, v] : groups) parts.push_back(std::move(v));
    return finish(std::move(parts), Partition::Stage::M1);
}

// ----------------------------------------------------------- part claims

ClaimBits PartClaims::bits(Pair p) const {
    ClaimBits b = 1 | all;
    if (!vert.empty()) {
        if (auto it = vert.find(p.u); it != vert.end()) b |= it->second;
        if (auto it = vert.find(p.v); it != vert.end()) b |= it->second;
    }
    if (auto it = pair.find(p.key()); it != pair.end()) b |= it->second;
    return b;
}

namespace {

void add_edge_pairs(const Edge& e, ClaimBits bit, std::unordered_map<std::uint64_t, ClaimBits>& m) {
    for (std::size_t a = 0; a < e.size(); ++a)
        for (std::size_t b = a + 1; b < e.size(); ++b) m[Pair(e[a], e[b]).key()] |= bit;
}

// contribution of two edges meeting in c >= 2 vertices to the 2-claims
void add_two(const Hypergraph& g, std::uint32_t e, std::uint32_t f, int c, PartClaims& pc) {
    const ClaimBits bit = 0b100;
    if (c >= 4) {
        pc.all |= bit;
        return;
    }
    std::vector<Vertex> U(g.edge(e));
    U.insert(U.end(), g.edge(f).begin(), g.edge(f).end());
    std::sort(U.begin(), U.end());
    U.erase(std::unique(U.begin(), U.end()), U.end());
    if (c == 3) {
        for (Vertex v : U) pc.vert[v] |= bit;
    } else {
        add_edge_pairs(U, bit, pc.pair);
    }
}

}  // namespace

PartClaims part_claims(const Hypergraph& g, const EdgeSubset& part, int imax) {
    if (imax < 1 || imax > kMaxClaimIndex) throw std::invalid_argument("i_max must be in [1,16]");
    PartClaims pc;
    if (imax <= 2) {
        for (auto e : part) add_edge_pairs(g.edge(e), 0b10, pc.pair);
        if (imax == 2)
            for_each_close_pair(g, part, [&](std::uint32_t e, std::uint32_t f, int c) { add_two(g, e, f, c, pc); });
        return pc;
    }
    auto cm = ClaimMap::compute(subgraph(g, part), imax);
    for (auto& [k, b] : cm.raw()) pc.pair[k] = b & ~ClaimBits(1);
    return pc;
}

namespace {

std::vector<Vertex> vertices_of(const Hypergraph& g, const EdgeSubset& s) {
    std::vector<Vertex> v;
    for (auto e : s) v.insert(v.end(), g.edge(e).begin(), g.edge(e).end());
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

// least pair with need_x in X's claims and need_y in Y's
std::optional<Pair> least_pair(const PartClaims& X, ClaimBits need_x, const PartClaims& Y, ClaimBits need_y,
                               const std::vector<Vertex>& verts) {
    std::optional<Pair> best;
    auto consider = [&](Pair p) {
        if ((X.bits(p) & need_x) == need_x && (Y.bits(p) & need_y) == need_y && (!best || p < *best)) best = p;
    };
    if (X.tame() || Y.tame()) {
        const auto& src = X.tame() ? X.pair : Y.pair;
        for (auto& [k, b] : src) consider(Pair::from_key(k));
        return best;
    }
    for (std::size_t a = 0; a < verts.size(); ++a)
        for (std::size_t b = a + 1; b < verts.size(); ++b) consider(Pair(verts[a], verts[b]));
    return best;
}

std::optional<Mergeability> check(const PartClaims& F, const PartClaims& H, const MergeRule& rule,
                                  const std::vector<Vertex>& verts) {
    std::optional<Mergeability> out;
    if (auto p = least_pair(F, rule.A, H, rule.B, verts)) out = Mergeability{*p, true};
    if (!rule.oriented)
        if (auto p = least_pair(H, rule.A, F, rule.B, verts); p && (!out || *p < out->via))
            out = Mergeability{*p, false};
    return out;
}

std::vector<Vertex> joint_vertices(const Hypergraph& g, const EdgeSubset& F, const EdgeSubset& H) {
    auto v = vertices_of(g, F);
    auto w = vertices_of(g, H);
    v.insert(v.end(), w.begin(), w.end());
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    // two fresh vertices stand for every pair outside the graph
    v.push_back(Vertex(g.n()));
    v.push_back(Vertex(g.n() + 1));
    return v;
}

}  // namespace

std::optional<Mergeability> mergeable(const Hypergraph& g, const EdgeSubset& F, const EdgeSubset& H,
                                      const MergeRule& rule) {
    int imax = top_index(rule);
    auto PF = part_claims(g, F, imax), PH = part_claims(g, H, imax);
    std::vector<Vertex> verts;
    if (!PF.tame() && !PH.tame()) verts = joint_vertices(g, F, H);
    return check(PF, PH, rule, verts);
}

// ---------------------------------------------------------------- merge

namespace {

struct Cand {
    std::uint64_t prio0, prio1, prio2;
    std::uint32_t i, j;
    Mergeability m;  // i is the first argument
    bool operator>(const Cand& o) const {
        return std::tie(prio0, prio1, prio2) > std::tie(o.prio0, o.prio1, o.prio2);
    }
};

Partition merge_impl(const Hypergraph& g, const Partition& P, const MergeRule& rule, std::mt19937_64* rng) {
    const int imax = top_index(rule);
    const std::size_t n = P.parts.size();
    std::vector<EdgeSubset> edges = P.parts;
    std::vector<PartClaims> pc(n);
    std::vector<char> alive(n, 1);
    std::vector<std::vector<std::uint32_t>> members(n);
    std::vector<std::vector<MergeEvent>> hist(n);
    std::unordered_map<std::uint64_t, std::vector<std::uint32_t>> index;
    std::set<std::uint32_t> wild;
    for (std::size_t i = 0; i < n; ++i) {
        members[i] = P.members.empty() ? std::vector<std::uint32_t>{std::uint32_t(i)} : P.members[i];
        if (!P.history.empty()) hist[i] = P.history[i];
    }
    auto register_part = [&](std::uint32_t i) {
        pc[i] = part_claims(g, edges[i], imax);
        for (auto& [k, b] : pc[i].pair) index[k].push_back(i);
        if (!pc[i].tame()) wild.insert(i);
    };
    for (std::uint32_t i = 0; i < n; ++i) register_part(i);

    std::priority_queue<Cand, std::vector<Cand>, std::greater<Cand>> heap;
    auto push_for = [&](std::uint32_t i) {
        std::set<std::uint32_t> js;
        if (!pc[i].tame()) {
            for (std::uint32_t j = 0; j < n; ++j)
                if (alive[j] && j != i) js.insert(j);
        } else {
            for (auto& [k, b] : pc[i].pair)
                for (auto j : index[k])
                    if (alive[j] && j != i) js.insert(j);
            for (auto j : wild)
                if (alive[j] && j != i) js.insert(j);
        }
        for (auto j : js) {
            std::vector<Vertex> verts;
            if (!pc[i].tame() && !pc[j].tame()) verts = joint_vertices(g, edges[i], edges[j]);
            auto m = check(pc[i], pc[j], rule, verts);
            if (!m) continue;
            std::uint32_t a = std::min(i, j), b = std::max(i, j);
            if (a != i) m->first_claims_a = !m->first_claims_a;
            if (rng)
                heap.push(Cand{(*rng)(), 0, 0, a, b, *m});
            else
                heap.push(Cand{a, b, m->via.key(), a, b, *m});
        }
    };
    for (std::uint32_t i = 0; i < n; ++i) push_for(i);

    while (!heap.empty()) {
        Cand c = heap.top();
        heap.pop();
        if (!alive[c.i] || !alive[c.j]) continue;
        std::uint32_t keep = c.i, gone = c.j;  // c.i < c.j
        alive[gone] = 0;
        wild.erase(gone);
        edges[keep].insert(edges[keep].end(), edges[gone].begin(), edges[gone].end());
        std::sort(edges[keep].begin(), edges[keep].end());
        members[keep].insert(members[keep].end(), members[gone].begin(), members[gone].end());
        hist[keep].insert(hist[keep].end(), hist[gone].begin(), hist[gone].end());
        hist[keep].push_back(MergeEvent{keep, gone, c.m.via, c.m.first_claims_a});
        wild.erase(keep);
        register_part(keep);
        push_for(keep);
    }

    std::vector<std::uint32_t> order;
    for (std::uint32_t i = 0; i < n; ++i)
        if (alive[i]) order.push_back(i);
    std::sort(order.begin(), order.end(), [&](auto a, auto b) { return edges[a] < edges[b]; });
    Partition out;
    out.stage = Partition::Stage::Other;
    if (P.base_sizes.empty())
        for (auto& p : P.parts) out.base_sizes.push_back(p.size());
    else
        out.base_sizes = P.base_sizes;
    for (auto i : order) {
        out.parts.push_back(edges[i]);
        out.members.push_back(members[i]);
        out.history.push_back(hist[i]);
    }
    return out;
}

}  // namespace

Partition merge(const Hypergraph& g, const Partition& p, const MergeRule& rule) {
    return merge_impl(g, p, rule, nullptr);
}

Partition merge_random_order(const Hypergraph& g, const Partition& p, const MergeRule& rule, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    return merge_impl(g, p, rule, &rng);
}

Partition two_clusters(const Hypergraph& g) {
    auto p = merge(g, one_clusters(g), MergeRule::make({1}, {2}));
    p.stage = Partition::Stage::M2;
    return p;
}

// ------------------------------------------------------- trees and flex

std::optional<int> is_m_tree(const Hypergraph& g, const EdgeSubset& F) {
    if (F.empty()) return std::nullopt;
    const int r = g.r();
    std::set<EdgeSubset> failed;
    auto rec = [&](auto&& self, const EdgeSubset& S) -> bool {
        if (S.size() == 1) return true;
        if (failed.count(S)) return false;
        std::unordered_map<Vertex, int> deg;
        for (auto e : S)
            for (Vertex v : g.edge(e)) ++deg[v];
        for (std::size_t k = 0; k < S.size(); ++k) {
            const Edge& e = g.edge(S[k]);
            std::vector<Vertex> shared;
            for (Vertex v : e)
                if (deg[v] > 1) shared.push_back(v);
            if (int(shared.size()) != 2 || int(e.size()) - 2 != r - 2) continue;
            bool covered = false;
            for (auto f : S) {
                if (f == S[k]) continue;
                auto& ef = g.edge(f);
                if (std::binary_search(ef.begin(), ef.end(), shared[0]) &&
                    std::binary_search(ef.begin(), ef.end(), shared[1])) {
                    covered = true;
                    break;
                }
            }
            if (!covered) continue;
            EdgeSubset rest = S;
            rest.erase(rest.begin() + k);
            if (self(self, rest)) return true;
        }
        failed.insert(S);
        return false;
    };
    EdgeSubset S = F;
    std::sort(S.begin(), S.end());
    if (rec(rec, S)) return int(S.size());
    return std::nullopt;
}

FlexReport flexible(const Hypergraph& g, const EdgeSubset& F) {
    FlexReport rep;
    const int r = g.r();
    std::unordered_map<Vertex, int> deg;
    for (auto e : F)
        for (Vertex v : g.edge(e)) ++deg[v];
    EdgeSubset S = F;
    std::sort(S.begin(), S.end());
    for (auto e : S) {
        std::vector<Vertex> priv;
        for (Vertex v : g.edge(e))
            if (deg[v] == 1) priv.push_back(v);
        if (int(priv.size()) < r - 2) continue;
        priv.resize(r - 2);
        rep.flexible_edges.push_back(e);
        rep.flexible_sets.push_back(std::move(priv));
    }
    return rep;
}

// ------------------------------------------------------------- trimming

TrimResult trimming_order(const Hypergraph& g, const EdgeSubset& F0, const EdgeSubset& F, const Partition& P,
                          const MergeRule& rule) {
    std::set<std::uint32_t> fset(F.begin(), F.end()), f0set(F0.begin(), F0.end());
    for (auto e : f0set)
        if (!fset.count(e)) throw std::invalid_argument("F0 must be a subset of F");
    if (F0.empty()) throw std::invalid_argument("F0 must be nonempty");
    std::vector<std::uint32_t> inside;
    std::size_t covered = 0;
    for (std::uint32_t i = 0; i < P.parts.size(); ++i) {
        bool all_in = true, any_in = false;
        for (auto e : P.parts[i]) {
            bool in = fset.count(e) && !f0set.count(e);
            all_in &= in;
            any_in |= in;
        }
        if (all_in && !P.parts[i].empty()) {
            inside.push_back(i);
            covered += P.parts[i].size();
        } else if (any_in) {
            throw std::invalid_argument("F \\ F0 is not a union of parts");
        }
    }
    if (covered != fset.size() - f0set.size()) throw std::invalid_argument("F \\ F0 is not a union of parts");

    TrimResult res;
    const std::size_t s = inside.size();
    std::vector<char> used(s, 0);
    std::set<std::vector<char>> failed;
    std::vector<std::uint32_t> order;
    EdgeSubset best_stuck(F0.begin(), F0.end());
    std::size_t best_depth = 0;
    auto rec = [&](auto&& self, const EdgeSubset& U) -> bool {
        if (order.size() == s) return true;
        if (failed.count(used)) return false;
        if (order.size() >= best_depth) {
            best_depth = order.size();
            best_stuck = U;
        }
        for (std::size_t k = 0; k < s; ++k) {
            if (used[k]) continue;
            const auto& part = P.parts[inside[k]];
            if (!mergeable(g, U, part, rule)) continue;
            EdgeSubset V = U;
            V.insert(V.end(), part.begin(), part.end());
            std::sort(V.begin(), V.end());
            used[k] = 1;
            order.push_back(inside[k]);
            if (self(self, V)) return true;
            order.pop_back();
            used[k] = 0;
        }
        failed.insert(used);
        return false;
    };
    EdgeSubset U0(f0set.begin(), f0set.end());
    res.ok = rec(rec, U0);
    if (res.ok)
        res.order = order;
    else
        res.stuck = best_stuck;
    return res;
}

Composition composition_of(const Partition& merged, std::size_t part) {
    Composition c;
    for (auto b : merged.members.at(part)) c.sizes.push_back(int(merged.base_sizes.at(b)));
    c.sorted_sizes = c.sizes;
    std::sort(c.sorted_sizes.rbegin(), c.sorted_sizes.rend());
    return c;
}

}  // namespace bes
