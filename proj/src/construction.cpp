#include "bes/construction.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <chrono>
#include <cmath>
#include <map>
#include <random>
#include <set>
#include <stdexcept>

#include "bes/claims.hpp"
#include "bes/excess.hpp"
#include "bes/freeness.hpp"
#include "bes/grow.hpp"

namespace bes {

// ------------------------------------------------------------------ GF(q)

std::optional<std::pair<int, int>> prime_power(int q) {
    if (q < 2) return std::nullopt;
    int p = 2;
    while (p * p <= q && q % p) ++p;
    if (q % p) p = q;
    int k = 0, t = q;
    while (t % p == 0) {
        t /= p;
        ++k;
    }
    if (t != 1) return std::nullopt;
    return std::pair{p, k};
}

namespace {

// polynomial helpers over GF(p), coefficient vectors low degree first
std::vector<int> digits(int a, int p, int k) {
    std::vector<int> d(k);
    for (int i = 0; i < k; ++i, a /= p) d[i] = a % p;
    return d;
}

int undigits(const std::vector<int>& d, int p) {
    int a = 0;
    for (int i = int(d.size()) - 1; i >= 0; --i) a = a * p + d[i];
    return a;
}

// monic polynomial x^k + c(x) with c given by its base-p code
bool irreducible(int p, int k, int code) {
    // no roots is enough for k <= 3; otherwise trial division by monic
    // polynomials of degree <= k/2
    auto poly = digits(code, p, k);
    poly.push_back(1);
    auto mod_zero = [&](const std::vector<int>& div) {
        std::vector<int> r = poly;
        int dd = int(div.size()) - 1;
        for (int i = int(r.size()) - 1; i >= dd; --i) {
            int c = r[i];
            if (!c) continue;
            for (int j = 0; j <= dd; ++j) r[i - dd + j] = ((r[i - dd + j] - c * div[j]) % p + p) % p;
        }
        for (int i = 0; i < dd; ++i)
            if (r[i]) return false;
        return true;
    };
    for (int d = 1; d <= k / 2; ++d) {
        int count = 1;
        for (int i = 0; i < d; ++i) count *= p;
        for (int c = 0; c < count; ++c) {
            auto div = digits(c, p, d);
            div.push_back(1);
            if (mod_zero(div)) return false;
        }
    }
    return true;
}

}  // namespace

GaloisField::GaloisField(int q) : q_(q) {
    auto pp = prime_power(q);
    if (!pp || q > 1024) throw std::invalid_argument("q must be a prime power <= 1024");
    p_ = pp->first;
    k_ = pp->second;
    int code = 0;
    if (k_ > 1) {
        while (!irreducible(p_, k_, code)) ++code;
    }
    auto modpoly = digits(code, p_, k_);
    add_.resize(q * q);
    mul_.resize(q * q);
    neg_.resize(q);
    inv_.assign(q, 0);
    for (int a = 0; a < q; ++a) {
        auto da = digits(a, p_, k_);
        std::vector<int> dn(k_);
        for (int i = 0; i < k_; ++i) dn[i] = (p_ - da[i]) % p_;
        neg_[a] = std::uint16_t(undigits(dn, p_));
        for (int b = 0; b < q; ++b) {
            auto db = digits(b, p_, k_);
            std::vector<int> s(k_);
            for (int i = 0; i < k_; ++i) s[i] = (da[i] + db[i]) % p_;
            add_[a * q + b] = std::uint16_t(undigits(s, p_));
            std::vector<int> prod(2 * k_, 0);
            for (int i = 0; i < k_; ++i)
                for (int j = 0; j < k_; ++j) prod[i + j] = (prod[i + j] + da[i] * db[j]) % p_;
            // reduce with x^k = -c(x)
            for (int i = 2 * k_ - 1; i >= k_; --i) {
                int c = prod[i];
                if (!c) continue;
                prod[i] = 0;
                for (int j = 0; j < k_; ++j) prod[i - k_ + j] = ((prod[i - k_ + j] - c * modpoly[j]) % p_ + p_) % p_;
            }
            prod.resize(k_);
            mul_[a * q + b] = std::uint16_t(undigits(prod, p_));
        }
    }
    for (int a = 1; a < q; ++a)
        for (int b = 1; b < q; ++b)
            if (mul_[a * q + b] == 1) {
                inv_[a] = std::uint16_t(b);
                break;
            }
    for (int a = 1; a < q; ++a)
        if (!inv_[a]) throw std::logic_error("field construction failed");
}

int GaloisField::inv(int a) const {
    if (a == 0) throw std::domain_error("inverse of zero");
    return inv_[a];
}

// ----------------------------------------------------------------- PG(2,q)

bool BipartiteGraph::has_edge(Vertex a, Vertex b) const {
    const auto& l = adj.at(a);
    return std::find(l.begin(), l.end(), b) != l.end();
}

std::size_t BipartiteGraph::edge_count() const {
    std::size_t s = 0;
    for (int i = 0; i < left; ++i) s += adj[i].size();
    return s;
}

BipartiteGraph pg2_incidence(int q) {
    GaloisField F(q);
    const int m = q * q + q + 1;
    using Vec = std::array<int, 3>;
    // normalized representatives: first nonzero coordinate is 1
    auto index = [&](Vec v) {
        if (v[0]) {
            int s = F.inv(v[0]);
            return F.mul(v[1], s) * q + F.mul(v[2], s);
        }
        if (v[1]) return q * q + F.mul(v[2], F.inv(v[1]));
        if (v[2]) return q * q + q;
        throw std::logic_error("zero vector");
    };
    auto rep = [&](int i) -> Vec {
        if (i < q * q) return {1, i / q, i % q};
        if (i < q * q + q) return {0, 1, i - q * q};
        return {0, 0, 1};
    };
    BipartiteGraph g;
    g.left = g.right = m;
    g.q = q;
    g.tag = "pg2(" + std::to_string(q) + ")";
    g.adj.assign(2 * m, {});
    for (int li = 0; li < m; ++li) {
        Vec n = rep(li);
        // basis of the plane n . x = 0
        int piv = n[0] ? 0 : (n[1] ? 1 : 2);
        std::array<Vec, 2> basis;
        int bi = 0;
        for (int j = 0; j < 3; ++j) {
            if (j == piv) continue;
            Vec b{0, 0, 0};
            b[j] = 1;
            b[piv] = F.neg(F.mul(n[j], F.inv(n[piv])));
            basis[bi++] = b;
        }
        auto comb = [&](int alpha, int beta) {
            Vec v;
            for (int t = 0; t < 3; ++t) v[t] = F.add(F.mul(alpha, basis[0][t]), F.mul(beta, basis[1][t]));
            return v;
        };
        std::vector<Vertex> pts;
        pts.push_back(Vertex(index(comb(0, 1))));
        for (int beta = 0; beta < q; ++beta) pts.push_back(Vertex(index(comb(1, beta))));
        std::sort(pts.begin(), pts.end());
        for (Vertex pt : pts) {
            g.adj[pt].push_back(Vertex(m + li));
            g.adj[m + li].push_back(pt);
        }
    }
    for (auto& a : g.adj) std::sort(a.begin(), a.end());
    return g;
}

bool girth_at_least_6(const BipartiteGraph& g) {
    // no two left vertices share two neighbours, and no parallel edges
    std::vector<int> seen(g.n(), -1);
    for (int a = 0; a < g.n(); ++a) {
        for (Vertex x : g.adj[a])
            for (Vertex b : g.adj[x]) {
                if (int(b) == a) continue;
                if (seen[b] == a) return false;
                seen[b] = a;
            }
        for (std::size_t i = 1; i < g.adj[a].size(); ++i)
            if (g.adj[a][i] == g.adj[a][i - 1]) return false;
    }
    return true;
}

// ---------------------------------------------------------------- 2-paths

Edge TwoPath::vertices() const {
    Edge e{center, u, v};
    std::sort(e.begin(), e.end());
    return e;
}

std::vector<TwoPath> all_two_paths(const BipartiteGraph& g) {
    std::vector<TwoPath> out;
    for (int a = 0; a < g.n(); ++a) {
        const auto& nb = g.adj[a];
        for (std::size_t i = 0; i < nb.size(); ++i)
            for (std::size_t j = i + 1; j < nb.size(); ++j) out.push_back({Vertex(a), nb[i], nb[j]});
    }
    return out;
}

double default_probability(int m) { return std::log(double(m)) / std::sqrt(double(m)); }

namespace {

std::uint64_t splitmix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

}  // namespace

PathFamily sample_paths(std::shared_ptr<const BipartiteGraph> base, double p, std::uint64_t seed) {
    if (!(p >= 0 && p <= 1)) throw std::invalid_argument("p must lie in [0,1]");
    PathFamily fam;
    fam.base = base;
    fam.seed = seed;
    fam.p = p;
    const auto& g = *base;
    for (int a = 0; a < g.n(); ++a) {
        std::mt19937_64 rng(splitmix(seed ^ splitmix(std::uint64_t(a))));
        const auto& nb = g.adj[a];
        for (std::size_t i = 0; i < nb.size(); ++i)
            for (std::size_t j = i + 1; j < nb.size(); ++j) {
                double x = double(rng() >> 11) * 0x1.0p-53;
                if (x < p) fam.paths.push_back({Vertex(a), nb[i], nb[j]});
            }
    }
    return fam;
}

Hypergraph path_hypergraph(const PathFamily& fam) {
    Hypergraph h(3, fam.base ? fam.base->n() : 0);
    for (auto& P : fam.paths) h.add_edge(P.vertices());
    return h;
}

// -------------------------------------------------------------- dense sets

namespace {

// span of every sub-collection; true when some proper one is dense
bool has_dense_proper_subset(const Hypergraph& h, const std::vector<std::uint32_t>& s) {
    std::vector<Vertex> vs;
    for (auto e : s) vs.insert(vs.end(), h.edge(e).begin(), h.edge(e).end());
    std::sort(vs.begin(), vs.end());
    vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
    std::vector<std::uint32_t> masks;
    for (auto e : s) {
        std::uint32_t m = 0;
        for (Vertex v : h.edge(e)) m |= 1u << (std::lower_bound(vs.begin(), vs.end(), v) - vs.begin());
        masks.push_back(m);
    }
    const std::uint32_t full = (1u << s.size()) - 1;
    for (std::uint32_t sub = 1; sub < full; ++sub) {
        int l = std::popcount(sub);
        if (l < 2) continue;
        std::uint32_t u = 0;
        for (std::uint32_t t = sub; t; t &= t - 1) u |= masks[std::countr_zero(t)];
        if (std::popcount(u) <= l + 1) return true;
    }
    return false;
}

struct DenseRun {
    std::vector<DenseSetWitness> found;
    std::uint64_t nodes = 0;
    bool complete = true;
};

// one pass over the path 3-graph; `deleted` (may be null) receives the
// highest-index path of every minimal dense set met whose paths all survive
DenseRun dense_pass(const Hypergraph& h, int i_max, std::vector<char>* deleted, std::uint64_t budget) {
    if (i_max < 1 || i_max > 16) throw std::invalid_argument("i_max must be in [1,16]");
    GrowSpec spec;
    spec.max_size = i_max;
    spec.span_cap = i_max + 1;
    spec.hit_span.assign(i_max + 1, i_max + 1);  // every node reaches the callback
    spec.private_cap = 0;                        // minimal dense sets have no private vertex
    spec.stop_at_hit = false;
    spec.node_budget = budget;
    DenseRun run;
    Grower grower(h);
    auto st = grower.run_all(spec, [&](const std::vector<std::uint32_t>& s, int sp) {
        if (deleted && (*deleted)[s.back()]) return Visit::Skip;
        int l = int(s.size());
        if (sp > l + 1) return Visit::Continue;
        // dense: minimal ones are reported; supersets are never minimal
        if (!has_dense_proper_subset(h, s)) {
            auto w = s;
            std::sort(w.begin(), w.end());
            if (deleted) (*deleted)[w.back()] = 1;
            run.found.push_back({std::move(w), sp});
        }
        return Visit::Skip;
    });
    run.nodes = st.nodes;
    run.complete = !st.aborted;
    return run;
}

}  // namespace

std::vector<DenseSetWitness> find_minimal_dense_sets(const PathFamily& fam, int i_max, DenseSearchStats* stats,
                                                     std::uint64_t node_budget) {
    auto h = path_hypergraph(fam);
    auto run = dense_pass(h, i_max, nullptr, node_budget);
    std::sort(run.found.begin(), run.found.end(), [](auto& a, auto& b) {
        return a.paths.size() != b.paths.size() ? a.paths.size() < b.paths.size() : a.paths < b.paths;
    });
    if (stats) {
        stats->nodes = run.nodes;
        stats->witnesses = run.found.size();
        stats->complete = run.complete;
    }
    return run.found;
}

PathFamily prune(const PathFamily& fam, int i_max, PruneReport* report) {
    auto t0 = std::chrono::steady_clock::now();
    auto h = path_hypergraph(fam);
    std::vector<char> deleted(h.size(), 0);
    // short sets first: they thin the family before the wide passes
    DenseRun run;
    for (int i = std::min(3, i_max); i <= i_max; ++i) {
        auto r = dense_pass(h, i, &deleted, 0);
        run.nodes += r.nodes;
        run.found.insert(run.found.end(), r.found.begin(), r.found.end());
    }
    PathFamily out = fam;
    out.paths.clear();
    for (std::size_t i = 0; i < fam.paths.size(); ++i)
        if (!deleted[i]) out.paths.push_back(fam.paths[i]);
    DenseSearchStats confirm;
    auto left = find_minimal_dense_sets(out, i_max, &confirm);
    if (!left.empty()) throw std::logic_error("pruning left a dense set behind");
    if (report) {
        report->before = fam.paths.size();
        report->after = out.paths.size();
        report->removed = report->before - report->after;
        report->witnesses = run.found.size();
        report->nodes = run.nodes;
        report->confirm_nodes = confirm.nodes;
        report->confirmed = left.empty();
        report->seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
    return out;
}

// ------------------------------------------------------------------ blocks

Hypergraph build_blocks(const PathFamily& fam) {
    const Vertex n0 = Vertex(fam.base ? fam.base->n() : 0);
    Hypergraph F(3, n0);
    for (std::size_t i = 0; i < fam.paths.size(); ++i) {
        const auto& P = fam.paths[i];
        Vertex b = n0 + Vertex(2 * i), c = b + 1;
        F.add_edge({P.center, b, c});
        F.add_edge({b, P.u, P.v});
        F.add_edge({c, P.u, P.v});
    }
    return F;
}

Rational ratio(const Hypergraph& F, int k) {
    if (F.empty()) throw std::invalid_argument("ratio of an empty graph is undefined");
    if (k < 2) throw std::invalid_argument("k must be >= 2");
    auto pairs = pairs_leq_t(F, k / 2);
    return Rational(std::int64_t(F.size()), 2 * std::int64_t(pairs.size()));
}

ConstructionReport verify_construction(const Hypergraph& F, const PathFamily& fam, int threads) {
    ConstructionReport rep;
    rep.edges = F.size();
    rep.paths = fam.paths.size();
    rep.size_ok = F.size() == 3 * fam.paths.size();

    ExcessScanOptions four;
    four.max_tight = 3;
    four.top = 4;
    four.collect_tight = false;
    four.threads = threads;
    auto s4 = excess_scan(F, four);
    rep.four_free = !s4.violation;
    if (s4.violation) rep.witness = s4.violation;

    auto w8 = connected_violation_scan(F, 8, threads);
    rep.g8_free = !w8;
    if (w8 && !rep.witness) rep.witness = w8->indices;

    // union graph of the paths
    std::set<std::uint64_t> ug;
    for (auto& P : fam.paths) {
        ug.insert(Pair(P.center, P.u).key());
        ug.insert(Pair(P.center, P.v).key());
    }
    rep.union_graph = ug.size();

    if (rep.four_free && rep.g8_free) {
        auto cm = ClaimMap::compute(F, 4, threads);
        for (auto& [k, b] : cm.raw()) {
            bool c1 = b >> 1 & 1, c2 = b >> 2 & 1, c3 = b >> 3 & 1, c4 = b >> 4 & 1;
            rep.p1 += c1;
            rep.p12 += c2 && !c1;
            rep.p13 += c3 && !c1;
            rep.p4 += c4;
            rep.ple4 += (b & 0b11110) != 0;
        }
        rep.decomposition_ok = rep.p1 == 8 * fam.paths.size() && rep.p12 == 0 && rep.p4 == 0 &&
                               rep.p13 <= rep.union_graph && rep.ple4 == rep.p1 + rep.p13;
        if (!F.empty()) rep.ratio = Rational(std::int64_t(F.size()), 2 * std::int64_t(rep.ple4));
    }
    return rep;
}

}  // namespace bes
