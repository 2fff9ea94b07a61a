#include "bes/excess.hpp"

#include <algorithm>
#include <mutex>
#include <unordered_set>

namespace bes {

namespace {

struct VecHash {
    std::size_t operator()(const std::vector<std::uint32_t>& v) const {
        std::uint64_t h = 1469598103934665603ull;
        for (auto x : v) {
            h ^= x;
            h *= 1099511628211ull;
        }
        return std::size_t(h);
    }
};

}  // namespace

ExcessScan excess_scan(const Hypergraph& g, const ExcessScanOptions& opt) {
    ExcessScan out;
    const int r = g.r();
    const int L = opt.max_tight;
    const int top = opt.top;
    const int maxsize = top > 0 ? top : L;
    const bool keep = opt.collect_tight || top > 0;

    GrowSpec spec;
    spec.max_size = maxsize;
    spec.hit_span.assign(maxsize + 1, -1);
    for (int l = 1; l <= L; ++l) spec.hit_span[l] = (r - 2) * l + 2;
    if (top > 0) spec.hit_span[top] = (r - 2) * top + 2;
    spec.span_cap = *std::max_element(spec.hit_span.begin(), spec.hit_span.end());
    spec.private_cap = r >= 3 ? r - 3 : -1;
    spec.stop_at_hit = false;
    spec.node_budget = opt.node_budget;

    std::mutex mu;
    std::unordered_set<std::vector<std::uint32_t>, VecHash> seen;
    Grower grower(g);
    out.growth = grower.run_all(
        spec,
        [&](const std::vector<std::uint32_t>& s, int sp) {
            int l = int(s.size());
            int ex = excess(r, sp, l);
            bool bad = (l <= L && ex <= 1) || (l == top && ex <= 2);
            if (bad) {
                std::lock_guard lk(mu);
                if (!out.violation) {
                    auto w = s;
                    std::sort(w.begin(), w.end());
                    out.violation = std::move(w);
                    out.violation_span = sp;
                }
                return Visit::Stop;
            }
            if (keep && l <= L && ex == 2) {
                auto w = s;
                std::sort(w.begin(), w.end());
                std::lock_guard lk(mu);
                seen.insert(std::move(w));
            }
            return Visit::Continue;
        },
        opt.threads);
    if (out.growth.aborted) out.complete = false;
    if (out.violation || !keep || !out.complete) return out;

    // closure under attaching an edge through exactly two vertices
    std::vector<std::vector<std::uint32_t>> work(seen.begin(), seen.end());
    std::sort(work.begin(), work.end());
    const auto& inc = grower.incidence();
    std::vector<std::uint32_t> stamp(g.size(), 0), count(g.size(), 0);
    std::vector<std::uint8_t> in_set(g.size(), 0);
    std::vector<std::uint8_t> vmark(g.n(), 0);
    std::uint32_t stampc = 0;
    std::vector<Vertex> verts;
    std::vector<std::uint32_t> cands;
    for (std::size_t wi = 0; wi < work.size(); ++wi) {
        const auto T = work[wi];
        int t = int(T.size());
        if (t + 1 > maxsize) continue;
        ++out.closure_steps;
        verts.clear();
        for (auto e : T) {
            in_set[e] = 1;
            for (Vertex v : g.edge(e))
                if (!vmark[v]) {
                    vmark[v] = 1;
                    verts.push_back(v);
                }
        }
        ++stampc;
        cands.clear();
        for (Vertex v : verts)
            for (auto e : inc[v]) {
                if (in_set[e]) continue;
                if (stamp[e] != stampc) {
                    stamp[e] = stampc;
                    count[e] = 0;
                    cands.push_back(e);
                }
                ++count[e];
            }
        int span_t = int(verts.size());
        for (Vertex v : verts) vmark[v] = 0;
        for (auto e : T) in_set[e] = 0;
        std::sort(cands.begin(), cands.end());
        for (auto e : cands) {
            int c = int(count[e]);
            if (c < 2) continue;
            int sp = span_t + r - c;
            int ex = excess(r, sp, t + 1);
            bool bad = (t + 1 <= L && ex <= 1) || (t + 1 == top && ex <= 2);
            auto U = T;
            U.insert(std::upper_bound(U.begin(), U.end(), e), e);
            if (bad) {
                out.violation = std::move(U);
                out.violation_span = sp;
                return out;
            }
            if (t + 1 <= L && ex == 2 && seen.insert(U).second) work.push_back(std::move(U));
        }
    }
    if (opt.collect_tight) {
        out.tight = std::move(work);
        std::sort(out.tight.begin(), out.tight.end(), [](const auto& a, const auto& b) {
            return a.size() != b.size() ? a.size() < b.size() : a < b;
        });
    }
    return out;
}

}  // namespace bes
