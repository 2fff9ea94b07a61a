#include "bes/grow.hpp"

#include <algorithm>
#include <climits>
#include <cstdlib>
#include <mutex>
#include <thread>

namespace bes {

int resolve_threads(int requested) {
    if (requested > 0) return requested;
    if (const char* e = std::getenv("BES_THREADS")) {
        int t = std::atoi(e);
        if (t > 0) return t;
    }
    return 1;
}

Grower::Grower(const Hypergraph& h) : h_(h), inc_(h.incidence()) {}

Grower::Grower(const Hypergraph& h, std::vector<std::vector<std::uint32_t>> incidence)
    : h_(h), inc_(std::move(incidence)) {}

namespace {

constexpr std::uint32_t kNoRank = UINT32_MAX;

struct Worker {
    const Hypergraph& h;
    const std::vector<std::vector<std::uint32_t>>& inc;
    const GrowSpec& spec;
    const std::vector<std::uint32_t>& seed_rank;
    const HitFn& fn;
    std::atomic<bool>& stop;
    std::atomic<std::uint64_t>& total_nodes;

    std::vector<int> suffix;  // max hit span over sizes >= l
    std::vector<int> deg;
    std::vector<std::uint8_t> mark;  // 1 in set, 2 excluded
    std::vector<std::uint32_t> stamp;
    std::uint32_t stampc = 0;
    std::vector<std::uint32_t> set;
    std::vector<Vertex> verts;
    int span = 0;
    std::uint32_t cur_rank = 0;
    std::vector<std::vector<std::uint32_t>> cand;  // per depth
    GrowStats st;

    Worker(const Hypergraph& h_, const std::vector<std::vector<std::uint32_t>>& inc_, const GrowSpec& spec_,
           const std::vector<std::uint32_t>& rank_, const HitFn& fn_, std::atomic<bool>& stop_,
           std::atomic<std::uint64_t>& total_)
        : h(h_), inc(inc_), spec(spec_), seed_rank(rank_), fn(fn_), stop(stop_), total_nodes(total_) {
        int L = spec.max_size;
        suffix.assign(L + 2, -1);
        for (int l = L; l >= 1; --l) {
            int hs = l < int(spec.hit_span.size()) ? spec.hit_span[l] : -1;
            suffix[l] = std::max(suffix[l + 1], hs);
        }
        deg.assign(h.n(), 0);
        mark.assign(h.size(), 0);
        stamp.assign(h.size(), 0);
        cand.resize(L + 1);
    }

    bool allowed(std::uint32_t c) const { return mark[c] == 0 && seed_rank[c] > cur_rank; }

    int new_vertices(std::uint32_t c) const {
        int k = 0;
        for (Vertex v : h.edge(c)) k += deg[v] == 0;
        return k;
    }

    void push(std::uint32_t c) {
        mark[c] = 1;
        set.push_back(c);
        for (Vertex v : h.edge(c))
            if (deg[v]++ == 0) {
                verts.push_back(v);
                ++span;
            }
    }

    void pop() {
        std::uint32_t c = set.back();
        set.pop_back();
        mark[c] = 0;
        for (Vertex v : h.edge(c))
            if (--deg[v] == 0) --span;
        while (!verts.empty() && deg[verts.back()] == 0) verts.pop_back();
    }

    void collect_through(Vertex v, std::vector<std::uint32_t>& out) {
        for (std::uint32_t c : inc[v])
            if (stamp[c] != stampc && allowed(c)) {
                stamp[c] = stampc;
                out.push_back(c);
            }
    }

    void candidates(std::vector<std::uint32_t>& out) {
        out.clear();
        if (++stampc == 0) {
            std::fill(stamp.begin(), stamp.end(), 0);
            stampc = 1;
        }
        int pcap = spec.private_cap;
        if (pcap >= 0) {
            Vertex open[kMaxUniformity];
            Vertex best[kMaxUniformity];
            int best_n = 0;
            std::size_t best_cost = SIZE_MAX;
            for (std::uint32_t e : set) {
                int k = 0;
                for (Vertex v : h.edge(e))
                    if (deg[v] == 1) open[k++] = v;
                if (k <= pcap) continue;
                std::sort(open, open + k, [&](Vertex a, Vertex b) { return inc[a].size() < inc[b].size(); });
                std::size_t cost = 0;
                for (int i = 0; i <= pcap; ++i) cost += inc[open[i]].size();
                if (cost < best_cost) {
                    best_cost = cost;
                    best_n = pcap + 1;
                    std::copy(open, open + best_n, best);
                }
            }
            if (best_n > 0) {
                for (int i = 0; i < best_n; ++i) collect_through(best[i], out);
                return;
            }
        }
        for (Vertex v : verts)
            if (deg[v] > 0) collect_through(v, out);
    }

    void dfs() {
        if (stop.load(std::memory_order_relaxed)) return;
        ++st.nodes;
        if (spec.node_budget && (st.nodes & 1023) == 0) {
            if (total_nodes.fetch_add(1024) + 1024 > spec.node_budget) {
                st.aborted = true;
                stop = true;
                return;
            }
        }
        int t = int(set.size());
        if (t < int(spec.hit_span.size()) && spec.hit_span[t] >= 0 && span <= spec.hit_span[t]) {
            ++st.hits;
            Visit v = fn(set, span);
            if (v == Visit::Stop) {
                st.stopped = true;
                stop = true;
                return;
            }
            if (spec.stop_at_hit || v == Visit::Skip) return;
        }
        if (t >= spec.max_size) return;
        int cap = std::min(spec.span_cap, suffix[t + 1]);
        if (span > cap) return;
        auto& cs = cand[t];
        candidates(cs);
        std::size_t nex = 0;
        for (std::size_t i = 0; i < cs.size(); ++i) {
            std::uint32_t c = cs[i];
            if (span + new_vertices(c) <= cap) {
                push(c);
                dfs();
                pop();
                if (stop.load(std::memory_order_relaxed)) break;
            }
            mark[c] = 2;
            ++nex;
        }
        for (std::size_t i = 0; i < nex; ++i) mark[cs[i]] = 0;
    }

    void run_seed(std::uint32_t seed) {
        cur_rank = seed_rank[seed];
        if (int(h.edge(seed).size()) > std::min(spec.span_cap, suffix[1])) return;
        push(seed);
        dfs();
        pop();
    }
};

}  // namespace

GrowStats Grower::run(const GrowSpec& spec, const std::vector<std::uint32_t>& seeds, const HitFn& on_hit,
                      int threads) const {
    std::vector<std::uint32_t> rank(h_.size(), kNoRank);
    for (std::uint32_t i = 0; i < seeds.size(); ++i)
        if (rank[seeds[i]] == kNoRank) rank[seeds[i]] = i;
    std::atomic<bool> stop{false};
    std::atomic<std::uint64_t> total{0};
    std::atomic<std::size_t> next{0};
    threads = std::max(1, std::min<int>(threads, int(seeds.size())));
    std::vector<GrowStats> stats(threads);
    auto work = [&](int id) {
        Worker w(h_, inc_, spec, rank, on_hit, stop, total);
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= seeds.size() || stop.load()) break;
            if (rank[seeds[i]] != i) continue;  // repeated seed
            w.run_seed(seeds[i]);
        }
        stats[id] = w.st;
    };
    if (threads == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (int i = 0; i < threads; ++i) pool.emplace_back(work, i);
        for (auto& t : pool) t.join();
    }
    GrowStats out;
    for (auto& s : stats) {
        out.nodes += s.nodes;
        out.hits += s.hits;
        out.aborted |= s.aborted;
        out.stopped |= s.stopped;
    }
    return out;
}

GrowStats Grower::run_all(const GrowSpec& spec, const HitFn& on_hit, int threads) const {
    std::vector<std::uint32_t> seeds(h_.size());
    for (std::uint32_t i = 0; i < seeds.size(); ++i) seeds[i] = i;
    return run(spec, seeds, on_hit, threads);
}

}  // namespace bes
