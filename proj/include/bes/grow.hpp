#pragma once

#include <atomic>
#include <cstdint>
#include <functional>
#include <vector>

#include "bes/hypergraph.hpp"

namespace bes {

// Enumerates connected edge sets (consecutive additions share a vertex with
// the current union). Each set is produced at most once: branches over a
// candidate list c1..cm exclude c1..c(j-1) from branch j, and seeds tried
// earlier are excluded from later seeds.
//
// With private_cap = p >= 0 the search only follows sets that can still grow
// into a target in which every edge has at most p vertices of degree one.
// An edge of the current set with more open vertices than p forces the next
// edge to pass through one of them. Callers use this only when every target
// they care about has that property (e.g. minimal violators of a threshold
// family whose proper subsets all have excess >= 2).
struct GrowSpec {
    int max_size = 8;
    // hit_span[l] for l in 1..max_size: a set of l edges is a hit when its
    // span is <= hit_span[l]; negative means no hit at that size
    std::vector<int> hit_span;
    int span_cap = 0;
    int private_cap = -1;
    bool stop_at_hit = true;
    // abort after this many nodes (0 = unlimited)
    std::uint64_t node_budget = 0;
};

enum class Visit { Continue, Skip, Stop };

struct GrowStats {
    std::uint64_t nodes = 0;
    std::uint64_t hits = 0;
    bool aborted = false;
    bool stopped = false;
};

using HitFn = std::function<Visit(const std::vector<std::uint32_t>& edges, int span)>;

class Grower {
public:
    explicit Grower(const Hypergraph& h);
    Grower(const Hypergraph& h, std::vector<std::vector<std::uint32_t>> incidence);

    const Hypergraph& graph() const { return h_; }
    const std::vector<std::vector<std::uint32_t>>& incidence() const { return inc_; }

    // Grow from every seed in order. The callback may run on several
    // threads when threads > 1; results delivered per seed are deterministic
    // but seeds may interleave.
    GrowStats run(const GrowSpec& spec, const std::vector<std::uint32_t>& seeds, const HitFn& on_hit,
                  int threads = 1) const;
    // all edges as seeds
    GrowStats run_all(const GrowSpec& spec, const HitFn& on_hit, int threads = 1) const;

private:
    const Hypergraph& h_;
    std::vector<std::vector<std::uint32_t>> inc_;
};

// thread count from an explicit value, else BES_THREADS, else 1
int resolve_threads(int requested);

}  // namespace bes
