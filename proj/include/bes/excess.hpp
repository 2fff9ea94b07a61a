#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "bes/grow.hpp"
#include "bes/hypergraph.hpp"

namespace bes {

// excess(S) = |V(S)| - (r-2)|S|. A connected set is tight when its excess
// is exactly 2; single edges are tight.
inline int excess(int r, int span, int size) { return span - (r - 2) * size; }

struct ExcessScanOptions {
    // tight sets are collected up to this size; sets of size <= max_tight
    // with excess <= 1 are violations
    int max_tight = 8;
    // when > 0, sets of exactly this size with excess <= 2 are violations too
    // (must equal max_tight + 1)
    int top = 0;
    bool collect_tight = true;
    int threads = 1;
    std::uint64_t node_budget = 0;
};

struct ExcessScan {
    // first violation found (sorted edge indices), if any
    std::optional<std::vector<std::uint32_t>> violation;
    int violation_span = 0;
    // every tight connected set of size <= max_tight, sorted indices,
    // valid only when no violation was found
    std::vector<std::vector<std::uint32_t>> tight;
    GrowStats growth;
    std::uint64_t closure_steps = 0;
    bool complete = true;  // false when the node budget ran out
};

// Exact under the following facts. A minimal set with excess <= 1 has no
// edge with more than r-3 private vertices. A tight set either has that
// property too or loses an edge with r-2 private vertices and stays tight.
// A minimal top-size set with excess <= 2 either has the property or is a
// tight set plus an edge meeting it in exactly two vertices. So growth
// restricted to private_cap = r-3 followed by closure under two-vertex
// attachments visits every target.
ExcessScan excess_scan(const Hypergraph& g, const ExcessScanOptions& opt);

}  // namespace bes
