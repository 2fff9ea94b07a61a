#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bes/hypergraph.hpp"

namespace bes {

// A set of (s, l) checks: no l edges may span at most s vertices.
struct ForbiddenFamily {
    int r = 3;
    int k = 0;
    std::vector<std::pair<int, int>> checks;  // (s, l)
    bool g_family = false;                    // checks have the G_k shape

    // k-configurations plus l^- configurations for l in [2, k-1]
    static ForbiddenFamily g(int r, int k);
    // the single check (s, k)
    static ForbiddenFamily single(int r, int s, int k);
    // k-configurations only: (rk - 2k + 2, k)
    static ForbiddenFamily k_config(int r, int k);
    // k^- configurations only: (rk - 2k + 1, k)
    static ForbiddenFamily k_minus(int r, int k);
    // parse "g8", "k4", "k4-", or "s10k8"
    static ForbiddenFamily parse(int r, const std::string& tag);
};

struct ConfigWitness {
    std::vector<std::uint32_t> indices;  // sorted edge indices
    int s_used = 0;                      // vertices spanned
    int k_used = 0;                      // edges
    int s_bound = 0;                     // the s of the violated check
};

// Exact: some k edges spanning at most s vertices, or nothing.
std::optional<ConfigWitness> find_configuration(const Hypergraph& g, int s, int k);

struct FreeResult {
    bool free = true;
    std::optional<ConfigWitness> witness;
    // "exhaustive" or "connectivity reduction"
    std::string method;
};

// graphs with more edges than this use the connected scan for G families
constexpr std::size_t kExactEdgeCap = 24;

FreeResult is_free(const Hypergraph& g, const ForbiddenFamily& fam, int threads = 1);

// Connected subsets of at most k_max edges: a j-subset on <= (r-2)j+1
// vertices or a k_max-subset on <= (r-2)k_max+2 vertices. Absence means the
// graph is G_{k_max} free.
std::optional<ConfigWitness> connected_violation_scan(const Hypergraph& g, int k_max, int threads = 1);

}  // namespace bes
