#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "bes/claims.hpp"
#include "bes/hypergraph.hpp"

namespace bes {

using EdgeSubset = std::vector<std::uint32_t>;  // sorted edge indices

// (A|B): the first graph A-claims the pair, the second B-claims it.
// Unoriented rules accept either order.
struct MergeRule {
    ClaimBits A = 0b10;
    ClaimBits B = 0b100;
    bool oriented = false;

    static MergeRule make(const std::vector<int>& a, const std::vector<int>& b, bool oriented = false);
    // "1|2", "(1|2)", "{1,2}|{3}" ...; a leading 'o' marks the rule oriented
    static MergeRule parse(const std::string& s);
    std::string str() const;
};

struct MergeEvent {
    std::uint32_t kept = 0;    // part id that survives
    std::uint32_t joined = 0;  // part id absorbed into it
    Pair via;
    bool kept_claims_a = true;  // true when the kept part plays the A role
};

struct Partition {
    enum class Stage { Trivial, M1, M2, Other };
    std::vector<EdgeSubset> parts;  // sorted by first edge
    Stage stage = Stage::Other;
    // per final part, its base parts (indices into the input partition)
    // in the order they were merged in, and the events that merged them
    std::vector<std::vector<std::uint32_t>> members;
    std::vector<std::vector<MergeEvent>> history;
    std::vector<std::size_t> base_sizes;  // sizes of the input parts

    // index of the part holding an edge
    std::vector<std::uint32_t> part_of(std::size_t m) const;
};

const char* stage_name(Partition::Stage s);

Partition trivial_partition(const Hypergraph& g);
// edges linked when they share at least two vertices
Partition one_clusters(const Hypergraph& g);

// Claim sets of one subgraph in a form that also covers pairs outside its
// vertex set: bits(uv) = all | vert[u] | vert[v] | pair[uv].
struct PartClaims {
    ClaimBits all = 0;
    std::unordered_map<Vertex, ClaimBits> vert;
    std::unordered_map<std::uint64_t, ClaimBits> pair;
    ClaimBits bits(Pair p) const;
    bool tame() const { return all == 0 && vert.empty(); }
};

PartClaims part_claims(const Hypergraph& g, const EdgeSubset& part, int imax);

struct Mergeability {
    Pair via;
    bool first_claims_a = true;  // the first argument plays the A role
};

// smallest pair via which F and H are mergeable, if any
std::optional<Mergeability> mergeable(const Hypergraph& g, const EdgeSubset& F, const EdgeSubset& H,
                                      const MergeRule& rule);

// iterate to the fixed point, always merging the least (part, part, pair)
Partition merge(const Hypergraph& g, const Partition& p, const MergeRule& rule);
// same fixed point reached through a random merge order
Partition merge_random_order(const Hypergraph& g, const Partition& p, const MergeRule& rule, std::uint64_t seed);

// M2: (1|2)-merging of the 1-clusters
Partition two_clusters(const Hypergraph& g);

// m when F is an m-tree
std::optional<int> is_m_tree(const Hypergraph& g, const EdgeSubset& F);

struct FlexReport {
    std::vector<std::uint32_t> flexible_edges;
    std::vector<std::vector<Vertex>> flexible_sets;  // lexicographically least per edge
    int count() const { return int(flexible_edges.size()); }
};

FlexReport flexible(const Hypergraph& g, const EdgeSubset& F);

struct TrimResult {
    bool ok = false;
    std::vector<std::uint32_t> order;  // part indices of P
    EdgeSubset stuck;                  // prefix union when no order exists
};

// order the parts of P inside F \ F0 so that each is mergeable with the
// union of F0 and the parts before it
TrimResult trimming_order(const Hypergraph& g, const EdgeSubset& F0, const EdgeSubset& F, const Partition& P,
                          const MergeRule& rule);

struct Composition {
    std::vector<int> sizes;         // merge order
    std::vector<int> sorted_sizes;  // non-increasing
};

Composition composition_of(const Partition& merged, std::size_t part);

}  // namespace bes
