#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <unordered_map>
#include <vector>

#include "bes/hypergraph.hpp"

namespace bes {

constexpr int kMaxClaimIndex = 16;

// bit i set iff i is in the claim set; bit 0 is always set
using ClaimBits = std::uint32_t;

struct ClaimSet {
    Pair pair;
    ClaimBits bits = 1;
    bool contains(int i) const { return i >= 0 && i <= kMaxClaimIndex && (bits >> i & 1); }
    std::vector<int> members() const;
};

struct ClaimQuery {
    std::vector<int> claimed;    // all must be present
    std::vector<int> forbidden;  // none may be present
    ClaimBits claimed_bits() const;
    ClaimBits forbidden_bits() const;
    bool matches(ClaimBits b) const {
        return (b & claimed_bits()) == claimed_bits() && (b & forbidden_bits()) == 0;
    }
};

// Claim sets for every pair of a graph with a claim index >= 1. Pairs not
// stored have claim set {0}. Pairs range over C(V(G),2) with V(G) the union
// of the edges.
class ClaimMap {
public:
    enum class Method { Tight, Exhaustive };

    static ClaimMap compute(const Hypergraph& g, int imax = 8, int threads = 1);

    ClaimBits get(Pair p) const {
        auto it = bits_.find(p.key());
        return it == bits_.end() ? ClaimBits(1) : it->second;
    }
    const std::unordered_map<std::uint64_t, ClaimBits>& raw() const { return bits_; }
    int imax() const { return imax_; }
    Method method() const { return method_; }
    // pairs in C(V(G),2) whose claim set matches; sorted
    std::vector<Pair> matching(const ClaimQuery& q) const;

private:
    std::unordered_map<std::uint64_t, ClaimBits> bits_;
    std::vector<Vertex> support_;
    int imax_ = 8;
    Method method_ = Method::Tight;
};

// exact claim set of one pair (the pair may lie outside V(G))
ClaimSet claim_set(const Hypergraph& g, Pair p, int imax = 8);

// the neighbourhood-seeded enumeration alone: witnesses are grown from edges
// through the pair. Exact when the graph has no connected set of at most
// imax edges with excess <= 1; not exact in general.
ClaimSet claim_set_seeded(const Hypergraph& g, Pair p, int imax = 8);

// unrestricted enumeration over all edge subsets with union pruning
ClaimSet claim_set_exhaustive(const Hypergraph& g, Pair p, int imax = 8);

// true iff no connected set of at most imax edges has excess <= 1
bool locally_sparse(const Hypergraph& g, int imax);

std::set<Pair> claimed_pairs(const Hypergraph& g, const ClaimQuery& q, int imax = 8);
std::set<Pair> pairs_leq_t(const Hypergraph& g, int t);

// some choice of one member from each set sums to k
bool sumset_contains_k(const std::vector<ClaimSet>& sets, int k);
bool sumset_contains_k(const std::vector<ClaimBits>& sets, int k);

}  // namespace bes
