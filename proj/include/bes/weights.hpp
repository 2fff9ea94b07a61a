#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

#include "bes/claims.hpp"
#include "bes/construction.hpp"
#include "bes/hypergraph.hpp"
#include "bes/merging.hpp"

namespace bes {

struct WeightScheme {
    enum class Tag { R5, R4 };
    Tag tag = Tag::R5;
    int r = 5;

    static WeightScheme r5(int r);
    static WeightScheme r4();
    // r4 for r = 4, r5 for r >= 5
    static WeightScheme for_uniformity(int r);
    std::string str() const;
    // claim indices the scheme looks at
    int imax() const { return tag == Tag::R4 ? 6 : 2; }
};

// weight of one pair for one cluster, from its claim set. in_shadow says
// whether the pair is 1-claimed by the whole graph (only read by r4).
Rational pair_weight(ClaimBits c, const WeightScheme& s, bool in_shadow);
// same, computing the claim set of F at p; shadow may be null for r5
Rational pair_weight(const Hypergraph& g, const EdgeSubset& F, Pair p, const WeightScheme& s,
                     const std::unordered_set<std::uint64_t>* shadow);

struct NotFree : std::runtime_error {
    std::vector<std::uint32_t> witness;
    NotFree(std::string what, std::vector<std::uint32_t> w) : std::runtime_error(std::move(what)), witness(std::move(w)) {}
};

struct WeightViolation {
    enum class Kind { PairOver, ClusterUnder, ClaimConflict, SumsetHit, CountIdentity };
    Kind kind;
    std::optional<Pair> pair;
    std::optional<std::size_t> part;
    Rational value{0};
    std::string str() const;
};

struct ClusterWeight {
    EdgeSubset edges;
    Composition composition;
    Rational weight{0};
    Rational target{0};  // C(r,2)|F|
    bool identity_ok = false;
};

struct WeightReport {
    WeightScheme scheme;
    std::map<Pair, Rational> per_pair;  // pairs with positive weight
    std::vector<ClusterWeight> per_cluster;
    std::vector<WeightViolation> violations;
    Rational max_pair{0};
    std::size_t n = 0;  // support size
    // |G| <= C(n,2)/C(r,2); set only when there are no violations
    std::optional<Rational> edge_bound;
    bool ok() const { return violations.empty(); }
};

// throws NotFree when G is not G_8-free
WeightReport verify_bounds(const Hypergraph& G, const Partition& M2, const WeightScheme& s, int threads = 1);
WeightReport verify_bounds(const Hypergraph& G, const WeightScheme& s, int threads = 1);

struct FamilyTag {
    enum class Kind { A, B, C1, C2, E, F, S, None };
    Kind kind = Kind::None;
    int i = 0;  // for S
    std::string str() const;
    // "A", "B", "C1", "C2", "E", "F", "S6"
    static FamilyTag parse(const std::string& s);
    bool operator==(const FamilyTag&) const = default;
};

// a concrete member on fresh vertices, labels shuffled by the seed
Hypergraph generate_family(const FamilyTag& t, int r, std::uint64_t seed);

struct Classification {
    FamilyTag tag;
    std::vector<std::string> probes;  // passed checks
    std::string diagnostic;           // set when tag is None
};

// part of two_clusters(g); throws when it has fewer than 9 edges
Classification classify_cluster(const Hypergraph& g, const Partition& M2, std::size_t part);

struct PairCounts {
    std::size_t p1 = 0, p12 = 0;
    std::int64_t p1_expected = 0, p12_lower = 0;
    bool ok() const { return std::int64_t(p1) == p1_expected && std::int64_t(p12) >= p12_lower; }
};

PairCounts pair_counts(const Hypergraph& g, const EdgeSubset& F, const Composition& comp);
bool check_pair_count_identity(const Hypergraph& g, const EdgeSubset& F, const Composition& comp);

struct GrResult {
    std::int64_t q_quad = 0;
    Rational limit{0};
    int k = 0;                // p/2 - 1
    Rational pi{0};           // pi(4, k)
    std::string source;
};

// p even, 6 <= p <= 18
GrResult gr_quadratic(int p);

}  // namespace bes
