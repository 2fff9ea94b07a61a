#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <boost/rational.hpp>

#include "bes/hypergraph.hpp"

namespace bes {

using Rational = boost::rational<std::int64_t>;

// finite field GF(q), q = p^k <= 1024, elements 0..q-1 (base-p digits are
// polynomial coefficients)
class GaloisField {
public:
    explicit GaloisField(int q);
    int q() const { return q_; }
    int p() const { return p_; }
    int add(int a, int b) const { return add_[a * q_ + b]; }
    int mul(int a, int b) const { return mul_[a * q_ + b]; }
    int neg(int a) const { return neg_[a]; }
    int inv(int a) const;
    int sub(int a, int b) const { return add(a, neg(b)); }

private:
    int q_, p_, k_;
    std::vector<std::uint16_t> add_, mul_, neg_, inv_;
};

// prime power decomposition, or nullopt
std::optional<std::pair<int, int>> prime_power(int q);

struct BipartiteGraph {
    int left = 0, right = 0;  // left ids 0..left-1, right ids left..left+right-1
    std::vector<std::vector<Vertex>> adj;
    int q = 0;
    std::string tag;
    int n() const { return left + right; }
    bool has_edge(Vertex a, Vertex b) const;
    std::size_t edge_count() const;
};

// points then lines of PG(2,q)
BipartiteGraph pg2_incidence(int q);
// true when the graph has no cycle shorter than 6
bool girth_at_least_6(const BipartiteGraph& g);

struct TwoPath {
    Vertex center = 0, u = 0, v = 0;  // u < v
    Edge vertices() const;
    bool operator==(const TwoPath&) const = default;
};

struct PathFamily {
    std::shared_ptr<const BipartiteGraph> base;
    std::vector<TwoPath> paths;
    std::uint64_t seed = 0;
    double p = 1.0;
};

// all 2-paths, by center then ends
std::vector<TwoPath> all_two_paths(const BipartiteGraph& g);
double default_probability(int m);  // ln m / sqrt m
PathFamily sample_paths(std::shared_ptr<const BipartiteGraph> base, double p, std::uint64_t seed);

// the paths as a 3-graph on base vertices (edge i = path i)
Hypergraph path_hypergraph(const PathFamily& fam);

struct DenseSetWitness {
    std::vector<std::uint32_t> paths;  // sorted indices
    int span = 0;
};

struct DenseSearchStats {
    std::uint64_t nodes = 0;
    std::uint64_t witnesses = 0;
    bool complete = true;
};

// every minimal dense i-set, i <= i_max: span <= i+1 and all proper
// subsets span >= size+2
std::vector<DenseSetWitness> find_minimal_dense_sets(const PathFamily& fam, int i_max = 8,
                                                     DenseSearchStats* stats = nullptr,
                                                     std::uint64_t node_budget = 0);

struct PruneReport {
    std::size_t before = 0, after = 0, removed = 0;
    std::uint64_t witnesses = 0;
    std::uint64_t nodes = 0, confirm_nodes = 0;
    bool confirmed = false;  // a second full pass found nothing
    double seconds = 0;
};

// removes the highest-index path of each minimal dense set met during one
// pass, then re-runs the search to confirm none remain
PathFamily prune(const PathFamily& fam, int i_max = 8, PruneReport* report = nullptr);

// three edges per path: a b c, b u v, c u v with fresh b, c
Hypergraph build_blocks(const PathFamily& fam);

struct ConstructionReport {
    bool four_free = false;
    bool g8_free = false;  // 8-free and k^- free for k in [2,7]
    std::optional<std::vector<std::uint32_t>> witness;
    bool size_ok = false;  // |F| = 3 |paths|
    std::size_t edges = 0, paths = 0;
    std::size_t p1 = 0, p12 = 0, p13 = 0, p4 = 0, ple4 = 0;
    std::size_t union_graph = 0;
    bool decomposition_ok = false;
    Rational ratio{0};
    bool ok() const { return four_free && g8_free && size_ok && decomposition_ok; }
};

ConstructionReport verify_construction(const Hypergraph& F, const PathFamily& fam, int threads = 1);

// |F| / (2 |P_{<= floor(k/2)}(F)|)
Rational ratio(const Hypergraph& F, int k);

}  // namespace bes
