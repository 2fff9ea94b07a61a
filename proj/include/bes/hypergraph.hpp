#pragma once

#include <cstdint>
#include <iosfwd>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace bes {

using Vertex = std::uint32_t;
using Edge = std::vector<Vertex>;

struct MalformedInput : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Pair {
    Vertex u = 0, v = 0;
    Pair() = default;
    Pair(Vertex a, Vertex b) : u(a < b ? a : b), v(a < b ? b : a) {
        if (a == b) throw MalformedInput("pair with equal endpoints");
    }
    auto operator<=>(const Pair&) const = default;
    std::uint64_t key() const { return (std::uint64_t(u) << 32) | v; }
    static Pair from_key(std::uint64_t k) { return Pair(Vertex(k >> 32), Vertex(k & 0xffffffffu)); }
};

constexpr int kMaxUniformity = 16;
constexpr std::size_t kMaxEdges = 10'000'000;

class Hypergraph {
public:
    Hypergraph() = default;
    Hypergraph(int r, std::size_t n, std::vector<Edge> edges = {});

    int r() const { return r_; }
    std::size_t n() const { return n_; }
    std::size_t size() const { return edges_.size(); }
    bool empty() const { return edges_.empty(); }
    const std::vector<Edge>& edges() const { return edges_; }
    const Edge& edge(std::size_t i) const { return edges_[i]; }

    // throws MalformedInput on a bad edge
    void add_edge(Edge e);
    void set_n(std::size_t n) { n_ = n; }

    // vertices that lie in at least one edge
    std::vector<Vertex> support() const;
    // incidence lists: for each vertex the indices of edges containing it
    std::vector<std::vector<std::uint32_t>> incidence() const;

    bool operator==(const Hypergraph&) const = default;

private:
    int r_ = 3;
    std::size_t n_ = 0;
    std::vector<Edge> edges_;
};

// sort inside edges, sort edge list, drop duplicates; compact relabels the
// support to 0..v-1 preserving order
Hypergraph normalize(const Hypergraph& h, bool compact = false);

std::set<Pair> shadow(const Hypergraph& h);
std::set<Pair> shadow(const Hypergraph& h, const std::vector<std::uint32_t>& idx);

std::size_t span(const Hypergraph& h, const std::vector<std::uint32_t>& idx);

// subgraph on the given edge indices, same vertex ids
Hypergraph subgraph(const Hypergraph& h, const std::vector<std::uint32_t>& idx);

// .hg text format
Hypergraph parse_hg(std::istream& in);
Hypergraph parse_hg_string(const std::string& s);
Hypergraph read_hg(const std::string& path);
std::string emit_hg(const Hypergraph& h);
void write_hg(const Hypergraph& h, const std::string& path);

std::uint64_t binom(std::uint64_t n, std::uint64_t k);

}  // namespace bes
