#include "bes/hypergraph.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace bes {

Hypergraph::Hypergraph(int r, std::size_t n, std::vector<Edge> edges) : r_(r), n_(n) {
    if (r < 2 || r > kMaxUniformity) throw MalformedInput("uniformity out of range: " + std::to_string(r));
    edges_.reserve(edges.size());
    for (auto& e : edges) add_edge(std::move(e));
}

void Hypergraph::add_edge(Edge e) {
    if (int(e.size()) != r_)
        throw MalformedInput("edge has " + std::to_string(e.size()) + " vertices, expected " + std::to_string(r_));
    std::sort(e.begin(), e.end());
    if (std::adjacent_find(e.begin(), e.end()) != e.end()) throw MalformedInput("edge with repeated vertex");
    if (edges_.size() >= kMaxEdges) throw MalformedInput("edge count exceeds 10^7");
    if (e.back() >= n_) n_ = e.back() + 1;
    edges_.push_back(std::move(e));
}

std::vector<Vertex> Hypergraph::support() const {
    std::vector<Vertex> s;
    for (auto& e : edges_) s.insert(s.end(), e.begin(), e.end());
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    return s;
}

std::vector<std::vector<std::uint32_t>> Hypergraph::incidence() const {
    std::vector<std::vector<std::uint32_t>> inc(n_);
    for (std::uint32_t i = 0; i < edges_.size(); ++i)
        for (Vertex v : edges_[i]) inc[v].push_back(i);
    return inc;
}

Hypergraph normalize(const Hypergraph& h, bool compact) {
    std::vector<Edge> es = h.edges();
    for (auto& e : es) std::sort(e.begin(), e.end());
    std::sort(es.begin(), es.end());
    es.erase(std::unique(es.begin(), es.end()), es.end());
    std::size_t n = h.n();
    if (compact) {
        auto sup = h.support();
        for (auto& e : es)
            for (auto& v : e) v = Vertex(std::lower_bound(sup.begin(), sup.end(), v) - sup.begin());
        n = sup.size();
    }
    return Hypergraph(h.r(), n, std::move(es));
}

std::set<Pair> shadow(const Hypergraph& h) {
    std::set<Pair> out;
    for (auto& e : h.edges())
        for (std::size_t a = 0; a < e.size(); ++a)
            for (std::size_t b = a + 1; b < e.size(); ++b) out.emplace(e[a], e[b]);
    return out;
}

std::set<Pair> shadow(const Hypergraph& h, const std::vector<std::uint32_t>& idx) {
    std::set<Pair> out;
    for (auto i : idx) {
        auto& e = h.edge(i);
        for (std::size_t a = 0; a < e.size(); ++a)
            for (std::size_t b = a + 1; b < e.size(); ++b) out.emplace(e[a], e[b]);
    }
    return out;
}

std::size_t span(const Hypergraph& h, const std::vector<std::uint32_t>& idx) {
    std::vector<Vertex> vs;
    for (auto i : idx) vs.insert(vs.end(), h.edge(i).begin(), h.edge(i).end());
    std::sort(vs.begin(), vs.end());
    return std::size_t(std::unique(vs.begin(), vs.end()) - vs.begin());
}

Hypergraph subgraph(const Hypergraph& h, const std::vector<std::uint32_t>& idx) {
    Hypergraph s(h.r(), h.n());
    for (auto i : idx) s.add_edge(h.edge(i));
    return s;
}

Hypergraph parse_hg(std::istream& in) {
    std::string line;
    std::vector<long long> nums;
    bool header = false;
    int r = 0;
    long long n = 0, m = 0;
    Hypergraph h;
    long long lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto c = line.find('#'); c != std::string::npos) line.resize(c);
        std::istringstream ls(line);
        nums.clear();
        long long x;
        while (ls >> x) nums.push_back(x);
        if (!ls.eof()) throw MalformedInput("non-numeric token on line " + std::to_string(lineno));
        if (nums.empty()) continue;
        if (!header) {
            if (nums.size() != 3) throw MalformedInput("header must be 'r n m'");
            r = int(nums[0]);
            n = nums[1];
            m = nums[2];
            if (n < 0 || m < 0) throw MalformedInput("negative header field");
            if (std::size_t(m) > kMaxEdges) throw MalformedInput("edge count exceeds 10^7");
            h = Hypergraph(r, std::size_t(n));
            header = true;
            continue;
        }
        if (static_cast<long long>(h.size()) >= m) throw MalformedInput("more edge lines than declared");
        if (int(nums.size()) != r) throw MalformedInput("wrong edge arity on line " + std::to_string(lineno));
        Edge e;
        for (auto v : nums) {
            if (v < 0 || v >= n) throw MalformedInput("vertex id out of range on line " + std::to_string(lineno));
            e.push_back(Vertex(v));
        }
        h.add_edge(std::move(e));
    }
    if (!header) throw MalformedInput("missing header");
    if (static_cast<long long>(h.size()) != m) throw MalformedInput("fewer edge lines than declared");
    return h;
}

Hypergraph parse_hg_string(const std::string& s) {
    std::istringstream in(s);
    return parse_hg(in);
}

Hypergraph read_hg(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw MalformedInput("cannot open " + path);
    return parse_hg(in);
}

std::string emit_hg(const Hypergraph& h) {
    std::string out = std::to_string(h.r()) + " " + std::to_string(h.n()) + " " + std::to_string(h.size()) + "\n";
    for (auto& e : h.edges()) {
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (i) out += ' ';
            out += std::to_string(e[i]);
        }
        out += '\n';
    }
    return out;
}

void write_hg(const Hypergraph& h, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw MalformedInput("cannot write " + path);
    out << emit_hg(h);
}

std::uint64_t binom(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    std::uint64_t r = 1;
    for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

}  // namespace bes
