#include <algorithm>
#include <map>
#include <random>
#include <set>

#include "bes/grow.hpp"
#include "doctest.h"

using namespace bes;

namespace {

Hypergraph random_graph(std::mt19937_64& rng, int r, int n, int m) {
    Hypergraph h(r, n);
    std::set<Edge> seen;
    std::vector<Vertex> vs(n);
    for (int i = 0; i < n; ++i) vs[i] = Vertex(i);
    while (int(h.size()) < m) {
        std::shuffle(vs.begin(), vs.end(), rng);
        Edge e(vs.begin(), vs.begin() + r);
        std::sort(e.begin(), e.end());
        if (seen.insert(e).second) h.add_edge(e);
    }
    return h;
}

bool connected(const Hypergraph& h, const std::vector<std::uint32_t>& s) {
    if (s.empty()) return true;
    std::vector<bool> in(s.size(), false);
    in[0] = true;
    std::set<Vertex> vs(h.edge(s[0]).begin(), h.edge(s[0]).end());
    bool grew = true;
    while (grew) {
        grew = false;
        for (std::size_t i = 0; i < s.size(); ++i)
            if (!in[i])
                for (auto v : h.edge(s[i]))
                    if (vs.count(v)) {
                        in[i] = true;
                        vs.insert(h.edge(s[i]).begin(), h.edge(s[i]).end());
                        grew = true;
                        break;
                    }
    }
    return std::all_of(in.begin(), in.end(), [](bool b) { return b; });
}

int max_private(const Hypergraph& h, const std::vector<std::uint32_t>& s) {
    std::map<Vertex, int> deg;
    for (auto e : s)
        for (auto v : h.edge(e)) ++deg[v];
    int mx = 0;
    for (auto e : s) {
        int k = 0;
        for (auto v : h.edge(e)) k += deg[v] == 1;
        mx = std::max(mx, k);
    }
    return mx;
}

}  // namespace

TEST_CASE("grower lists every connected set once") {
    std::mt19937_64 rng(5);
    for (int round = 0; round < 30; ++round) {
        int r = 3 + int(rng() % 2);
        auto h = random_graph(rng, r, 8, 9);
        Grower g(h);
        GrowSpec spec;
        spec.max_size = 4;
        spec.hit_span.assign(5, 1000);
        spec.hit_span[0] = -1;
        spec.span_cap = 1000;
        spec.stop_at_hit = false;
        std::map<std::vector<std::uint32_t>, int> got;
        g.run_all(spec, [&](const std::vector<std::uint32_t>& s, int sp) {
            auto k = s;
            std::sort(k.begin(), k.end());
            CHECK(std::size_t(sp) == span(h, k));
            ++got[k];
            return Visit::Continue;
        });
        std::size_t expected = 0;
        for (std::uint32_t mask = 1; mask < (1u << h.size()); ++mask) {
            if (std::popcount(mask) > 4) continue;
            std::vector<std::uint32_t> s;
            for (std::uint32_t i = 0; i < h.size(); ++i)
                if (mask >> i & 1) s.push_back(i);
            if (!connected(h, s)) continue;
            ++expected;
            CHECK(got.count(s) == 1);
        }
        CHECK(got.size() == expected);
        for (auto& [k, c] : got) CHECK(c == 1);
    }
}

TEST_CASE("must-cover growth reaches every low-private target") {
    std::mt19937_64 rng(9);
    for (int round = 0; round < 40; ++round) {
        int r = 3 + int(rng() % 2);
        auto h = random_graph(rng, r, 7 + int(rng() % 3), 10);
        int pcap = int(rng() % 2);
        Grower g(h);
        GrowSpec spec;
        spec.max_size = 5;
        spec.hit_span.assign(6, 1000);
        spec.hit_span[0] = -1;
        spec.span_cap = 1000;
        spec.private_cap = pcap;
        spec.stop_at_hit = false;
        std::set<std::vector<std::uint32_t>> got;
        g.run_all(spec, [&](const std::vector<std::uint32_t>& s, int) {
            auto k = s;
            std::sort(k.begin(), k.end());
            got.insert(k);
            return Visit::Continue;
        });
        for (std::uint32_t mask = 1; mask < (1u << h.size()); ++mask) {
            if (std::popcount(mask) > 5) continue;
            std::vector<std::uint32_t> s;
            for (std::uint32_t i = 0; i < h.size(); ++i)
                if (mask >> i & 1) s.push_back(i);
            if (!connected(h, s) || max_private(h, s) > pcap) continue;
            CHECK(got.count(s) == 1);
        }
    }
}
