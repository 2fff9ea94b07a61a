#include <random>

#include "bes/claims.hpp"
#include "bes/excess.hpp"
#include "doctest.h"
#include "oracle.hpp"

using namespace bes;

namespace {

Hypergraph block() { return Hypergraph(3, 5, {{0, 1, 2}, {1, 3, 4}, {2, 3, 4}}); }  // a=0 b=1 c=2 u=3 v=4

bool connected_mask(const Hypergraph& h, std::uint64_t mask) {
    std::vector<std::uint32_t> idx;
    for (std::size_t i = 0; i < h.size(); ++i)
        if (mask >> i & 1) idx.push_back(std::uint32_t(i));
    std::set<Vertex> vs(h.edge(idx[0]).begin(), h.edge(idx[0]).end());
    std::vector<bool> in(idx.size(), false);
    in[0] = true;
    for (bool grew = true; grew;) {
        grew = false;
        for (std::size_t i = 0; i < idx.size(); ++i)
            if (!in[i])
                for (auto v : h.edge(idx[i]))
                    if (vs.count(v)) {
                        in[i] = grew = true;
                        vs.insert(h.edge(idx[i]).begin(), h.edge(idx[i]).end());
                        break;
                    }
    }
    return std::all_of(in.begin(), in.end(), [](bool b) { return b; });
}

}  // namespace

TEST_CASE("claim set examples") {
    Hypergraph e(3, 3, {{0, 1, 2}});
    CHECK(claim_set(e, Pair(0, 1)).members() == std::vector<int>{0, 1});
    CHECK(claim_set(block(), Pair(0, 3)).members() == std::vector<int>{0, 3});
    Hypergraph d(4, 6, {{0, 1, 2, 3}, {0, 1, 4, 5}});
    CHECK(claim_set(d, Pair(2, 4)).members() == std::vector<int>{0, 2});
    // fresh pair
    CHECK(claim_set(e, Pair(7, 8)).members() == std::vector<int>{0});
}

TEST_CASE("claimed pair queries") {
    Hypergraph d3(3, 4, {{0, 1, 2}, {0, 1, 3}});
    CHECK(claimed_pairs(d3, {{2}, {1}}).size() == 1);
    Hypergraph d4(4, 6, {{0, 1, 2, 3}, {0, 1, 4, 5}});
    CHECK(claimed_pairs(d4, {{2}, {1}}).size() == 4);
    CHECK(claimed_pairs(Hypergraph(3, 0), {{1}, {}}).empty());
    CHECK(pairs_leq_t(Hypergraph(4, 4, {{0, 1, 2, 3}}), 1).size() == 6);
    CHECK(pairs_leq_t(block(), 4).size() == 10);
}

TEST_CASE("sumset") {
    CHECK(sumset_contains_k(std::vector<ClaimBits>{0b11, 0b11}, 2));
    CHECK(sumset_contains_k(std::vector<ClaimBits>{0b101, 0b101, 0b101, 0b101}, 8));
    CHECK(!sumset_contains_k(std::vector<ClaimBits>{0b101, 0b101, 0b101}, 8));
    CHECK(!sumset_contains_k(std::vector<ClaimBits>{0b11}, 3));
}

TEST_CASE("excess scan agrees with brute force") {
    std::mt19937_64 rng(21);
    for (int round = 0; round < 150; ++round) {
        int r = 3 + int(rng() % 2);
        int n = r + 2 + int(rng() % 7);
        int m = 1 + int(rng() % 10);
        auto h = oracle::random_graph(rng, r, n, m);
        int L = 1 + int(rng() % 6);
        bool with_top = rng() % 2;
        ExcessScanOptions opt;
        opt.max_tight = L;
        opt.top = with_top ? L + 1 : 0;
        auto scan = excess_scan(h, opt);
        bool bad = false;
        std::set<std::vector<std::uint32_t>> tight;
        for (std::uint64_t mask = 1; mask < (1ull << h.size()); ++mask) {
            int l = std::popcount(mask);
            int s = int(oracle::union_of(h, mask).size());
            int ex = s - (r - 2) * l;
            if (l <= L && ex <= 1) bad = true;
            if (with_top && l == L + 1 && ex <= 2) bad = true;
            if (l <= L && ex == 2 && connected_mask(h, mask)) {
                std::vector<std::uint32_t> w;
                for (std::size_t i = 0; i < h.size(); ++i)
                    if (mask >> i & 1) w.push_back(std::uint32_t(i));
                tight.insert(w);
            }
        }
        CHECK(scan.violation.has_value() == bad);
        if (scan.violation) {
            int l = int(scan.violation->size());
            int ex = int(span(h, *scan.violation)) - (r - 2) * l;
            CHECK((ex <= 1 || (with_top && l == L + 1 && ex <= 2)));
        } else {
            std::set<std::vector<std::uint32_t>> got(scan.tight.begin(), scan.tight.end());
            CHECK(got == tight);
        }
    }
}

TEST_CASE("claim map matches brute force on random small graphs") {
    std::mt19937_64 rng(33);
    for (int round = 0; round < 60; ++round) {
        int r = 3 + int(rng() % 2);
        int n = r + 1 + int(rng() % 6);
        auto h = oracle::random_graph(rng, r, n, 1 + int(rng() % 8));
        auto cm = ClaimMap::compute(h, 8);
        auto sup = h.support();
        for (std::size_t a = 0; a < sup.size(); ++a)
            for (std::size_t b = a + 1; b < sup.size(); ++b)
                CHECK(cm.get(Pair(sup[a], sup[b])) == oracle::claim_bits(h, sup[a], sup[b], 8));
    }
}
