#include <fstream>

#include "bes/search.hpp"
#include "doctest.h"
#include "json.hpp"

using namespace bes;

namespace {

nlohmann::json fixtures() {
    std::ifstream in(std::string(BES_FIXTURE_DIR) + "/search.json");
    REQUIRE(in);
    return nlohmann::json::parse(in);
}

ForbiddenFamily from_checks(int r, const nlohmann::json& c) {
    ForbiddenFamily f;
    f.r = r;
    for (auto& p : c) {
        f.checks.push_back({p[0].get<int>(), p[1].get<int>()});
        f.k = std::max(f.k, p[1].get<int>());
    }
    return f;
}

}  // namespace

TEST_CASE("search matches the frozen exhaustive values") {
    auto fx = fixtures();
    CHECK(fx.size() >= 30);
    for (auto& row : fx) {
        int r = row["r"], n = row["n"];
        INFO(row.dump());
        SearchProblem p{r, n, from_checks(r, row["checks"])};
        auto res = extremal(p);
        CHECK(res.certified);
        CHECK(res.value == row["value"].get<int>());
        CHECK(res.witness.size() == std::size_t(res.value));
        CHECK(is_free(res.witness, p.forbidden).free);
        p.symmetry = true;
        CHECK(extremal(p).value == res.value);
    }
}

TEST_CASE("linear triple systems") {
    const std::vector<int> want{1, 1, 2, 4, 7, 8, 12};
    for (int n = 3; n <= 9; ++n) CHECK(f_value(n, 3, 2).value == want[n - 3]);
    // k = 2: the G family is the same family
    for (int n = 3; n <= 8; ++n) CHECK(ex_G_family(n, 3, 2).value == f_value(n, 3, 2).value);
}

TEST_CASE("ex of G is at most f and both grow with n") {
    for (int k : {3, 4}) {
        int prev_f = 0, prev_ex = 0;
        for (int n = 3; n <= 7; ++n) {
            auto f = f_value(n, 3, k), ex = ex_G_family(n, 3, k);
            CHECK(ex.value <= f.value);
            CHECK(f.value >= prev_f);
            CHECK(ex.value >= prev_ex);
            prev_f = f.value;
            prev_ex = ex.value;
        }
    }
}

TEST_CASE("budget and limits") {
    SearchProblem p{3, 9, ForbiddenFamily::k_config(3, 3), 50};
    auto res = extremal(p);
    CHECK(!res.certified);
    CHECK(is_free(res.witness, p.forbidden).free);
    SearchProblem big{3, 15, ForbiddenFamily::k_config(3, 2)};
    CHECK_THROWS(extremal(big));
    big.max_n = 20;
    big.budget = 10;
    CHECK_NOTHROW(extremal(big));
    CHECK(f_value(3, 3, 5).value == 1);
    CHECK(f_value(2, 3, 2).value == 0);
}

TEST_CASE("cache") {
    auto dir = std::filesystem::temp_directory_path() / "bes-search-cache-test";
    std::filesystem::remove_all(dir);
    ResultCache cache(dir);
    auto a = f_value(7, 3, 2, 0, &cache);
    CHECK(!a.cached);
    auto b = f_value(7, 3, 2, 0, &cache);
    CHECK(b.cached);
    CHECK(b.value == 7);
    CHECK(b.witness == a.witness);
    // a corrupted entry is ignored
    SearchProblem p{3, 7, ForbiddenFamily::k_config(3, 2)};
    std::ofstream(cache.path_for(p)) << "{\"key\":\"" << ResultCache::key(p) << "\",\"value\":9,\"nodes\":1,\"edges\":[]}";
    CHECK(!cache.get(p));
    std::filesystem::remove_all(dir);
}

TEST_CASE("density table") {
    auto t = density_table(3, 2, 3, 9);
    REQUIRE(t.target);
    CHECK(t.target->value == Rational(1, 6));
    for (auto& row : t.rows) CHECK(row.f_density < Rational(1, 6));
    CHECK(t.rows.back().f.value == 12);
    CHECK(known_pi(3, 3)->value == Rational(1, 5));
    CHECK(known_pi(3, 4)->value == Rational(7, 36));
    CHECK(known_pi(4, 8)->value == Rational(1, 12));
    CHECK(known_pi(3, 8)->lower_bound_only);
    CHECK(t.csv().find("r,k,n,f") == 0);
}
