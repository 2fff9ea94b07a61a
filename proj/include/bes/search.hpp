#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "bes/construction.hpp"
#include "bes/freeness.hpp"
#include "bes/hypergraph.hpp"

namespace bes {

struct SearchProblem {
    int r = 3;
    int n = 0;
    ForbiddenFamily forbidden;
    std::uint64_t budget = 0;  // node limit, 0 for none
    bool symmetry = false;     // fix the first edge to {0..r-1}
    int max_n = 14;
};

struct SearchResult {
    int value = 0;
    Hypergraph witness;
    bool certified = false;  // the whole tree was exhausted
    std::uint64_t nodes = 0;
    double seconds = 0;
    bool cached = false;
};

// canonical text for a family, e.g. "4:2" or "3:2,5:3"
std::string family_key(const ForbiddenFamily& f);

SearchResult extremal(const SearchProblem& prob);

// content-addressed store of certified results
class ResultCache {
public:
    explicit ResultCache(std::filesystem::path dir);
    static std::string key(const SearchProblem& prob);
    std::optional<SearchResult> get(const SearchProblem& prob) const;
    void put(const SearchProblem& prob, const SearchResult& res) const;
    std::filesystem::path path_for(const SearchProblem& prob) const;

private:
    std::filesystem::path dir_;
};

SearchResult extremal_cached(const SearchProblem& prob, const ResultCache* cache);

// f(n; (r-2)k+2, k)
SearchResult f_value(int n, int r, int k, std::uint64_t budget = 0, const ResultCache* cache = nullptr);
// ex(n; G_k)
SearchResult ex_G_family(int n, int r, int k, std::uint64_t budget = 0, const ResultCache* cache = nullptr);

struct PiValue {
    Rational value{0};
    bool lower_bound_only = false;
    std::string formula;
};

// the known limits pi(r, k), if tabulated
std::optional<PiValue> known_pi(int r, int k);

struct DensityRow {
    int n = 0;
    SearchResult f, ex;
    Rational f_density{0}, ex_density{0};  // value / n^2
};

struct DensityTable {
    int r = 3, k = 2;
    std::optional<PiValue> target;
    std::vector<DensityRow> rows;
    std::string csv() const;
};

DensityTable density_table(int r, int k, int n_lo, int n_hi, std::uint64_t budget = 0,
                           const ResultCache* cache = nullptr);

}  // namespace bes
