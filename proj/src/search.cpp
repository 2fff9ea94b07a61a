#include "bes/search.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace bes {

std::string family_key(const ForbiddenFamily& f) {
    auto c = f.checks;
    std::sort(c.begin(), c.end(), [](auto& a, auto& b) { return std::tie(a.second, a.first) < std::tie(b.second, b.first); });
    std::string out;
    for (auto& [s, l] : c) {
        if (!out.empty()) out += ",";
        out += std::to_string(s) + ":" + std::to_string(l);
    }
    return out;
}

namespace {

struct Searcher {
    int r = 3, n = 0;
    std::vector<std::pair<int, int>> checks;
    std::uint64_t budget = 0;
    bool linear = false;  // two edges may not share two vertices
    int cap = 0;          // max degree when linear

    std::vector<std::uint64_t> chosen, best;
    std::uint64_t nodes = 0;
    bool aborted = false;

    // adding e keeps every check
    bool fits(std::uint64_t e) const {
        for (auto [s, l] : checks) {
            if (l == 1) {
                if (r <= s) return false;
                continue;
            }
            if (l - 1 > int(chosen.size())) continue;
            // some l-1 chosen edges with e spanning <= s
            auto rec = [&](auto&& self, std::size_t from, int left, std::uint64_t u) -> bool {
                if (std::popcount(u) > s) return false;
                if (left == 0) return true;
                for (std::size_t i = from; i + left <= chosen.size(); ++i)
                    if (self(self, i + 1, left - 1, u | chosen[i])) return true;
                return false;
            };
            if (rec(rec, 0, l - 1, e)) return false;
        }
        return true;
    }

    int linear_bound(const std::vector<std::uint64_t>& rest) const {
        // each vertex lies in at most cap edges
        int deg[64] = {0}, avail[64] = {0};
        for (auto e : chosen)
            for (auto m = e; m; m &= m - 1) ++deg[std::countr_zero(m)];
        for (auto e : rest)
            for (auto m = e; m; m &= m - 1) ++avail[std::countr_zero(m)];
        int tot = 0;
        for (int v = 0; v < n; ++v) tot += std::min(cap - deg[v], avail[v]);
        return tot / r;
    }

    void go(const std::vector<std::uint64_t>& rest, bool first) {
        if (budget && nodes >= budget) {
            aborted = true;
            return;
        }
        ++nodes;
        if (chosen.size() > best.size()) best = chosen;
        std::size_t room = rest.size();
        if (linear) room = std::min<std::size_t>(room, std::size_t(linear_bound(rest)));
        if (chosen.size() + room <= best.size()) return;
        std::size_t stop = first ? std::min<std::size_t>(1, rest.size()) : rest.size();
        for (std::size_t i = 0; i < stop; ++i) {
            if (chosen.size() + rest.size() - i <= best.size()) return;
            chosen.push_back(rest[i]);
            std::vector<std::uint64_t> next;
            next.reserve(rest.size() - i);
            for (std::size_t j = i + 1; j < rest.size(); ++j)
                if (fits(rest[j])) next.push_back(rest[j]);
            go(next, false);
            chosen.pop_back();
            if (aborted) return;
        }
    }
};

}  // namespace

SearchResult extremal(const SearchProblem& prob) {
    if (prob.r < 2 || prob.r > kMaxUniformity) throw std::invalid_argument("bad uniformity");
    if (prob.n < 0 || prob.n > prob.max_n || prob.n > 63)
        throw std::invalid_argument("n = " + std::to_string(prob.n) + " is above the search limit " +
                                    std::to_string(std::min(prob.max_n, 63)));
    if (prob.forbidden.r != prob.r) throw std::invalid_argument("family and problem have different r");
    auto t0 = std::chrono::steady_clock::now();
    Searcher S;
    S.r = prob.r;
    S.n = prob.n;
    S.checks = prob.forbidden.checks;
    S.budget = prob.budget;
    for (auto [s, l] : S.checks)
        if (l == 2 && s >= 2 * prob.r - 2) S.linear = true;
    if (S.linear) S.cap = prob.r > 1 ? (prob.n - 1) / (prob.r - 1) : prob.n;

    std::vector<std::uint64_t> cands;
    if (prob.n >= prob.r) {
        // r-subsets in lexicographic order
        std::vector<int> c(prob.r);
        for (int i = 0; i < prob.r; ++i) c[i] = i;
        while (true) {
            std::uint64_t m = 0;
            for (int v : c) m |= 1ull << v;
            cands.push_back(m);
            int i = prob.r - 1;
            while (i >= 0 && c[i] == prob.n - prob.r + i) --i;
            if (i < 0) break;
            ++c[i];
            for (int j = i + 1; j < prob.r; ++j) c[j] = c[j - 1] + 1;
        }
    }
    std::vector<std::uint64_t> start;
    for (auto e : cands)
        if (S.fits(e)) start.push_back(e);
    S.go(start, prob.symmetry);

    SearchResult res;
    res.value = int(S.best.size());
    res.nodes = S.nodes;
    res.certified = !S.aborted;
    std::vector<Edge> edges;
    for (auto m : S.best) {
        Edge e;
        for (; m; m &= m - 1) e.push_back(Vertex(std::countr_zero(m)));
        edges.push_back(e);
    }
    res.witness = Hypergraph(prob.r, std::size_t(prob.n), edges);
    if (!is_free(res.witness, prob.forbidden).free) throw std::logic_error("search produced a non-free witness");
    res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return res;
}

ResultCache::ResultCache(std::filesystem::path dir) : dir_(std::move(dir)) { std::filesystem::create_directories(dir_); }

std::string ResultCache::key(const SearchProblem& prob) {
    return "r=" + std::to_string(prob.r) + ";n=" + std::to_string(prob.n) + ";family=" + family_key(prob.forbidden);
}

std::filesystem::path ResultCache::path_for(const SearchProblem& prob) const {
    // FNV-1a
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : key(prob)) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    std::ostringstream os;
    os << std::hex << h << ".json";
    return dir_ / os.str();
}

std::optional<SearchResult> ResultCache::get(const SearchProblem& prob) const {
    std::ifstream in(path_for(prob));
    if (!in) return std::nullopt;
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception&) {
        return std::nullopt;
    }
    if (j.value("key", "") != key(prob)) return std::nullopt;
    SearchResult res;
    res.value = j.at("value").get<int>();
    res.nodes = j.at("nodes").get<std::uint64_t>();
    res.certified = true;
    res.cached = true;
    std::vector<Edge> edges = j.at("edges").get<std::vector<Edge>>();
    res.witness = Hypergraph(prob.r, std::size_t(prob.n), edges);
    if (int(res.witness.size()) != res.value || !is_free(res.witness, prob.forbidden).free) return std::nullopt;
    return res;
}

void ResultCache::put(const SearchProblem& prob, const SearchResult& res) const {
    if (!res.certified) return;
    nlohmann::json j;
    j["key"] = key(prob);
    j["value"] = res.value;
    j["nodes"] = res.nodes;
    j["edges"] = res.witness.edges();
    auto p = path_for(prob);
    auto tmp = p;
    tmp += ".tmp";
    std::ofstream(tmp) << j.dump() << "\n";
    std::filesystem::rename(tmp, p);
}

SearchResult extremal_cached(const SearchProblem& prob, const ResultCache* cache) {
    if (cache)
        if (auto hit = cache->get(prob)) return *hit;
    auto res = extremal(prob);
    if (cache) cache->put(prob, res);
    return res;
}

SearchResult f_value(int n, int r, int k, std::uint64_t budget, const ResultCache* cache) {
    SearchProblem p{r, n, ForbiddenFamily::k_config(r, k), budget};
    return extremal_cached(p, cache);
}

SearchResult ex_G_family(int n, int r, int k, std::uint64_t budget, const ResultCache* cache) {
    SearchProblem p{r, n, ForbiddenFamily::g(r, k), budget};
    return extremal_cached(p, cache);
}

std::optional<PiValue> known_pi(int r, int k) {
    if (r < 3 || k < 2) return std::nullopt;
    const std::int64_t a = std::int64_t(r) * r - r;
    if (r == 3) {
        switch (k) {
            case 2: return PiValue{Rational(1, 6), false, "1/6"};
            case 3: return PiValue{Rational(1, 5), false, "1/5"};
            case 4: return PiValue{Rational(7, 36), false, "7/36"};
            case 5:
            case 7: return PiValue{Rational(1, 5), false, "1/(r^2-r-1)"};
            case 6: return PiValue{Rational(61, 330), false, "61/330"};
            case 8: return PiValue{Rational(3, 16), true, "3/16 (lower bound)"};
            default: return std::nullopt;
        }
    }
    if (k > 8) return std::nullopt;
    if (k % 2 == 0) return PiValue{Rational(1, a), false, "1/(r^2-r)"};
    return PiValue{Rational(1, a - 1), false, "1/(r^2-r-1)"};
}

std::string DensityTable::csv() const {
    std::ostringstream os;
    os << "r,k,n,f,f_certified,f_over_n2,ex,ex_certified,ex_over_n2,pi_target\n";
    for (auto& row : rows) {
        os << r << "," << k << "," << row.n << "," << row.f.value << "," << row.f.certified << ","
           << boost::rational_cast<double>(row.f_density) << "," << row.ex.value << "," << row.ex.certified << ","
           << boost::rational_cast<double>(row.ex_density) << ",";
        if (target) os << boost::rational_cast<double>(target->value) << (target->lower_bound_only ? " (lower)" : "");
        os << "\n";
    }
    return os.str();
}

DensityTable density_table(int r, int k, int n_lo, int n_hi, std::uint64_t budget, const ResultCache* cache) {
    DensityTable t;
    t.r = r;
    t.k = k;
    t.target = known_pi(r, k);
    for (int n = std::max(n_lo, 1); n <= n_hi; ++n) {
        DensityRow row;
        row.n = n;
        row.f = f_value(n, r, k, budget, cache);
        row.ex = ex_G_family(n, r, k, budget, cache);
        row.f_density = Rational(row.f.value, std::int64_t(n) * n);
        row.ex_density = Rational(row.ex.value, std::int64_t(n) * n);
        t.rows.push_back(std::move(row));
    }
    return t;
}

}  // namespace bes
