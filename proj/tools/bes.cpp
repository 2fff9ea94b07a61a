// bes: command-line front end
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "bes/claims.hpp"
#include "bes/construction.hpp"
#include "bes/freeness.hpp"
#include "bes/merging.hpp"
#include "bes/search.hpp"
#include "bes/weights.hpp"
#include "json.hpp"

using namespace bes;
using nlohmann::json;

namespace {

constexpr const char* kVersion = "0.1.0";

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

json rat(const Rational& q) {
    std::ostringstream d;
    d << std::fixed << std::setprecision(6) << boost::rational_cast<double>(q);
    return {{"num", q.numerator()},
            {"den", q.denominator()},
            {"str", std::to_string(q.numerator()) + "/" + std::to_string(q.denominator())},
            {"decimal", d.str()}};
}

json pair_json(Pair p) { return json::array({p.u, p.v}); }

json members_json(ClaimBits b) {
    json a = json::array();
    for (int i = 0; i <= kMaxClaimIndex; ++i)
        if (b >> i & 1) a.push_back(i);
    return a;
}

json family_json(const ForbiddenFamily& f) {
    json checks = json::array();
    for (auto [s, l] : f.checks) checks.push_back({{"s", s}, {"l", l}});
    return {{"r", f.r}, {"k", f.k}, {"key", family_key(f)}, {"thresholds", checks}};
}

std::string hash_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError("cannot read " + path);
    std::uint64_t h = 0xcbf29ce484222325ULL;
    char c;
    while (in.get(c)) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    }
    std::ostringstream os;
    os << "fnv1a64:" << std::hex << std::setw(16) << std::setfill('0') << h;
    return os.str();
}

struct Run {
    std::vector<std::string> argv;
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    json inputs = json::array();
    json rng = nullptr;
    int threads = 1;

    Hypergraph load(const std::string& path) {
        inputs.push_back({{"path", path}, {"hash", hash_file(path)}});
        return read_hg(path);
    }

    json manifest() const {
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        return {{"tool", "bes"},
                {"version", kVersion},
                {"command", argv},
                {"inputs", inputs},
                {"rng", rng},
                {"threads", threads},
                {"timing", {{"seconds", secs}}}};
    }

    void emit(json report, const std::string& path = "") const {
        report["manifest"] = manifest();
        std::string text = report.dump(2) + "\n";
        if (path.empty()) {
            std::cout << text;
        } else {
            std::ofstream out(path);
            if (!out) throw UsageError("cannot write " + path);
            out << text;
        }
    }
};

json witness_json(const Hypergraph& g, const ConfigWitness& w) {
    json edges = json::array();
    for (auto i : w.indices) edges.push_back(g.edge(i));
    return {{"indices", w.indices}, {"edges", edges}, {"s_used", w.s_used}, {"k_used", w.k_used}, {"s_bound", w.s_bound}};
}

int cmd_gr(Run& run, int p) {
    auto g = gr_quadratic(p);
    run.emit({{"p", p},
              {"q_quad", g.q_quad},
              {"limit", rat(g.limit)},
              {"limit_num", g.limit.numerator()},
              {"limit_den", g.limit.denominator()},
              {"k", g.k},
              {"pi", rat(g.pi)},
              {"pi_source", g.source}});
    return 0;
}

int cmd_verify(Run& run, const std::string& graph, const std::string& family) {
    auto g = run.load(graph);
    auto fam = ForbiddenFamily::parse(g.r(), family);
    auto res = is_free(g, fam, run.threads);
    json out{{"graph", {{"r", g.r()}, {"n", g.n()}, {"edges", g.size()}}},
             {"family", family_json(fam)},
             {"thresholds", family_json(fam)["thresholds"]},
             {"free", res.free},
             {"method", res.method}};
    if (res.witness) {
        out["witness"] = res.witness->indices;
        out["witness_detail"] = witness_json(g, *res.witness);
    }
    run.emit(out);
    return res.free ? 0 : 1;
}

Pair parse_pair(const std::string& s) {
    auto comma = s.find(',');
    if (comma == std::string::npos) throw UsageError("pair must look like u,v");
    try {
        return Pair(Vertex(std::stoul(s.substr(0, comma))), Vertex(std::stoul(s.substr(comma + 1))));
    } catch (const std::logic_error&) {
        throw UsageError("bad pair: " + s);
    }
}

int cmd_claims(Run& run, const std::string& graph, const std::string& pair, int imax) {
    auto g = run.load(graph);
    if (imax < 1 || imax > kMaxClaimIndex) throw UsageError("imax must be in [1, 16]");
    json out{{"imax", imax}};
    if (!pair.empty()) {
        auto c = claim_set(g, parse_pair(pair), imax);
        out["pair"] = pair_json(c.pair);
        out["members"] = c.members();
    } else {
        auto cm = ClaimMap::compute(g, imax, run.threads);
        out["method"] = cm.method() == ClaimMap::Method::Tight ? "tight sets" : "exhaustive";
        std::vector<std::pair<Pair, ClaimBits>> all;
        for (auto [k, b] : cm.raw()) all.push_back({Pair::from_key(k), b});
        std::sort(all.begin(), all.end());
        json pairs = json::array();
        for (auto& [p, b] : all) pairs.push_back({{"pair", pair_json(p)}, {"members", members_json(b)}});
        out["pairs"] = pairs;
    }
    run.emit(out);
    return 0;
}

json part_json(const Hypergraph& g, const Partition& P, std::size_t j) {
    const auto& part = P.parts[j];
    auto comp = composition_of(P, j);
    // tree recognition backtracks; skip it on big parts
    auto tree = part.size() <= 24 ? is_m_tree(g, part) : std::nullopt;
    auto fl = flexible(g, part);
    json events = json::array();
    if (j < P.history.size())
        for (auto& e : P.history[j])
            events.push_back({{"kept", e.kept}, {"joined", e.joined}, {"via", pair_json(e.via)}, {"kept_claims_a", e.kept_claims_a}});
    return {{"edges", part},
            {"size", part.size()},
            {"span", span(g, part)},
            {"composition", comp.sizes},
            {"sorted_composition", comp.sorted_sizes},
            {"tree", tree ? json(*tree) : json(nullptr)},
            {"flexible", {{"count", fl.count()}, {"edges", fl.flexible_edges}, {"sets", fl.flexible_sets}}},
            {"history", events}};
}

int cmd_merge(Run& run, const std::string& graph, const std::string& stage, const std::string& rule) {
    auto g = run.load(graph);
    Partition P;
    if (!rule.empty()) {
        P = merge(g, one_clusters(g), MergeRule::parse(rule));
    } else if (stage == "trivial") {
        P = trivial_partition(g);
    } else if (stage == "m1") {
        P = one_clusters(g);
    } else if (stage == "m2") {
        P = two_clusters(g);
    } else {
        throw UsageError("stage must be trivial, m1 or m2");
    }
    json parts = json::array();
    for (std::size_t j = 0; j < P.parts.size(); ++j) parts.push_back(part_json(g, P, j));
    json out{{"stage", stage_name(P.stage)}, {"parts", parts}};
    if (!rule.empty()) out["rule"] = MergeRule::parse(rule).str();
    run.emit(out);
    return 0;
}

int cmd_construct(Run& run, int q, std::uint64_t seed, const std::string& p_opt, int imax, const std::string& out_path,
                  const std::string& report_path) {
    auto base = std::make_shared<const BipartiteGraph>(pg2_incidence(q));
    int m = base->left;
    double p = default_probability(m);
    if (p_opt != "auto") {
        try {
            p = std::stod(p_opt);
        } catch (const std::logic_error&) {
            throw UsageError("--p must be auto or a number");
        }
    }
    run.rng = {{"generator", "mt19937_64"},
               {"seed", seed},
               {"streams", "one per center a, seeded splitmix64(seed ^ splitmix64(a))"},
               {"draw", "keep a 2-path when (next() >> 11) * 2^-53 < p; centers in id order, end pairs in adjacency order"}};
    auto fam = sample_paths(base, p, seed);
    PruneReport pr;
    auto clean = prune(fam, imax, &pr);
    auto F = build_blocks(clean);
    auto rep = verify_construction(F, clean, run.threads);
    if (!out_path.empty()) write_hg(F, out_path);
    json out{{"q", q},
             {"m", m},
             {"p", p},
             {"seed", seed},
             {"imax", imax},
             {"paths_sampled", pr.before},
             {"removed", pr.removed},
             {"paths", pr.after},
             {"prune", {{"witnesses", pr.witnesses}, {"nodes", pr.nodes}, {"confirm_nodes", pr.confirm_nodes}, {"confirmed", pr.confirmed}}},
             {"edges", rep.edges},
             {"p1", rep.p1},
             {"p12", rep.p12},
             {"p13", rep.p13},
             {"p4", rep.p4},
             {"ple4", rep.ple4},
             {"union_graph", rep.union_graph},
             {"four_free", rep.four_free},
             {"g8_free", rep.g8_free},
             {"size_ok", rep.size_ok},
             {"decomposition_ok", rep.decomposition_ok},
             {"ok", rep.ok()},
             {"ratio", rat(rep.ratio)}};
    if (rep.witness) out["witness"] = *rep.witness;
    if (!out_path.empty()) out["graph"] = out_path;
    run.emit(out, report_path);
    return rep.ok() ? 0 : 1;
}

int cmd_weigh(Run& run, const std::string& graph, const std::string& scheme) {
    auto g = run.load(graph);
    WeightScheme s;
    if (scheme == "auto")
        s = WeightScheme::for_uniformity(g.r());
    else if (scheme == "r4")
        s = WeightScheme::r4();
    else if (scheme == "r5")
        s = WeightScheme::r5(g.r());
    else
        throw UsageError("scheme must be auto, r4 or r5");
    if (s.r != g.r()) throw UsageError("scheme r4 needs a 4-graph");
    json out{{"scheme", s.str()}, {"r", g.r()}};
    try {
        auto M2 = two_clusters(g);
        auto rep = verify_bounds(g, M2, s, run.threads);
        json clusters = json::array();
        for (std::size_t j = 0; j < rep.per_cluster.size(); ++j) {
            auto& c = rep.per_cluster[j];
            json cj{{"edges", c.edges},
                    {"composition", c.composition.sizes},
                    {"weight", rat(c.weight)},
                    {"target", rat(c.target)},
                    {"identity_ok", c.identity_ok}};
            if (c.edges.size() >= 9) {
                auto cls = classify_cluster(g, M2, j);
                cj["family"] = cls.tag.str();
                cj["probes"] = cls.probes;
                if (!cls.diagnostic.empty()) cj["diagnostic"] = cls.diagnostic;
            }
            clusters.push_back(cj);
        }
        json pairs = json::array();
        for (auto& [p, w] : rep.per_pair) pairs.push_back({{"pair", pair_json(p)}, {"weight", rat(w)}});
        json viol = json::array();
        for (auto& v : rep.violations) viol.push_back(v.str());
        out["free"] = true;
        out["clusters"] = clusters;
        out["pairs"] = pairs;
        out["max_pair"] = rat(rep.max_pair);
        out["violations"] = viol;
        out["n"] = rep.n;
        out["edges"] = g.size();
        out["edge_bound"] = rep.edge_bound ? rat(*rep.edge_bound) : json(nullptr);
        out["ok"] = rep.ok();
        run.emit(out);
        return rep.ok() ? 0 : 1;
    } catch (const NotFree& e) {
        out["free"] = false;
        out["witness"] = e.witness;
        out["ok"] = false;
        run.emit(out);
        return 1;
    }
}

json search_json(const SearchResult& r) {
    return {{"value", r.value},
            {"certified", r.certified},
            {"nodes", r.nodes},
            {"cached", r.cached},
            {"witness", r.witness.edges()}};
}

int cmd_search(Run& run, int r, int n, int s, int k, const std::string& family, std::uint64_t budget, bool symmetry,
               const std::string& cache_dir) {
    ForbiddenFamily f;
    if (!family.empty())
        f = ForbiddenFamily::parse(r, family);
    else if (k > 0 && s > 0)
        f = ForbiddenFamily::single(r, s, k);
    else if (k > 0)
        f = ForbiddenFamily::k_config(r, k);
    else
        throw UsageError("give --k (with optional --s) or --family");
    SearchProblem p{r, n, f, budget, symmetry};
    std::optional<ResultCache> cache;
    if (!cache_dir.empty()) cache.emplace(cache_dir);
    auto res = extremal_cached(p, cache ? &*cache : nullptr);
    json out = search_json(res);
    out["r"] = r;
    out["n"] = n;
    out["family"] = family_json(f);
    out["symmetry"] = symmetry;
    out["budget"] = budget;
    out["density"] = rat(Rational(res.value, std::max<std::int64_t>(1, std::int64_t(n) * n)));
    run.emit(out);
    return 0;
}

int cmd_table(Run& run, int r, int k, const std::string& range, std::uint64_t budget, const std::string& cache_dir) {
    auto dots = range.find("..");
    int lo, hi;
    try {
        if (dots == std::string::npos) {
            lo = hi = std::stoi(range);
        } else {
            lo = std::stoi(range.substr(0, dots));
            hi = std::stoi(range.substr(dots + 2));
        }
    } catch (const std::logic_error&) {
        throw UsageError("--n must look like 4..10");
    }
    if (lo > hi) throw UsageError("empty n range");
    std::optional<ResultCache> cache;
    if (!cache_dir.empty()) cache.emplace(cache_dir);
    auto t = density_table(r, k, lo, hi, budget, cache ? &*cache : nullptr);
    std::cout << t.csv();
    std::cerr << run.manifest().dump() << "\n";
    return 0;
}

int default_threads() {
    if (const char* e = std::getenv("BES_THREADS")) {
        try {
            return std::max(1, std::stoi(e));
        } catch (const std::logic_error&) {
        }
    }
    return 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact tools for sparse hypergraph configurations"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kVersion);
    Run run;
    for (int i = 0; i < argc; ++i) run.argv.push_back(i == 0 ? "bes" : argv[i]);
    run.threads = default_threads();
    app.add_option("--threads", run.threads, "worker threads (default BES_THREADS or 1)")->check(CLI::Range(1, 256));

    std::function<int()> action;

    auto* gr = app.add_subcommand("gr", "generalized Ramsey limit for even p");
    int gr_p = 0;
    gr->add_option("--p", gr_p)->required();
    gr->callback([&] { action = [&] { return cmd_gr(run, gr_p); }; });

    std::string graph, family = "g8";
    auto* verify = app.add_subcommand("verify", "check a graph against a forbidden family");
    verify->add_option("--graph", graph)->required();
    verify->add_option("--family", family, "g<k>, k<k>, k<k>- or s<s>k<k>");
    verify->callback([&] { action = [&] { return cmd_verify(run, graph, family); }; });

    std::string pair;
    int imax = 8;
    auto* claims = app.add_subcommand("claims", "claim sets of one pair or all pairs");
    claims->add_option("--graph", graph)->required();
    claims->add_option("--pair", pair, "u,v");
    claims->add_option("--imax", imax);
    claims->callback([&] { action = [&] { return cmd_claims(run, graph, pair, imax); }; });

    std::string stage = "m2", rule;
    auto* mergec = app.add_subcommand("merge", "1-clusters, 2-clusters or a custom merge");
    mergec->add_option("--graph", graph)->required();
    mergec->add_option("--stage", stage, "trivial, m1 or m2");
    mergec->add_option("--rule", rule, "merge the 1-clusters under a rule such as (1|2)");
    mergec->callback([&] { action = [&] { return cmd_merge(run, graph, stage, rule); }; });

    int q = 0, cimax = 8;
    std::uint64_t seed = 1;
    std::string p_opt = "auto", out_path, report_path;
    auto* construct = app.add_subcommand("construct", "random 3-graph from the projective plane");
    construct->add_option("--q", q)->required();
    construct->add_option("--seed", seed);
    construct->add_option("--p", p_opt, "auto or a probability");
    construct->add_option("--imax", cimax)->check(CLI::Range(2, 8));
    construct->add_option("--out", out_path, "write the graph here");
    construct->add_option("--report", report_path, "write the JSON report here instead of stdout");
    construct->callback([&] { action = [&] { return cmd_construct(run, q, seed, p_opt, cimax, out_path, report_path); }; });

    std::string scheme = "auto";
    auto* weigh = app.add_subcommand("weigh", "pair and cluster weights");
    weigh->add_option("--graph", graph)->required();
    weigh->add_option("--scheme", scheme, "auto, r4 or r5");
    weigh->callback([&] { action = [&] { return cmd_weigh(run, graph, scheme); }; });

    int sr = 3, sn = 0, ss = 0, sk = 0;
    std::uint64_t budget = 0;
    bool symmetry = false;
    std::string sfamily, cache_dir;
    auto* search = app.add_subcommand("search", "exact extremal number for small n");
    search->add_option("--r", sr)->check(CLI::Range(2, 16));
    search->add_option("--n", sn)->required();
    search->add_option("--s", ss);
    search->add_option("--k", sk);
    search->add_option("--family", sfamily);
    search->add_option("--budget", budget, "node limit, 0 for none");
    search->add_flag("--symmetry", symmetry, "fix the first edge");
    search->add_option("--cache", cache_dir);
    search->callback([&] { action = [&] { return cmd_search(run, sr, sn, ss, sk, sfamily, budget, symmetry, cache_dir); }; });

    int tr = 3, tk = 2;
    std::string trange;
    auto* table = app.add_subcommand("table", "f and ex(G_k) over a range of n, as CSV");
    table->add_option("--r", tr)->check(CLI::Range(2, 16));
    table->add_option("--k", tk)->required();
    table->add_option("--n", trange, "lo..hi")->required();
    table->add_option("--budget", budget);
    table->add_option("--cache", cache_dir);
    table->callback([&] { action = [&] { return cmd_table(run, tr, tk, trange, budget, cache_dir); }; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    try {
        return action();
    } catch (const UsageError& e) {
        std::cerr << "bes: " << e.what() << "\n";
        return 2;
    } catch (const MalformedInput& e) {
        std::cerr << "bes: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "bes: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "bes: error: " << e.what() << "\n";
        return 3;
    }
}
