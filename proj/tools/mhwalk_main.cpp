// mhwalk: Metropolis-Hastings-walk connectivity solvers and walk statistics.
//
// Exit codes: 0 = Connected (or success for non-solve commands),
// 1 = ProbablyNotConnected, 2 = usage / input error.

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "mhwalk/generators.hpp"
#include "mhwalk/graph.hpp"
#include "mhwalk/graph_io.hpp"
#include "mhwalk/potential.hpp"
#include "mhwalk/solver.hpp"
#include "mhwalk/stats.hpp"
#include "mhwalk/validate.hpp"
#include "mhwalk/version.hpp"

namespace {

using mhwalk::ConnectivityQuery;
using mhwalk::Graph;
using mhwalk::NodeId;
using ordered_json = nlohmann::ordered_json;

uint64_t parse_u64(const std::string& s, const std::string& what) {
    try {
        size_t pos = 0;
        const uint64_t v = std::stoull(s, &pos);
        if (pos != s.size()) {
            throw std::invalid_argument("");
        }
        return v;
    } catch (const std::exception&) {
        throw std::invalid_argument("bad " + what + ": '" + s + "'");
    }
}

// --seed wins, then MHWALK_SEED, then a random seed announced on stderr.
uint64_t resolve_seed(const CLI::Option* seed_opt, uint64_t seed_val) {
    if (seed_opt->count() > 0) {
        return seed_val;
    }
    if (const char* env = std::getenv("MHWALK_SEED")) {
        return parse_u64(env, "MHWALK_SEED");
    }
    std::random_device rd;
    const uint64_t s = (static_cast<uint64_t>(rd()) << 32) ^ rd();
    std::cerr << "seed: " << s << '\n';
    return s;
}

std::vector<std::string> split_on(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::string cur;
    for (char ch : s) {
        if (ch == sep) {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(ch);
        }
    }
    parts.push_back(cur);
    return parts;
}

struct GenResult {
    Graph g;
    std::optional<ConnectivityQuery> default_query;
};

// Colon-separated generator specs:
//   glitter:L  path:K  cycle:K  complete:K  lollipop:K:P
//   random:N:M[:S]  random-connected:N:M[:S]  disconnected-pair:<inner>
// S embedded in a random spec overrides the run seed for generation.
GenResult build_graph(const std::string& spec, uint64_t seed) {
    const std::vector<std::string> parts = split_on(spec, ':');
    const std::string& kind = parts[0];
    const auto want = [&](size_t lo, size_t hi) {
        if (parts.size() < lo + 1 || parts.size() > hi + 1) {
            throw std::invalid_argument("generator spec '" + spec + "' has the wrong arity");
        }
    };
    const auto num = [&](size_t idx) { return parse_u64(parts[idx], "generator parameter"); };

    if (kind == "glitter") {
        want(1, 1);
        return {mhwalk::gen_glitter_star(static_cast<uint32_t>(num(1))), std::nullopt};
    }
    if (kind == "path") {
        want(1, 1);
        return {mhwalk::gen_path(static_cast<uint32_t>(num(1))), std::nullopt};
    }
    if (kind == "cycle") {
        want(1, 1);
        return {mhwalk::gen_cycle(static_cast<uint32_t>(num(1))), std::nullopt};
    }
    if (kind == "complete") {
        want(1, 1);
        return {mhwalk::gen_complete(static_cast<uint32_t>(num(1))), std::nullopt};
    }
    if (kind == "lollipop") {
        want(2, 2);
        return {mhwalk::gen_lollipop(static_cast<uint32_t>(num(1)),
                                     static_cast<uint32_t>(num(2))),
                std::nullopt};
    }
    if (kind == "random" || kind == "random-connected") {
        want(2, 3);
        const uint32_t n = static_cast<uint32_t>(num(1));
        const uint64_t m = num(2);
        uint64_t s = seed;
        if (parts.size() == 4) {
            std::string tok = parts[3];
            if (tok.rfind("seed", 0) == 0) {
                tok = tok.substr(4);
            }
            s = parse_u64(tok, "generator seed");
        }
        Graph g = kind == "random" ? mhwalk::gen_random_graph(n, m, s)
                                   : mhwalk::gen_random_connected(n, m, s);
        return {std::move(g), std::nullopt};
    }
    if (kind == "disconnected-pair") {
        if (parts.size() < 2) {
            throw std::invalid_argument("disconnected-pair needs an inner generator spec");
        }
        const std::string inner = spec.substr(kind.size() + 1);
        GenResult base = build_graph(inner, seed);
        auto [g, q] = mhwalk::gen_disconnected_pair(base.g);
        return {std::move(g), q};
    }
    throw std::invalid_argument("unknown generator '" + kind + "'");
}

GenResult acquire_graph(const std::string& gen_spec, const std::string& input_path,
                        uint64_t seed) {
    if (!gen_spec.empty() && !input_path.empty()) {
        throw std::invalid_argument("give either --gen or --input, not both");
    }
    if (!gen_spec.empty()) {
        return build_graph(gen_spec, seed);
    }
    if (!input_path.empty()) {
        return {mhwalk::load_edge_list(input_path), std::nullopt};
    }
    throw std::invalid_argument("a graph is required: --gen SPEC or --input FILE");
}

std::string graph_desc(const Graph& g) {
    return "n=" + std::to_string(g.node_count()) + ",m=" + std::to_string(g.edge_count());
}

std::string utc_timestamp() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t tt = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&tt));
    return buf;
}

// ---- solve ----------------------------------------------------------------

struct SolveArgs {
    std::string gen_spec;
    std::string input_path;
    int64_t s = -1;
    int64_t t = -1;
    std::string solver = "landmark";
    uint32_t p = 4;
    double gamma = 60.0;
    double beta = 72.0;
    double c_scale = 1.0;
    uint64_t seed_val = 0;
    CLI::Option* seed_opt = nullptr;
    bool no_early_stop = false;
};

int cmd_solve(const SolveArgs& a) {
    const uint64_t seed = resolve_seed(a.seed_opt, a.seed_val);
    GenResult gr = acquire_graph(a.gen_spec, a.input_path, seed);

    ConnectivityQuery q{};
    if (a.s >= 0 && a.t >= 0) {
        q = {static_cast<NodeId>(a.s), static_cast<NodeId>(a.t)};
    } else if (a.s < 0 && a.t < 0 && gr.default_query) {
        q = *gr.default_query;
    } else if (gr.default_query) {
        q = *gr.default_query;
        if (a.s >= 0) {
            q.s = static_cast<NodeId>(a.s);
        }
        if (a.t >= 0) {
            q.t = static_cast<NodeId>(a.t);
        }
    } else {
        throw std::invalid_argument("--s and --t are required for this graph");
    }

    mhwalk::SolveResult res;
    if (a.solver == "landmark") {
        mhwalk::LandmarkConfig cfg;
        cfg.p = a.p;
        cfg.gamma = a.gamma;
        cfg.beta = a.beta;
        cfg.c_scale = a.c_scale;
        cfg.seed = seed;
        cfg.stop_when_merged = !a.no_early_stop;
        res = mhwalk::test_connectivity(gr.g, q, cfg);
    } else if (a.solver == "logspace") {
        res = mhwalk::solve_logspace(gr.g, q, a.c_scale, seed);
    } else {
        throw std::invalid_argument("unknown solver '" + a.solver + "'");
    }

    ordered_json j;
    j["command"] = "solve";
    j["solver"] = res.solver;
    j["graph"] = graph_desc(gr.g);
    j["s"] = q.s;
    j["t"] = q.t;
    j["p"] = a.p;
    j["gamma"] = a.gamma;
    j["beta"] = a.beta;
    j["c_scale"] = a.c_scale;
    j["seed"] = seed;
    j["answer"] =
        res.answer == mhwalk::Answer::Connected ? "connected" : "probably_not_connected";
    j["steps_executed"] = res.steps_executed;
    j["landmarks_used"] = res.landmarks_used;
    j["merged_class_count"] = res.merged_class_count;
    j["split_d"] = res.split_d;
    j["n_star"] = res.n_star;
    j["walk_length"] = res.walk_length;
    j["rounds"] = res.rounds;
    j["step_budget"] = res.step_budget;
    j["space_proxy_bits"] = res.space_proxy_bits;
    j["version"] = MHWALK_VERSION;
    std::cout << j.dump(2) << '\n';

    return res.answer == mhwalk::Answer::Connected ? 0 : 1;
}

// ---- generate -------------------------------------------------------------

struct GenerateArgs {
    std::string gen_spec;
    std::string out_path;
    uint64_t seed_val = 0;
    CLI::Option* seed_opt = nullptr;
};

int cmd_generate(const GenerateArgs& a) {
    const uint64_t seed = resolve_seed(a.seed_opt, a.seed_val);
    GenResult gr = build_graph(a.gen_spec, seed);
    mhwalk::save_edge_list(a.out_path, gr.g);

    const std::string manifest_path = a.out_path + ".manifest.json";
    {
        ordered_json m;
        m["created_utc"] = utc_timestamp();
        m["gen"] = a.gen_spec;
        m["n"] = gr.g.node_count();
        m["m"] = gr.g.edge_count();
        m["seed"] = seed;
        m["format"] = "edge-list-v1";
        m["version"] = MHWALK_VERSION;
        std::ofstream mf(manifest_path);
        if (!mf) {
            throw std::runtime_error("cannot write " + manifest_path);
        }
        mf << m.dump(2) << '\n';
    }

    ordered_json j;
    j["command"] = "generate";
    j["gen"] = a.gen_spec;
    j["n"] = gr.g.node_count();
    j["m"] = gr.g.edge_count();
    j["out"] = a.out_path;
    j["manifest"] = manifest_path;
    j["seed"] = seed;
    j["version"] = MHWALK_VERSION;
    std::cout << j.dump(2) << '\n';
    return 0;
}

// ---- bench ----------------------------------------------------------------

struct BenchArgs {
    std::string family = "glitter";
    std::vector<uint64_t> sizes;
    std::vector<std::string> kernels = {"unit", "unbiased", "finetuned"};
    uint64_t trials = 100;
    uint64_t seed_val = 0;
    CLI::Option* seed_opt = nullptr;
    unsigned jobs = 1;
    std::string out_path;
    double step_cap_mult = 100.0;
};

Graph bench_instance(const std::string& family, uint64_t size, uint64_t seed) {
    if (family == "glitter") {
        return mhwalk::gen_glitter_star(static_cast<uint32_t>(size));
    }
    if (family == "path") {
        return mhwalk::gen_path(static_cast<uint32_t>(size));
    }
    if (family == "cycle") {
        return mhwalk::gen_cycle(static_cast<uint32_t>(size));
    }
    if (family == "complete") {
        return mhwalk::gen_complete(static_cast<uint32_t>(size));
    }
    if (family == "lollipop") {
        return mhwalk::gen_lollipop(static_cast<uint32_t>(size), static_cast<uint32_t>(size));
    }
    if (family == "random") {
        return mhwalk::gen_random_connected(static_cast<uint32_t>(size), 3 * size, seed);
    }
    throw std::invalid_argument("unknown family '" + family + "'");
}

mhwalk::Potential bench_kernel(const std::string& name, const Graph& g) {
    if (name == "unit") {
        return mhwalk::Potential::unit();
    }
    if (name == "unbiased") {
        return mhwalk::Potential::unbiased(g);
    }
    if (name == "finetuned") {
        return mhwalk::Potential::fine_tuned(g);
    }
    throw std::invalid_argument("unknown kernel '" + name + "'");
}

int cmd_bench(const BenchArgs& a) {
    const uint64_t seed = resolve_seed(a.seed_opt, a.seed_val);
    if (a.sizes.empty()) {
        throw std::invalid_argument("--sizes is required");
    }
    if (a.trials == 0) {
        throw std::invalid_argument("--trials must be at least 1");
    }
    for (const std::string& k : a.kernels) {
        if (k != "unit" && k != "unbiased" && k != "finetuned") {
            throw std::invalid_argument("unknown kernel '" + k + "'");
        }
    }
    const uint64_t min_size = *std::min_element(a.sizes.begin(), a.sizes.end());
    const uint64_t max_size = *std::max_element(a.sizes.begin(), a.sizes.end());
    if (a.sizes.size() < 4) {
        std::cerr << "warning: fewer than 4 sizes makes the scaling fit fragile\n";
    }
    if (max_size < 8 * min_size) {
        std::cerr << "warning: size span below 8x makes the scaling fit fragile\n";
    }

    std::ostringstream body;
    {
        ordered_json man;
        man["command"] = "bench";
        man["family"] = a.family;
        man["sizes"] = a.sizes;
        man["kernels"] = a.kernels;
        man["quantity"] = "cover_time";
        man["trials"] = a.trials;
        man["step_cap_mult"] = a.step_cap_mult;
        man["seed"] = seed;
        man["jobs"] = a.jobs;
        man["version"] = MHWALK_VERSION;
        body << "# manifest: " << man.dump() << '\n';
    }
    body << "family,size,n,kernel,quantity,trials,censored,mean,std_error,seed\n";

    // size -> n for the scaling fit, estimates per kernel.
    std::vector<double> fit_n;
    std::vector<std::vector<double>> fit_est(a.kernels.size());
    bool fit_ok = true;

    uint64_t cell_seed = seed;
    for (uint64_t size : a.sizes) {
        const Graph g = bench_instance(a.family, size, seed + size);
        const uint64_t n = g.node_count();
        fit_n.push_back(static_cast<double>(n));
        const uint64_t cap =
            static_cast<uint64_t>(a.step_cap_mult * static_cast<double>(n) * static_cast<double>(n));
        for (size_t ki = 0; ki < a.kernels.size(); ++ki) {
            const mhwalk::Potential f = bench_kernel(a.kernels[ki], g);
            mhwalk::EstimateOptions opts;
            opts.jobs = a.jobs;
            ++cell_seed;
            const mhwalk::EstimatorReport rep =
                mhwalk::estimate_cover_time(g, f, 0, a.trials, cap, cell_seed, opts);
            body << a.family << ',' << size << ',' << n << ',' << a.kernels[ki]
                 << ",cover_time," << rep.trials << ',' << rep.censored << ',' << rep.estimate
                 << ',';
            if (rep.trials >= 2) {
                body << rep.std_error;
            }
            body << ',' << cell_seed << '\n';
            if (rep.estimate > 0.0) {
                fit_est[ki].push_back(rep.estimate);
            } else {
                fit_ok = false;
            }
        }
    }

    if (a.sizes.size() >= 3 && fit_ok) {
        body << "# summary\n";
        body << "family,kernel,exponent,r2,sizes\n";
        for (size_t ki = 0; ki < a.kernels.size(); ++ki) {
            const mhwalk::ScalingFit fit = mhwalk::fit_scaling_exponent(fit_n, fit_est[ki]);
            body << a.family << ',' << a.kernels[ki] << ',' << fit.exponent << ',' << fit.r2
                 << ',';
            for (size_t si = 0; si < a.sizes.size(); ++si) {
                body << (si ? ";" : "") << a.sizes[si];
            }
            body << '\n';
        }
    } else if (a.sizes.size() < 3) {
        std::cerr << "warning: scaling fit skipped (needs at least 3 sizes)\n";
    }

    if (a.out_path.empty()) {
        std::cout << body.str();
    } else {
        std::ofstream out(a.out_path);
        if (!out) {
            throw std::runtime_error("cannot write " + a.out_path);
        }
        out << body.str();
        ordered_json m;
        m["created_utc"] = utc_timestamp();
        m["command"] = "bench";
        m["family"] = a.family;
        m["out"] = a.out_path;
        m["seed"] = seed;
        m["version"] = MHWALK_VERSION;
        std::ofstream mf(a.out_path + ".manifest.json");
        if (!mf) {
            throw std::runtime_error("cannot write " + a.out_path + ".manifest.json");
        }
        mf << m.dump(2) << '\n';
    }
    return 0;
}

// ---- validate -------------------------------------------------------------

struct ValidateArgs {
    std::string suite;
    std::string budget = "small";
    uint64_t seed_val = 0;
    CLI::Option* seed_opt = nullptr;
    unsigned jobs = 1;
};

int cmd_validate(const ValidateArgs& a) {
    const uint64_t seed = resolve_seed(a.seed_opt, a.seed_val);
    mhwalk::SuiteBudget budget;
    if (a.budget == "small") {
        budget = mhwalk::SuiteBudget::Small;
    } else if (a.budget == "full") {
        budget = mhwalk::SuiteBudget::Full;
    } else {
        throw std::invalid_argument("budget must be small or full");
    }
    const mhwalk::SuiteResult res = mhwalk::run_suite(a.suite, seed, budget, a.jobs, std::cout);
    return res.passed ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Metropolis-Hastings walk toolkit: connectivity solvers, graph generators, "
                 "walk statistics"};
    app.require_subcommand(1);

    SolveArgs sa;
    CLI::App* solve = app.add_subcommand("solve", "decide s-t connectivity");
    solve->add_option("--gen", sa.gen_spec, "generator spec, e.g. glitter:3 or random:100:300");
    solve->add_option("--input", sa.input_path, "edge-list file");
    solve->add_option("--s", sa.s, "source node");
    solve->add_option("--t", sa.t, "target node");
    solve->add_option("--solver", sa.solver, "landmark or logspace")
        ->check(CLI::IsMember({"landmark", "logspace"}));
    solve->add_option("--p", sa.p, "landmark count");
    solve->add_option("--gamma", sa.gamma, "walk-length constant");
    solve->add_option("--beta", sa.beta, "round-count constant");
    solve->add_option("--c-scale", sa.c_scale, "guarantee-constant scale factor");
    sa.seed_opt = solve->add_option("--seed", sa.seed_val, "rng seed");
    solve->add_flag("--no-early-stop", sa.no_early_stop,
                    "always run the full step budget");

    GenerateArgs ga;
    CLI::App* generate = app.add_subcommand("generate", "write a graph as an edge list");
    generate->add_option("--gen", ga.gen_spec, "generator spec")->required();
    generate->add_option("--out", ga.out_path, "output edge-list path")->required();
    ga.seed_opt = generate->add_option("--seed", ga.seed_val, "rng seed");

    BenchArgs ba;
    CLI::App* bench = app.add_subcommand("bench", "cover-time scaling sweep (CSV)");
    bench->add_option("--family", ba.family, "glitter|lollipop|path|cycle|complete|random");
    bench->add_option("--sizes", ba.sizes, "comma-separated size list")
        ->delimiter(',')
        ->required();
    bench->add_option("--kernels", ba.kernels, "comma-separated kernel list")->delimiter(',');
    bench->add_option("--trials", ba.trials, "trials per cell");
    ba.seed_opt = bench->add_option("--seed", ba.seed_val, "rng seed");
    bench->add_option("--jobs", ba.jobs, "worker threads");
    bench->add_option("--out", ba.out_path, "write CSV here instead of stdout");
    bench->add_option("--step-cap-mult", ba.step_cap_mult, "step cap = mult * n^2");

    ValidateArgs va;
    CLI::App* validate = app.add_subcommand("validate", "run a self-check suite");
    validate->add_option("--suite", va.suite, "suite name or 'all'")->required();
    validate->add_option("--budget", va.budget, "small or full");
    va.seed_opt = validate->add_option("--seed", va.seed_val, "rng seed");
    validate->add_option("--jobs", va.jobs, "worker threads");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (solve->parsed()) {
            return cmd_solve(sa);
        }
        if (generate->parsed()) {
            return cmd_generate(ga);
        }
        if (bench->parsed()) {
            return cmd_bench(ba);
        }
        if (validate->parsed()) {
            return cmd_validate(va);
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::runtime_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 2;
}
