#include "mhwalk/validate.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "mhwalk/batch.hpp"
#include "mhwalk/generators.hpp"
#include "mhwalk/graph.hpp"
#include "mhwalk/potential.hpp"
#include "mhwalk/rng.hpp"
#include "mhwalk/split_view.hpp"
#include "mhwalk/stats.hpp"
#include "mhwalk/transition_matrix.hpp"
#include "mhwalk/union_find.hpp"
#include "mhwalk/walk.hpp"

namespace mhwalk {

namespace {

struct Checker {
    std::ostream& out;
    uint64_t checks = 0;
    uint64_t failures = 0;

    void check(bool ok, const std::string& what) {
        ++checks;
        if (!ok) {
            ++failures;
            out << "  FAIL " << what << '\n';
        }
    }

    void line(const std::string& s) { out << s << '\n'; }
};

std::vector<Potential> kernel_set(const Graph& g) {
    std::vector<Potential> fs;
    fs.push_back(Potential::unit());
    fs.push_back(Potential::unbiased(g));
    fs.push_back(Potential::fine_tuned(g));
    fs.push_back(Potential::custom(
        [](NodeId v) { return 1.0 + 0.37 * static_cast<double>((v * 31 + 7) % 5); },
        "mixedcustom"));
    return fs;
}

// |freq - p| within 4 binomial sigmas (impossible outcomes must never occur).
bool freq_close(uint64_t count, uint64_t draws, double p) {
    if (p == 0.0) {
        return count == 0;
    }
    const double freq = static_cast<double>(count) / static_cast<double>(draws);
    const double sigma = std::sqrt(p * (1.0 - p) / static_cast<double>(draws));
    return std::abs(freq - p) <= 4.0 * sigma + 1e-12;
}

void suite_graph(Checker& c, uint64_t seed, SuiteBudget budget) {
    const uint32_t iters = budget == SuiteBudget::Small ? 60 : 300;
    Rng rng = Rng::stream(seed, 101);
    for (uint32_t it = 0; it < iters; ++it) {
        const uint32_t n = 1 + rng.uniform_below(40);
        const uint64_t cap = static_cast<uint64_t>(n) * (n - 1) / 2;
        const uint64_t m = cap == 0 ? 0 : rng.uniform_below64(cap + 1);
        const Graph g = gen_random_graph(n, m, rng.next_u64());

        bool inv_ok = true;
        try {
            g.check_invariants();
        } catch (const std::exception&) {
            inv_ok = false;
        }
        c.check(inv_ok, "csr invariants hold on fuzzed graph");

        if (g.edge_count() > 0) {
            for (int k = 0; k < 10; ++k) {
                NodeId v = rng.uniform_below(n);
                while (g.degree(v) == 0) {
                    v = rng.uniform_below(n);
                }
                const uint32_t port = rng.uniform_below(g.degree(v));
                const EdgeEnd far = g.traverse_edge(v, port);
                const EdgeEnd back = g.traverse_edge(far.node, far.port);
                c.check(back.node == v && back.port == port, "edge traversal is an involution");
            }
        }

        UnionFind uf;
        for (uint32_t v = 0; v < n; ++v) {
            uf.make_set();
        }
        for (const auto& [u, v] : g.edges()) {
            uf.unite(u, v);
        }
        for (int k = 0; k < 8; ++k) {
            const NodeId u = rng.uniform_below(n);
            const NodeId v = rng.uniform_below(n);
            c.check(uf.same(u, v) == bfs_connected(g, {u, v}),
                    "bfs and union-find agree on connectivity");
        }
    }
    c.line("graph: " + std::to_string(iters) + " fuzzed instances checked");
}

void suite_kernel(Checker& c, uint64_t seed, SuiteBudget budget) {
    std::vector<Graph> gs;
    gs.push_back(gen_cycle(3));
    gs.push_back(gen_glitter_star(3));
    gs.push_back(gen_path(5));
    gs.push_back(gen_complete(6));
    gs.push_back(gen_lollipop(5, 3));
    gs.push_back(gen_random_connected(12, 20, seed ^ 0x5eedU));

    for (const Graph& g : gs) {
        const uint32_t n = g.node_count();
        for (const Potential& f : kernel_set(g)) {
            for (const auto& [u, v] : g.edges()) {
                c.check(arc_weight(g, f, u, v) == arc_weight(g, f, v, u),
                        "arc weights are symmetric");
            }
            for (NodeId v = 0; v < n; ++v) {
                c.check(self_loop_weight(g, f, v) >= 0.0, "self-loop residual is nonnegative");
            }

            const DenseMatrix p = transition_matrix(g, f);
            for (NodeId v = 0; v < n; ++v) {
                double row = 0.0;
                for (NodeId u = 0; u < n; ++u) {
                    row += p.at(v, u);
                }
                c.check(std::abs(row - 1.0) <= 1e-12, "transition rows sum to one");
            }

            const std::vector<double> pi = stationary_distribution(g, f);
            const std::vector<double> pi_p = left_multiply(pi, p);
            double station = 0.0;
            for (NodeId v = 0; v < n; ++v) {
                station = std::max(station, std::abs(pi_p[v] - pi[v]));
            }
            c.check(station <= 1e-12, "stationary vector is a fixed point");

            double total_f = 0.0;
            for (NodeId v = 0; v < n; ++v) {
                total_f += f.value(g, v);
            }
            for (const auto& [u, v] : g.edges()) {
                c.check(std::abs(pi[u] * p.at(u, v) - pi[v] * p.at(v, u)) <= 1e-13,
                        "detailed balance holds edgewise");
                c.check(std::abs(pi[u] * p.at(u, v) - arc_weight(g, f, u, v) / total_f) <= 1e-13,
                        "stationary crossing rate matches the arc weight");
            }
        }
    }

    // Single-step sampler against the exact kernel rows.
    const uint64_t draws = budget == SuiteBudget::Small ? 20000 : 200000;
    struct Cell {
        const Graph* g;
        Potential f;
    };
    std::vector<Cell> cells;
    cells.push_back({&gs[1], Potential::unit()});
    cells.push_back({&gs[5], Potential::fine_tuned(gs[5])});
    uint64_t stream_id = 201;
    for (const Cell& cell : cells) {
        const Graph& g = *cell.g;
        const DenseMatrix p = transition_matrix(g, cell.f);
        Rng pick = Rng::stream(seed, stream_id++);
        for (int rep = 0; rep < 2; ++rep) {
            const NodeId v = pick.uniform_below(g.node_count());
            Rng rng = Rng::stream(seed, stream_id++);
            std::vector<uint64_t> counts(g.node_count(), 0);
            for (uint64_t k = 0; k < draws; ++k) {
                ++counts[next_state(g, cell.f, v, rng)];
            }
            for (NodeId u = 0; u < g.node_count(); ++u) {
                c.check(freq_close(counts[u], draws, p.at(v, u)),
                        "single-step frequencies match the kernel row");
            }
        }
    }
    c.line("kernel: " + std::to_string(gs.size()) + " graphs x 4 kernels checked");
}

void suite_split(Checker& c, uint64_t seed, SuiteBudget budget) {
    const uint32_t iters = budget == SuiteBudget::Small ? 25 : 120;
    Rng rng = Rng::stream(seed, 103);
    for (uint32_t it = 0; it < iters; ++it) {
        const uint32_t n = 2 + rng.uniform_below(12);
        const uint64_t cap = static_cast<uint64_t>(n) * (n - 1) / 2;
        const uint64_t m = 1 + rng.uniform_below64(cap);
        const Graph g = gen_random_graph(n, m, rng.next_u64());
        if (g.edge_count() == 0) {
            continue;
        }
        const uint32_t d = 1 + rng.uniform_below(4);
        const SplitView sv(g, d);

        bool degree_ok = true;
        for (NodeId v = 0; v < n; ++v) {
            for (uint32_t copy = 0; copy < sv.copies(v); ++copy) {
                degree_ok = degree_ok && sv.degree_star({v, copy}) <= d + 2;
            }
        }
        c.check(degree_ok, "split degrees stay within the cap plus chain ports");

        c.check(sv.node_count_star() * d <
                    static_cast<uint64_t>(n) * d + 2 * g.edge_count(),
                "split node count stays below n + 2m/d");

        const Graph gm = sv.materialize();
        c.check(gm.node_count() == sv.node_count_star(), "materialized size matches ranks");
        for (int k = 0; k < 6; ++k) {
            const NodeId u = rng.uniform_below(n);
            const NodeId v = rng.uniform_below(n);
            const bool base_conn = bfs_connected(g, {u, v});
            const bool split_conn =
                bfs_connected(gm, {static_cast<NodeId>(sv.rank({u, 0})),
                                   static_cast<NodeId>(sv.rank({v, 0}))});
            c.check(base_conn == split_conn, "splitting preserves connectivity");
        }
    }

    {
        const Graph g0 = Graph::from_edges(5, {});
        const SplitView sv(g0, 3);
        c.check(sv.node_count_star() == 5, "edgeless graph splits to itself");
    }

    // Walk stepper against the materialized unit kernel.
    const uint64_t draws = budget == SuiteBudget::Small ? 20000 : 100000;
    Rng pick = Rng::stream(seed, 301);
    for (int rep = 0; rep < 2; ++rep) {
        const Graph g = gen_random_connected(8, 12, seed + rep);
        const uint32_t d = 1 + pick.uniform_below(2);
        const SplitView sv(g, d);
        const Graph gm = sv.materialize();
        const DenseMatrix p = transition_matrix(gm, Potential::unit());
        const SplitNode start = sv.from_rank(pick.uniform_below64(sv.node_count_star()));
        const uint64_t start_rank = sv.rank(start);
        Rng rng = Rng::stream(seed, 302 + rep);
        std::vector<uint64_t> counts(gm.node_count(), 0);
        for (uint64_t k = 0; k < draws; ++k) {
            ++counts[sv.rank(sv.next_state_star(start, rng))];
        }
        for (NodeId u = 0; u < gm.node_count(); ++u) {
            c.check(freq_close(counts[u], draws, p.at(static_cast<NodeId>(start_rank), u)),
                    "split-walk frequencies match the materialized kernel");
        }
    }
    c.line("split: " + std::to_string(iters) + " fuzzed views checked");
}

void suite_return_bound(Checker& c, uint64_t seed, SuiteBudget budget) {
    const uint32_t cells = budget == SuiteBudget::Small ? 20 : 100;
    const uint64_t trials = budget == SuiteBudget::Small ? 400 : 2000;
    Rng rng = Rng::stream(seed, 104);
    const Potential f = Potential::unit();
    for (uint32_t cell = 0; cell < cells; ++cell) {
        const uint32_t n = 5 + rng.uniform_below(budget == SuiteBudget::Small ? 8 : 16);
        const uint64_t extra = rng.uniform_below64(2 * n);
        const Graph g = gen_random_connected(n, n - 1 + extra, rng.next_u64());
        const uint32_t delta = g.max_degree();
        const uint64_t lo = std::max<uint64_t>(static_cast<uint64_t>(delta) * delta, 1);
        const uint64_t hi = 6 * static_cast<uint64_t>(n) * n;  // exclusive
        const uint64_t t = lo + rng.uniform_below64(hi - lo);
        const NodeId i = rng.uniform_below(n);
        const EstimatorReport rep =
            measure_return_counts(g, f, i, t, trials, rng.next_u64());
        const double bound =
            5.0 * std::sqrt(static_cast<double>(t)) + 2.0 * static_cast<double>(delta);
        std::ostringstream what;
        what << "return rate below 5*sqrt(t)+2*max_degree (n=" << n << " t=" << t
             << " est=" << rep.estimate << " bound=" << bound << ")";
        c.check(rep.estimate + 3.0 * rep.std_error < bound, what.str());
    }
    c.line("return-bound: " + std::to_string(cells) + " cells x " + std::to_string(trials) +
           " trials checked");
}

void suite_simd(Checker& c, uint64_t seed, SuiteBudget budget) {
    if (!avx2_available()) {
        c.line("simd: avx2 backend unavailable here, comparisons skipped");
        c.check(true, "backend availability probed");
        return;
    }
    const uint64_t trials = budget == SuiteBudget::Small ? 64 : 256;
    struct Cell {
        Graph g;
        Potential f;
        NodeId a, b;
    };
    std::vector<Cell> cells;
    {
        Graph g = gen_glitter_star(20);
        Potential f = Potential::unit();
        cells.push_back({std::move(g), std::move(f), 0, 35});
    }
    {
        Graph g = gen_random_connected(40, 100, seed ^ 0x51u);
        Potential f = Potential::fine_tuned(g);
        cells.push_back({std::move(g), std::move(f), 3, 17});
    }
    {
        Graph g = gen_cycle(12);
        Potential f = Potential::custom(
            [](NodeId v) { return 1.0 + 0.25 * static_cast<double>(v % 3); }, "bands");
        cells.push_back({std::move(g), std::move(f), 0, 6});
    }
    uint64_t s = seed + 11;
    for (const Cell& cell : cells) {
        const uint64_t n = cell.g.node_count();
        const uint64_t cap = 10 * n * n;
        const auto hs =
            batch_hitting_times(cell.g, cell.f, cell.a, cell.b, trials, cap, s, Backend::Scalar);
        const auto ha =
            batch_hitting_times(cell.g, cell.f, cell.a, cell.b, trials, cap, s, Backend::Avx2);
        bool same_hits = hs.size() == ha.size();
        for (size_t k = 0; same_hits && k < hs.size(); ++k) {
            same_hits = hs[k].steps == ha[k].steps && hs[k].hit == ha[k].hit;
        }
        c.check(same_hits, "hitting-time samples identical across backends");

        const auto cs = batch_cover_times(cell.g, cell.f, cell.a, trials, cap, s, Backend::Scalar);
        const auto ca = batch_cover_times(cell.g, cell.f, cell.a, trials, cap, s, Backend::Avx2);
        bool same_cover = cs.size() == ca.size();
        for (size_t k = 0; same_cover && k < cs.size(); ++k) {
            same_cover = cs[k].steps == ca[k].steps && cs[k].hit == ca[k].hit;
        }
        c.check(same_cover, "cover-time samples identical across backends");

        const auto rs =
            batch_return_counts(cell.g, cell.f, cell.a, 257, trials, s, Backend::Scalar);
        const auto ra = batch_return_counts(cell.g, cell.f, cell.a, 257, trials, s, Backend::Avx2);
        c.check(rs == ra, "return-count samples identical across backends");
        ++s;
    }
    c.line("simd: " + std::to_string(cells.size()) + " graph/kernel cells compared exactly");
}

using SuiteFn = void (*)(Checker&, uint64_t, SuiteBudget);

struct SuiteEntry {
    const char* name;
    SuiteFn fn;
};

constexpr SuiteEntry kSuites[] = {
    {"graph", suite_graph},         {"kernel", suite_kernel},
    {"split", suite_split},         {"return-bound", suite_return_bound},
    {"simd", suite_simd},
};

}  // namespace

std::vector<std::string> suite_names() {
    std::vector<std::string> names;
    for (const SuiteEntry& e : kSuites) {
        names.emplace_back(e.name);
    }
    names.emplace_back("all");
    return names;
}

SuiteResult run_suite(const std::string& name, uint64_t seed, SuiteBudget budget, unsigned jobs,
                      std::ostream& out) {
    (void)jobs;  // estimators run single-threaded inside the suites
    SuiteResult res;
    res.suite = name;
    Checker c{out, 0, 0};
    bool found = false;
    for (const SuiteEntry& e : kSuites) {
        if (name == "all" || name == e.name) {
            found = true;
            e.fn(c, seed, budget);
        }
    }
    if (!found) {
        throw std::invalid_argument("unknown validation suite: " + name);
    }
    res.checks = c.checks;
    res.failures = c.failures;
    res.passed = c.failures == 0;
    out << "suite " << name << ": " << res.checks << " checks, " << res.failures << " failures"
        << '\n';
    return res;
}

}  // namespace mhwalk
