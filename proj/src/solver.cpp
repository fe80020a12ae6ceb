#include "mhwalk/solver.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "mhwalk/potential.hpp"
#include "mhwalk/rng.hpp"
#include "mhwalk/split_view.hpp"
#include "mhwalk/union_find.hpp"
#include "batch_impl.hpp"

namespace mhwalk {

namespace {

uint64_t saturating_mul(uint64_t a, uint64_t b) {
    if (a != 0 && b > std::numeric_limits<uint64_t>::max() / a) {
        return std::numeric_limits<uint64_t>::max();
    }
    return a * b;
}

// ceil(x * scale) as a saturated uint64, for nonnegative x.
uint64_t ceil_scaled(double x, double scale) {
    const double y = std::ceil(x * scale);
    if (!(y >= 0.0)) {
        throw std::invalid_argument("scaled count must be nonnegative");
    }
    if (y >= 18446744073709549568.0) {  // largest double below 2^64
        return std::numeric_limits<uint64_t>::max();
    }
    return static_cast<uint64_t>(y);
}

void check_config(const LandmarkConfig& cfg) {
    if (cfg.p < 1) {
        throw std::invalid_argument("landmark count must be at least 1");
    }
    if (!(cfg.gamma > 0.0) || !std::isfinite(cfg.gamma)) {
        throw std::invalid_argument("gamma must be positive and finite");
    }
    if (!(cfg.beta > 0.0) || !std::isfinite(cfg.beta)) {
        throw std::invalid_argument("beta must be positive and finite");
    }
    if (!(cfg.c_scale > 0.0) || !std::isfinite(cfg.c_scale)) {
        throw std::invalid_argument("c_scale must be positive and finite");
    }
}

void check_query(const Graph& g, const ConnectivityQuery& q) {
    if (q.s >= g.node_count() || q.t >= g.node_count()) {
        throw std::invalid_argument("query endpoint out of range");
    }
}

}  // namespace

uint32_t compute_split_parameter(uint32_t n, uint64_t m, uint32_t p) {
    if (n == 0) {
        throw std::invalid_argument("graph must have at least one node");
    }
    if (p < 1) {
        throw std::invalid_argument("landmark count must be at least 1");
    }
    if (m == 0) {
        return 1;
    }
    // Smallest d with d*d*p >= m; start from the float guess and fix up.
    uint64_t d = static_cast<uint64_t>(
        std::ceil(std::sqrt(static_cast<double>(m) / static_cast<double>(p))));
    if (d < 1) {
        d = 1;
    }
    while (d > 1 && saturating_mul(saturating_mul(d - 1, d - 1), p) >= m) {
        --d;
    }
    while (saturating_mul(saturating_mul(d, d), p) < m) {
        ++d;
    }
    return static_cast<uint32_t>(d);
}

uint64_t compute_walk_length(uint64_t n_star, uint32_t p, uint32_t d, double gamma,
                             double c_scale) {
    if (n_star < 1 || p < 1 || d < 1) {
        throw std::invalid_argument("walk length parameters must be positive");
    }
    const double ns = static_cast<double>(n_star);
    const double diffusive = gamma * (ns / static_cast<double>(p)) * std::log2(std::max(ns, 2.0));
    const double base = std::max(diffusive, static_cast<double>(d) + 2.0);
    const uint64_t root = ceil_scaled(base, 1.0);
    const uint64_t squared = saturating_mul(root, root);
    if (c_scale == 1.0) {
        return squared;
    }
    return ceil_scaled(static_cast<double>(squared), c_scale);
}

uint64_t compute_round_count(uint64_t n_star, double beta, double c_scale) {
    if (n_star < 1) {
        throw std::invalid_argument("split node count must be positive");
    }
    const double ns = std::max(static_cast<double>(n_star), 2.0);
    return ceil_scaled(beta * std::log2(ns), c_scale);
}

std::vector<SplitNode> sample_landmarks(const SplitView& sv, uint32_t p, Rng& rng) {
    const uint64_t n_star = sv.node_count_star();
    std::vector<SplitNode> out;
    out.reserve(p);
    for (uint32_t i = 0; i < p; ++i) {
        out.push_back(sv.from_rank(rng.uniform_below64(n_star)));
    }
    return out;
}

SolveResult test_connectivity(const Graph& g, const ConnectivityQuery& q,
                              const LandmarkConfig& cfg) {
    check_config(cfg);
    check_query(g, q);

    SolveResult res;
    res.seed = cfg.seed;
    res.solver = "landmark";

    const uint32_t n = g.node_count();
    const uint64_t m = g.edge_count();
    const uint32_t d = compute_split_parameter(n, m, cfg.p);
    SplitView sv(g, d);
    const uint64_t n_star = sv.node_count_star();

    res.split_d = d;
    res.n_star = n_star;
    res.walk_length = compute_walk_length(n_star, cfg.p, d, cfg.gamma, cfg.c_scale);
    res.rounds = compute_round_count(n_star, cfg.beta, cfg.c_scale);
    res.step_budget = saturating_mul(saturating_mul(static_cast<uint64_t>(cfg.p) + 2, res.rounds),
                                     res.walk_length);
    res.space_proxy_bits = (static_cast<double>(cfg.p) + 2.0) *
                           std::log2(std::max(static_cast<double>(n_star), 2.0));

    if (q.s == q.t) {
        res.answer = Answer::Connected;
        res.landmarks_used = 1;
        return res;
    }

    // Landmarks: the two anchors first, then p uniform ranks, first
    // occurrence wins.  Distinct count is at most p+2.
    Rng landmark_rng = Rng::stream(cfg.seed, 0);
    std::vector<SplitNode> landmarks;
    landmarks.push_back({q.s, 0});
    landmarks.push_back({q.t, 0});
    for (const SplitNode& lm : sample_landmarks(sv, cfg.p, landmark_rng)) {
        landmarks.push_back(lm);
    }

    std::vector<int32_t> landmark_at(n_star, -1);
    std::vector<SplitNode> distinct;
    for (const SplitNode& lm : landmarks) {
        const uint64_t r = sv.rank(lm);
        if (landmark_at[r] < 0) {
            landmark_at[r] = static_cast<int32_t>(distinct.size());
            distinct.push_back(lm);
        }
    }
    res.landmarks_used = static_cast<uint32_t>(distinct.size());

    UnionFind uf;
    std::vector<uint32_t> cls(distinct.size());
    for (uint32_t i = 0; i < distinct.size(); ++i) {
        cls[i] = uf.make_set();
    }
    const uint32_t s_cls = cls[0];
    const uint32_t t_cls = cls[1];

    Rng walk_rng = Rng::stream(cfg.seed, 1);
    uint64_t steps = 0;
    for (uint64_t round = 0; round < res.rounds; ++round) {
        for (uint32_t li = 0; li < distinct.size(); ++li) {
            SplitNode cur = distinct[li];
            for (uint64_t st = 0; st < res.walk_length; ++st) {
                cur = sv.next_state_star(cur, walk_rng);
                ++steps;
                const int32_t hit = landmark_at[sv.rank(cur)];
                if (hit >= 0 && static_cast<uint32_t>(hit) != li) {
                    if (uf.unite(cls[li], cls[hit])) {
                        ++res.merged_class_count;
                    }
                    if (cfg.stop_when_merged && uf.same(s_cls, t_cls)) {
                        res.steps_executed = steps;
                        res.answer = Answer::Connected;
                        return res;
                    }
                }
            }
            if (steps > res.step_budget) {
                throw std::logic_error("landmark walk exceeded its step budget");
            }
        }
    }

    res.steps_executed = steps;
    res.answer =
        uf.same(s_cls, t_cls) ? Answer::Connected : Answer::ProbablyNotConnected;
    return res;
}

SolveResult solve_logspace(const Graph& g, const ConnectivityQuery& q, double c_scale,
                           uint64_t seed) {
    if (!(c_scale > 0.0) || !std::isfinite(c_scale)) {
        throw std::invalid_argument("c_scale must be positive and finite");
    }
    check_query(g, q);

    SolveResult res;
    res.seed = seed;
    res.solver = "logspace";
    res.split_d = 0;
    res.rounds = 1;
    const uint32_t n = g.node_count();
    res.n_star = n;
    res.space_proxy_bits = 2.0 * std::log2(std::max(static_cast<double>(n), 2.0));

    const double nd = static_cast<double>(n);
    res.walk_length = ceil_scaled(24.0 * nd * nd * std::log(std::max(nd, 2.0)), c_scale);
    res.step_budget = res.walk_length;

    if (q.s == q.t) {
        res.answer = Answer::Connected;
        return res;
    }
    if (g.degree(q.s) == 0) {
        // Nowhere to go; s is its own component.
        return res;
    }

    const Potential f = Potential::unit();
    const detail::ChainTables tables = detail::ChainTables::build(g, f);
    Rng rng = Rng::stream(seed, 0);
    NodeId cur = q.s;
    for (uint64_t st = 0; st < res.walk_length; ++st) {
        cur = detail::chain_step(tables, cur, rng);
        ++res.steps_executed;
        if (cur == q.t) {
            res.answer = Answer::Connected;
            return res;
        }
    }
    return res;
}

}  // namespace mhwalk
