#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "graph.hpp"
#include "rng.hpp"
#include "split_view.hpp"

namespace mhwalk {

// Tuning knobs for the landmark connectivity test. `p` trades space for time:
// more landmarks means shorter walks but more state to track. `c_scale`
// shrinks both the walk length and the round count proportionally, for
// experiments that don't need the full guarantee constants.
struct LandmarkConfig {
    uint32_t p = 4;
    double gamma = 60.0;
    double beta = 72.0;
    double c_scale = 1.0;
    uint64_t seed = 0;
    // Stop as soon as s and t land in one merged class. Disable to always run
    // the full budget (useful when checking the step accounting).
    bool stop_when_merged = true;
};

enum class Answer : uint8_t { Connected, ProbablyNotConnected };

struct SolveResult {
    Answer answer = Answer::ProbablyNotConnected;
    uint64_t steps_executed = 0;
    uint32_t landmarks_used = 0;       // distinct landmarks incl. the s/t anchors
    uint32_t merged_class_count = 0;   // successful union operations
    uint64_t seed = 0;
    uint32_t split_d = 0;
    uint64_t n_star = 0;
    uint64_t walk_length = 0;
    uint64_t rounds = 0;
    uint64_t step_budget = 0;          // saturates at UINT64_MAX
    double space_proxy_bits = 0.0;     // (p+2) * log2(n_star) words-of-state proxy
    std::string solver;
};

// Smallest d >= 1 with d*d*p >= m (1 when the graph has no edges): the degree
// cap that balances split-graph size against walk length for p landmarks.
uint32_t compute_split_parameter(uint32_t n, uint64_t m, uint32_t p);

// ceil(ceil(max(gamma*(n_star/p)*log2(n_star), d+2))^2 * c_scale).
uint64_t compute_walk_length(uint64_t n_star, uint32_t p, uint32_t d, double gamma,
                             double c_scale);

// ceil(beta * log2(n_star) * c_scale).
uint64_t compute_round_count(uint64_t n_star, double beta, double c_scale);

// p split nodes at independently uniform ranks, in draw order (duplicates
// possible; callers dedup).
std::vector<SplitNode> sample_landmarks(const SplitView& sv, uint32_t p, Rng& rng);

// Randomized connectivity test: walks from s, t, and p random landmarks on the
// degree-capped split graph, merging landmark classes on every hit. Answers
// Connected only when s's and t's classes merge, so a Connected answer is
// always correct; a ProbablyNotConnected answer on a connected pair is the
// (boundable) failure mode.
SolveResult test_connectivity(const Graph& g, const ConnectivityQuery& q,
                              const LandmarkConfig& cfg);

// Aleliunas-style baseline: one long unit-kernel walk from s, answer Connected
// iff it touches t. O(log n) state, quadratic-ish time.
SolveResult solve_logspace(const Graph& g, const ConnectivityQuery& q, double c_scale = 1.0,
                           uint64_t seed = 0);

}  // namespace mhwalk
