#pragma once

// Batched Monte-Carlo walk drivers — the hot path of every estimator.
//
// Each trial is an independent chain with its own rng stream derived from
// (seed, trial index), so results are a pure function of (graph, potential,
// parameters, seed): identical for every backend, thread count, and lane
// assignment.  Backends:
//   Scalar — reference implementation, always available.
//   Avx2   — 4 chains per vector register (x86 AVX2); bit-identical to
//            Scalar by construction and by test.
// Backend::Auto picks the best available (override with MHWALK_BACKEND=
// scalar|avx2 in the environment).

#include <cstdint>
#include <vector>

#include "mhwalk/graph.hpp"
#include "mhwalk/potential.hpp"

namespace mhwalk {

enum class Backend { Auto, Scalar, Avx2 };

// True when the AVX2 backend is compiled in and the CPU supports it.
bool avx2_available();

// Resolves Auto against availability, the MHWALK_BACKEND override, and the
// graph's size (the AVX2 stepper indexes with 32-bit gathers).  Requesting
// Avx2 explicitly when unusable throws.
Backend resolve_backend(Backend want, const Graph& g);

struct HitSample {
    uint64_t steps = 0;  // first-hit step, or step_cap when censored
    bool hit = false;
};

// First time >= 1 the chain from `start` occupies `target` (target == start
// measures the return time), censored at step_cap.  One entry per trial.
std::vector<HitSample> batch_hitting_times(const Graph& g, const Potential& f, NodeId start,
                                           NodeId target, uint64_t trials, uint64_t step_cap,
                                           uint64_t seed, Backend backend = Backend::Auto,
                                           unsigned jobs = 1);

// First time every node of start's component has been visited (start counts
// at time 0; single-node components cover at 0), censored at step_cap.
std::vector<HitSample> batch_cover_times(const Graph& g, const Potential& f, NodeId start,
                                         uint64_t trials, uint64_t step_cap, uint64_t seed,
                                         Backend backend = Backend::Auto, unsigned jobs = 1);

// Occupancy count of node i over times 0..t-1 for a chain started at i
// (t >= 1; t-1 steps are simulated, the time-0 occupancy counts).
std::vector<uint64_t> batch_return_counts(const Graph& g, const Potential& f, NodeId i,
                                          uint64_t t, uint64_t trials, uint64_t seed,
                                          Backend backend = Backend::Auto, unsigned jobs = 1);

}  // namespace mhwalk
