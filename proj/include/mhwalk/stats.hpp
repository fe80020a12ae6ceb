#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "batch.hpp"
#include "graph.hpp"
#include "potential.hpp"

namespace mhwalk {

struct EstimateOptions {
    Backend backend = Backend::Auto;
    unsigned jobs = 1;
    bool keep_samples = false;  // retain per-trial samples in the report
};

struct EstimatorReport {
    std::string quantity;     // "cover_time" / "commute_time" / "return_count"
    std::string graph_desc;   // "n=<n>,m=<m>"
    std::string kernel;       // potential name
    double estimate = 0.0;
    double std_error = 0.0;   // 0 when trials < 2
    uint64_t trials = 0;
    uint64_t censored = 0;    // trials cut off at the step cap
    uint64_t step_cap = 0;
    uint64_t seed = 0;
    // Estimate sits outside its guarantee window (censoring happened, or the
    // requested horizon is out of range for the bound being checked).
    bool range_flag = false;
    std::vector<uint64_t> samples;  // per-trial values when keep_samples
};

// Mean first time the chain from `start` has visited all of start's
// component, over `trials` independent chains.  Censored trials enter the
// mean at step_cap and set range_flag.
EstimatorReport estimate_cover_time(const Graph& g, const Potential& f, NodeId start,
                                    uint64_t trials, uint64_t step_cap, uint64_t seed,
                                    const EstimateOptions& opts = {});

// Mean round trip u -> v -> u as the sum of the two directed first-hit means
// (u == v measures the return time).  Rejects endpoints in different
// components.  Internally capped at 100 * n^2 steps per direction.
EstimatorReport estimate_commute_time(const Graph& g, const Potential& f, NodeId u, NodeId v,
                                      uint64_t trials, uint64_t seed,
                                      const EstimateOptions& opts = {});

// Mean occupancy of node i over times 0..t-1 for chains started at i.
// range_flag marks horizons outside (0, 6 n^2).
EstimatorReport measure_return_counts(const Graph& g, const Potential& f, NodeId i, uint64_t t,
                                      uint64_t trials, uint64_t seed,
                                      const EstimateOptions& opts = {});

// Exact E[occupancy of j over times 0..t-1 | chain started at i] by repeated
// dense transition-matrix application.  Caps: n <= 2000, t <= 100000.
double exact_expected_visits(const Graph& g, const Potential& f, NodeId i, NodeId j, uint64_t t);

// Same, all j at once.
std::vector<double> exact_expected_visits_row(const Graph& g, const Potential& f, NodeId i,
                                              uint64_t t);

struct ScalingFit {
    double exponent = 0.0;  // least-squares slope in log-log coordinates
    double r2 = 1.0;
};

// Fits estimate ~ size^exponent from at least three positive (size, estimate)
// pairs.
ScalingFit fit_scaling_exponent(const std::vector<double>& sizes,
                                const std::vector<double>& estimates);

// CSV: header row, one "trial" row per retained sample, one "summary" row.
void write_report_csv(std::ostream& out, const EstimatorReport& rep);

// Single JSON object with fixed field order.
void write_report_json(std::ostream& out, const EstimatorReport& rep);

}  // namespace mhwalk
