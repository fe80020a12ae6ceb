#include "mhwalk/stats.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

#include "mhwalk/transition_matrix.hpp"
#include "json.hpp"

namespace mhwalk {

namespace {

std::string describe(const Graph& g) {
    return "n=" + std::to_string(g.node_count()) + ",m=" + std::to_string(g.edge_count());
}

struct MeanSe {
    double mean = 0.0;
    double se = 0.0;
};

MeanSe mean_and_se(const std::vector<uint64_t>& xs) {
    MeanSe r;
    if (xs.empty()) {
        return r;
    }
    double sum = 0.0;
    for (uint64_t x : xs) {
        sum += static_cast<double>(x);
    }
    r.mean = sum / static_cast<double>(xs.size());
    if (xs.size() < 2) {
        return r;
    }
    double ss = 0.0;
    for (uint64_t x : xs) {
        const double d = static_cast<double>(x) - r.mean;
        ss += d * d;
    }
    const double var = ss / static_cast<double>(xs.size() - 1);
    r.se = std::sqrt(var / static_cast<double>(xs.size()));
    return r;
}

void require_trials(uint64_t trials) {
    if (trials == 0) {
        throw std::invalid_argument("trials must be at least 1");
    }
}

}  // namespace

EstimatorReport estimate_cover_time(const Graph& g, const Potential& f, NodeId start,
                                    uint64_t trials, uint64_t step_cap, uint64_t seed,
                                    const EstimateOptions& opts) {
    require_trials(trials);
    const std::vector<HitSample> hs =
        batch_cover_times(g, f, start, trials, step_cap, seed, opts.backend, opts.jobs);

    EstimatorReport rep;
    rep.quantity = "cover_time";
    rep.graph_desc = describe(g);
    rep.kernel = f.name();
    rep.trials = trials;
    rep.step_cap = step_cap;
    rep.seed = seed;

    std::vector<uint64_t> samples;
    samples.reserve(hs.size());
    for (const HitSample& h : hs) {
        samples.push_back(h.steps);
        rep.censored += h.hit ? 0 : 1;
    }
    const MeanSe ms = mean_and_se(samples);
    rep.estimate = ms.mean;
    rep.std_error = ms.se;
    rep.range_flag = rep.censored > 0;
    if (opts.keep_samples) {
        rep.samples = std::move(samples);
    }
    return rep;
}

EstimatorReport estimate_commute_time(const Graph& g, const Potential& f, NodeId u, NodeId v,
                                      uint64_t trials, uint64_t seed,
                                      const EstimateOptions& opts) {
    require_trials(trials);
    if (!bfs_connected(g, {u, v})) {
        throw std::invalid_argument("commute time is undefined across components");
    }
    const uint64_t n = g.node_count();
    const uint64_t cap = 100 * n * n;

    EstimatorReport rep;
    rep.quantity = "commute_time";
    rep.graph_desc = describe(g);
    rep.kernel = f.name();
    rep.trials = trials;
    rep.step_cap = cap;
    rep.seed = seed;

    if (u == v) {
        // Round trip degenerates to the return time.
        const std::vector<HitSample> hs =
            batch_hitting_times(g, f, u, u, trials, cap, seed, opts.backend, opts.jobs);
        std::vector<uint64_t> samples;
        samples.reserve(hs.size());
        for (const HitSample& h : hs) {
            samples.push_back(h.steps);
            rep.censored += h.hit ? 0 : 1;
        }
        const MeanSe ms = mean_and_se(samples);
        rep.estimate = ms.mean;
        rep.std_error = ms.se;
        rep.range_flag = rep.censored > 0;
        if (opts.keep_samples) {
            rep.samples = std::move(samples);
        }
        return rep;
    }

    const std::vector<HitSample> fwd =
        batch_hitting_times(g, f, u, v, trials, cap, seed, opts.backend, opts.jobs);
    const std::vector<HitSample> bwd =
        batch_hitting_times(g, f, v, u, trials, cap, seed + 1, opts.backend, opts.jobs);

    std::vector<uint64_t> fs, bs, sums;
    fs.reserve(trials);
    bs.reserve(trials);
    sums.reserve(trials);
    for (uint64_t k = 0; k < trials; ++k) {
        fs.push_back(fwd[k].steps);
        bs.push_back(bwd[k].steps);
        sums.push_back(fwd[k].steps + bwd[k].steps);
        rep.censored += (fwd[k].hit ? 0 : 1) + (bwd[k].hit ? 0 : 1);
    }
    const MeanSe mf = mean_and_se(fs);
    const MeanSe mb = mean_and_se(bs);
    rep.estimate = mf.mean + mb.mean;
    rep.std_error = std::sqrt(mf.se * mf.se + mb.se * mb.se);
    rep.range_flag = rep.censored > 0;
    if (opts.keep_samples) {
        rep.samples = std::move(sums);
    }
    return rep;
}

EstimatorReport measure_return_counts(const Graph& g, const Potential& f, NodeId i, uint64_t t,
                                      uint64_t trials, uint64_t seed,
                                      const EstimateOptions& opts) {
    require_trials(trials);
    if (t == 0) {
        throw std::invalid_argument("return-count horizon must be at least 1");
    }
    std::vector<uint64_t> samples =
        batch_return_counts(g, f, i, t, trials, seed, opts.backend, opts.jobs);

    EstimatorReport rep;
    rep.quantity = "return_count";
    rep.graph_desc = describe(g);
    rep.kernel = f.name();
    rep.trials = trials;
    rep.step_cap = t;
    rep.seed = seed;

    const MeanSe ms = mean_and_se(samples);
    rep.estimate = ms.mean;
    rep.std_error = ms.se;
    const double n = static_cast<double>(g.node_count());
    rep.range_flag = !(static_cast<double>(t) < 6.0 * n * n);
    if (opts.keep_samples) {
        rep.samples = std::move(samples);
    }
    return rep;
}

std::vector<double> exact_expected_visits_row(const Graph& g, const Potential& f, NodeId i,
                                              uint64_t t) {
    if (i >= g.node_count()) {
        throw std::invalid_argument("start node out of range");
    }
    if (g.node_count() > 2000) {
        throw std::invalid_argument("exact visit counts are limited to 2000 nodes");
    }
    if (t > 100000) {
        throw std::invalid_argument("exact visit counts are limited to horizon 100000");
    }
    const DenseMatrix p = transition_matrix(g, f);
    const uint32_t n = g.node_count();
    std::vector<double> dist(n, 0.0);
    dist[i] = 1.0;
    std::vector<double> acc(n, 0.0);
    for (uint64_t tau = 0; tau < t; ++tau) {
        for (uint32_t j = 0; j < n; ++j) {
            acc[j] += dist[j];
        }
        if (tau + 1 < t) {
            dist = left_multiply(dist, p);
        }
    }
    return acc;
}

double exact_expected_visits(const Graph& g, const Potential& f, NodeId i, NodeId j, uint64_t t) {
    if (j >= g.node_count()) {
        throw std::invalid_argument("target node out of range");
    }
    return exact_expected_visits_row(g, f, i, t)[j];
}

ScalingFit fit_scaling_exponent(const std::vector<double>& sizes,
                                const std::vector<double>& estimates) {
    if (sizes.size() != estimates.size()) {
        throw std::invalid_argument("sizes and estimates must pair up");
    }
    if (sizes.size() < 3) {
        throw std::invalid_argument("scaling fit needs at least three points");
    }
    const size_t k = sizes.size();
    std::vector<double> xs(k), ys(k);
    for (size_t idx = 0; idx < k; ++idx) {
        if (!(sizes[idx] > 0.0) || !(estimates[idx] > 0.0)) {
            throw std::invalid_argument("scaling fit needs positive values");
        }
        xs[idx] = std::log(sizes[idx]);
        ys[idx] = std::log(estimates[idx]);
    }
    double mx = 0.0, my = 0.0;
    for (size_t idx = 0; idx < k; ++idx) {
        mx += xs[idx];
        my += ys[idx];
    }
    mx /= static_cast<double>(k);
    my /= static_cast<double>(k);
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (size_t idx = 0; idx < k; ++idx) {
        const double dx = xs[idx] - mx;
        const double dy = ys[idx] - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if (sxx == 0.0) {
        throw std::invalid_argument("scaling fit needs at least two distinct sizes");
    }
    ScalingFit fit;
    fit.exponent = sxy / sxx;
    if (syy == 0.0) {
        fit.r2 = 1.0;
    } else {
        double ssres = 0.0;
        for (size_t idx = 0; idx < k; ++idx) {
            const double resid = ys[idx] - (my + fit.exponent * (xs[idx] - mx));
            ssres += resid * resid;
        }
        fit.r2 = 1.0 - ssres / syy;
    }
    return fit;
}

void write_report_csv(std::ostream& out, const EstimatorReport& rep) {
    out << "row_kind,index_or_quantity,value,std_error,trials,censored,seed\n";
    for (size_t k = 0; k < rep.samples.size(); ++k) {
        out << "trial," << k << ',' << rep.samples[k] << ",,,,\n";
    }
    out << "summary," << rep.quantity << ',' << rep.estimate << ',' << rep.std_error << ','
        << rep.trials << ',' << rep.censored << ',' << rep.seed << '\n';
}

void write_report_json(std::ostream& out, const EstimatorReport& rep) {
    nlohmann::ordered_json j;
    j["quantity"] = rep.quantity;
    j["graph"] = rep.graph_desc;
    j["kernel"] = rep.kernel;
    j["estimate"] = rep.estimate;
    j["std_error"] = rep.std_error;
    j["trials"] = rep.trials;
    j["censored"] = rep.censored;
    j["step_cap"] = rep.step_cap;
    j["seed"] = rep.seed;
    j["range_flag"] = rep.range_flag;
    j["samples"] = rep.samples;
    out << j.dump(2) << '\n';
}

}  // namespace mhwalk
