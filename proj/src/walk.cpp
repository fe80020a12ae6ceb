#include "mhwalk/walk.hpp"

#include <algorithm>
#include <ostream>

namespace mhwalk {

namespace {

// Appends `steps` steps under potential f to an in-progress trace.  The loop
// body mirrors next_state draw-for-draw; it is unrolled here only to know
// which arc was traversed for arc counting.
void walk_segment(const Graph& g, const Potential& f, NodeId& v, uint64_t steps, Rng& rng,
                  WalkTrace& trace, const WalkOptions& opts,
                  const std::vector<uint8_t>& tracked_flag, uint64_t& now) {
    const uint64_t self_base = 2 * g.edge_count();
    for (uint64_t i = 0; i < steps; ++i) {
        const uint32_t dv = g.degree(v);
        uint64_t arc;
        if (dv == 0) {
            arc = self_base + v;
        } else {
            const uint32_t port = rng.uniform_below(dv);
            const NodeId u = g.neighbor(v, port);
            const double r = rng.next_unit();
            const uint32_t du = g.degree(u);
            const double q = (static_cast<double>(dv) * f.value(g, u)) /
                             (static_cast<double>(du) * f.value(g, v));
            if (r < q) {
                arc = g.raw_offsets()[v] + port;
                v = u;
            } else {
                arc = self_base + v;
            }
        }
        ++now;
        if (opts.count_nodes) {
            ++trace.node_visits[v];
        }
        if (opts.count_arcs) {
            ++trace.arc_visits[arc];
        }
        if (!tracked_flag.empty() && tracked_flag[v] && !trace.first_hits.count(v)) {
            trace.first_hits.emplace(v, now);
        }
    }
    trace.steps_taken = now;
    trace.final_node = v;
}

WalkTrace make_trace(const Graph& g, NodeId start, const WalkOptions& opts,
                     std::vector<uint8_t>& tracked_flag) {
    WalkTrace trace;
    trace.final_node = start;
    if (opts.count_nodes) {
        trace.node_visits.assign(g.node_count(), 0);
        trace.node_visits[start] = 1;  // occupancy at time 0
    }
    if (opts.count_arcs) {
        trace.arc_visits.assign(2 * g.edge_count() + g.node_count(), 0);
    }
    for (const NodeId v : opts.tracked) {
        g.degree(v);  // id validation
        if (tracked_flag.empty()) {
            tracked_flag.assign(g.node_count(), 0);
        }
        tracked_flag[v] = 1;
    }
    return trace;
}

}  // namespace

WalkTrace run_walk(const Graph& g, const Potential& f, NodeId start, uint64_t t, Rng& rng,
                   const WalkOptions& opts) {
    g.degree(start);  // id validation
    std::vector<uint8_t> tracked_flag;
    WalkTrace trace = make_trace(g, start, opts, tracked_flag);
    NodeId v = start;
    uint64_t now = 0;
    walk_segment(g, f, v, t, rng, trace, opts, tracked_flag, now);
    return trace;
}

std::vector<std::pair<PotentialKind, uint64_t>> hybrid_schedule(uint64_t budget) {
    if (budget < 2) {
        throw std::invalid_argument("hybrid walk needs a budget of at least 2 steps");
    }
    std::vector<std::pair<PotentialKind, uint64_t>> phases;
    uint64_t len = 1;
    uint64_t left = budget;
    while (left > 0) {
        for (const PotentialKind kind : {PotentialKind::Unbiased, PotentialKind::Unit}) {
            if (left == 0) {
                break;
            }
            const uint64_t take = len < left ? len : left;
            phases.emplace_back(kind, take);
            left -= take;
        }
        len *= 2;
    }
    return phases;
}

WalkTrace run_hybrid_walk(const Graph& g, NodeId start, uint64_t budget, Rng& rng,
                          const WalkOptions& opts) {
    g.degree(start);
    const auto phases = hybrid_schedule(budget);
    const Potential unbiased = Potential::unbiased(g);
    const Potential unit = Potential::unit();
    std::vector<uint8_t> tracked_flag;
    WalkTrace trace = make_trace(g, start, opts, tracked_flag);
    NodeId v = start;
    uint64_t now = 0;
    for (const auto& [kind, len] : phases) {
        const Potential& f = (kind == PotentialKind::Unbiased) ? unbiased : unit;
        walk_segment(g, f, v, len, rng, trace, opts, tracked_flag, now);
    }
    return trace;
}

void write_trace_csv(std::ostream& out, const WalkTrace& trace) {
    out << "time_or_node,counter\n";
    out << "steps," << trace.steps_taken << '\n';
    out << "final_node," << trace.final_node << '\n';
    for (size_t v = 0; v < trace.node_visits.size(); ++v) {
        if (trace.node_visits[v] > 0) {
            out << "node:" << v << ',' << trace.node_visits[v] << '\n';
        }
    }
    std::vector<std::pair<NodeId, uint64_t>> hits(trace.first_hits.begin(),
                                                  trace.first_hits.end());
    std::sort(hits.begin(), hits.end());
    for (const auto& [v, time] : hits) {
        out << "first_hit:" << v << ',' << time << '\n';
    }
}

}  // namespace mhwalk
