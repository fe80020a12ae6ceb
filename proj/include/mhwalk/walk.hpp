#pragma once

// The walk itself: one-step transition sampling and multi-step runners with
// visit accounting.
//
// Step semantics from state v (degree >= 1): propose a uniform neighbor u
// (one bounded draw), then always consume one acceptance draw r in [0,1) and
// move iff r < (deg(v)*f(u)) / (deg(u)*f(v)).  Since r < 1 always, this
// equals accepting with probability min{(deg(v)/deg(u))*(f(u)/f(v)), 1}.
// Isolated nodes absorb the walk and consume no randomness.
//
// The fixed two-draw discipline (proposal, then acceptance, every step) is
// load-bearing: the batch steppers in batch.hpp replicate it exactly so that
// a chain's trajectory depends only on its rng stream, never on the backend.

#include <cstdint>
#include <iosfwd>
#include <unordered_map>
#include <vector>

#include "mhwalk/graph.hpp"
#include "mhwalk/potential.hpp"
#include "mhwalk/rng.hpp"

namespace mhwalk {

inline NodeId next_state(const Graph& g, const Potential& f, NodeId v, Rng& rng) {
    const uint32_t dv = g.degree(v);  // also validates v
    if (dv == 0) {
        return v;
    }
    const uint32_t port = rng.uniform_below(dv);
    const NodeId u = g.neighbor(v, port);
    const double r = rng.next_unit();
    const uint32_t du = g.degree(u);
    const double q = (static_cast<double>(dv) * f.value(g, u)) /
                     (static_cast<double>(du) * f.value(g, v));
    return r < q ? u : v;
}

struct WalkOptions {
    bool count_nodes = false;
    bool count_arcs = false;
    std::vector<NodeId> tracked;  // nodes whose first-hit times to record
};

// Counters from one walk of t steps.
//
// node_visits[v] (when counting is on) is the number of times 0..t at which
// the walk occupied v, start and final position included, so the counts sum
// to t+1.  The occupancy of times 0..t-1 alone — the half-open interval the
// estimators quote — is recovered by running t-1 steps instead.
//
// arc_visits (when on) has one slot per directed arc at offset(v)+port,
// followed by n self-loop slots at 2m+v; rejected proposals and isolated
// dwells count as self-loop traversals.  first_hits[v] is the smallest time
// >= 1 at which the walk occupied tracked node v; absent if never.
struct WalkTrace {
    uint64_t steps_taken = 0;
    NodeId final_node = 0;
    std::vector<uint64_t> node_visits;
    std::vector<uint64_t> arc_visits;
    std::unordered_map<NodeId, uint64_t> first_hits;
};

WalkTrace run_walk(const Graph& g, const Potential& f, NodeId start, uint64_t t, Rng& rng,
                   const WalkOptions& opts = {});

// Phase schedule of the alternating-kernel walk: degree-proportional and
// unit phases of lengths 1,1,2,2,4,4,... truncated to sum to exactly
// `budget` (>= 2).
std::vector<std::pair<PotentialKind, uint64_t>> hybrid_schedule(uint64_t budget);

// Runs the alternating-kernel walk for `budget` total steps, counters merged
// across phases.
WalkTrace run_hybrid_walk(const Graph& g, NodeId start, uint64_t budget, Rng& rng,
                          const WalkOptions& opts = {});

// Trace export: rows of (time_or_node, counter).
void write_trace_csv(std::ostream& out, const WalkTrace& trace);

}  // namespace mhwalk
