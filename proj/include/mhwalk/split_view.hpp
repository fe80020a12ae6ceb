#pragma once

// Virtual degree-bounded view of a base graph.
//
// Given a split parameter D >= 1, each base node v becomes a chain of
// ceil(deg(v)/D) copies (one copy if isolated).  Copy (v,i) owns the base
// ports [i*D, min((i+1)*D, deg(v)) - 1] — the outer ports, labeled by their
// base port numbers — plus chain ports to (v,i-1) / (v,i+1) where present,
// so every split degree is at most D+2.  Nothing is materialized; degrees,
// port sampling, and walk steps are computed on the fly in O(1).
//
// Copies are ranked in (base id, copy index) order; ranks are the ids of the
// materialized graph and the index space for landmark sampling.

#include <cstdint>

#include "mhwalk/graph.hpp"
#include "mhwalk/rng.hpp"

namespace mhwalk {

struct SplitNode {
    NodeId base = 0;
    uint32_t copy = 0;

    bool operator==(const SplitNode&) const = default;
};

// Chain-port labels, encoded above any feasible outer-port value.
inline constexpr uint32_t kPortPrev = UINT32_MAX - 1;
inline constexpr uint32_t kPortNext = UINT32_MAX;

class SplitView {
  public:
    // The base graph must outlive the view.
    SplitView(const Graph& g, uint32_t d);

    const Graph& base() const { return *g_; }
    uint32_t split_parameter() const { return d_; }
    uint64_t node_count_star() const { return rank_offset_.back(); }
    uint32_t max_degree_star() const { return d_ + 2; }

    uint32_t copies(NodeId v) const {
        const uint32_t deg = g_->degree(v);
        return deg == 0 ? 1 : (deg + d_ - 1) / d_;
    }

    bool valid(SplitNode s) const {
        return s.base < g_->node_count() && s.copy < copies(s.base);
    }

    uint32_t degree_star(SplitNode s) const;

    // Uniform port of s: an outer port (base port number) or kPortPrev /
    // kPortNext.  Exactly 1/degree each, one bounded draw.  Rejects
    // degree-0 split nodes.
    uint32_t random_port_star(SplitNode s, Rng& rng) const;

    // One unit-potential walk step in the split graph: propose across a
    // uniform port, accept with min{deg*(current)/deg*(proposal), 1}.
    // Degree-0 split nodes absorb.  O(1).
    SplitNode next_state_star(SplitNode s, Rng& rng) const;

    uint64_t rank(SplitNode s) const {
        check(s);
        return rank_offset_[s.base] + s.copy;
    }

    SplitNode from_rank(uint64_t r) const;

    // Explicit split graph with node ids equal to ranks — testing oracle.
    Graph materialize(uint64_t node_cap = 200000) const;

  private:
    void check(SplitNode s) const;

    const Graph* g_;
    uint32_t d_;
    std::vector<uint64_t> rank_offset_;  // n+1 prefix sums of copies()
};

}  // namespace mhwalk
