#pragma once

// Undirected simple graphs in compact adjacency (CSR) form, with the
// port-labeled access model used throughout the library: a node v of degree
// d(v) exposes its incident edges through local ports 0..d(v)-1, ordered by
// ascending neighbor id.  traverse_edge follows a port and also reports the
// port of the same edge as seen from the other endpoint, in O(1), via a
// reverse-port table built at construction.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace mhwalk {

using NodeId = uint32_t;

struct ConnectivityQuery {
    NodeId s = 0;
    NodeId t = 0;
};

// Result of following a port: the neighbor reached and the port that leads
// back along the same edge.
struct EdgeEnd {
    NodeId node;
    uint32_t port;
};

class Graph {
  public:
    // Builds from an undirected edge list.  Rejects out-of-range endpoints,
    // self-loops, and duplicate edges ({u,v} listed twice in either order).
    static Graph from_edges(uint32_t n, const std::vector<std::pair<NodeId, NodeId>>& edges);

    uint32_t node_count() const { return n_; }
    uint64_t edge_count() const { return m_; }
    uint32_t max_degree() const { return max_degree_; }

    uint32_t degree(NodeId v) const {
        check_node(v);
        return offsets_[v + 1] - offsets_[v];
    }

    // Neighbor behind port p of v (neighbors are sorted by id, so ports are
    // canonical).
    NodeId neighbor(NodeId v, uint32_t p) const {
        check_port(v, p);
        return adj_[offsets_[v] + p];
    }

    // Follows port p out of v; returns the far endpoint and the reverse port.
    EdgeEnd traverse_edge(NodeId v, uint32_t p) const {
        check_port(v, p);
        const uint32_t at = offsets_[v] + p;
        return EdgeEnd{adj_[at], rport_[at]};
    }

    bool has_edge(NodeId u, NodeId v) const;

    // Unique edges as (min,max) pairs in lexicographic order.
    std::vector<std::pair<NodeId, NodeId>> edges() const;

    // Structural self-check: symmetry, sorted unique adjacency, reverse-port
    // involution, degree/edge-count consistency.  Throws std::logic_error
    // with a description on the first violation.
    void check_invariants() const;

    // Raw arrays for the batch stepper.
    const uint32_t* raw_offsets() const { return offsets_.data(); }
    const uint32_t* raw_adjacency() const { return adj_.data(); }

  private:
    void check_node(NodeId v) const {
        if (v >= n_) {
            throw std::invalid_argument("node id " + std::to_string(v) + " out of range (n=" +
                                        std::to_string(n_) + ")");
        }
    }
    void check_port(NodeId v, uint32_t p) const {
        check_node(v);
        if (p >= offsets_[v + 1] - offsets_[v]) {
            throw std::invalid_argument("port " + std::to_string(p) + " out of range for node " +
                                        std::to_string(v) + " (degree " +
                                        std::to_string(offsets_[v + 1] - offsets_[v]) + ")");
        }
    }

    uint32_t n_ = 0;
    uint64_t m_ = 0;
    uint32_t max_degree_ = 0;
    std::vector<uint32_t> offsets_;  // n+1 prefix sums into adj_
    std::vector<NodeId> adj_;        // 2m neighbor ids, sorted within each node
    std::vector<uint32_t> rport_;    // 2m reverse ports, aligned with adj_
};

// True iff q.s and q.t are in the same component (exact, BFS).
bool bfs_connected(const Graph& g, const ConnectivityQuery& q);

// All nodes in the component containing v.
std::vector<NodeId> component_of(const Graph& g, NodeId v);

}  // namespace mhwalk
