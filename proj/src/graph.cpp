#include "mhwalk/graph.hpp"

#include <algorithm>
#include <queue>

namespace mhwalk {

Graph Graph::from_edges(uint32_t n, const std::vector<std::pair<NodeId, NodeId>>& edges) {
    if (n == 0) {
        throw std::invalid_argument("node count must be positive");
    }
    Graph g;
    g.n_ = n;
    g.m_ = edges.size();
    if (2 * g.m_ > UINT32_MAX) {
        throw std::invalid_argument("edge count too large for 32-bit adjacency offsets");
    }

    std::vector<uint32_t> deg(n, 0);
    for (const auto& [u, v] : edges) {
        if (u >= n || v >= n) {
            throw std::invalid_argument("edge endpoint out of range");
        }
        if (u == v) {
            throw std::invalid_argument("self-loop edges are not allowed");
        }
        ++deg[u];
        ++deg[v];
    }

    g.offsets_.assign(n + 1, 0);
    for (uint32_t v = 0; v < n; ++v) {
        g.offsets_[v + 1] = g.offsets_[v] + deg[v];
        g.max_degree_ = std::max(g.max_degree_, deg[v]);
    }

    g.adj_.resize(2 * g.m_);
    std::vector<uint32_t> fill(g.offsets_.begin(), g.offsets_.end() - 1);
    for (const auto& [u, v] : edges) {
        g.adj_[fill[u]++] = v;
        g.adj_[fill[v]++] = u;
    }
    for (uint32_t v = 0; v < n; ++v) {
        std::sort(g.adj_.begin() + g.offsets_[v], g.adj_.begin() + g.offsets_[v + 1]);
        for (uint32_t i = g.offsets_[v] + 1; i < g.offsets_[v + 1]; ++i) {
            if (g.adj_[i] == g.adj_[i - 1]) {
                throw std::invalid_argument("duplicate edge {" + std::to_string(v) + "," +
                                            std::to_string(g.adj_[i]) + "}");
            }
        }
    }

    // Reverse ports: position of v within u's sorted adjacency.
    g.rport_.resize(2 * g.m_);
    for (uint32_t v = 0; v < n; ++v) {
        for (uint32_t at = g.offsets_[v]; at < g.offsets_[v + 1]; ++at) {
            const NodeId u = g.adj_[at];
            const auto ub = g.adj_.begin() + g.offsets_[u];
            const auto ue = g.adj_.begin() + g.offsets_[u + 1];
            g.rport_[at] = static_cast<uint32_t>(std::lower_bound(ub, ue, v) - ub);
        }
    }
    return g;
}

bool Graph::has_edge(NodeId u, NodeId v) const {
    check_node(u);
    check_node(v);
    const auto b = adj_.begin() + offsets_[u];
    const auto e = adj_.begin() + offsets_[u + 1];
    return std::binary_search(b, e, v);
}

std::vector<std::pair<NodeId, NodeId>> Graph::edges() const {
    std::vector<std::pair<NodeId, NodeId>> out;
    out.reserve(m_);
    for (uint32_t v = 0; v < n_; ++v) {
        for (uint32_t at = offsets_[v]; at < offsets_[v + 1]; ++at) {
            if (v < adj_[at]) {
                out.emplace_back(v, adj_[at]);
            }
        }
    }
    return out;
}

void Graph::check_invariants() const {
    if (offsets_.size() != n_ + 1 || offsets_[0] != 0 || offsets_[n_] != adj_.size() ||
        adj_.size() != 2 * m_ || rport_.size() != adj_.size()) {
        throw std::logic_error("graph storage sizes inconsistent");
    }
    uint32_t seen_max = 0;
    for (uint32_t v = 0; v < n_; ++v) {
        const uint32_t d = offsets_[v + 1] - offsets_[v];
        seen_max = std::max(seen_max, d);
        for (uint32_t p = 0; p < d; ++p) {
            const uint32_t at = offsets_[v] + p;
            const NodeId u = adj_[at];
            if (u >= n_) {
                throw std::logic_error("adjacency entry out of range");
            }
            if (u == v) {
                throw std::logic_error("self-loop stored in adjacency");
            }
            if (p > 0 && adj_[at - 1] >= u) {
                throw std::logic_error("adjacency not sorted strictly ascending");
            }
            // Reverse-port involution: following the edge back lands on (v, p).
            const uint32_t rp = rport_[at];
            if (rp >= offsets_[u + 1] - offsets_[u]) {
                throw std::logic_error("reverse port out of range");
            }
            const uint32_t back = offsets_[u] + rp;
            if (adj_[back] != v || rport_[back] != p) {
                throw std::logic_error("reverse-port involution violated");
            }
        }
    }
    if (seen_max != max_degree_) {
        throw std::logic_error("cached max degree stale");
    }
}

bool bfs_connected(const Graph& g, const ConnectivityQuery& q) {
    if (q.s >= g.node_count() || q.t >= g.node_count()) {
        throw std::invalid_argument("query endpoint out of range");
    }
    if (q.s == q.t) {
        return true;
    }
    std::vector<uint8_t> seen(g.node_count(), 0);
    std::queue<NodeId> frontier;
    seen[q.s] = 1;
    frontier.push(q.s);
    while (!frontier.empty()) {
        const NodeId v = frontier.front();
        frontier.pop();
        const uint32_t d = g.degree(v);
        for (uint32_t p = 0; p < d; ++p) {
            const NodeId u = g.neighbor(v, p);
            if (!seen[u]) {
                if (u == q.t) {
                    return true;
                }
                seen[u] = 1;
                frontier.push(u);
            }
        }
    }
    return false;
}

std::vector<NodeId> component_of(const Graph& g, NodeId v) {
    if (v >= g.node_count()) {
        throw std::invalid_argument("node id out of range");
    }
    std::vector<uint8_t> seen(g.node_count(), 0);
    std::vector<NodeId> out;
    std::queue<NodeId> frontier;
    seen[v] = 1;
    frontier.push(v);
    while (!frontier.empty()) {
        const NodeId w = frontier.front();
        frontier.pop();
        out.push_back(w);
        const uint32_t d = g.degree(w);
        for (uint32_t p = 0; p < d; ++p) {
            const NodeId u = g.neighbor(w, p);
            if (!seen[u]) {
                seen[u] = 1;
                frontier.push(u);
            }
        }
    }
    return out;
}

}  // namespace mhwalk
