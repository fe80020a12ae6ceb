#include "mhwalk/generators.hpp"

#include <algorithm>
#include <unordered_set>

namespace mhwalk {

namespace {

uint64_t pair_key(NodeId u, NodeId v) {
    return (static_cast<uint64_t>(u) << 32) | v;
}

uint64_t max_edges(uint32_t n) {
    return static_cast<uint64_t>(n) * (n - 1) / 2;
}

}  // namespace

Graph gen_glitter_star(uint32_t l) {
    if (l == 0) {
        throw std::invalid_argument("glitter star needs at least one arm");
    }
    std::vector<std::pair<NodeId, NodeId>> edges;
    edges.reserve(2 * static_cast<size_t>(l));
    for (uint32_t i = 1; i <= l; ++i) {
        edges.emplace_back(0, i);
        edges.emplace_back(i, l + i);
    }
    return Graph::from_edges(2 * l + 1, edges);
}

Graph gen_path(uint32_t k) {
    if (k == 0) {
        throw std::invalid_argument("path needs at least one node");
    }
    std::vector<std::pair<NodeId, NodeId>> edges;
    for (uint32_t i = 0; i + 1 < k; ++i) {
        edges.emplace_back(i, i + 1);
    }
    return Graph::from_edges(k, edges);
}

Graph gen_cycle(uint32_t k) {
    if (k < 3) {
        throw std::invalid_argument("cycle needs at least three nodes");
    }
    std::vector<std::pair<NodeId, NodeId>> edges;
    for (uint32_t i = 0; i + 1 < k; ++i) {
        edges.emplace_back(i, i + 1);
    }
    edges.emplace_back(0, k - 1);
    return Graph::from_edges(k, edges);
}

Graph gen_complete(uint32_t k) {
    if (k == 0) {
        throw std::invalid_argument("complete graph needs at least one node");
    }
    std::vector<std::pair<NodeId, NodeId>> edges;
    for (uint32_t u = 0; u < k; ++u) {
        for (uint32_t v = u + 1; v < k; ++v) {
            edges.emplace_back(u, v);
        }
    }
    return Graph::from_edges(k, edges);
}

Graph gen_lollipop(uint32_t k, uint32_t p) {
    if (k < 2) {
        throw std::invalid_argument("lollipop clique needs at least two nodes");
    }
    std::vector<std::pair<NodeId, NodeId>> edges;
    for (uint32_t u = 0; u < k; ++u) {
        for (uint32_t v = u + 1; v < k; ++v) {
            edges.emplace_back(u, v);
        }
    }
    for (uint32_t i = 0; i < p; ++i) {
        edges.emplace_back(k - 1 + i, k + i);
    }
    return Graph::from_edges(k + p, edges);
}

Graph gen_random_graph(uint32_t n, uint64_t m, uint64_t seed) {
    if (n == 0) {
        throw std::invalid_argument("node count must be positive");
    }
    const uint64_t cap = max_edges(n);
    if (m > cap) {
        throw std::invalid_argument("requested edge count exceeds simple-graph maximum");
    }
    Rng rng = Rng::stream(seed, 0);

    // Sample whichever of the edge set / its complement is smaller, by
    // rejection; keep insertion order so output is independent of hash-set
    // iteration order.
    const bool complement = m > cap / 2;
    const uint64_t want = complement ? cap - m : m;
    std::unordered_set<uint64_t> picked;
    picked.reserve(static_cast<size_t>(want) * 2 + 16);
    std::vector<std::pair<NodeId, NodeId>> sampled;
    sampled.reserve(static_cast<size_t>(want));
    while (sampled.size() < want) {
        NodeId u = rng.uniform_below(n);
        NodeId v = rng.uniform_below(n);
        if (u == v) {
            continue;
        }
        if (u > v) {
            std::swap(u, v);
        }
        if (picked.insert(pair_key(u, v)).second) {
            sampled.emplace_back(u, v);
        }
    }
    if (!complement) {
        return Graph::from_edges(n, sampled);
    }
    std::vector<std::pair<NodeId, NodeId>> edges;
    edges.reserve(static_cast<size_t>(m));
    for (uint32_t u = 0; u < n; ++u) {
        for (uint32_t v = u + 1; v < n; ++v) {
            if (!picked.count(pair_key(u, v))) {
                edges.emplace_back(u, v);
            }
        }
    }
    return Graph::from_edges(n, edges);
}

Graph gen_random_connected(uint32_t n, uint64_t m, uint64_t seed) {
    if (n == 0) {
        throw std::invalid_argument("node count must be positive");
    }
    if (n > 1 && m + 1 < n) {
        throw std::invalid_argument("connected graph needs at least n-1 edges");
    }
    const uint64_t cap = max_edges(n);
    m = std::min(m, cap);
    Rng rng = Rng::stream(seed, 0);

    std::unordered_set<uint64_t> picked;
    std::vector<std::pair<NodeId, NodeId>> edges;
    edges.reserve(static_cast<size_t>(m));
    // Random recursive tree keeps every instance connected.
    for (uint32_t v = 1; v < n; ++v) {
        NodeId u = rng.uniform_below(v);
        edges.emplace_back(u, v);
        picked.insert(pair_key(u, v));
    }
    while (edges.size() < m) {
        NodeId u = rng.uniform_below(n);
        NodeId v = rng.uniform_below(n);
        if (u == v) {
            continue;
        }
        if (u > v) {
            std::swap(u, v);
        }
        if (picked.insert(pair_key(u, v)).second) {
            edges.emplace_back(u, v);
        }
    }
    return Graph::from_edges(n, edges);
}

std::pair<Graph, ConnectivityQuery> gen_disconnected_pair(const Graph& h) {
    const uint32_t hn = h.node_count();
    if (component_of(h, 0).size() != hn) {
        throw std::invalid_argument("disconnected-pair base graph must be connected");
    }
    std::vector<std::pair<NodeId, NodeId>> edges;
    edges.reserve(2 * static_cast<size_t>(h.edge_count()));
    for (const auto& [u, v] : h.edges()) {
        edges.emplace_back(u, v);
        edges.emplace_back(u + hn, v + hn);
    }
    return {Graph::from_edges(2 * hn, edges), ConnectivityQuery{0, hn}};
}

}  // namespace mhwalk
