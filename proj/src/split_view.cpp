#include "mhwalk/split_view.hpp"

#include <algorithm>

namespace mhwalk {

SplitView::SplitView(const Graph& g, uint32_t d) : g_(&g), d_(d) {
    if (d == 0) {
        throw std::invalid_argument("split parameter must be positive");
    }
    rank_offset_.resize(g.node_count() + 1);
    rank_offset_[0] = 0;
    for (uint32_t v = 0; v < g.node_count(); ++v) {
        rank_offset_[v + 1] = rank_offset_[v] + copies(v);
    }
}

void SplitView::check(SplitNode s) const {
    if (!valid(s)) {
        throw std::invalid_argument("invalid split node (" + std::to_string(s.base) + "," +
                                    std::to_string(s.copy) + ")");
    }
}

uint32_t SplitView::degree_star(SplitNode s) const {
    check(s);
    const uint32_t deg = g_->degree(s.base);
    if (deg == 0) {
        return 0;
    }
    const uint64_t left = static_cast<uint64_t>(s.copy) * d_;
    const uint64_t right = std::min<uint64_t>(left + d_, deg) - 1;
    const uint32_t chain = (s.copy > 0 ? 1 : 0) + (s.copy + 1 < copies(s.base) ? 1 : 0);
    return static_cast<uint32_t>(right - left + 1) + chain;
}

uint32_t SplitView::random_port_star(SplitNode s, Rng& rng) const {
    const uint32_t dstar = degree_star(s);
    if (dstar == 0) {
        throw std::invalid_argument("random port requested on a degree-0 split node");
    }
    const uint32_t deg = g_->degree(s.base);
    const uint64_t left = static_cast<uint64_t>(s.copy) * d_;
    const uint64_t right = std::min<uint64_t>(left + d_, deg) - 1;
    const uint32_t outer = static_cast<uint32_t>(right - left + 1);
    const uint32_t draw = rng.uniform_below(dstar);
    if (draw < outer) {
        return static_cast<uint32_t>(left) + draw;
    }
    // Chain labels ordered prev-then-next among those present.
    if (s.copy > 0 && draw == outer) {
        return kPortPrev;
    }
    return kPortNext;
}

SplitNode SplitView::next_state_star(SplitNode s, Rng& rng) const {
    const uint32_t dstar = degree_star(s);  // validates s
    if (dstar == 0) {
        return s;
    }
    const uint32_t port = random_port_star(s, rng);
    SplitNode proposal;
    if (port == kPortPrev) {
        proposal = SplitNode{s.base, s.copy - 1};
    } else if (port == kPortNext) {
        proposal = SplitNode{s.base, s.copy + 1};
    } else {
        const EdgeEnd far = g_->traverse_edge(s.base, port);
        proposal = SplitNode{far.node, far.port / d_};
    }
    const double r = rng.next_unit();
    const double q = static_cast<double>(dstar) / static_cast<double>(degree_star(proposal));
    return r < q ? proposal : s;
}

SplitNode SplitView::from_rank(uint64_t r) const {
    if (r >= node_count_star()) {
        throw std::invalid_argument("split rank out of range");
    }
    const auto it = std::upper_bound(rank_offset_.begin(), rank_offset_.end(), r);
    const uint32_t v = static_cast<uint32_t>(it - rank_offset_.begin()) - 1;
    return SplitNode{v, static_cast<uint32_t>(r - rank_offset_[v])};
}

Graph SplitView::materialize(uint64_t node_cap) const {
    const uint64_t nstar = node_count_star();
    if (nstar > node_cap) {
        throw std::invalid_argument("split graph exceeds materialization cap (" +
                                    std::to_string(nstar) + " > " + std::to_string(node_cap) +
                                    " nodes)");
    }
    std::vector<std::pair<NodeId, NodeId>> edges;
    for (uint32_t v = 0; v < g_->node_count(); ++v) {
        const uint32_t k = copies(v);
        const uint32_t deg = g_->degree(v);
        for (uint32_t i = 0; i < k; ++i) {
            const auto my_rank = static_cast<NodeId>(rank_offset_[v] + i);
            if (i + 1 < k) {
                edges.emplace_back(my_rank, static_cast<NodeId>(rank_offset_[v] + i + 1));
            }
            if (deg == 0) {
                continue;
            }
            const uint64_t left = static_cast<uint64_t>(i) * d_;
            const uint64_t right = std::min<uint64_t>(left + d_, deg) - 1;
            for (uint32_t p = static_cast<uint32_t>(left); p <= right; ++p) {
                const EdgeEnd far = g_->traverse_edge(v, p);
                const auto far_rank =
                    static_cast<NodeId>(rank_offset_[far.node] + far.port / d_);
                if (my_rank < far_rank) {
                    edges.emplace_back(my_rank, far_rank);
                }
            }
        }
    }
    return Graph::from_edges(static_cast<uint32_t>(nstar), edges);
}

}  // namespace mhwalk
