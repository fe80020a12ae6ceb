#include "mhwalk/transition_matrix.hpp"

namespace mhwalk {

DenseMatrix transition_matrix(const Graph& g, const Potential& f, uint32_t node_cap) {
    const uint32_t n = g.node_count();
    if (n > node_cap) {
        throw std::invalid_argument("transition_matrix: graph exceeds node cap " +
                                    std::to_string(node_cap));
    }
    DenseMatrix p(n);
    for (uint32_t v = 0; v < n; ++v) {
        const uint32_t d = g.degree(v);
        if (d == 0) {
            p.at(v, v) = 1.0;
            continue;
        }
        const double fv = f.value(g, v);
        for (uint32_t port = 0; port < d; ++port) {
            const NodeId u = g.neighbor(v, port);
            p.at(v, u) = arc_weight(g, f, v, u) / fv;
        }
        p.at(v, v) = self_loop_weight(g, f, v) / fv;
    }
    return p;
}

std::vector<double> stationary_distribution(const Graph& g, const Potential& f) {
    const uint32_t n = g.node_count();
    std::vector<double> pi(n);
    double total = 0.0;
    for (uint32_t v = 0; v < n; ++v) {
        pi[v] = f.value(g, v);
        total += pi[v];
    }
    for (uint32_t v = 0; v < n; ++v) {
        pi[v] /= total;
    }
    return pi;
}

std::vector<double> left_multiply(const std::vector<double>& x, const DenseMatrix& p) {
    const uint32_t n = p.size();
    if (x.size() != n) {
        throw std::invalid_argument("left_multiply: dimension mismatch");
    }
    std::vector<double> out(n, 0.0);
    for (uint32_t i = 0; i < n; ++i) {
        const double xi = x[i];
        if (xi == 0.0) {
            continue;
        }
        for (uint32_t j = 0; j < n; ++j) {
            out[j] += xi * p.at(i, j);
        }
    }
    return out;
}

}  // namespace mhwalk
