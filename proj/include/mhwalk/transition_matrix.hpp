#pragma once

// Exact dense transition kernel for small graphs — the linear-algebra oracle
// the Monte-Carlo machinery is tested against.

#include <cstdint>
#include <vector>

#include "mhwalk/graph.hpp"
#include "mhwalk/potential.hpp"

namespace mhwalk {

class DenseMatrix {
  public:
    explicit DenseMatrix(uint32_t n) : n_(n), a_(static_cast<size_t>(n) * n, 0.0) {}

    uint32_t size() const { return n_; }
    double& at(uint32_t i, uint32_t j) { return a_[static_cast<size_t>(i) * n_ + j]; }
    double at(uint32_t i, uint32_t j) const { return a_[static_cast<size_t>(i) * n_ + j]; }

  private:
    uint32_t n_;
    std::vector<double> a_;
};

// Row-stochastic kernel P with P[v][u] = w_f(e_vu)/f(v) on neighbors, the
// residual on the diagonal, and P[v][v] = 1 for isolated v.
DenseMatrix transition_matrix(const Graph& g, const Potential& f, uint32_t node_cap = 2000);

// pi proportional to f, normalized.
std::vector<double> stationary_distribution(const Graph& g, const Potential& f);

// Row-vector times matrix.
std::vector<double> left_multiply(const std::vector<double>& x, const DenseMatrix& p);

}  // namespace mhwalk
