#pragma once

// Node potentials and the arc weights they induce.
//
// A potential f : V -> R+ turns a graph into a weighted graph whose walk
// (see walk.hpp) has stationary distribution proportional to f:
//   arc weight      w_f(e_vu) = min{ f(v)/deg(v), f(u)/deg(u) }
//   self-loop       w_f(e_vv) = f(v) - sum_{u in Gamma(v)} w_f(e_vu)
// Shipped potentials:
//   unit         f(v) = 1                  uniform stationary distribution
//   unbiased     f(v) = deg(v)/dbar        reproduces the simple random walk
//   fine_tuned   f(v) = deg(v)/dbar + 1    blends the two regimes
// with dbar = 2m/n the average degree.  Isolated nodes get the minimum
// positive value under `unbiased` (they absorb the walk regardless, but f
// must stay positive for the weights to be well-defined).

#include <functional>
#include <string>

#include "mhwalk/graph.hpp"

namespace mhwalk {

enum class PotentialKind { Unit, Unbiased, FineTuned, Custom };

class Potential {
  public:
    static Potential unit() { return Potential(PotentialKind::Unit, 1.0, nullptr, "unit"); }

    static Potential unbiased(const Graph& g) {
        return Potential(PotentialKind::Unbiased, average_degree(g), nullptr, "unbiased");
    }

    static Potential fine_tuned(const Graph& g) {
        return Potential(PotentialKind::FineTuned, average_degree(g), nullptr, "finetuned");
    }

    static Potential custom(std::function<double(NodeId)> f, std::string name = "custom") {
        if (!f) {
            throw std::invalid_argument("custom potential needs an evaluator");
        }
        return Potential(PotentialKind::Custom, 1.0, std::move(f), std::move(name));
    }

    PotentialKind kind() const { return kind_; }
    const std::string& name() const { return name_; }
    double average_degree_used() const { return dbar_; }

    double value(const Graph& g, NodeId v) const {
        switch (kind_) {
            case PotentialKind::Unit:
                g.degree(v);  // id validation only
                return 1.0;
            case PotentialKind::Unbiased: {
                const uint32_t d = g.degree(v);
                return (d > 0 ? static_cast<double>(d) : 1.0) / dbar_;
            }
            case PotentialKind::FineTuned:
                return static_cast<double>(g.degree(v)) / dbar_ + 1.0;
            case PotentialKind::Custom: {
                g.degree(v);
                const double fv = custom_(v);
                if (!(fv > 0.0)) {
                    throw std::invalid_argument("custom potential must be positive, got " +
                                                std::to_string(fv) + " at node " +
                                                std::to_string(v));
                }
                return fv;
            }
        }
        throw std::logic_error("unreachable potential kind");
    }

  private:
    Potential(PotentialKind k, double dbar, std::function<double(NodeId)> f, std::string name)
        : kind_(k), dbar_(dbar), custom_(std::move(f)), name_(std::move(name)) {}

    static double average_degree(const Graph& g) {
        if (g.edge_count() == 0) {
            return 1.0;  // degenerate graphs: any positive value works, degrees are all 0
        }
        return 2.0 * static_cast<double>(g.edge_count()) / g.node_count();
    }

    PotentialKind kind_;
    double dbar_;
    std::function<double(NodeId)> custom_;
    std::string name_;
};

// Weight of the arc between adjacent nodes u, v (symmetric in its arguments).
inline double arc_weight(const Graph& g, const Potential& f, NodeId u, NodeId v) {
    if (!g.has_edge(u, v)) {
        throw std::invalid_argument("arc_weight on a non-edge");
    }
    const double wu = f.value(g, u) / g.degree(u);
    const double wv = f.value(g, v) / g.degree(v);
    return wu < wv ? wu : wv;
}

// Residual self-loop weight at v; mathematically >= 0 for all shipped
// potentials, clamped at 0 against accumulated rounding (a few ulp).
inline double self_loop_weight(const Graph& g, const Potential& f, NodeId v) {
    double w = f.value(g, v);
    const uint32_t d = g.degree(v);
    for (uint32_t p = 0; p < d; ++p) {
        w -= arc_weight(g, f, v, g.neighbor(v, p));
    }
    return w < 0.0 ? 0.0 : w;
}

}  // namespace mhwalk
