#include <cmath>
#include <map>
#include <vector>

#include "doctest.h"
#include "mhwalk/generators.hpp"
#include "mhwalk/graph.hpp"
#include "mhwalk/potential.hpp"
#include "mhwalk/rng.hpp"
#include "mhwalk/split_view.hpp"
#include "mhwalk/transition_matrix.hpp"

using namespace mhwalk;

namespace {

Graph star(uint32_t leaves) {
    std::vector<std::pair<NodeId, NodeId>> es;
    for (uint32_t k = 1; k <= leaves; ++k) {
        es.push_back({0, k});
    }
    return Graph::from_edges(leaves + 1, es);
}

}  // namespace

TEST_CASE("degree-7 node splits into chain degrees 4,5,2 under cap 3") {
    const Graph g = star(7);
    const SplitView sv(g, 3);
    REQUIRE(sv.copies(0) == 3);
    CHECK(sv.degree_star({0, 0}) == 4);  // outer 0..2 plus next
    CHECK(sv.degree_star({0, 1}) == 5);  // outer 3..5 plus prev and next
    CHECK(sv.degree_star({0, 2}) == 2);  // outer 6 plus prev
    CHECK(sv.copies(1) == 1);
    CHECK(sv.degree_star({1, 0}) == 1);
    CHECK(sv.max_degree_star() == 5);
}

TEST_CASE("complete graph splits to twice the nodes under cap 2") {
    const Graph g = gen_complete(4);
    const SplitView sv(g, 2);
    CHECK(sv.node_count_star() == 8);
    for (NodeId v = 0; v < 4; ++v) {
        REQUIRE(sv.copies(v) == 2);
        CHECK(sv.degree_star({v, 0}) == 3);
        CHECK(sv.degree_star({v, 1}) == 2);
        CHECK(sv.degree_star({v, 0}) <= 4);
        CHECK(sv.degree_star({v, 1}) <= 4);
    }
}

TEST_CASE("triangle under cap 1 becomes a six-cycle") {
    const Graph g = gen_cycle(3);
    const SplitView sv(g, 1);
    CHECK(sv.node_count_star() == 6);
    const Graph gm = sv.materialize();
    CHECK(gm.node_count() == 6);
    CHECK(gm.edge_count() == 6);
    for (NodeId v = 0; v < 6; ++v) {
        CHECK(gm.degree(v) == 2);
    }
    bool connected = true;
    for (NodeId v = 1; v < 6; ++v) {
        connected = connected && bfs_connected(gm, {0, v});
    }
    CHECK(connected);
}

TEST_CASE("cap at or above the max degree leaves the graph unchanged") {
    const Graph g = gen_random_connected(12, 24, 5);
    const SplitView sv(g, g.max_degree());
    CHECK(sv.node_count_star() == g.node_count());
    const Graph gm = sv.materialize();
    CHECK(gm.edges() == g.edges());
    for (NodeId v = 0; v < g.node_count(); ++v) {
        CHECK(sv.degree_star({v, 0}) == g.degree(v));
    }
}

TEST_CASE("ranks enumerate copies in base-then-copy order") {
    const Graph g = star(7);
    const SplitView sv(g, 3);
    uint64_t r = 0;
    for (NodeId v = 0; v < g.node_count(); ++v) {
        for (uint32_t c = 0; c < sv.copies(v); ++c) {
            const SplitNode s{v, c};
            REQUIRE(sv.rank(s) == r);
            REQUIRE(sv.from_rank(r) == s);
            ++r;
        }
    }
    CHECK(r == sv.node_count_star());
}

TEST_CASE("outer traversal lands in the copy owning the far port") {
    // Leaf 10's only edge enters the hub at port 9; under cap 3 that port
    // belongs to hub copy 3.
    const Graph g = star(12);
    const SplitView sv(g, 3);
    REQUIRE(sv.copies(0) == 4);
    const Graph gm = sv.materialize();
    const auto rank10 = static_cast<NodeId>(sv.rank({10, 0}));
    const auto hub3 = static_cast<NodeId>(sv.rank({0, 3}));
    CHECK(gm.has_edge(rank10, hub3));
    // and only that hub copy
    CHECK_FALSE(gm.has_edge(rank10, static_cast<NodeId>(sv.rank({0, 0}))));
    CHECK_FALSE(gm.has_edge(rank10, static_cast<NodeId>(sv.rank({0, 1}))));
    CHECK_FALSE(gm.has_edge(rank10, static_cast<NodeId>(sv.rank({0, 2}))));
}

TEST_CASE("port sampling is uniform across outer and chain ports") {
    const Graph g = star(7);
    const SplitView sv(g, 3);
    const uint64_t draws = 1000000;

    const auto check_uniform = [&](SplitNode s, const std::vector<uint32_t>& want) {
        Rng rng = Rng::stream(31337, s.copy);
        std::map<uint32_t, uint64_t> counts;
        for (uint64_t k = 0; k < draws; ++k) {
            ++counts[sv.random_port_star(s, rng)];
        }
        REQUIRE(counts.size() == want.size());
        const double p = 1.0 / static_cast<double>(want.size());
        const double sigma = std::sqrt(p * (1.0 - p) / static_cast<double>(draws));
        for (uint32_t port : want) {
            REQUIRE(counts.count(port) == 1);
            const double freq =
                static_cast<double>(counts[port]) / static_cast<double>(draws);
            CHECK(std::abs(freq - p) <= 4.0 * sigma);
        }
    };

    check_uniform({0, 0}, {0, 1, 2, kPortNext});
    check_uniform({0, 2}, {6, kPortPrev});
    check_uniform({0, 1}, {3, 4, 5, kPortPrev, kPortNext});
}

TEST_CASE("split walk follows the materialized unit kernel") {
    const Graph g = gen_random_connected(7, 11, 17);
    const SplitView sv(g, 2);
    const Graph gm = sv.materialize();
    const DenseMatrix p = transition_matrix(gm, Potential::unit());
    const uint64_t draws = 400000;
    for (uint64_t start_rank : {uint64_t{0}, sv.node_count_star() / 2}) {
        const SplitNode start = sv.from_rank(start_rank);
        Rng rng = Rng::stream(9090, start_rank);
        std::vector<uint64_t> counts(gm.node_count(), 0);
        for (uint64_t k = 0; k < draws; ++k) {
            ++counts[sv.rank(sv.next_state_star(start, rng))];
        }
        for (NodeId u = 0; u < gm.node_count(); ++u) {
            const double prob = p.at(static_cast<NodeId>(start_rank), u);
            const double freq = static_cast<double>(counts[u]) / static_cast<double>(draws);
            if (prob == 0.0) {
                REQUIRE(counts[u] == 0);
            } else {
                const double sigma =
                    std::sqrt(prob * (1.0 - prob) / static_cast<double>(draws));
                REQUIRE(std::abs(freq - prob) <= 4.0 * sigma);
            }
        }
    }
}

TEST_CASE("split size bound holds on fuzzed graphs") {
    Rng rng(2468);
    for (int it = 0; it < 100; ++it) {
        const uint32_t n = 2 + rng.uniform_below(20);
        const uint64_t cap = static_cast<uint64_t>(n) * (n - 1) / 2;
        const uint64_t m = 1 + rng.uniform_below64(cap);
        const Graph g = gen_random_graph(n, m, rng.next_u64());
        const uint32_t d = 1 + rng.uniform_below(5);
        const SplitView sv(g, d);
        // n* < n + 2m/d, kept exact in integers
        REQUIRE(sv.node_count_star() * d <
                static_cast<uint64_t>(n) * d + 2 * g.edge_count());
        for (NodeId v = 0; v < n; ++v) {
            for (uint32_t c = 0; c < sv.copies(v); ++c) {
                REQUIRE(sv.degree_star({v, c}) <= d + 2);
            }
        }
    }
    const Graph g0 = Graph::from_edges(4, {});
    CHECK(SplitView(g0, 2).node_count_star() == 4);
}

TEST_CASE("isolated split nodes absorb without consuming randomness") {
    const Graph g = Graph::from_edges(3, {{1, 2}});
    const SplitView sv(g, 1);
    Rng rng(1);
    Rng probe(1);
    const SplitNode iso{0, 0};
    CHECK(sv.next_state_star(iso, rng) == iso);
    CHECK(rng.next_u64() == probe.next_u64());
    CHECK_THROWS_AS(sv.random_port_star(iso, rng), std::invalid_argument);
}

TEST_CASE("invalid split nodes and parameters are rejected") {
    const Graph g = gen_path(3);
    CHECK_THROWS_AS(SplitView(g, 0), std::invalid_argument);
    const SplitView sv(g, 1);
    Rng rng(4);
    CHECK_THROWS_AS(sv.degree_star({3, 0}), std::invalid_argument);
    CHECK_THROWS_AS(sv.degree_star({1, 2}), std::invalid_argument);
    CHECK_THROWS_AS(sv.rank({0, 5}), std::invalid_argument);
    CHECK_THROWS_AS(sv.from_rank(sv.node_count_star()), std::invalid_argument);
}
