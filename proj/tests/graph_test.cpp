#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "mhwalk/generators.hpp"
#include "mhwalk/graph.hpp"
#include "mhwalk/graph_io.hpp"
#include "mhwalk/rng.hpp"
#include "mhwalk/union_find.hpp"

using namespace mhwalk;

namespace {

std::multiset<uint32_t> degree_multiset(const Graph& g) {
    std::multiset<uint32_t> ds;
    for (NodeId v = 0; v < g.node_count(); ++v) {
        ds.insert(g.degree(v));
    }
    return ds;
}

}  // namespace

TEST_CASE("triangle adjacency and traversal") {
    const Graph g = Graph::from_edges(3, {{0, 1}, {0, 2}, {1, 2}});
    CHECK(g.node_count() == 3);
    CHECK(g.edge_count() == 3);
    for (NodeId v = 0; v < 3; ++v) {
        CHECK(g.degree(v) == 2);
    }
    const EdgeEnd e = g.traverse_edge(0, 1);
    CHECK(e.node == 2);
    CHECK(e.port == 0);
    CHECK(g.has_edge(0, 2));
    CHECK(g.has_edge(2, 0));
    CHECK_FALSE(g.has_edge(0, 0));
    g.check_invariants();
}

TEST_CASE("edge traversal is an involution on fuzzed graphs") {
    Rng rng(2024);
    for (int it = 0; it < 200; ++it) {
        const uint32_t n = 2 + rng.uniform_below(30);
        const uint64_t cap = static_cast<uint64_t>(n) * (n - 1) / 2;
        const Graph g = gen_random_graph(n, rng.uniform_below64(cap + 1), rng.next_u64());
        g.check_invariants();
        for (NodeId v = 0; v < n; ++v) {
            for (uint32_t p = 0; p < g.degree(v); ++p) {
                const EdgeEnd far = g.traverse_edge(v, p);
                CHECK(g.neighbor(far.node, far.port) == v);
                const EdgeEnd back = g.traverse_edge(far.node, far.port);
                REQUIRE(back.node == v);
                REQUIRE(back.port == p);
            }
        }
    }
}

TEST_CASE("construction rejects malformed input") {
    CHECK_THROWS_AS(Graph::from_edges(0, {}), std::invalid_argument);
    CHECK_THROWS_AS(Graph::from_edges(2, {{0, 0}}), std::invalid_argument);
    CHECK_THROWS_AS(Graph::from_edges(2, {{0, 1}, {1, 0}}), std::invalid_argument);
    CHECK_THROWS_AS(Graph::from_edges(2, {{0, 2}}), std::invalid_argument);
    CHECK_THROWS_AS(Graph::from_edges(3, {{0, 1}, {0, 1}}), std::invalid_argument);
    CHECK_THROWS_AS(Graph::from_edges(2, {{0, 1}}).traverse_edge(0, 1), std::invalid_argument);
    CHECK_THROWS_AS(Graph::from_edges(2, {{0, 1}}).degree(2), std::invalid_argument);
}

TEST_CASE("glitter star has the hub/middle/leaf degree profile") {
    const Graph g = gen_glitter_star(3);
    CHECK(g.node_count() == 7);
    CHECK(g.edge_count() == 6);
    CHECK(degree_multiset(g) == std::multiset<uint32_t>{3, 2, 2, 2, 1, 1, 1});
    CHECK(g.degree(0) == 3);      // hub
    CHECK(g.has_edge(1, 4));      // middle 1 to its leaf
    CHECK_FALSE(g.has_edge(0, 4));
}

TEST_CASE("standard families have the right shapes") {
    const Graph k5 = gen_complete(5);
    CHECK(k5.edge_count() == 10);
    for (NodeId v = 0; v < 5; ++v) {
        CHECK(k5.degree(v) == 4);
    }
    const Graph p4 = gen_path(4);
    CHECK(p4.edge_count() == 3);
    CHECK(p4.degree(0) == 1);
    CHECK(p4.degree(1) == 2);
    const Graph c5 = gen_cycle(5);
    CHECK(c5.edge_count() == 5);
    for (NodeId v = 0; v < 5; ++v) {
        CHECK(c5.degree(v) == 2);
    }
    const Graph lol = gen_lollipop(4, 3);
    CHECK(lol.node_count() == 7);
    CHECK(lol.edge_count() == 6 + 3);
    CHECK(lol.degree(3) == 4);  // clique node carrying the path
    CHECK(lol.degree(6) == 1);  // path tip

    const auto [pair_g, q] = gen_disconnected_pair(gen_cycle(5));
    CHECK(pair_g.node_count() == 10);
    CHECK(pair_g.edge_count() == 10);
    CHECK_FALSE(bfs_connected(pair_g, q));
    CHECK_THROWS_AS(gen_disconnected_pair(gen_random_graph(6, 0, 1)), std::invalid_argument);
}

TEST_CASE("random generators are deterministic and respect counts") {
    const Graph a = gen_random_graph(20, 50, 7);
    const Graph b = gen_random_graph(20, 50, 7);
    CHECK(a.edges() == b.edges());
    CHECK(a.edge_count() == 50);
    const Graph dense = gen_random_graph(10, 45, 3);
    CHECK(dense.edge_count() == 45);
    CHECK_THROWS_AS(gen_random_graph(10, 46, 3), std::invalid_argument);

    const Graph c = gen_random_connected(30, 60, 9);
    CHECK(c.edge_count() == 60);
    bool all_connected = true;
    for (NodeId v = 1; v < 30; ++v) {
        all_connected = all_connected && bfs_connected(c, {0, v});
    }
    CHECK(all_connected);
    CHECK_THROWS_AS(gen_random_connected(30, 28, 9), std::invalid_argument);
}

TEST_CASE("edge-list files round-trip") {
    const Graph g = gen_random_graph(15, 30, 11);
    std::ostringstream out;
    write_edge_list(out, g);
    std::istringstream in(out.str());
    const Graph h = read_edge_list(in);
    CHECK(g.edges() == h.edges());
    CHECK(g.node_count() == h.node_count());
}

TEST_CASE("edge-list reader rejects malformed input") {
    const auto reject = [](const std::string& text) {
        std::istringstream in(text);
        CHECK_THROWS_AS(read_edge_list(in), std::runtime_error);
    };
    reject("");
    reject("3\n");
    reject("3 1 9\n");
    reject("3 2\n0 1\n");
    reject("3 1\n1 0\n");        // unordered endpoints
    reject("3 1\n0 0\n");        // self-loop
    reject("3 1\n0 3\n");        // out of range
    reject("3 1\n0 1\n0 2\n");   // trailing content
    reject("x y\n");

    std::istringstream ok("# generated\n3 2\n\n0 1\n# mid comment\n1 2\n");
    const Graph g = read_edge_list(ok);
    CHECK(g.edge_count() == 2);
}

TEST_CASE("bfs oracle matches union-find across fuzzed graphs") {
    Rng rng(5150);
    for (int it = 0; it < 1000; ++it) {
        const uint32_t n = 1 + rng.uniform_below(24);
        const uint64_t cap = static_cast<uint64_t>(n) * (n - 1) / 2;
        const Graph g = gen_random_graph(n, cap == 0 ? 0 : rng.uniform_below64(cap + 1),
                                         rng.next_u64());
        UnionFind uf;
        for (uint32_t v = 0; v < n; ++v) {
            uf.make_set();
        }
        for (const auto& [u, v] : g.edges()) {
            uf.unite(u, v);
        }
        for (int k = 0; k < 5; ++k) {
            const NodeId u = rng.uniform_below(n);
            const NodeId v = rng.uniform_below(n);
            REQUIRE(uf.same(u, v) == bfs_connected(g, {u, v}));
        }
    }
}

TEST_CASE("component enumeration agrees with pairwise reachability") {
    const auto [g, q] = gen_disconnected_pair(gen_path(4));
    const std::vector<NodeId> comp = component_of(g, 1);
    CHECK(comp.size() == 4);
    for (NodeId v : comp) {
        CHECK(v < 4);
    }
    CHECK(bfs_connected(g, {2, 2}));
}
