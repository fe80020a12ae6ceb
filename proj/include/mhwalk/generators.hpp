#pragma once

// Graph families used by the solvers, benchmarks, and test fuzzers.
// Everything is deterministic for a fixed seed.

#include <cstdint>

#include "mhwalk/graph.hpp"
#include "mhwalk/rng.hpp"

namespace mhwalk {

// Star with glitter: hub 0 joined to l middle nodes 1..l, middle i joined to
// leaf l+i.  n = 2l+1, m = 2l.  The hub has the unique large degree, middles
// have degree 2, leaves degree 1.
Graph gen_glitter_star(uint32_t l);

// Path 0-1-...-k-1 (k >= 1), cycle (k >= 3), complete graph (k >= 1).
Graph gen_path(uint32_t k);
Graph gen_cycle(uint32_t k);
Graph gen_complete(uint32_t k);

// Clique on 0..k-1 with a path of p extra nodes hanging off node k-1.
// k >= 2, p >= 0; n = k + p.
Graph gen_lollipop(uint32_t k, uint32_t p);

// Uniform simple graph: m edges sampled without replacement from the n*(n-1)/2
// candidate pairs.  Rejects m above the maximum.  May be disconnected.
Graph gen_random_graph(uint32_t n, uint64_t m, uint64_t seed);

// Connected fuzzing instance: a random spanning tree plus random extra edges
// until the total count reaches m (clamped to the simple-graph maximum).
// Requires m >= n-1.
Graph gen_random_connected(uint32_t n, uint64_t m, uint64_t seed);

// Two disjoint copies of a connected base graph h, plus the query joining
// copy 0's node 0 to copy 1's node 0 — guaranteed-negative instance for
// connectivity solvers.  Rejects a disconnected base.
std::pair<Graph, ConnectivityQuery> gen_disconnected_pair(const Graph& h);

}  // namespace mhwalk
