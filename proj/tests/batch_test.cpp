#include <cstdlib>
#include <vector>

#include "doctest.h"
#include "mhwalk/batch.hpp"
#include "mhwalk/generators.hpp"
#include "mhwalk/graph.hpp"
#include "mhwalk/potential.hpp"
#include "mhwalk/rng.hpp"
#include "mhwalk/walk.hpp"

using namespace mhwalk;

namespace {

// Ground truth for trial k of any batch driver: a plain next_state chain on
// stream (seed, k).
uint64_t manual_hit(const Graph& g, const Potential& f, NodeId start, NodeId target,
                    uint64_t cap, uint64_t seed, uint64_t k, bool* hit) {
    Rng rng = Rng::stream(seed, k);
    NodeId v = start;
    for (uint64_t step = 1; step <= cap; ++step) {
        v = next_state(g, f, v, rng);
        if (v == target) {
            *hit = true;
            return step;
        }
    }
    *hit = false;
    return cap;
}

bool same_samples(const std::vector<HitSample>& a, const std::vector<HitSample>& b) {
    if (a.size() != b.size()) {
        return false;
    }
    for (size_t k = 0; k < a.size(); ++k) {
        if (a[k].steps != b[k].steps || a[k].hit != b[k].hit) {
            return false;
        }
    }
    return true;
}

}  // namespace

TEST_CASE("batch hitting times replay the single-step chain exactly") {
    const Graph g = gen_random_connected(15, 25, 31);
    const Potential f = Potential::fine_tuned(g);
    const uint64_t cap = 50000;
    const auto hs = batch_hitting_times(g, f, 2, 9, 24, cap, 1234, Backend::Scalar);
    REQUIRE(hs.size() == 24);
    for (uint64_t k = 0; k < 24; ++k) {
        bool hit = false;
        const uint64_t steps = manual_hit(g, f, 2, 9, cap, 1234, k, &hit);
        REQUIRE(hs[k].steps == steps);
        REQUIRE(hs[k].hit == hit);
    }
}

TEST_CASE("batch cover times match a bitmap replay") {
    const Graph g = gen_random_connected(10, 14, 47);
    const Potential f = Potential::unit();
    const uint64_t cap = 100000;
    const auto cs = batch_cover_times(g, f, 0, 16, cap, 99, Backend::Scalar);
    for (uint64_t k = 0; k < 16; ++k) {
        Rng rng = Rng::stream(99, k);
        std::vector<bool> seen(g.node_count(), false);
        seen[0] = true;
        uint32_t remaining = g.node_count() - 1;
        NodeId v = 0;
        uint64_t step = 0;
        while (remaining > 0 && step < cap) {
            v = next_state(g, f, v, rng);
            ++step;
            if (!seen[v]) {
                seen[v] = true;
                --remaining;
            }
        }
        REQUIRE(cs[k].hit == (remaining == 0));
        REQUIRE(cs[k].steps == step);
    }
}

TEST_CASE("batch return counts match an occupancy replay") {
    const Graph g = gen_glitter_star(4);
    const Potential f = Potential::unbiased(g);
    const uint64_t t = 400;
    const auto rc = batch_return_counts(g, f, 0, t, 12, 2718, Backend::Scalar);
    for (uint64_t k = 0; k < 12; ++k) {
        Rng rng = Rng::stream(2718, k);
        NodeId v = 0;
        uint64_t count = 1;  // time 0
        for (uint64_t step = 1; step < t; ++step) {
            v = next_state(g, f, v, rng);
            count += v == 0;
        }
        REQUIRE(rc[k] == count);
    }
}

TEST_CASE("results are independent of worker count") {
    const Graph g = gen_random_connected(20, 40, 8);
    const Potential f = Potential::unit();
    const auto one = batch_hitting_times(g, f, 0, 13, 37, 20000, 5, Backend::Scalar, 1);
    const auto many = batch_hitting_times(g, f, 0, 13, 37, 20000, 5, Backend::Scalar, 3);
    CHECK(same_samples(one, many));
    const auto c1 = batch_cover_times(g, f, 0, 21, 200000, 6, Backend::Scalar, 1);
    const auto c4 = batch_cover_times(g, f, 0, 21, 200000, 6, Backend::Scalar, 4);
    CHECK(same_samples(c1, c4));
    const auto r1 = batch_return_counts(g, f, 3, 500, 17, 7, Backend::Scalar, 1);
    const auto r3 = batch_return_counts(g, f, 3, 500, 17, 7, Backend::Scalar, 3);
    CHECK(r1 == r3);
}

TEST_CASE("vector backend reproduces the scalar chains bit for bit") {
    if (!avx2_available()) {
        MESSAGE("avx2 unavailable on this host; comparison skipped");
        return;
    }
    struct Cell {
        Graph g;
        Potential f;
    };
    std::vector<Cell> cells;
    {
        Graph g = gen_glitter_star(16);
        cells.push_back({g, Potential::unit()});
    }
    {
        Graph g = gen_random_connected(31, 77, 13);
        Potential f = Potential::fine_tuned(g);
        cells.push_back({std::move(g), std::move(f)});
    }
    {
        Graph g = gen_lollipop(9, 8);
        Potential f = Potential::custom(
            [](NodeId v) { return 0.5 + 0.125 * static_cast<double>(v % 7); }, "sawtooth");
        cells.push_back({std::move(g), std::move(f)});
    }
    uint64_t seed = 401;
    for (const Cell& cell : cells) {
        const uint64_t n = cell.g.node_count();
        const uint64_t cap = 40 * n * n;
        // trials chosen to leave a partially-filled last vector batch
        const auto hs =
            batch_hitting_times(cell.g, cell.f, 0, static_cast<NodeId>(n - 1), 101, cap, seed,
                                Backend::Scalar);
        const auto ha =
            batch_hitting_times(cell.g, cell.f, 0, static_cast<NodeId>(n - 1), 101, cap, seed,
                                Backend::Avx2);
        REQUIRE(same_samples(hs, ha));

        const auto cs = batch_cover_times(cell.g, cell.f, 1, 53, cap, seed + 1, Backend::Scalar);
        const auto ca = batch_cover_times(cell.g, cell.f, 1, 53, cap, seed + 1, Backend::Avx2);
        REQUIRE(same_samples(cs, ca));

        const auto rs =
            batch_return_counts(cell.g, cell.f, 2, 1023, 49, seed + 2, Backend::Scalar);
        const auto ra = batch_return_counts(cell.g, cell.f, 2, 1023, 49, seed + 2, Backend::Avx2);
        REQUIRE(rs == ra);
        seed += 10;
    }
}

TEST_CASE("auto backend answers match the scalar reference") {
    const Graph g = gen_random_connected(25, 60, 21);
    const Potential f = Potential::unbiased(g);
    const auto a = batch_hitting_times(g, f, 0, 24, 40, 100000, 77, Backend::Auto, 2);
    const auto s = batch_hitting_times(g, f, 0, 24, 40, 100000, 77, Backend::Scalar, 1);
    CHECK(same_samples(a, s));
}

TEST_CASE("environment override steers backend resolution") {
    const Graph g = gen_path(4);
    setenv("MHWALK_BACKEND", "scalar", 1);
    CHECK(resolve_backend(Backend::Auto, g) == Backend::Scalar);
    setenv("MHWALK_BACKEND", "auto", 1);
    CHECK(resolve_backend(Backend::Auto, g) ==
          (avx2_available() ? Backend::Avx2 : Backend::Scalar));
    setenv("MHWALK_BACKEND", "bogus", 1);
    CHECK_THROWS_AS(resolve_backend(Backend::Auto, g), std::invalid_argument);
    unsetenv("MHWALK_BACKEND");
    if (avx2_available()) {
        setenv("MHWALK_BACKEND", "avx2", 1);
        CHECK(resolve_backend(Backend::Auto, g) == Backend::Avx2);
        unsetenv("MHWALK_BACKEND");
    } else {
        CHECK_THROWS_AS(resolve_backend(Backend::Avx2, g), std::invalid_argument);
    }
}

TEST_CASE("degenerate batch inputs") {
    const Graph g = gen_path(3);
    const Potential f = Potential::unit();
    CHECK(batch_hitting_times(g, f, 0, 2, 0, 100, 1).empty());
    CHECK_THROWS_AS(batch_hitting_times(g, f, 0, 2, 4, 0, 1), std::invalid_argument);
    CHECK_THROWS_AS(batch_hitting_times(g, f, 0, 3, 4, 10, 1), std::invalid_argument);
    CHECK_THROWS_AS(batch_cover_times(g, f, 3, 4, 10, 1), std::invalid_argument);
    CHECK_THROWS_AS(batch_return_counts(g, f, 3, 10, 4, 1), std::invalid_argument);
    CHECK_THROWS_AS(batch_return_counts(g, f, 0, 0, 4, 1), std::invalid_argument);

    // Isolated endpoints absorb immediately.
    const Graph iso = Graph::from_edges(3, {{1, 2}});
    const auto ret_self = batch_hitting_times(iso, f, 0, 0, 3, 50, 2);
    for (const HitSample& s : ret_self) {
        CHECK(s.steps == 1);
        CHECK(s.hit);
    }
    const auto never = batch_hitting_times(iso, f, 0, 1, 3, 50, 2);
    for (const HitSample& s : never) {
        CHECK(s.steps == 50);
        CHECK_FALSE(s.hit);
    }
    const auto cover_self = batch_cover_times(iso, f, 0, 3, 50, 2);
    for (const HitSample& s : cover_self) {
        CHECK(s.steps == 0);
        CHECK(s.hit);
    }
    const auto occupancy = batch_return_counts(iso, f, 0, 9, 3, 2);
    for (uint64_t c : occupancy) {
        CHECK(c == 9);
    }
    const auto t1 = batch_return_counts(g, f, 1, 1, 5, 3);
    for (uint64_t c : t1) {
        CHECK(c == 1);
    }
}
