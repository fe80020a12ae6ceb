#include <cmath>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "mhwalk/generators.hpp"
#include "mhwalk/graph.hpp"
#include "mhwalk/potential.hpp"
#include "mhwalk/stats.hpp"
#include "mhwalk/transition_matrix.hpp"

using namespace mhwalk;

TEST_CASE("trivial cover times are exact") {
    const Graph single = Graph::from_edges(1, {});
    const EstimatorReport r0 =
        estimate_cover_time(single, Potential::unit(), 0, 5, 100, 1);
    CHECK(r0.estimate == 0.0);
    CHECK(r0.std_error == 0.0);
    CHECK(r0.censored == 0);

    const Graph p2 = Graph::from_edges(2, {{0, 1}});
    const EstimatorReport r1 = estimate_cover_time(p2, Potential::unit(), 0, 8, 100, 2);
    CHECK(r1.estimate == 1.0);  // the first step always covers
    CHECK(r1.std_error == 0.0);
    CHECK(r1.quantity == "cover_time");
    CHECK(r1.kernel == "unit");
    CHECK(r1.graph_desc == "n=2,m=1");
}

TEST_CASE("censoring is flagged and enters the mean at the cap") {
    const Graph g = gen_glitter_star(10);
    const EstimatorReport r = estimate_cover_time(g, Potential::unit(), 0, 10, 3, 7);
    CHECK(r.censored == 10);  // 3 steps cannot cover 21 nodes
    CHECK(r.range_flag);
    CHECK(r.estimate == 3.0);
}

TEST_CASE("return-time estimates match the chain structure") {
    // P_2 alternates, so the return time is exactly 2.
    const Graph p2 = Graph::from_edges(2, {{0, 1}});
    const EstimatorReport r2 =
        estimate_commute_time(p2, Potential::unit(), 0, 0, 50, 3);
    CHECK(r2.estimate == 2.0);
    CHECK(r2.std_error == 0.0);

    // Triangle: stationary weight 1/3 per node, so mean return is 3.
    const Graph tri = gen_cycle(3);
    const EstimatorReport r3 =
        estimate_commute_time(tri, Potential::unit(), 1, 1, 4000, 4);
    CHECK(std::abs(r3.estimate - 3.0) <= 4.0 * r3.std_error + 1e-9);
}

TEST_CASE("commute times sum the two directions") {
    const Graph p2 = Graph::from_edges(2, {{0, 1}});
    const EstimatorReport r = estimate_commute_time(p2, Potential::unit(), 0, 1, 20, 5);
    CHECK(r.estimate == 2.0);  // 1 forward + 1 back, deterministic
    CHECK(r.std_error == 0.0);

    const auto [gap, q] = gen_disconnected_pair(gen_path(3));
    CHECK_THROWS_AS(estimate_commute_time(gap, Potential::unit(), q.s, q.t, 5, 6),
                    std::invalid_argument);
}

TEST_CASE("return counts track the exact matrix oracle") {
    const Graph k6 = gen_complete(6);
    const Potential f = Potential::unit();
    const uint64_t t = 200;
    const double exact = exact_expected_visits(k6, f, 0, 0, t);
    // fast mixing from the start: E N ~ t/n plus an O(1) start correction
    CHECK(std::abs(exact - static_cast<double>(t) / 6.0) <= 2.0);

    const EstimatorReport r = measure_return_counts(k6, f, 0, t, 4000, 9);
    CHECK(std::abs(r.estimate - exact) <= 4.0 * r.std_error + 1e-9);
    CHECK_FALSE(r.range_flag);  // t < 6 n^2 = 216
}

TEST_CASE("return-count horizon flags outside the guarantee window") {
    const Graph tri = gen_cycle(3);
    CHECK_THROWS_AS(measure_return_counts(tri, Potential::unit(), 0, 0, 5, 1),
                    std::invalid_argument);
    const EstimatorReport in_range =
        measure_return_counts(tri, Potential::unit(), 0, 53, 5, 1);
    CHECK_FALSE(in_range.range_flag);  // 53 < 6*9 = 54
    const EstimatorReport out_of_range =
        measure_return_counts(tri, Potential::unit(), 0, 54, 5, 1);
    CHECK(out_of_range.range_flag);
    CHECK(out_of_range.trials == 5);

    const EstimatorReport t1 = measure_return_counts(tri, Potential::unit(), 0, 1, 5, 1);
    CHECK(t1.estimate == 1.0);  // start occupancy only
}

TEST_CASE("exact visit counts are symmetric under the unit kernel") {
    const Graph g = gen_random_connected(6, 9, 55);
    const Potential f = Potential::unit();
    const uint64_t t = 40;
    for (NodeId i = 0; i < 6; ++i) {
        const std::vector<double> row = exact_expected_visits_row(g, f, i, t);
        for (NodeId j = 0; j < 6; ++j) {
            REQUIRE(std::abs(row[j] - exact_expected_visits(g, f, j, i, t)) <= 1e-9);
        }
    }
    CHECK(exact_expected_visits(g, f, 2, 2, 1) == 1.0);
}

TEST_CASE("stationary-averaged visits are exactly t/n under the unit kernel") {
    const Graph g = gen_random_connected(7, 12, 66);
    const Potential f = Potential::unit();
    const uint64_t t = 60;
    const std::vector<double> pi = stationary_distribution(g, f);
    for (NodeId j = 0; j < 7; ++j) {
        double acc = 0.0;
        for (NodeId i = 0; i < 7; ++i) {
            acc += pi[i] * exact_expected_visits(g, f, i, j, t);
        }
        REQUIRE(std::abs(acc - static_cast<double>(t) / 7.0) <= 1e-9);
    }
}

TEST_CASE("exact oracle enforces its caps") {
    const Graph g = gen_path(4);
    CHECK_THROWS_AS(exact_expected_visits(g, Potential::unit(), 0, 0, 100001),
                    std::invalid_argument);
    CHECK_THROWS_AS(exact_expected_visits(g, Potential::unit(), 4, 0, 10),
                    std::invalid_argument);
}

TEST_CASE("scaling fits recover known exponents") {
    const std::vector<double> sizes = {10, 20, 40, 80};
    std::vector<double> linear, quadratic;
    for (double s : sizes) {
        linear.push_back(3.0 * s);
        quadratic.push_back(0.5 * s * s);
    }
    const ScalingFit f1 = fit_scaling_exponent(sizes, linear);
    CHECK(f1.exponent == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(f1.r2 == doctest::Approx(1.0).epsilon(1e-12));
    const ScalingFit f2 = fit_scaling_exponent(sizes, quadratic);
    CHECK(f2.exponent == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(f2.r2 == doctest::Approx(1.0).epsilon(1e-12));

    CHECK_THROWS_AS(fit_scaling_exponent({1, 2}, {1, 2}), std::invalid_argument);
    CHECK_THROWS_AS(fit_scaling_exponent({1, 2, 3}, {1, 2}), std::invalid_argument);
    CHECK_THROWS_AS(fit_scaling_exponent({1, 2, 3}, {1, -2, 3}), std::invalid_argument);
    CHECK_THROWS_AS(fit_scaling_exponent({2, 2, 2}, {1, 2, 3}), std::invalid_argument);
}

TEST_CASE("degree-aware potential matches the better baseline on the glitter star") {
    const Graph g = gen_glitter_star(50);
    const NodeId leaf_a = 51;    // leaf under middle 1
    const NodeId leaf_b = 100;   // leaf under middle 50
    const uint64_t trials = 200;
    const EstimatorReport unit =
        estimate_commute_time(g, Potential::unit(), leaf_a, leaf_b, trials, 21);
    const EstimatorReport unb =
        estimate_commute_time(g, Potential::unbiased(g), leaf_a, leaf_b, trials, 22);
    const EstimatorReport fine =
        estimate_commute_time(g, Potential::fine_tuned(g), leaf_a, leaf_b, trials, 23);
    CHECK(unit.censored == 0);
    CHECK(unb.censored == 0);
    CHECK(fine.censored == 0);
    const bool unit_better = unit.estimate < unb.estimate;
    const double best = unit_better ? unit.estimate : unb.estimate;
    const double best_se = unit_better ? unit.std_error : unb.std_error;
    CHECK(fine.estimate <= 3.0 * best + 3.0 * (fine.std_error + 3.0 * best_se));
}

TEST_CASE("report exports are deterministic") {
    const Graph p2 = Graph::from_edges(2, {{0, 1}});
    EstimateOptions opts;
    opts.keep_samples = true;
    const EstimatorReport rep =
        estimate_cover_time(p2, Potential::unit(), 0, 3, 100, 77, opts);

    std::ostringstream csv;
    write_report_csv(csv, rep);
    CHECK(csv.str() ==
          "row_kind,index_or_quantity,value,std_error,trials,censored,seed\n"
          "trial,0,1,,,,\n"
          "trial,1,1,,,,\n"
          "trial,2,1,,,,\n"
          "summary,cover_time,1,0,3,0,77\n");

    std::ostringstream js;
    write_report_json(js, rep);
    const std::string s = js.str();
    CHECK(s.find("\"quantity\": \"cover_time\"") != std::string::npos);
    CHECK(s.find("\"graph\": \"n=2,m=1\"") != std::string::npos);
    CHECK(s.find("\"estimate\": 1.0") != std::string::npos);
    CHECK(s.find("\"trials\": 3") != std::string::npos);
    CHECK(s.find("\"samples\": [\n    1,\n    1,\n    1\n  ]") != std::string::npos);
    // field order is fixed: quantity precedes kernel precedes estimate
    CHECK(s.find("\"quantity\"") < s.find("\"kernel\""));
    CHECK(s.find("\"kernel\"") < s.find("\"estimate\""));
}
