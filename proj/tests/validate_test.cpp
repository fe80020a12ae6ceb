#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "doctest.h"
#include "mhwalk/validate.hpp"

using namespace mhwalk;

TEST_CASE("suite registry lists every suite plus the all alias") {
    const std::vector<std::string> names = suite_names();
    REQUIRE(names.size() == 6);
    for (const char* expected : {"graph", "kernel", "split", "return-bound", "simd", "all"}) {
        CHECK(std::find(names.begin(), names.end(), expected) != names.end());
    }
    CHECK(names.back() == "all");
}

TEST_CASE("unknown suite names are rejected") {
    std::ostringstream sink;
    CHECK_THROWS_AS(run_suite("bogus", 1, SuiteBudget::Small, 1, sink),
                    std::invalid_argument);
    CHECK_THROWS_AS(run_suite("", 1, SuiteBudget::Small, 1, sink), std::invalid_argument);
}

TEST_CASE("every suite passes at the small budget") {
    for (const std::string& name : suite_names()) {
        if (name == "all") {
            continue;  // covered piecewise; "all" re-runs the same checks
        }
        CAPTURE(name);
        std::ostringstream out;
        const SuiteResult res = run_suite(name, 20260822, SuiteBudget::Small, 1, out);
        CHECK(res.suite == name);
        CHECK(res.passed);
        CHECK(res.failures == 0);
        CHECK(res.checks > 0);
        const std::string tail =
            "suite " + name + ": " + std::to_string(res.checks) + " checks, 0 failures\n";
        CHECK(out.str().size() >= tail.size());
        CHECK(out.str().compare(out.str().size() - tail.size(), tail.size(), tail) == 0);
    }
}

TEST_CASE("all alias aggregates the full registry") {
    std::ostringstream out;
    const SuiteResult res = run_suite("all", 31, SuiteBudget::Small, 1, out);
    CHECK(res.passed);
    CHECK(res.failures == 0);

    uint64_t sum = 0;
    for (const std::string& name : suite_names()) {
        if (name == "all") {
            continue;
        }
        std::ostringstream sink;
        sum += run_suite(name, 31, SuiteBudget::Small, 1, sink).checks;
    }
    CHECK(res.checks == sum);
}
