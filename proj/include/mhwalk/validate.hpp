#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace mhwalk {

enum class SuiteBudget : uint8_t { Small, Full };

struct SuiteResult {
    std::string suite;
    bool passed = false;
    uint64_t checks = 0;
    uint64_t failures = 0;
};

// Registered self-check suites, in run order for "all".
std::vector<std::string> suite_names();

// Runs one suite ("all" chains every suite), writing one line per check
// group to `out`.  Unknown names throw invalid_argument.
SuiteResult run_suite(const std::string& name, uint64_t seed, SuiteBudget budget, unsigned jobs,
                      std::ostream& out);

}  // namespace mhwalk
