#pragma once

#include <string>
#include <vector>

namespace gapcert {

struct CheckResult {
    std::string name;
    double residual = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

// Runs the closed-form identity suite for "teleport", "swap", "core" or
// "all". Every check compares a stated closed form against independent
// numerics and reports the measured residual.
std::vector<CheckResult> paper_check(const std::string& suite);

int count_failures(const std::vector<CheckResult>& results);

} // namespace gapcert
