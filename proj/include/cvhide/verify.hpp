#pragma once

#include <string>
#include <vector>

namespace cvhide {

struct CheckResult {
    std::string name;    // stable id, filterable by substring
    std::string anchor;  // what identity or bound is being checked
    double lhs = 0.0;    // computed value
    double rhs = 0.0;    // reference value or threshold
    double delta = 0.0;  // lhs - rhs (or comparison margin)
    double tol = 0.0;
    bool pass = false;
};

// Runs every closed-form-vs-numeric cross-check; `only` filters by name
// substring. Deterministic: repeated runs produce identical results.
std::vector<CheckResult> run_verification(const std::string& only = "", int jobs = 1);

// One line per check: name, anchor, values, delta, PASS/FAIL.
std::string verification_report(const std::vector<CheckResult>& results);

bool all_passed(const std::vector<CheckResult>& results);

} // namespace cvhide
