#pragma once

// Built-in checks shared by the selftest command and the test suite.

#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace splitexp {

struct CheckResult {
    std::string name;
    bool passed = false;
    double value = 0.0;      // measured deviation
    double tolerance = 0.0;
    std::string detail;
};

/// Structural identities on small grids: phi recursion, spectral vs Pade,
/// Kronecker/vec equivalences, split exactness, integrator reductions and
/// the stability bound. Runs in a few seconds.
std::vector<CheckResult> run_invariant_suite();

/// Local-error series against the stored published values; one result per
/// series. Points >= 1e-11 must match to relative 1e-2, smaller ones to a
/// factor of 2.
std::vector<CheckResult> run_golden_local_checks(std::size_t n = 250);

/// First point (N = 4) of every two-dimensional global series, relative 2%.
/// Needs one long reference run per (p, kappa).
std::vector<CheckResult> run_golden_global_checks(std::size_t n = 250);

/// Relative deviation in the sense of run_golden_local_checks: |a-b|/|b|
/// for b >= 1e-11, otherwise log2 of the ratio (factor-of-2 band maps to 1).
double golden_deviation(double computed, double published);

std::string format_check(const CheckResult& result);

}  // namespace splitexp
