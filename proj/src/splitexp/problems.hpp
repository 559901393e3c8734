#pragma once

// Test data on the unit square/cube: the five local-error test functions and
// the semilinear diffusion-reaction problems u' = Laplace(u) + kappa q^p/(1+u^2).

#include "splitexp/field.hpp"
#include "splitexp/grid.hpp"

#include <optional>
#include <string_view>

namespace splitexp {

enum class TestFunctionId { V1, V2, V3, V4, V5 };

const char* to_string(TestFunctionId id) noexcept;
std::optional<TestFunctionId> parse_test_function(std::string_view name);

/// Samples a test function on the n x n interior grid x_i = (i+1)/(n+1):
///   v1 = 4^6 (x(1-x)y(1-y))^3,  v2 = 4^4 (x(1-x))^3 y(1-y),
///   v3 = 4^2 x(1-x)y(1-y),      v4 = 4 x(1-x),  v5 = 1.
Field test_function(TestFunctionId id, std::size_t n);

/// (4^dim prod_mu x_mu(1-x_mu))^power on the interior grid; equals 1 at the centre.
Field bubble_power(std::size_t dim, int power, std::size_t n);

struct SemilinearProblem {
    KronSumOperator op;
    double kappa = 0.0;
    int p = 0;
    Field u0;
    double final_time = 0.1;
    /// kappa * q^p, the position-dependent numerator of g.
    Field source;
};

/// The diffusion-reaction problem on (0,1)^dim with u0 = q = 4^dim prod x(1-x).
SemilinearProblem make_problem(std::size_t dim, int p, double kappa, std::size_t n, double final_time = 0.1);

/// g(u) = kappa q^p / (1 + u^2), pointwise.
Field eval_nonlinearity(const SemilinearProblem& problem, const Field& u);

}  // namespace splitexp
