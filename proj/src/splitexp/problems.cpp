#include "splitexp/problems.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <string>

namespace splitexp {
namespace {

// 4 x (1 - x) at interior node i of an n-point grid on (0,1).
double bump(std::size_t i, std::size_t n)
{
    const double x = static_cast<double>(i + 1) / static_cast<double>(n + 1);
    return 4.0 * x * (1.0 - x);
}

void check_n(std::size_t n)
{
    if (n == 0) {
        fail(ErrorCode::InvalidSize, "grids need at least one interior point");
    }
}

}  // namespace

const char* to_string(TestFunctionId id) noexcept
{
    switch (id) {
    case TestFunctionId::V1: return "v1";
    case TestFunctionId::V2: return "v2";
    case TestFunctionId::V3: return "v3";
    case TestFunctionId::V4: return "v4";
    case TestFunctionId::V5: return "v5";
    }
    return "unknown";
}

std::optional<TestFunctionId> parse_test_function(std::string_view name)
{
    std::string lower(name);
    std::transform(lower.begin(), lower.end(), lower.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    for (auto id : {TestFunctionId::V1, TestFunctionId::V2, TestFunctionId::V3, TestFunctionId::V4,
                    TestFunctionId::V5}) {
        if (lower == to_string(id)) {
            return id;
        }
    }
    return std::nullopt;
}

Field test_function(TestFunctionId id, std::size_t n)
{
    check_n(n);
    Field out(Shape{n, n});
    double* v = out.data();
    for (std::size_t j = 0; j < n; ++j) {
        const double by = bump(j, n);
        for (std::size_t i = 0; i < n; ++i) {
            const double bx = bump(i, n);
            double value = 0.0;
            switch (id) {
            case TestFunctionId::V1: value = std::pow(bx * by, 3); break;
            case TestFunctionId::V2: value = bx * bx * bx * by; break;
            case TestFunctionId::V3: value = bx * by; break;
            case TestFunctionId::V4: value = bx; break;
            case TestFunctionId::V5: value = 1.0; break;
            }
            v[i + n * j] = value;
        }
    }
    return out;
}

Field bubble_power(std::size_t dim, int power, std::size_t n)
{
    check_n(n);
    if (dim < 1 || dim > 3) {
        fail(ErrorCode::Unsupported, "bubble functions exist in 1, 2 or 3 dimensions");
    }
    if (power < 0) {
        fail(ErrorCode::InvalidArgument, "bubble power must be non-negative");
    }
    Field out(Shape(dim, n), 1.0);
    if (power == 0) {
        return out;
    }
    auto values = out.values();
    for (std::size_t idx = 0; idx < values.size(); ++idx) {
        std::size_t rest = idx;
        double product = 1.0;
        for (std::size_t mu = 0; mu < dim; ++mu) {
            product *= bump(rest % n, n);
            rest /= n;
        }
        values[idx] = std::pow(product, power);
    }
    return out;
}

SemilinearProblem make_problem(std::size_t dim, int p, double kappa, std::size_t n, double final_time)
{
    if (dim != 2 && dim != 3) {
        fail(ErrorCode::InvalidArgument, "problem dimension must be 2 or 3, got " + std::to_string(dim));
    }
    if (p != 0 && p != 1) {
        fail(ErrorCode::InvalidArgument, "nonlinearity exponent p must be 0 or 1, got " + std::to_string(p));
    }
    if (!std::isfinite(kappa)) {
        fail(ErrorCode::InvalidArgument, "kappa must be finite");
    }
    if (!(final_time > 0.0)) {
        fail(ErrorCode::InvalidArgument, "final time must be positive");
    }
    check_n(n);
    Field source = bubble_power(dim, p, n);
    source *= kappa;
    return SemilinearProblem{KronSumOperator::uniform(dim, n), kappa, p, bubble_power(dim, 1, n), final_time,
                             std::move(source)};
}

Field eval_nonlinearity(const SemilinearProblem& problem, const Field& u)
{
    if (u.shape() != problem.source.shape()) {
        fail(ErrorCode::Dimension, "eval_nonlinearity: field shape does not match the problem");
    }
    Field out(u.shape());
    const double* x = u.data();
    const double* s = problem.source.data();
    double* g = out.data();
    for (std::size_t i = 0; i < out.size(); ++i) {
        g[i] = s[i] / (1.0 + x[i] * x[i]);
    }
    return out;
}

}  // namespace splitexp
