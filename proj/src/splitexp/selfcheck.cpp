#include "splitexp/selfcheck.hpp"

#include "splitexp/golden.hpp"
#include "splitexp/integrators.hpp"
#include "splitexp/phi.hpp"
#include "splitexp/problems.hpp"
#include "splitexp/split_phi.hpp"
#include "splitexp/study.hpp"

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>

namespace splitexp {
namespace {

CheckResult make_result(std::string name, double value, double tolerance, std::string detail = {})
{
    CheckResult r;
    r.name = std::move(name);
    r.value = value;
    r.tolerance = tolerance;
    r.passed = std::isfinite(value) && value <= tolerance;
    r.detail = std::move(detail);
    return r;
}

std::vector<double> log_grid_negative()
{
    std::vector<double> out{0.0};
    for (int i = 0; i < 200; ++i) {
        const double s = -6.0 + 12.0 * i / 199.0;
        out.push_back(-std::pow(10.0, s));
    }
    return out;
}

DenseMatrix random_matrix(std::mt19937_64& rng, Eigen::Index rows, Eigen::Index cols)
{
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    DenseMatrix m(rows, cols);
    for (Eigen::Index j = 0; j < cols; ++j) {
        for (Eigen::Index i = 0; i < rows; ++i) {
            m(i, j) = dist(rng);
        }
    }
    return m;
}

Field random_field(std::mt19937_64& rng, Shape shape)
{
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    Field f(std::move(shape));
    for (double& x : f.values()) {
        x = dist(rng);
    }
    return f;
}

double max_abs_diff(std::span<const double> a, std::span<const double> b)
{
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        d = std::max(d, std::abs(a[i] - b[i]));
    }
    return d;
}

// Kronecker-sum matrix of the operator in vec ordering.
DenseMatrix assemble(const KronSumOperator& op)
{
    const std::size_t dims = op.dims();
    const auto total = static_cast<Eigen::Index>(shape_size(op.shape()));
    DenseMatrix out = DenseMatrix::Zero(total, total);
    for (std::size_t mu = 0; mu < dims; ++mu) {
        DenseMatrix term = DenseMatrix::Identity(1, 1);
        for (std::size_t nu = dims; nu-- > 0;) {
            const auto ext = static_cast<Eigen::Index>(op.grid(nu).size());
            const DenseMatrix factor = nu == mu ? op.grid(nu).matrix() : DenseMatrix::Identity(ext, ext);
            term = Eigen::kroneckerProduct(term, factor).eval();
        }
        out += term;
    }
    return out;
}

CheckResult check_phi_recursion()
{
    double worst = 0.0;
    std::vector<double> zs = log_grid_negative();
    for (int i = 0; i < 60; ++i) {
        zs.push_back(std::pow(10.0, -6.0 + 7.7 * i / 59.0));
    }
    for (int ell = 1; ell <= 3; ++ell) {
        const double inv = 1.0 / factorial(ell - 1);
        for (double z : zs) {
            const double lhs = phi_scalar(ell, z) * z;
            const double rhs = phi_scalar(ell - 1, z) - inv;
            const double scale = std::abs(phi_scalar(ell - 1, z)) + inv;
            worst = std::max(worst, std::abs(lhs - rhs) / scale);
        }
    }
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 4; ++trial) {
        const DenseMatrix m = 4.0 * random_matrix(rng, 6, 6);
        const auto phis = phi_matrix(3, m);
        const double scale = 1.0 + inf_norm(m);
        for (int ell = 1; ell <= 3; ++ell) {
            DenseMatrix r = phis[ell] * m - phis[ell - 1];
            r.diagonal().array() += 1.0 / factorial(ell - 1);
            worst = std::max(worst, inf_norm(r) / scale);
        }
    }
    return make_result("phi recursion residual", worst, 1e-11, "scalars on a log grid, dense 6x6 matrices");
}

CheckResult check_spectral_vs_pade()
{
    double worst = 0.0;
    for (std::size_t n : {8u, 32u, 64u}) {
        const Grid1D grid = Grid1D::laplacian(n);
        for (double tau : {1e-4, 1e-3, 1.0 / 64.0}) {
            const auto pade = phi_matrix(2, tau * grid.matrix());
            for (int ell = 0; ell <= 2; ++ell) {
                worst = std::max(worst, inf_norm(phi_spectral_1d(ell, tau, grid) - pade[ell]));
            }
        }
    }
    return make_result("spectral vs Pade phi", worst, 1e-11, "n in {8,32,64}");
}

CheckResult check_kronecker_vec()
{
    std::mt19937_64 rng(12);
    double worst = 0.0;
    // (B (x) A) vec(X) = vec(A X B^T)
    for (int trial = 0; trial < 4; ++trial) {
        const DenseMatrix a = random_matrix(rng, 3, 3);
        const DenseMatrix b = random_matrix(rng, 3, 3);
        const DenseMatrix x = random_matrix(rng, 3, 3);
        const DenseMatrix axb = a * x * b.transpose();
        const Eigen::VectorXd lhs =
            Eigen::kroneckerProduct(b, a) * Eigen::Map<const Eigen::VectorXd>(x.data(), x.size());
        worst = std::max(worst, (lhs - Eigen::Map<const Eigen::VectorXd>(axb.data(), axb.size()))
                                    .cwiseAbs()
                                    .maxCoeff());
    }
    // Mode products against explicit Kronecker factors, 2 and 3 modes.
    for (const Shape& shape : {Shape{4, 5}, Shape{3, 3, 3}, Shape{3, 4, 5}}) {
        const Field v = random_field(rng, shape);
        std::vector<DenseMatrix> ms;
        Field w = v;
        for (std::size_t mu = shape.size(); mu-- > 0;) {
            ms.insert(ms.begin(), random_matrix(rng, static_cast<Eigen::Index>(shape[mu]),
                                                static_cast<Eigen::Index>(shape[mu])));
            w = mode_product(w, ms.front(), mu);
        }
        DenseMatrix k = DenseMatrix::Identity(1, 1);
        for (std::size_t mu = shape.size(); mu-- > 0;) {
            k = Eigen::kroneckerProduct(k, ms[mu]).eval();
        }
        const std::vector<double> flat = vec(v);
        const Eigen::VectorXd ref = k * Eigen::Map<const Eigen::VectorXd>(flat.data(), flat.size());
        worst = std::max(worst, max_abs_diff(w.values(), std::span<const double>(ref.data(), ref.size())));
    }
    // Exact Kronecker-sum phi against the assembled matrix.
    for (std::size_t dims : {2u, 3u}) {
        const std::size_t n = dims == 2 ? 4 : 3;
        const KronSumOperator op = KronSumOperator::uniform(dims, n);
        const Field v = random_field(rng, op.shape());
        const double tau = 1e-2;
        const auto phis = phi_matrix(2, tau * assemble(op));
        const std::vector<double> flat = vec(v);
        for (int ell = 0; ell <= 2; ++ell) {
            const Eigen::VectorXd ref = phis[ell] * Eigen::Map<const Eigen::VectorXd>(flat.data(), flat.size());
            const Field got = kron_phi_apply_exact(ell, tau, op, v);
            worst = std::max(worst, max_abs_diff(got.values(), std::span<const double>(ref.data(), ref.size())));
        }
    }
    return make_result("Kronecker/vec brute force", worst, 1e-11, "shapes up to 5 per mode");
}

CheckResult check_semigroup_split()
{
    std::mt19937_64 rng(13);
    double worst = 0.0;
    for (std::size_t dims : {2u, 3u}) {
        const KronSumOperator op = KronSumOperator::uniform(dims, dims == 2 ? 32 : 12);
        const Field v = random_field(rng, op.shape());
        for (double tau : {1e-4, 1e-2}) {
            const PhiSet phis = PhiSet::build(op, tau, 1);
            const Field split = phis.apply_product(0, v);
            const Field exact = kron_phi_apply_exact(0, tau, op, v);
            worst = std::max(worst, inf_norm(split - exact) / inf_norm(v));
        }
    }
    return make_result("exponential split exactness", worst, 1e-12);
}

CheckResult check_erk2l_linear()
{
    double worst = 0.0;
    for (std::size_t dims : {2u, 3u}) {
        const SemilinearProblem problem = make_problem(dims, 1, 0.0, dims == 2 ? 24 : 10);
        const Field exact = kron_phi_apply_exact(0, problem.final_time, problem.op, problem.u0);
        for (std::size_t steps : {1u, 4u, 16u}) {
            const Field u = integrate(problem.u0, SchemeKind::ERK2L, steps, problem.final_time, problem);
            worst = std::max(worst, inf_norm(u - exact));
        }
    }
    return make_result("ERK2L exact for linear problems", worst, 1e-11, "kappa = 0, N in {1,4,16}");
}

CheckResult check_erk2_etd2rk()
{
    double worst = 0.0;
    for (std::size_t dims : {2u, 3u}) {
        for (int p : {0, 1}) {
            const SemilinearProblem problem = make_problem(dims, p, 2.0, dims == 2 ? 24 : 10);
            for (double tau : {0.025, 1e-3}) {
                const StepContext exact_ctx(problem, SchemeKind::ERK2, tau, LinearBackend::Exact);
                const StepContext etd_ctx(problem, SchemeKind::ETD2RK, tau);
                worst = std::max(worst, inf_norm(step_erk2(problem.u0, exact_ctx) -
                                                 step_etd2rk(problem.u0, etd_ctx)));
            }
        }
    }
    return make_result("ERK2 with exact phi equals ETD2RK", worst, 1e-12, "one step");
}

CheckResult check_heun()
{
    double worst = 0.0;
    const std::size_t n = 7;
    auto zero = std::make_shared<const Grid1D>(Grid1D::from_symmetric(DenseMatrix::Zero(n, n)));
    for (std::size_t dims : {2u, 3u}) {
        SemilinearProblem problem = make_problem(dims, 1, 2.0, n);
        problem.op = KronSumOperator(std::vector<std::shared_ptr<const Grid1D>>(dims, zero));
        const double tau = 0.05;
        const Field& u = problem.u0;
        const Field g0 = eval_nonlinearity(problem, u);
        Field stage = u;
        stage.add_scaled(tau, g0);
        Field heun = u;
        heun.add_scaled(0.5 * tau, g0 + eval_nonlinearity(problem, stage));
        for (SchemeKind scheme : {SchemeKind::ERK2L, SchemeKind::ERK2, SchemeKind::ETD2RK}) {
            const StepContext ctx(problem, scheme, tau);
            worst = std::max(worst, inf_norm(step(u, ctx) - heun));
        }
    }
    return make_result("Heun reduction with zero operators", worst, 1e-14);
}

CheckResult check_stability()
{
    const auto grid = log_grid_negative();
    double worst = 0.0;
    for (double a : grid) {
        for (double b : grid) {
            worst = std::max(worst, std::abs(stability_function(a, b)));
        }
    }
    return make_result("|R(a,b)| <= 1", std::max(0.0, worst - 1.0), 1e-14, "201 x 201 grid on [-1e6, 0]^2");
}

}  // namespace

double golden_deviation(double computed, double published)
{
    if (published >= 1e-11) {
        return std::abs(computed - published) / published;
    }
    if (!(computed > 0.0)) {
        return published > 0.0 ? INFINITY : 0.0;
    }
    return std::abs(std::log2(computed / published));
}

std::vector<CheckResult> run_invariant_suite()
{
    return {check_phi_recursion(), check_spectral_vs_pade(), check_kronecker_vec(), check_semigroup_split(),
            check_erk2l_linear(),  check_erk2_etd2rk(),      check_heun(),          check_stability()};
}

std::vector<CheckResult> run_golden_local_checks(std::size_t n)
{
    std::vector<CheckResult> out;
    for (const auto& series : golden_series(2)) {
        StudyConfig c = StudyConfig::local_defaults();
        c.n = n;
        c.taus = series.taus;
        c.function = *parse_test_function(series.function);
        c.split = *parse_split_kind(series.kind);
        const ConvergenceReport report = run_local_study(c);
        bool ok = true;
        double worst_rel = 0.0;
        for (std::size_t i = 0; i < series.errors.size(); ++i) {
            const double published = series.errors[i];
            const double dev = golden_deviation(report.samples[i].error, published);
            const bool point_ok = published >= 1e-11 ? dev <= 1e-2 : dev <= 1.0;
            ok = ok && point_ok;
            if (published >= 1e-11) {
                worst_rel = std::max(worst_rel, dev);
            }
        }
        CheckResult r = make_result("local " + series.function + "/" + series.kind, worst_rel, 1e-2);
        r.passed = ok;
        out.push_back(std::move(r));
    }
    return out;
}

std::vector<CheckResult> run_golden_global_checks(std::size_t n)
{
    std::vector<CheckResult> out;
    for (const auto& series : golden_series(3)) {
        const SemilinearProblem problem = make_problem(series.dim, series.p, series.kappa, n, series.final_time);
        const Field reference = reference_solution(problem, kDefaultRefSteps);
        const std::size_t steps = series.steps.front();
        const Field u = integrate(problem.u0, *parse_scheme(series.scheme), steps, series.final_time, problem);
        const double dev = golden_deviation(inf_norm(u - reference), series.errors.front());
        char name[96];
        std::snprintf(name, sizeof name, "global %s p=%d kappa=%g N=%zu", series.scheme.c_str(), series.p,
                      series.kappa, steps);
        out.push_back(make_result(name, dev, 2e-2));
    }
    return out;
}

std::string format_check(const CheckResult& r)
{
    char buf[256];
    std::snprintf(buf, sizeof buf, "%s %s: %.3e (tol %.1e)", r.passed ? "PASS" : "FAIL", r.name.c_str(), r.value,
                  r.tolerance);
    std::string s = buf;
    if (!r.detail.empty()) {
        s += " [" + r.detail + "]";
    }
    return s;
}

}  // namespace splitexp
