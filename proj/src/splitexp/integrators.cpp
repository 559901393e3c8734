#include "splitexp/integrators.hpp"

#include "splitexp/phi.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <string>
#include <utility>

namespace splitexp {
namespace {

bool uses_symbols(SchemeKind scheme, LinearBackend backend)
{
    return scheme == SchemeKind::ETD2RK || backend == LinearBackend::Exact;
}

void multiply_in_place(Field& target, const Field& symbol)
{
    double* t = target.data();
    const double* s = symbol.data();
    for (std::size_t i = 0; i < target.size(); ++i) {
        t[i] *= s[i];
    }
}

// One ETD2RK step carried out in eigenbasis coordinates. Takes u and its
// coefficients, returns the same pair at the next time level.
std::pair<Field, Field> etd2rk_spectral_step(const Field& u, const Field& u_hat, const StepContext& ctx)
{
    const auto& problem = ctx.problem();
    const auto& op = problem.op;
    const double tau = ctx.tau();

    const Field g0 = eval_nonlinearity(problem, u);
    Field g0_hat = to_spectral(op, g0);
    multiply_in_place(g0_hat, ctx.symbol(1));

    Field stage_hat = u_hat;
    multiply_in_place(stage_hat, ctx.symbol(0));
    stage_hat.add_scaled(tau, g0_hat);
    const Field stage = from_spectral(op, stage_hat);

    Field dg_hat = to_spectral(op, eval_nonlinearity(problem, stage) - g0);
    multiply_in_place(dg_hat, ctx.symbol(2));
    stage_hat.add_scaled(tau, dg_hat);
    Field next = from_spectral(op, stage_hat);
    return {std::move(next), std::move(stage_hat)};
}

void check_state(const Field& u, const StepContext& ctx)
{
    ctx.problem().op.check_field(u, "step");
}

}  // namespace

const char* to_string(SchemeKind scheme) noexcept
{
    switch (scheme) {
    case SchemeKind::ERK2L: return "erk2l";
    case SchemeKind::ERK2: return "erk2";
    case SchemeKind::ETD2RK: return "etd2rk";
    }
    return "unknown";
}

std::optional<SchemeKind> parse_scheme(std::string_view name)
{
    std::string lower(name);
    std::transform(lower.begin(), lower.end(), lower.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    for (auto s : {SchemeKind::ERK2L, SchemeKind::ERK2, SchemeKind::ETD2RK}) {
        if (lower == to_string(s)) {
            return s;
        }
    }
    return std::nullopt;
}

StepContext::StepContext(const SemilinearProblem& problem, SchemeKind scheme, double tau, LinearBackend backend,
                         PhiBackend phi_backend)
    : problem_(&problem), scheme_(scheme), tau_(tau), backend_(backend)
{
    if (!(tau > 0.0) || !std::isfinite(tau)) {
        fail(ErrorCode::InvalidStep, "time step must be positive, got " + std::to_string(tau));
    }
    if (uses_symbols(scheme, backend)) {
        for (int ell = 0; ell <= 2; ++ell) {
            symbols_.push_back(spectral_symbol(ell, tau, problem.op));
        }
    } else {
        phis_ = PhiSet::build(problem.op, tau, 2, phi_backend);
    }
}

const Field& StepContext::symbol(int ell) const
{
    if (symbols_.empty()) {
        fail(ErrorCode::InvalidArgument, "this step context has no spectral symbols");
    }
    return symbols_.at(static_cast<std::size_t>(ell));
}

Field StepContext::propagate(const Field& v) const
{
    if (phis_) {
        return phis_->apply_product(0, v);
    }
    return apply_spectral(problem_->op, symbol(0), v);
}

Field StepContext::phi_product(int ell, const Field& v) const
{
    if (!phis_) {
        return apply_spectral(problem_->op, symbol(ell), v);
    }
    Field out = phis_->apply_product(ell, v);
    const double fact = factorial(ell);
    double scale = 1.0;
    for (std::size_t mu = 1; mu < problem_->op.dims(); ++mu) {
        scale *= fact;
    }
    if (scale != 1.0) {
        out *= scale;
    }
    return out;
}

Field step_etd2rk(const Field& u, const StepContext& ctx)
{
    check_state(u, ctx);
    if (ctx.scheme() != SchemeKind::ETD2RK) {
        fail(ErrorCode::InvalidArgument, "step_etd2rk needs a context built for ETD2RK");
    }
    return etd2rk_spectral_step(u, to_spectral(ctx.problem().op, u), ctx).first;
}

Field step_erk2l(const Field& u, const StepContext& ctx)
{
    check_state(u, ctx);
    const auto& problem = ctx.problem();
    const double tau = ctx.tau();
    const Field g0 = eval_nonlinearity(problem, u);
    Field stage = ctx.propagate(u);
    stage.add_scaled(tau, ctx.phi_product(1, g0));
    Field next = stage;
    next.add_scaled(tau, ctx.phi_product(2, eval_nonlinearity(problem, stage) - g0));
    return next;
}

Field step_erk2(const Field& u, const StepContext& ctx)
{
    check_state(u, ctx);
    const auto& problem = ctx.problem();
    const double tau = ctx.tau();
    const Field g0 = eval_nonlinearity(problem, u);
    const Field f0 = apply_operator(problem.op, u) + g0;
    Field stage = u;
    stage.add_scaled(tau, ctx.phi_product(1, f0));
    Field next = stage;
    next.add_scaled(tau, ctx.phi_product(2, eval_nonlinearity(problem, stage) - g0));
    return next;
}

Field step(const Field& u, const StepContext& ctx)
{
    switch (ctx.scheme()) {
    case SchemeKind::ERK2L: return step_erk2l(u, ctx);
    case SchemeKind::ERK2: return step_erk2(u, ctx);
    case SchemeKind::ETD2RK: return step_etd2rk(u, ctx);
    }
    fail(ErrorCode::InvalidArgument, "unknown scheme");
}

Field integrate(const Field& u0, SchemeKind scheme, std::size_t steps, double final_time,
                const SemilinearProblem& problem, LinearBackend backend)
{
    if (steps == 0) {
        fail(ErrorCode::InvalidArgument, "number of steps must be at least 1");
    }
    if (!(final_time > 0.0) || !std::isfinite(final_time)) {
        fail(ErrorCode::InvalidArgument, "final time must be positive, got " + std::to_string(final_time));
    }
    problem.op.check_field(u0, "integrate");
    const StepContext ctx(problem, scheme, final_time / static_cast<double>(steps), backend);
    auto diverged = [](std::size_t n) {
        fail(ErrorCode::Divergence, "non-finite state after step " + std::to_string(n));
    };

    Field u = u0;
    if (scheme == SchemeKind::ETD2RK) {
        Field u_hat = to_spectral(problem.op, u);
        for (std::size_t n = 1; n <= steps; ++n) {
            std::tie(u, u_hat) = etd2rk_spectral_step(u, u_hat, ctx);
            if (!u.all_finite()) {
                diverged(n);
            }
        }
        return u;
    }
    for (std::size_t n = 1; n <= steps; ++n) {
        u = step(u, ctx);
        if (!u.all_finite()) {
            diverged(n);
        }
    }
    return u;
}

double stability_function(double a, double b)
{
    const double sum = a + b;
    if (sum == 0.0) {
        return 1.0;  // avoids inf * 0 when one argument is large and positive
    }
    return 1.0 + phi_scalar(1, a) * phi_scalar(1, b) * sum;
}

}  // namespace splitexp
