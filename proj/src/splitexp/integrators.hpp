#pragma once

// Second-order exponential Runge-Kutta steppers for u' = (A_1+...+A_d)u + g(u):
//   ETD2RK  U = e^{tau L} u + tau phi_1(tau L) g(u)
//           u+ = U + tau phi_2(tau L) (g(U) - g(u))
//   ERK2L   the same with e^{tau L} -> prod e^{tau A_mu} and
//           phi_l(tau L) -> (l!)^{d-1} prod phi_l(tau A_mu)
//   ERK2    U = u + tau [prod phi_1(tau A_mu)] f(u),  f(u) = Lu + g(u),
//           second stage as ERK2L.

#include "splitexp/field.hpp"
#include "splitexp/problems.hpp"
#include "splitexp/split_phi.hpp"

#include <optional>
#include <string_view>

namespace splitexp {

enum class SchemeKind { ERK2L, ERK2, ETD2RK };

const char* to_string(SchemeKind scheme) noexcept;
std::optional<SchemeKind> parse_scheme(std::string_view name);

/// How the split schemes evaluate their phi products. Exact replaces every
/// directional product with the unsplit phi_l(tau L) (spectral evaluation).
enum class LinearBackend { Split, Exact };

/// Everything a fixed-step run needs, precomputed once for the step size.
class StepContext {
public:
    StepContext(const SemilinearProblem& problem, SchemeKind scheme, double tau,
                LinearBackend backend = LinearBackend::Split, PhiBackend phi_backend = PhiBackend::Spectral);

    [[nodiscard]] double tau() const noexcept { return tau_; }
    [[nodiscard]] SchemeKind scheme() const noexcept { return scheme_; }
    [[nodiscard]] LinearBackend backend() const noexcept { return backend_; }
    [[nodiscard]] const SemilinearProblem& problem() const noexcept { return *problem_; }

    /// e^{tau L} v (product of directional exponentials when split).
    [[nodiscard]] Field propagate(const Field& v) const;
    /// Split: (l!)^{d-1} phi_l(tau A_1)...phi_l(tau A_d) v. Exact: phi_l(tau L) v.
    [[nodiscard]] Field phi_product(int ell, const Field& v) const;
    /// Diagonal multiplier phi_l(tau (lambda_i + lambda_j + ...)), l <= 2.
    [[nodiscard]] const Field& symbol(int ell) const;

private:
    const SemilinearProblem* problem_;
    SchemeKind scheme_;
    double tau_;
    LinearBackend backend_;
    std::optional<PhiSet> phis_;
    std::vector<Field> symbols_;
};

Field step_etd2rk(const Field& u, const StepContext& ctx);
Field step_erk2l(const Field& u, const StepContext& ctx);
Field step_erk2(const Field& u, const StepContext& ctx);
/// Dispatches on ctx.scheme().
Field step(const Field& u, const StepContext& ctx);

/// N uniform steps of size T/N from u0. Throws ErrorCode::Divergence naming
/// the first step that produced a non-finite state.
Field integrate(const Field& u0, SchemeKind scheme, std::size_t steps, double final_time,
                const SemilinearProblem& problem, LinearBackend backend = LinearBackend::Split);

/// Linear stability function of ERK2: R(a, b) = 1 + phi_1(a) phi_1(b) (a + b).
double stability_function(double a, double b);

}  // namespace splitexp
