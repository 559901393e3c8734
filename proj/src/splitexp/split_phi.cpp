#include "splitexp/split_phi.hpp"

#include "splitexp/phi.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <string>

namespace splitexp {

const char* to_string(SplitKind kind) noexcept
{
    switch (kind) {
    case SplitKind::ExpHalfPhi1: return "exphalfphi1";
    case SplitKind::ExpHalfExpHalf: return "exphalfexphalf";
    case SplitKind::Phi1Phi1: return "phi1phi1";
    case SplitKind::PhiEllPhiEll: return "phiellphiell";
    case SplitKind::Exact: return "exact";
    }
    return "unknown";
}

std::optional<SplitSpec> parse_split_kind(std::string_view name)
{
    std::string lower(name);
    std::transform(lower.begin(), lower.end(), lower.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (lower == "exphalfphi1") {
        return SplitSpec{SplitKind::ExpHalfPhi1, 1};
    }
    if (lower == "exphalfexphalf") {
        return SplitSpec{SplitKind::ExpHalfExpHalf, 1};
    }
    if (lower == "phi1phi1") {
        return SplitSpec{SplitKind::Phi1Phi1, 1};
    }
    if (lower == "phi2phi2") {
        return SplitSpec{SplitKind::PhiEllPhiEll, 2};
    }
    if (lower == "phiellphiell") {
        return SplitSpec{SplitKind::PhiEllPhiEll, 1};
    }
    if (lower == "exact") {
        return SplitSpec{SplitKind::Exact, 1};
    }
    return std::nullopt;
}

std::string split_name(SplitSpec spec)
{
    if (spec.kind == SplitKind::PhiEllPhiEll) {
        return "phi" + std::to_string(spec.ell) + "phi" + std::to_string(spec.ell);
    }
    return to_string(spec.kind);
}

void validate_split(SplitKind kind, int ell, std::size_t dims)
{
    switch (kind) {
    case SplitKind::ExpHalfPhi1:
    case SplitKind::ExpHalfExpHalf:
        if (dims != 2) {
            fail(ErrorCode::Unsupported, std::string(to_string(kind)) + " is defined for two directions only, got " +
                                             std::to_string(dims));
        }
        [[fallthrough]];
    case SplitKind::Phi1Phi1:
        if (ell != 1) {
            fail(ErrorCode::InvalidArgument,
                 std::string(to_string(kind)) + " approximates phi_1; ell must be 1, got " + std::to_string(ell));
        }
        break;
    case SplitKind::PhiEllPhiEll:
        if (ell < 1) {
            fail(ErrorCode::InvalidArgument, "phiellphiell needs ell >= 1, got " + std::to_string(ell));
        }
        break;
    case SplitKind::Exact:
        if (ell < 0) {
            fail(ErrorCode::InvalidArgument, "phi order must be non-negative");
        }
        break;
    }
}

PhiSet PhiSet::build(const KronSumOperator& op, double tau, int ell_max, PhiBackend backend)
{
    if (!(tau >= 0.0) || !std::isfinite(tau)) {
        fail(ErrorCode::InvalidStep, "step size must be finite and non-negative, got " + std::to_string(tau));
    }
    if (ell_max < 0) {
        fail(ErrorCode::InvalidArgument, "ell_max must be non-negative");
    }
    PhiSet set;
    set.tau_ = tau;
    set.ell_max_ = ell_max;
    for (std::size_t mu = 0; mu < op.dims(); ++mu) {
        std::shared_ptr<const Direction> shared;
        for (std::size_t prev = 0; prev < mu; ++prev) {
            if (op.shares_grid(prev, mu)) {
                shared = set.directions_[prev];
                break;
            }
        }
        if (!shared) {
            auto dir = std::make_shared<Direction>();
            const Grid1D& grid = op.grid(mu);
            if (backend == PhiBackend::Spectral) {
                for (int ell = 0; ell <= ell_max; ++ell) {
                    dir->phi.push_back(phi_spectral_1d(ell, tau, grid));
                }
                dir->exp_half = phi_spectral_1d(0, 0.5 * tau, grid);
            } else {
                dir->phi = phi_matrix(ell_max, tau * grid.matrix());
                dir->exp_half = expm_dense(0.5 * tau * grid.matrix());
            }
            shared = std::move(dir);
        }
        set.directions_.push_back(std::move(shared));
    }
    return set;
}

const DenseMatrix& PhiSet::phi(std::size_t mu, int ell) const
{
    if (ell < 0 || ell > ell_max_) {
        fail(ErrorCode::InvalidArgument, "phi order " + std::to_string(ell) + " not in this set (ell_max " +
                                             std::to_string(ell_max_) + ")");
    }
    return directions_.at(mu)->phi[static_cast<std::size_t>(ell)];
}

const DenseMatrix& PhiSet::exp_half(std::size_t mu) const
{
    return directions_.at(mu)->exp_half;
}

Field PhiSet::apply_product(int ell, const Field& v) const
{
    if (v.dims() != dims()) {
        fail(ErrorCode::Dimension, "field rank does not match the phi set");
    }
    Field out = v;
    for (std::size_t mu = dims(); mu-- > 0;) {
        out = mode_product(out, phi(mu, ell), mu);
    }
    return out;
}

PhiSetCache::PhiSetCache(const KronSumOperator& op, PhiBackend backend)
    : op_(op), backend_(backend)
{
}

std::shared_ptr<const PhiSet> PhiSetCache::get(double tau, int ell_max)
{
    const std::lock_guard lock(mutex_);
    auto& slot = sets_[{tau, ell_max}];
    if (!slot) {
        slot = std::make_shared<const PhiSet>(PhiSet::build(op_, tau, ell_max, backend_));
    }
    return slot;
}

Field apply_split(SplitKind kind, int ell, const PhiSet& phis, const KronSumOperator& op, const Field& v)
{
    validate_split(kind, ell, op.dims());
    op.check_field(v, "apply_split");
    const double tau = phis.tau();
    Field out;
    switch (kind) {
    case SplitKind::ExpHalfPhi1:
        out = mode_product(mode_product(v, phis.phi(1, 1), 1), phis.exp_half(0), 0);
        break;
    case SplitKind::ExpHalfExpHalf:
        out = mode_product(mode_product(v, phis.exp_half(1), 1), phis.exp_half(0), 0);
        break;
    case SplitKind::Phi1Phi1:
        out = phis.apply_product(1, v);
        break;
    case SplitKind::PhiEllPhiEll: {
        out = phis.apply_product(ell, v);
        const double fact = factorial(ell);
        double scale = 1.0;
        for (std::size_t mu = 1; mu < op.dims(); ++mu) {
            scale *= fact;
        }
        out *= scale;
        break;
    }
    case SplitKind::Exact:
        out = kron_phi_apply_exact(ell, tau, op, v);
        break;
    }
    out *= tau;
    return out;
}

Field apply_split(SplitKind kind, int ell, double tau, const KronSumOperator& op, const Field& v)
{
    validate_split(kind, ell, op.dims());
    const int ell_max = kind == SplitKind::Exact ? 0 : std::max(ell, 1);
    return apply_split(kind, ell, PhiSet::build(op, tau, ell_max), op, v);
}

Field strang_linear_step(double tau, const KronSumOperator& op, const Field& u0, const Field& v)
{
    if (op.dims() != 2) {
        fail(ErrorCode::Unsupported, "the Strang linear step is defined for two directions");
    }
    op.check_field(u0, "strang_linear_step (u0)");
    op.check_field(v, "strang_linear_step (v)");
    const PhiSet phis = PhiSet::build(op, tau, 1);
    Field out = phis.apply_product(0, u0);
    out += apply_split(SplitKind::ExpHalfPhi1, 1, phis, op, v);
    return out;
}

LocalErrorSample local_error(SplitKind kind, int ell, const PhiSet& phis, const KronSumOperator& op,
                             const Field& v)
{
    Field diff = apply_split(kind, ell, phis, op, v);
    diff -= apply_split(SplitKind::Exact, ell, phis, op, v);
    return {phis.tau(), inf_norm(diff)};
}

LocalErrorSample local_error(SplitKind kind, int ell, double tau, const KronSumOperator& op, const Field& v)
{
    validate_split(kind, ell, op.dims());
    return local_error(kind, ell, PhiSet::build(op, tau, std::max(ell, 1)), op, v);
}

}  // namespace splitexp
