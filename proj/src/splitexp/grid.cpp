#include "splitexp/grid.hpp"

#include "splitexp/phi.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace splitexp {
namespace {

void check_step(double tau)
{
    if (!(tau >= 0.0) || !std::isfinite(tau)) {
        fail(ErrorCode::InvalidStep, "step size must be finite and non-negative, got " + std::to_string(tau));
    }
}

}  // namespace

Grid1D Grid1D::laplacian(std::size_t n, double length)
{
    if (n == 0) {
        fail(ErrorCode::InvalidSize, "a grid needs at least one interior point");
    }
    if (!(length > 0.0) || !std::isfinite(length)) {
        fail(ErrorCode::InvalidArgument, "domain length must be positive, got " + std::to_string(length));
    }
    const auto size = static_cast<Eigen::Index>(n);
    Grid1D g;
    g.h_ = length / static_cast<double>(n + 1);
    const double inv_h2 = 1.0 / (g.h_ * g.h_);
    g.d_ = DenseMatrix::Zero(size, size);
    for (Eigen::Index i = 0; i < size; ++i) {
        g.d_(i, i) = -2.0 * inv_h2;
        if (i + 1 < size) {
            g.d_(i, i + 1) = inv_h2;
            g.d_(i + 1, i) = inv_h2;
        }
    }
    const double np1 = static_cast<double>(n + 1);
    const double pi = std::numbers::pi;
    g.eigenvalues_.resize(size);
    g.basis_.resize(size, size);
    const double scale = std::sqrt(2.0 / np1);
    for (Eigen::Index k = 0; k < size; ++k) {
        const double s = std::sin(static_cast<double>(k + 1) * pi / (2.0 * np1));
        g.eigenvalues_(k) = -4.0 * inv_h2 * s * s;
        for (Eigen::Index j = 0; j < size; ++j) {
            g.basis_(j, k) = scale * std::sin(static_cast<double>((j + 1) * (k + 1)) * pi / np1);
        }
    }
    g.basis_t_ = g.basis_.transpose();
    return g;
}

Grid1D Grid1D::from_symmetric(const DenseMatrix& d, double h)
{
    if (d.rows() != d.cols()) {
        fail(ErrorCode::Dimension, "operator matrix must be square");
    }
    if (d.rows() == 0) {
        fail(ErrorCode::InvalidSize, "operator matrix is empty");
    }
    const double scale = std::max(1.0, d.cwiseAbs().maxCoeff());
    if ((d - d.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
        fail(ErrorCode::InvalidArgument, "operator matrix must be symmetric");
    }
    Eigen::SelfAdjointEigenSolver<DenseMatrix> solver(d);
    Grid1D g;
    g.h_ = h;
    g.d_ = d;
    g.eigenvalues_ = solver.eigenvalues();
    g.basis_ = solver.eigenvectors();
    g.basis_t_ = g.basis_.transpose();
    return g;
}

Grid1D build_laplacian_1d(std::size_t n, double length)
{
    return Grid1D::laplacian(n, length);
}

DenseMatrix phi_spectral_1d(int ell, double tau, const Grid1D& grid)
{
    check_step(tau);
    const auto& lambda = grid.eigenvalues();
    DenseVector multiplier(lambda.size());
    for (Eigen::Index k = 0; k < lambda.size(); ++k) {
        multiplier(k) = phi_scalar(ell, tau * lambda(k));
    }
    return grid.basis() * multiplier.asDiagonal() * grid.basis_transpose();
}

KronSumOperator::KronSumOperator(std::vector<std::shared_ptr<const Grid1D>> grids)
    : grids_(std::move(grids))
{
    if (grids_.empty() || grids_.size() > 3) {
        fail(ErrorCode::Unsupported, "operators in 1, 2 or 3 directions are supported, got " +
                                         std::to_string(grids_.size()));
    }
    for (const auto& g : grids_) {
        if (!g) {
            fail(ErrorCode::InvalidArgument, "null grid in Kronecker-sum operator");
        }
    }
}

KronSumOperator KronSumOperator::uniform(std::size_t dims, std::size_t n, double length)
{
    auto grid = std::make_shared<const Grid1D>(Grid1D::laplacian(n, length));
    return KronSumOperator(std::vector<std::shared_ptr<const Grid1D>>(dims, grid));
}

Shape KronSumOperator::shape() const
{
    Shape s;
    s.reserve(grids_.size());
    for (const auto& g : grids_) {
        s.push_back(g->size());
    }
    return s;
}

void KronSumOperator::check_field(const Field& v, const char* what) const
{
    if (v.shape() != shape()) {
        fail(ErrorCode::Dimension, std::string(what) + ": field shape does not match the operator");
    }
}

Field to_spectral(const KronSumOperator& op, const Field& v)
{
    op.check_field(v, "to_spectral");
    Field out = v;
    for (std::size_t mu = 0; mu < op.dims(); ++mu) {
        out = mode_product(out, op.grid(mu).basis_transpose(), mu);
    }
    return out;
}

Field from_spectral(const KronSumOperator& op, const Field& coefficients)
{
    op.check_field(coefficients, "from_spectral");
    Field out = coefficients;
    for (std::size_t mu = 0; mu < op.dims(); ++mu) {
        out = mode_product(out, op.grid(mu).basis(), mu);
    }
    return out;
}

Field spectral_symbol(int ell, double tau, const KronSumOperator& op)
{
    check_step(tau);
    const Shape shape = op.shape();
    Field symbol(shape);
    // Sum of eigenvalues at each multi-index, built mode by mode.
    std::vector<double> sums(symbol.size(), 0.0);
    std::size_t stride = 1;
    for (std::size_t mu = 0; mu < shape.size(); ++mu) {
        const auto& lambda = op.grid(mu).eigenvalues();
        const std::size_t extent = shape[mu];
        for (std::size_t idx = 0; idx < sums.size(); ++idx) {
            sums[idx] += lambda(static_cast<Eigen::Index>((idx / stride) % extent));
        }
        stride *= extent;
    }
    auto values = symbol.values();
    for (std::size_t idx = 0; idx < sums.size(); ++idx) {
        values[idx] = phi_scalar(ell, tau * sums[idx]);
    }
    return symbol;
}

Field apply_spectral(const KronSumOperator& op, const Field& symbol, const Field& v)
{
    op.check_field(symbol, "apply_spectral (symbol)");
    Field coefficients = to_spectral(op, v);
    auto c = coefficients.values();
    auto s = symbol.values();
    for (std::size_t i = 0; i < c.size(); ++i) {
        c[i] *= s[i];
    }
    return from_spectral(op, coefficients);
}

Field kron_phi_apply_exact(int ell, double tau, const KronSumOperator& op, const Field& v)
{
    op.check_field(v, "kron_phi_apply_exact");
    return apply_spectral(op, spectral_symbol(ell, tau, op), v);
}

Field exp_apply_1d(double tau, const Grid1D& grid, const Field& v, std::size_t direction)
{
    if (direction >= v.dims()) {
        fail(ErrorCode::Dimension, "direction " + std::to_string(direction) + " out of range for a " +
                                       std::to_string(v.dims()) + "-dimensional field");
    }
    return mode_product(v, phi_spectral_1d(0, tau, grid), direction);
}

Field apply_operator(const KronSumOperator& op, const Field& u)
{
    op.check_field(u, "apply_operator");
    Field out(u.shape());
    for (std::size_t mu = 0; mu < op.dims(); ++mu) {
        out += mode_product(u, op.grid(mu).matrix(), mu);
    }
    return out;
}

}  // namespace splitexp
