#pragma once

// One-dimensional Dirichlet finite-difference operators, their orthogonal
// eigenbases, and Kronecker-sum operators A_1 (+) ... (+) A_d acting on fields.

#include "splitexp/common.hpp"
#include "splitexp/field.hpp"

#include <memory>
#include <vector>

namespace splitexp {

class Grid1D {
public:
    /// Second-order Dirichlet Laplacian tridiag(1, -2, 1)/h^2 on (0, length)
    /// with n interior points, h = length/(n+1). The eigenpairs are the
    /// closed-form sine modes.
    static Grid1D laplacian(std::size_t n, double length = 1.0);

    /// Any symmetric operator; the eigenbasis comes from a dense eigensolve.
    static Grid1D from_symmetric(const DenseMatrix& d, double h = 1.0);

    [[nodiscard]] std::size_t size() const noexcept { return static_cast<std::size_t>(d_.rows()); }
    [[nodiscard]] double h() const noexcept { return h_; }
    [[nodiscard]] const DenseMatrix& matrix() const noexcept { return d_; }
    [[nodiscard]] const DenseVector& eigenvalues() const noexcept { return eigenvalues_; }
    /// Orthonormal eigenvectors as columns: D = Q diag(eigenvalues) Q^T.
    [[nodiscard]] const DenseMatrix& basis() const noexcept { return basis_; }
    [[nodiscard]] const DenseMatrix& basis_transpose() const noexcept { return basis_t_; }

private:
    Grid1D() = default;

    double h_ = 0.0;
    DenseMatrix d_;
    DenseVector eigenvalues_;
    DenseMatrix basis_;
    DenseMatrix basis_t_;
};

Grid1D build_laplacian_1d(std::size_t n, double length);

/// phi_ell(tau D) = Q diag(phi_ell(tau lambda_k)) Q^T.
DenseMatrix phi_spectral_1d(int ell, double tau, const Grid1D& grid);

/// A_1 (+) ... (+) A_d with A_mu acting along mode mu of a field. In vec
/// ordering this is I (x) ... (x) D_1 + ... + D_d (x) ... (x) I.
class KronSumOperator {
public:
    explicit KronSumOperator(std::vector<std::shared_ptr<const Grid1D>> grids);

    /// d copies of the Dirichlet Laplacian on (0, length).
    static KronSumOperator uniform(std::size_t dims, std::size_t n, double length = 1.0);

    [[nodiscard]] std::size_t dims() const noexcept { return grids_.size(); }
    [[nodiscard]] const Grid1D& grid(std::size_t mu) const { return *grids_.at(mu); }
    [[nodiscard]] Shape shape() const;
    /// True when modes a and b use the same Grid1D instance.
    [[nodiscard]] bool shares_grid(std::size_t a, std::size_t b) const
    {
        return grids_.at(a) == grids_.at(b);
    }

    void check_field(const Field& v, const char* what) const;

private:
    std::vector<std::shared_ptr<const Grid1D>> grids_;
};

/// Coefficients of v in the tensor eigenbasis and back.
Field to_spectral(const KronSumOperator& op, const Field& v);
Field from_spectral(const KronSumOperator& op, const Field& coefficients);

/// Entry (i, j, ...) holds phi_ell(tau (lambda_i + lambda_j + ...)).
Field spectral_symbol(int ell, double tau, const KronSumOperator& op);

/// Applies the diagonal multiplier `symbol` in the tensor eigenbasis.
Field apply_spectral(const KronSumOperator& op, const Field& symbol, const Field& v);

/// phi_ell(tau (A_1 + ... + A_d)) v, exact up to rounding.
Field kron_phi_apply_exact(int ell, double tau, const KronSumOperator& op, const Field& v);

/// e^{tau D} applied along one mode (0-based direction).
Field exp_apply_1d(double tau, const Grid1D& grid, const Field& v, std::size_t direction);

/// (A_1 + ... + A_d) u via mode products with each D.
Field apply_operator(const KronSumOperator& op, const Field& u);

}  // namespace splitexp
