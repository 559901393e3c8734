#pragma once

// Directional split approximations of tau * phi_ell(tau (A_1 + ... + A_d)).

#include "splitexp/common.hpp"
#include "splitexp/field.hpp"
#include "splitexp/grid.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

namespace splitexp {

enum class SplitKind {
    ExpHalfPhi1,     // tau e^{tau A/2} phi_1(tau B)
    ExpHalfExpHalf,  // tau e^{tau A/2} e^{tau B/2}
    Phi1Phi1,        // tau phi_1(tau A) phi_1(tau B)
    PhiEllPhiEll,    // (ell!)^{d-1} tau phi_ell(tau A_1) ... phi_ell(tau A_d)
    Exact,           // tau phi_ell(tau (A_1 + ... + A_d))
};

const char* to_string(SplitKind kind) noexcept;

/// A split kind together with the phi order it approximates.
struct SplitSpec {
    SplitKind kind = SplitKind::Exact;
    int ell = 1;
};

/// Accepts exphalfphi1, exphalfexphalf, phi1phi1, phi2phi2, exact
/// (case-insensitive). phi2phi2 maps to PhiEllPhiEll with ell = 2.
std::optional<SplitSpec> parse_split_kind(std::string_view name);

/// Canonical CLI name for a split, e.g. "phi2phi2".
std::string split_name(SplitSpec spec);

/// Throws if the kind/ell/dimension combination is not defined.
void validate_split(SplitKind kind, int ell, std::size_t dims);

enum class PhiBackend { Spectral, Pade };

/// Per-direction dense matrices phi_0..phi_{ell_max}(tau D_mu) and
/// e^{tau D_mu / 2} for one fixed step tau.
class PhiSet {
public:
    static PhiSet build(const KronSumOperator& op, double tau, int ell_max,
                        PhiBackend backend = PhiBackend::Spectral);

    [[nodiscard]] double tau() const noexcept { return tau_; }
    [[nodiscard]] int ell_max() const noexcept { return ell_max_; }
    [[nodiscard]] std::size_t dims() const noexcept { return directions_.size(); }

    [[nodiscard]] const DenseMatrix& phi(std::size_t mu, int ell) const;
    [[nodiscard]] const DenseMatrix& exp_half(std::size_t mu) const;

    /// phi_ell(tau A_1) ... phi_ell(tau A_d) v, mode 0 applied last.
    [[nodiscard]] Field apply_product(int ell, const Field& v) const;

private:
    struct Direction {
        std::vector<DenseMatrix> phi;
        DenseMatrix exp_half;
    };

    double tau_ = 0.0;
    int ell_max_ = 0;
    std::vector<std::shared_ptr<const Direction>> directions_;
};

/// Thread-safe memo of PhiSets for one operator, keyed by (tau, ell_max).
class PhiSetCache {
public:
    explicit PhiSetCache(const KronSumOperator& op, PhiBackend backend = PhiBackend::Spectral);

    std::shared_ptr<const PhiSet> get(double tau, int ell_max);

private:
    const KronSumOperator& op_;
    PhiBackend backend_;
    std::mutex mutex_;
    std::map<std::pair<double, int>, std::shared_ptr<const PhiSet>> sets_;
};

struct LocalErrorSample {
    double tau = 0.0;
    double error = 0.0;  // infinity norm
};

/// tau times the split approximation applied to v.
Field apply_split(SplitKind kind, int ell, double tau, const KronSumOperator& op, const Field& v);
Field apply_split(SplitKind kind, int ell, const PhiSet& phis, const KronSumOperator& op, const Field& v);

/// One Strang step for u' = (A+B)u + v:
/// e^{tau A} e^{tau B} u0 + tau e^{tau A/2} phi_1(tau B) v. Two directions only.
Field strang_linear_step(double tau, const KronSumOperator& op, const Field& u0, const Field& v);

/// || apply_split(kind) - tau phi_ell(tau (A+B)) v ||_inf
LocalErrorSample local_error(SplitKind kind, int ell, double tau, const KronSumOperator& op, const Field& v);
LocalErrorSample local_error(SplitKind kind, int ell, const PhiSet& phis, const KronSumOperator& op,
                             const Field& v);

}  // namespace splitexp
