#include "splitexp/phi.hpp"

#include <array>
#include <cmath>
#include <string>

namespace splitexp {
namespace {

void check_order(int ell)
{
    if (ell < 0) {
        fail(ErrorCode::InvalidArgument, "phi order must be non-negative, got " + std::to_string(ell));
    }
}

double phi_taylor(int ell, double z)
{
    // Nested form of 1/ell! * (1 + z/(ell+1) * (1 + z/(ell+2) * (...))), 15 terms.
    constexpr int kTerms = 15;
    double r = 1.0;
    for (int k = kTerms - 1; k >= 1; --k) {
        r = 1.0 + z * r / (ell + k);
    }
    return r / factorial(ell);
}

// Positive-term expansions for the band kPhiSeriesThreshold <= |z| <= ell+1,
// where the upward recursion would amplify rounding errors.
double phi_positive_series(int ell, double z)
{
    constexpr int kMaxTerms = 2000;
    if (z > 0.0) {
        double term = 1.0 / factorial(ell);
        double sum = term;
        for (int k = 1; k < kMaxTerms; ++k) {
            term *= z / (ell + k);
            sum += term;
            if (term < 1e-18 * sum) {
                break;
            }
        }
        return sum;
    }
    // phi_l(z) = e^z/(l-1)! * sum_k (-z)^k / (k! (l+k))
    const double w = -z;
    double power = 1.0;  // w^k / k!
    double sum = 1.0 / ell;
    for (int k = 1; k < kMaxTerms; ++k) {
        power *= w / k;
        const double term = power / (ell + k);
        sum += term;
        if (term < 1e-18 * sum) {
            break;
        }
    }
    return std::exp(z) * sum / factorial(ell - 1);
}

// 1-norm bounds below which the degree-m Pade approximant is accurate to
// double precision (Higham 2005).
constexpr std::array<double, 5> kPadeDegrees{3, 5, 7, 9, 13};
constexpr std::array<double, 5> kPadeTheta{
    1.495585217958292e-2, 2.539398330063230e-1, 9.504178996162932e-1,
    2.097847961257068e0, 5.371920351148152e0};

DenseMatrix pade_solve(const DenseMatrix& u, const DenseMatrix& v)
{
    return (v - u).partialPivLu().solve(v + u);
}

DenseMatrix pade_low_degree(const DenseMatrix& a, int degree)
{
    static const std::array<double, 4> b3{120., 60., 12., 1.};
    static const std::array<double, 6> b5{30240., 15120., 3360., 420., 30., 1.};
    static const std::array<double, 8> b7{17297280., 8648640., 1995840., 277200., 25200., 1512., 56., 1.};
    static const std::array<double, 10> b9{17643225600., 8821612800., 2075673600., 302702400., 30270240.,
                                           2162160., 110880., 3960., 90., 1.};
    const double* b = nullptr;
    switch (degree) {
    case 3: b = b3.data(); break;
    case 5: b = b5.data(); break;
    case 7: b = b7.data(); break;
    default: b = b9.data(); break;
    }
    const auto n = a.rows();
    const DenseMatrix ident = DenseMatrix::Identity(n, n);
    const DenseMatrix a2 = a * a;
    DenseMatrix power = ident;
    DenseMatrix odd = b[1] * ident;
    DenseMatrix even = b[0] * ident;
    for (int k = 1; 2 * k <= degree; ++k) {
        power = power * a2;
        odd += b[2 * k + 1] * power;
        even += b[2 * k] * power;
    }
    return pade_solve(a * odd, even);
}

DenseMatrix pade13(const DenseMatrix& a)
{
    static const std::array<double, 14> b{64764752532480000., 32382376266240000., 7771770303897600.,
                                          1187353796428800.,  129060195264000.,   10559470521600.,
                                          670442572800.,      33522128640.,       1323241920.,
                                          40840800.,          960960.,            16380.,
                                          182.,               1.};
    const auto n = a.rows();
    const DenseMatrix ident = DenseMatrix::Identity(n, n);
    const DenseMatrix a2 = a * a;
    const DenseMatrix a4 = a2 * a2;
    const DenseMatrix a6 = a4 * a2;
    DenseMatrix inner = b[13] * a6 + b[11] * a4 + b[9] * a2;
    DenseMatrix u = a6 * inner;
    u += b[7] * a6 + b[5] * a4 + b[3] * a2 + b[1] * ident;
    u = a * u;
    inner = b[12] * a6 + b[10] * a4 + b[8] * a2;
    DenseMatrix v = a6 * inner;
    v += b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * ident;
    return pade_solve(u, v);
}

}  // namespace

double phi_scalar(int ell, double z)
{
    check_order(ell);
    if (std::abs(z) < kPhiSeriesThreshold) {
        return phi_taylor(ell, z);
    }
    if (ell == 0) {
        return std::exp(z);
    }
    if (ell == 1) {
        return std::expm1(z) / z;
    }
    if (std::abs(z) <= ell + 1.0) {
        return phi_positive_series(ell, z);
    }
    // Upward recursion is stable once |z| exceeds the order.
    double value = std::expm1(z) / z;
    double inv_fact = 1.0;  // 1/(k-1)!
    for (int k = 2; k <= ell; ++k) {
        inv_fact /= (k - 1);
        value = (value - inv_fact) / z;
    }
    return value;
}

double phi_scalar_series(int ell, double z, int terms)
{
    check_order(ell);
    if (terms < 1) {
        fail(ErrorCode::InvalidArgument, "series needs at least one term");
    }
    long double term = 1.0L;
    for (int k = 2; k <= ell; ++k) {
        term /= k;
    }
    long double sum = term;
    for (int k = 1; k < terms; ++k) {
        term *= static_cast<long double>(z) / (ell + k);
        sum += term;
    }
    return static_cast<double>(sum);
}

DenseMatrix expm_dense(const DenseMatrix& m)
{
    if (m.rows() != m.cols()) {
        fail(ErrorCode::Dimension, "expm_dense needs a square matrix, got " + std::to_string(m.rows()) +
                                       "x" + std::to_string(m.cols()));
    }
    if (m.size() == 0) {
        return m;
    }
    if (!m.allFinite()) {
        fail(ErrorCode::InvalidArgument, "expm_dense: non-finite entries");
    }
    const double norm1 = m.cwiseAbs().colwise().sum().maxCoeff();
    for (std::size_t i = 0; i + 1 < kPadeDegrees.size(); ++i) {
        if (norm1 <= kPadeTheta[i]) {
            return pade_low_degree(m, static_cast<int>(kPadeDegrees[i]));
        }
    }
    int squarings = 0;
    if (norm1 > kPadeTheta.back()) {
        squarings = static_cast<int>(std::ceil(std::log2(norm1 / kPadeTheta.back())));
    }
    DenseMatrix result = pade13(m / std::ldexp(1.0, squarings));
    for (int i = 0; i < squarings; ++i) {
        result = result * result;
    }
    return result;
}

std::vector<DenseMatrix> phi_matrix(int ell_max, const DenseMatrix& m)
{
    check_order(ell_max);
    if (m.rows() != m.cols()) {
        fail(ErrorCode::Dimension, "phi_matrix needs a square matrix, got " + std::to_string(m.rows()) +
                                       "x" + std::to_string(m.cols()));
    }
    const auto n = m.rows();
    const auto blocks = static_cast<Eigen::Index>(ell_max + 1);
    DenseMatrix augmented = DenseMatrix::Zero(n * blocks, n * blocks);
    augmented.topLeftCorner(n, n) = m;
    for (Eigen::Index k = 0; k + 1 < blocks; ++k) {
        augmented.block(k * n, (k + 1) * n, n, n).setIdentity();
    }
    const DenseMatrix expo = expm_dense(augmented);
    std::vector<DenseMatrix> out;
    out.reserve(static_cast<std::size_t>(blocks));
    for (Eigen::Index k = 0; k < blocks; ++k) {
        out.emplace_back(expo.block(0, k * n, n, n));
    }
    return out;
}

}  // namespace splitexp
