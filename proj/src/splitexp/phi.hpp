#pragma once

// Scalar and dense-matrix phi-functions:
//   phi_0(z) = e^z,  phi_l(z) = sum_{k>=0} z^k / (l+k)!   (l > 0),
// which satisfy phi_l(z) = (phi_{l-1}(z) - 1/(l-1)!) / z.

#include "splitexp/common.hpp"

#include <vector>

namespace splitexp {

/// Below this magnitude phi_scalar uses a 15-term Taylor expansion.
inline constexpr double kPhiSeriesThreshold = 0.5;

/// phi_ell(z) for finite z, accurate to a few ulps over the real line.
double phi_scalar(int ell, double z);

/// Partial sum sum_{k<terms} z^k/(ell+k)!, accumulated in long double.
/// Reference oracle only: it cancels catastrophically for large negative z.
double phi_scalar_series(int ell, double z, int terms);

/// e^M by diagonal Pade approximation (degree 3..13) with scaling and squaring.
DenseMatrix expm_dense(const DenseMatrix& m);

/// phi_0(M), ..., phi_{ell_max}(M), read off the first block row of the
/// exponential of the augmented matrix [[M, I, 0, ...], [0, 0, I, ...], ...].
std::vector<DenseMatrix> phi_matrix(int ell_max, const DenseMatrix& m);

}  // namespace splitexp
