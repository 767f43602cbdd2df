// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>

namespace o2b {

// Every state and observation in the toolkit has at most this many dimensions,
// so vectors and matrices live on the stack.
inline constexpr int kMaxDim = 8;

using Vec = Eigen::Matrix<double, Eigen::Dynamic, 1, 0, kMaxDim, 1>;
using Mat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, 0, kMaxDim, kMaxDim>;
using SigmaPoints = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, 0, kMaxDim, 2 * kMaxDim + 1>;

inline Vec scalar_vec(double v) {
  Vec out(1);
  out(0) = v;
  return out;
}

inline Mat scalar_mat(double v) {
  Mat out(1, 1);
  out(0, 0) = v;
  return out;
}

/// True when `cov` is square, symmetric within `rel_tol` (relative to its
/// largest entry) and has no eigenvalue below -rel_tol * trace.
bool is_symmetric_psd(const Mat& cov, double rel_tol = 1e-9);

Mat symmetrize(const Mat& m);

/// Returns L with L * L^T == cov. Tries Cholesky first and falls back to a
/// symmetric eigendecomposition for semidefinite input (negative eigenvalues
/// within tolerance are clipped to zero). Throws invalid_input otherwise.
Mat psd_factor(const Mat& cov);

}  // namespace o2b
