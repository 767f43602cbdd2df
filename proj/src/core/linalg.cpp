// SPDX-License-Identifier: Apache-2.0
#include "core/linalg.hpp"

#include <cmath>

#include "core/error.hpp"

namespace o2b {

bool is_symmetric_psd(const Mat& cov, double rel_tol) {
  if (cov.rows() != cov.cols() || cov.rows() == 0) return false;
  if (!cov.allFinite()) return false;
  const double scale = std::max(cov.cwiseAbs().maxCoeff(), 1e-300);
  if ((cov - cov.transpose()).cwiseAbs().maxCoeff() > rel_tol * scale) return false;
  Eigen::SelfAdjointEigenSolver<Mat> eig(symmetrize(cov), Eigen::EigenvaluesOnly);
  const double trace = std::abs(cov.trace());
  return eig.eigenvalues().minCoeff() >= -rel_tol * std::max(trace, 1e-300);
}

Mat symmetrize(const Mat& m) { return 0.5 * (m + m.transpose()); }

Mat psd_factor(const Mat& cov) {
  if (!is_symmetric_psd(cov)) fail(ErrorKind::invalid_input, "covariance is not symmetric positive semidefinite");
  const Mat sym = symmetrize(cov);
  Eigen::LLT<Mat> llt(sym);
  if (llt.info() == Eigen::Success) {
    Mat l = llt.matrixL();
    if (l.allFinite()) return l;
  }
  Eigen::SelfAdjointEigenSolver<Mat> eig(sym);
  const Vec roots = eig.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return eig.eigenvectors() * roots.asDiagonal();
}

}  // namespace o2b
