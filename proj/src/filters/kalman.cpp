// SPDX-License-Identifier: Apache-2.0
#include "filters/kalman.hpp"

#include "core/error.hpp"

namespace o2b::filters {

GaussianBelief gaussian_correct(const GaussianBelief& predicted, const Vec& y, const Vec& y_mean, const Mat& y_cov,
                                const Mat& cross_cov) {
  Eigen::LDLT<Mat> ldlt(symmetrize(y_cov));
  if (ldlt.info() != Eigen::Success || !ldlt.isPositive() || ldlt.vectorD().minCoeff() <= 0.0)
    fail(ErrorKind::numerical, "singular innovation covariance");
  const Mat gain = ldlt.solve(cross_cov.transpose()).transpose();
  GaussianBelief out;
  out.mean = predicted.mean + gain * (y - y_mean);
  out.cov = symmetrize(predicted.cov - gain * y_cov * gain.transpose());
  return out;
}

GaussianBelief kalman_predict(const GaussianBelief& belief, const LinearGaussianSystem& sys) {
  GaussianBelief out;
  out.mean = sys.transition * belief.mean + sys.transition_offset;
  out.cov = symmetrize(sys.transition * belief.cov * sys.transition.transpose() + sys.process_cov);
  return out;
}

GaussianBelief kalman_update(const GaussianBelief& predicted, const Vec& y, const LinearGaussianSystem& sys) {
  const Mat& h = sys.observation;
  const Vec y_mean = h * predicted.mean + sys.observation_offset;
  const Mat s = h * predicted.cov * h.transpose() + sys.observation_cov;
  return gaussian_correct(predicted, y, y_mean, s, predicted.cov * h.transpose());
}

GaussianBelief kalman_step(const GaussianBelief& belief, const Vec& y, const LinearGaussianSystem& sys) {
  return kalman_update(kalman_predict(belief, sys), y, sys);
}

GaussianBelief ekf_predict(const GaussianBelief& belief, const StateSpaceModel& model, int t) {
  const Mat f = model.transition_jacobian(belief.mean, t);
  GaussianBelief out;
  out.mean = model.transition(belief.mean, t) + model.process_noise_mean();
  out.cov = symmetrize(f * belief.cov * f.transpose() + model.process_noise_cov());
  return out;
}

GaussianBelief ekf_update(const GaussianBelief& predicted, const Vec& y, const StateSpaceModel& model, int t) {
  const Mat h = model.observation_jacobian(predicted.mean, t);
  const Mat s = h * predicted.cov * h.transpose() + model.observation_noise_cov();
  return gaussian_correct(predicted, y, model.observe(predicted.mean, t), s, predicted.cov * h.transpose());
}

GaussianBelief ekf_step(const GaussianBelief& belief, const Vec& y, const StateSpaceModel& model, int t) {
  return ekf_update(ekf_predict(belief, model, t), y, model, t);
}

}  // namespace o2b::filters
