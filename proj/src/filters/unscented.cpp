// SPDX-License-Identifier: Apache-2.0
#include "filters/unscented.hpp"

#include <cmath>

#include "core/error.hpp"
#include "filters/kalman.hpp"

namespace o2b::filters {

namespace {

void check(const UnscentedParams& p, int n) {
  if (!(p.alpha > 0.0 && p.alpha <= 1.0)) fail(ErrorKind::invalid_input, "unscented alpha must lie in (0, 1]");
  if (n + p.lambda(n) == 0.0) fail(ErrorKind::invalid_input, "unscented n + lambda must be non-zero");
}

}  // namespace

SigmaPoints sigma_points(const Vec& mean, const Mat& cov, const UnscentedParams& params) {
  const int n = static_cast<int>(mean.size());
  check(params, n);
  const double c = n + params.lambda(n);
  if (c < 0.0) fail(ErrorKind::invalid_input, "unscented n + lambda must be positive");
  const Mat l = psd_factor(cov) * std::sqrt(c);
  SigmaPoints pts(n, 2 * n + 1);
  pts.col(0) = mean;
  for (int i = 0; i < n; ++i) {
    pts.col(1 + i) = mean + l.col(i);
    pts.col(1 + n + i) = mean - l.col(i);
  }
  return pts;
}

UnscentedResult unscented_transform(const Vec& mean, const Mat& cov, const UnscentedParams& params,
                                    const VectorFn& fn) {
  const int n = static_cast<int>(mean.size());
  const SigmaPoints pts = sigma_points(mean, cov, params);
  const double lambda = params.lambda(n);
  const double wm0 = lambda / (n + lambda);
  const double wc0 = wm0 + 1.0 - params.alpha * params.alpha + params.beta;
  const double wi = 0.5 / (n + lambda);

  const int count = 2 * n + 1;
  std::vector<Vec> mapped;
  mapped.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) mapped.push_back(fn(pts.col(i)));

  const Eigen::Index m = mapped.front().size();
  UnscentedResult out;
  out.mean = wm0 * mapped[0];
  for (int i = 1; i < count; ++i) out.mean += wi * mapped[static_cast<std::size_t>(i)];
  out.cov = Mat::Zero(m, m);
  out.cross_cov = Mat::Zero(n, m);
  for (int i = 0; i < count; ++i) {
    const double w = i == 0 ? wc0 : wi;
    const Vec dy = mapped[static_cast<std::size_t>(i)] - out.mean;
    const Vec dx = pts.col(i) - mean;
    out.cov += w * dy * dy.transpose();
    out.cross_cov += w * dx * dy.transpose();
  }
  out.cov = symmetrize(out.cov);
  return out;
}

GaussianBelief ukf_predict(const GaussianBelief& belief, const models::StateSpaceModel& model, int t,
                           const UnscentedParams& params) {
  const auto ut = unscented_transform(belief.mean, belief.cov, params,
                                      [&](const Vec& x) { return model.transition(x, t); });
  return {ut.mean + model.process_noise_mean(), symmetrize(ut.cov + model.process_noise_cov())};
}

GaussianBelief ukf_update(const GaussianBelief& predicted, const Vec& y, const models::StateSpaceModel& model, int t,
                          const UnscentedParams& params) {
  const auto ut = unscented_transform(predicted.mean, predicted.cov, params,
                                      [&](const Vec& x) { return model.observe(x, t); });
  return gaussian_correct(predicted, y, ut.mean, ut.cov + model.observation_noise_cov(), ut.cross_cov);
}

GaussianBelief ukf_step(const GaussianBelief& belief, const Vec& y, const models::StateSpaceModel& model, int t,
                        const UnscentedParams& params) {
  return ukf_update(ukf_predict(belief, model, t, params), y, model, t, params);
}

}  // namespace o2b::filters
