// SPDX-License-Identifier: Apache-2.0
#include "core/stats.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "core/error.hpp"

namespace o2b {

Vec gaussian_sample(const GaussianBelief& belief, RngStream& rng) {
  if (belief.cov.rows() != belief.mean.size())
    fail(ErrorKind::invalid_input, "belief mean and covariance dimensions differ");
  const Mat l = psd_factor(belief.cov);
  Vec z(belief.mean.size());
  for (Eigen::Index i = 0; i < z.size(); ++i) z(i) = rng.normal();
  return belief.mean + l * z;
}

double gamma_sample(const GammaSpec& spec, RngStream& rng) {
  if (!(spec.shape > 0.0) || !(spec.rate > 0.0))
    fail(ErrorKind::invalid_input, "gamma shape and rate must be positive");
  std::gamma_distribution<double> dist(spec.shape, 1.0 / spec.rate);
  double x = dist(rng.engine());
  // The support is open at zero; a draw that rounds to zero is redrawn.
  while (!(x > 0.0)) x = dist(rng.engine());
  return x;
}

double normal_logpdf(double x, double mean, double variance) {
  const double d = x - mean;
  return -0.5 * (std::log(2.0 * std::numbers::pi * variance) + d * d / variance);
}

double mvn_logpdf(const Vec& x, const Vec& mean, const Mat& cov) {
  Eigen::LLT<Mat> llt(symmetrize(cov));
  if (llt.info() != Eigen::Success) return -std::numeric_limits<double>::infinity();
  const Vec d = x - mean;
  const Vec sol = llt.matrixL().solve(d);
  const Mat l = llt.matrixL();
  double logdet = 0.0;
  for (Eigen::Index i = 0; i < l.rows(); ++i) logdet += 2.0 * std::log(l(i, i));
  const double k = static_cast<double>(x.size());
  return -0.5 * (k * std::log(2.0 * std::numbers::pi) + logdet + sol.squaredNorm());
}

double gamma_logpdf(const GammaSpec& spec, double x) {
  if (!(x > 0.0)) return -std::numeric_limits<double>::infinity();
  return spec.shape * std::log(spec.rate) - std::lgamma(spec.shape) + (spec.shape - 1.0) * std::log(x) -
         spec.rate * x;
}

GaussianBelief kf_fuse(const GaussianBelief& a, const GaussianBelief& b) {
  if (a.dim() != 1 || b.dim() != 1) fail(ErrorKind::invalid_input, "kf_fuse expects scalar beliefs");
  const double ma = a.mean(0), va = a.cov(0, 0);
  const double mb = b.mean(0), vb = b.cov(0, 0);
  if (va < 0.0 || vb < 0.0 || !std::isfinite(va) || !std::isfinite(vb))
    fail(ErrorKind::invalid_input, "kf_fuse variances must be finite and non-negative");
  if (va == 0.0 && vb == 0.0) {
    if (ma != mb) fail(ErrorKind::inconsistent, "two exact beliefs with different means cannot be fused");
    return a;
  }
  const double sum = va + vb;
  // The mean is computed as a convex combination so that it stays inside [ma, mb].
  const double wa = vb / sum;
  return GaussianBelief::scalar(wa * ma + (1.0 - wa) * mb, va * vb / sum);
}

std::vector<double> rmse(const RunSeries& truth, const RunSeries& estimates, RmseMode mode) {
  if (truth.empty()) fail(ErrorKind::invalid_input, "rmse needs at least one run");
  if (truth.size() != estimates.size()) fail(ErrorKind::invalid_input, "rmse run counts differ");
  const std::size_t steps = truth.front().size();
  for (std::size_t i = 0; i < truth.size(); ++i)
    if (truth[i].size() != steps || estimates[i].size() != steps)
      fail(ErrorKind::invalid_input, "rmse step counts differ");

  std::vector<double> out(steps, 0.0);
  for (std::size_t t = 0; t < steps; ++t) {
    double acc = 0.0;
    for (std::size_t i = 0; i < truth.size(); ++i) {
      const double e = mode == RmseMode::signed_error ? truth[i][t] - estimates[i][t]
                                                      : std::abs(truth[i][t]) - std::abs(estimates[i][t]);
      acc += e * e;
    }
    out[t] = std::sqrt(acc / static_cast<double>(truth.size()));
  }
  return out;
}

double mean_of(const std::vector<double>& v) {
  if (v.empty()) return std::numeric_limits<double>::quiet_NaN();
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

double sample_variance(const std::vector<double>& v) {
  if (v.size() < 2) return 0.0;
  const double m = mean_of(v);
  double s = 0.0;
  for (double x : v) s += (x - m) * (x - m);
  return s / static_cast<double>(v.size() - 1);
}

}  // namespace o2b
