// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "core/linalg.hpp"
#include "core/rng.hpp"

namespace o2b {

/// Mean and covariance of a Gaussian; the unit of Kalman-style fusion.
struct GaussianBelief {
  Vec mean;
  Mat cov;

  int dim() const { return static_cast<int>(mean.size()); }
  static GaussianBelief scalar(double mean, double variance) {
    return {scalar_vec(mean), scalar_mat(variance)};
  }
};

/// Gamma distribution in shape/rate form: mean shape/rate, variance shape/rate^2.
struct GammaSpec {
  double shape = 1.0;
  double rate = 1.0;

  double mean() const { return shape / rate; }
  double variance() const { return shape / (rate * rate); }
};

Vec gaussian_sample(const GaussianBelief& belief, RngStream& rng);
double gamma_sample(const GammaSpec& spec, RngStream& rng);

double normal_logpdf(double x, double mean, double variance);
double mvn_logpdf(const Vec& x, const Vec& mean, const Mat& cov);
double gamma_logpdf(const GammaSpec& spec, double x);

/// Covariance-weighted fusion of two scalar Gaussians.
GaussianBelief kf_fuse(const GaussianBelief& a, const GaussianBelief& b);

enum class RmseMode { signed_error, absolute };

using RunSeries = std::vector<std::vector<double>>;  // [run][step]

/// Per-step root mean square error over runs. Absolute mode compares |x| with
/// |x_hat| so that a sign flip costs nothing.
std::vector<double> rmse(const RunSeries& truth, const RunSeries& estimates, RmseMode mode = RmseMode::signed_error);

double mean_of(const std::vector<double>& v);
/// Unbiased sample variance; 0 for fewer than two values.
double sample_variance(const std::vector<double>& v);

}  // namespace o2b
