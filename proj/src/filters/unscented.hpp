// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>

#include "core/stats.hpp"
#include "models/model.hpp"

namespace o2b::filters {

/// Scaled unscented transform spread parameters.
struct UnscentedParams {
  double alpha = 1.0;
  double beta = 0.0;
  double kappa = 2.0;

  double lambda(int n) const { return alpha * alpha * (n + kappa) - n; }
};

struct UnscentedResult {
  Vec mean;
  Mat cov;
  Mat cross_cov;  // E[(x - mean_x)(fn(x) - mean)^T]
};

using VectorFn = std::function<Vec(const Vec&)>;

/// Columns are the 2n+1 sigma points; throws invalid_input for a non-PSD cov.
SigmaPoints sigma_points(const Vec& mean, const Mat& cov, const UnscentedParams& params);

UnscentedResult unscented_transform(const Vec& mean, const Mat& cov, const UnscentedParams& params,
                                    const VectorFn& fn);

GaussianBelief ukf_predict(const GaussianBelief& belief, const models::StateSpaceModel& model, int t,
                           const UnscentedParams& params = {});
GaussianBelief ukf_update(const GaussianBelief& predicted, const Vec& y, const models::StateSpaceModel& model, int t,
                          const UnscentedParams& params = {});
GaussianBelief ukf_step(const GaussianBelief& belief, const Vec& y, const models::StateSpaceModel& model, int t,
                        const UnscentedParams& params = {});

}  // namespace o2b::filters
