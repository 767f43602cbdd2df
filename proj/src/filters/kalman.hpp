// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "core/stats.hpp"
#include "models/model.hpp"

namespace o2b::filters {

using models::LinearGaussianSystem;
using models::StateSpaceModel;

/// Correction shared by the Kalman family: given the predicted observation
/// mean, its covariance and the state/observation cross covariance.
GaussianBelief gaussian_correct(const GaussianBelief& predicted, const Vec& y, const Vec& y_mean, const Mat& y_cov,
                                const Mat& cross_cov);

GaussianBelief kalman_predict(const GaussianBelief& belief, const LinearGaussianSystem& sys);
GaussianBelief kalman_update(const GaussianBelief& predicted, const Vec& y, const LinearGaussianSystem& sys);
GaussianBelief kalman_step(const GaussianBelief& belief, const Vec& y, const LinearGaussianSystem& sys);

GaussianBelief ekf_predict(const GaussianBelief& belief, const StateSpaceModel& model, int t);
GaussianBelief ekf_update(const GaussianBelief& predicted, const Vec& y, const StateSpaceModel& model, int t);
GaussianBelief ekf_step(const GaussianBelief& belief, const Vec& y, const StateSpaceModel& model, int t);

}  // namespace o2b::filters
