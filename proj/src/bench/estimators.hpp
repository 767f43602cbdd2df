// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "core/rng.hpp"
#include "filters/particle.hpp"
#include "models/model.hpp"
#include "o2/o2.hpp"

namespace o2b::bench {

/// What an estimator is built from. `gaussian_model` is the model handed to
/// the Kalman family (and to EKPF/UKPF proposals); `particle_model` is the
/// one particle filters sample and weight with.
struct EstimatorSetup {
  models::ModelPtr model;
  models::ModelPtr gaussian_model;
  models::ModelPtr particle_model;
  int particles = 100;
  int debias_samples = 100;
};

/// A sequential single-target estimator run over one trajectory.
class Estimator {
 public:
  virtual ~Estimator() = default;
  virtual std::string_view name() const = 0;
  /// Estimate of x_t from y_t (and, for filters, the past). `truth` is read
  /// only by the oracle-sign variants.
  virtual Vec step(const Vec& y, int t, const Vec& truth) = 0;

  int degeneracy_events() const { return degeneracy_events_; }
  int failures() const { return failures_; }

 protected:
  int degeneracy_events_ = 0;
  int failures_ = 0;
};

/// Names: kf, ekf, ukf, sir, apf, gpf, ekpf, ukpf, o2, o2-pf-sign,
/// o2-true-sign, o2-unbiased.
std::unique_ptr<Estimator> make_estimator(std::string_view name, const EstimatorSetup& setup, RngStream rng);

bool is_known_estimator(std::string_view name);
const std::vector<std::string>& known_estimators();

}  // namespace o2b::bench
