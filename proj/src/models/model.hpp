// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "core/linalg.hpp"
#include "core/rng.hpp"
#include "core/stats.hpp"

namespace o2b::models {

/// Candidate states that reproduce an observation under the noiseless
/// observation function. `clamped` is set when the observation was outside
/// the image of h and had to be projected onto it (e.g. a negative radicand).
struct Inversion {
  std::vector<Vec> candidates;
  bool clamped = false;
};

/// x_{t+1} = F x_t + b_t + w, y_t = H x_t + d + v with Gaussian w, v.
struct LinearGaussianSystem {
  Mat transition;
  Vec transition_offset;
  Mat process_cov;
  Mat observation;
  Vec observation_offset;
  Mat observation_cov;
};

/// How the true first state is drawn and what prior the estimators start from.
struct InitialCondition {
  GaussianBelief truth;   // zero covariance means a fixed starting state
  GaussianBelief prior;   // what every filter is initialised with
};

/// One benchmark state-space model with additive observation noise.
/// Immutable once constructed.
class StateSpaceModel {
 public:
  virtual ~StateSpaceModel() = default;

  virtual std::string_view name() const = 0;
  virtual int state_dim() const = 0;
  virtual int obs_dim() const = 0;

  /// Noiseless transition f_t(x_{t-1}, 0).
  virtual Vec transition(const Vec& prev, int t) const = 0;
  virtual Vec sample_transition(const Vec& prev, int t, RngStream& rng) const = 0;
  virtual double transition_logpdf(const Vec& next, const Vec& prev, int t) const = 0;
  virtual Mat transition_jacobian(const Vec& prev, int t) const = 0;
  /// First two moments of the additive process noise.
  virtual Vec process_noise_mean() const = 0;
  virtual Mat process_noise_cov() const = 0;

  /// Noiseless observation h_t(x, 0).
  virtual Vec observe(const Vec& x, int t) const = 0;
  virtual Mat observation_jacobian(const Vec& x, int t) const = 0;
  virtual Mat observation_noise_cov() const = 0;
  virtual Vec sample_observation_noise(RngStream& rng) const;
  virtual double observation_loglik(const Vec& y, const Vec& x, int t) const;
  Vec sample_observation(const Vec& x, int t, RngStream& rng) const {
    return observe(x, t) + sample_observation_noise(rng);
  }

  virtual Inversion invert_observation(const Vec& y, int t) const = 0;

  virtual InitialCondition initial_condition() const = 0;

  /// Set for models whose transition and observation are affine with
  /// Gaussian noise; such models can be handed to the plain Kalman filter.
  virtual std::optional<LinearGaussianSystem> linear_system(int /*t*/) const { return std::nullopt; }
};

using ModelPtr = std::shared_ptr<const StateSpaceModel>;

/// Simulated truth and observations, indexed by t-1.
struct Trajectory {
  std::vector<Vec> states;
  std::vector<Vec> observations;
};

/// Draws x_1 from the model's initial condition (or uses `first_state` when
/// given), then runs the stochastic recursion for T steps.
Trajectory simulate(const StateSpaceModel& model, int steps, RngStream& rng, const Vec* first_state = nullptr);

}  // namespace o2b::models
