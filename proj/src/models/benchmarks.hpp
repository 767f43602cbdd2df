// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>

#include <json.hpp>

#include "models/model.hpp"

namespace o2b::models {

enum class ProcessNoiseKind { gamma, gaussian, none };

/// Scalar growth model with a Gamma process noise and an observation that
/// switches from quadratic to linear after `switch_time`.
struct ModelAParams {
  double omega = 0.04;
  double phi1 = 0.5;
  double phi2 = 0.2;
  double phi3 = 0.5;
  ProcessNoiseKind process = ProcessNoiseKind::gamma;
  GammaSpec gamma{3.0, 2.0};
  double gaussian_var = 0.75;  // zero-mean substitute used by Gaussian filters
  double R = 1e-5;
  int switch_time = 30;
  double x1 = 1.0;
  double prior_var = 0.75;
};

class ModelA final : public StateSpaceModel {
 public:
  explicit ModelA(ModelAParams params = {});
  const ModelAParams& params() const { return p_; }

  /// Same model, but with the process noise replaced by N(0, gaussian_var).
  ModelA with_gaussian_substitute() const;

  std::string_view name() const override { return "A"; }
  int state_dim() const override { return 1; }
  int obs_dim() const override { return 1; }
  Vec transition(const Vec& prev, int t) const override;
  Vec sample_transition(const Vec& prev, int t, RngStream& rng) const override;
  double transition_logpdf(const Vec& next, const Vec& prev, int t) const override;
  Mat transition_jacobian(const Vec& prev, int t) const override;
  Vec process_noise_mean() const override;
  Mat process_noise_cov() const override;
  Vec observe(const Vec& x, int t) const override;
  Mat observation_jacobian(const Vec& x, int t) const override;
  Mat observation_noise_cov() const override { return scalar_mat(p_.R); }
  Inversion invert_observation(const Vec& y, int t) const override;
  InitialCondition initial_condition() const override;

 private:
  ModelAParams p_;
};

/// Linear-Gaussian variant of model A: y = gain * x + offset + v.
struct ModelBParams {
  double omega = 0.04;
  double phi1 = 0.5;
  double process_var = 0.75;
  double gain = 0.5;
  double offset = -2.0;
  double R = 1.0;
  double x1 = 1.0;
  double prior_var = 0.75;
};

class ModelB final : public StateSpaceModel {
 public:
  explicit ModelB(ModelBParams params = {});
  const ModelBParams& params() const { return p_; }

  std::string_view name() const override { return "B"; }
  int state_dim() const override { return 1; }
  int obs_dim() const override { return 1; }
  Vec transition(const Vec& prev, int t) const override;
  Vec sample_transition(const Vec& prev, int t, RngStream& rng) const override;
  double transition_logpdf(const Vec& next, const Vec& prev, int t) const override;
  Mat transition_jacobian(const Vec& prev, int t) const override;
  Vec process_noise_mean() const override { return scalar_vec(0.0); }
  Mat process_noise_cov() const override { return scalar_mat(p_.process_var); }
  Vec observe(const Vec& x, int t) const override;
  Mat observation_jacobian(const Vec& x, int t) const override;
  Mat observation_noise_cov() const override { return scalar_mat(p_.R); }
  Inversion invert_observation(const Vec& y, int t) const override;
  InitialCondition initial_condition() const override;
  std::optional<LinearGaussianSystem> linear_system(int t) const override;

 private:
  ModelBParams p_;
};

/// Univariate nonlinear growth model (UNGM).
struct UngmParams {
  double Q = 10.0;
  double R = 1.0;
  /// Variance of the first state; negative means "use Q".
  double initial_var = -1.0;
};

class UngmModel final : public StateSpaceModel {
 public:
  explicit UngmModel(UngmParams params = {});
  const UngmParams& params() const { return p_; }

  std::string_view name() const override { return "ungm"; }
  int state_dim() const override { return 1; }
  int obs_dim() const override { return 1; }
  Vec transition(const Vec& prev, int t) const override;
  Vec sample_transition(const Vec& prev, int t, RngStream& rng) const override;
  double transition_logpdf(const Vec& next, const Vec& prev, int t) const override;
  Mat transition_jacobian(const Vec& prev, int t) const override;
  Vec process_noise_mean() const override { return scalar_vec(0.0); }
  Mat process_noise_cov() const override { return scalar_mat(p_.Q); }
  Vec observe(const Vec& x, int t) const override;
  Mat observation_jacobian(const Vec& x, int t) const override;
  Mat observation_noise_cov() const override { return scalar_mat(p_.R); }
  Inversion invert_observation(const Vec& y, int t) const override;
  InitialCondition initial_condition() const override;

 private:
  UngmParams p_;
};

/// Planar position observed directly with additive noise. The motion is
/// unknown to every estimator; a Gaussian random walk stands in for it.
struct GhostObsParams {
  double noise_var = 25.0;
  double half_width = 100.0;
  double walk_var = 100.0;
};

class GhostObsModel final : public StateSpaceModel {
 public:
  explicit GhostObsModel(GhostObsParams params = {});
  const GhostObsParams& params() const { return p_; }

  std::string_view name() const override { return "ghost-obs"; }
  int state_dim() const override { return 2; }
  int obs_dim() const override { return 2; }
  Vec transition(const Vec& prev, int t) const override;
  Vec sample_transition(const Vec& prev, int t, RngStream& rng) const override;
  double transition_logpdf(const Vec& next, const Vec& prev, int t) const override;
  Mat transition_jacobian(const Vec& prev, int t) const override;
  Vec process_noise_mean() const override { return Vec::Zero(2); }
  Mat process_noise_cov() const override { return Mat::Identity(2, 2) * p_.walk_var; }
  Vec observe(const Vec& x, int t) const override;
  Mat observation_jacobian(const Vec& x, int t) const override;
  Mat observation_noise_cov() const override { return Mat::Identity(2, 2) * p_.noise_var; }
  Inversion invert_observation(const Vec& y, int t) const override;
  InitialCondition initial_condition() const override;

 private:
  GhostObsParams p_;
};

/// Builds a model by its config name ("A", "B", "ungm", "ghost-obs").
/// `overrides` is a JSON object whose keys match the parameter field names.
ModelPtr make_model(std::string_view name, const nlohmann::json& overrides = nlohmann::json::object());

}  // namespace o2b::models
