// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <optional>
#include <string_view>
#include <vector>

#include "core/rng.hpp"
#include "core/stats.hpp"
#include "models/model.hpp"

namespace o2b::o2 {

/// How the sign ambiguity of a multi-candidate inverse is resolved.
enum class SignStrategy {
  transition_prediction,  // nearest to f_t(previous estimate)
  filter_assisted,        // nearest to an attached filter's estimate
  oracle,                 // nearest to the true state
  none,                   // state known to be non-negative: largest candidate
};

SignStrategy parse_sign_strategy(std::string_view name);

/// Whatever the chosen strategy needs; unused fields may stay empty.
struct SignContext {
  std::optional<Vec> previous_estimate;
  std::optional<Vec> filter_estimate;
  std::optional<Vec> true_state;
};

/// The point the candidates are compared with, if the strategy has one.
std::optional<Vec> sign_reference(const models::StateSpaceModel& model, int t, SignStrategy strategy,
                                  const SignContext& ctx);

/// Nearest candidate to `reference`, or the largest first coordinate when there is none.
Vec select_candidate(const std::vector<Vec>& candidates, const std::optional<Vec>& reference);

struct O2Result {
  Vec estimate;
  bool failed = false;   // nothing usable; the caller keeps its previous estimate
  bool clamped = false;  // the observation had to be projected into the image of h
  int valid_samples = 0; // debiasing only
};

O2Result o2_estimate(const models::StateSpaceModel& model, const Vec& y, int t, SignStrategy strategy,
                     const SignContext& ctx);

struct DebiasSpec {
  int samples = 100;
};

/// Monte-Carlo debiased inverse: the mean of h^-1(y - v_i) over I noise draws.
/// Draws whose inverse had to be clamped are discarded.
O2Result o2_debias(const models::StateSpaceModel& model, const Vec& y, int t, const DebiasSpec& spec,
                   SignStrategy strategy, const SignContext& ctx, RngStream& rng);

/// Inverse-covariance fusion of independent estimates.
GaussianBelief o2_multisensor_fuse(const std::vector<GaussianBelief>& estimates);

/// One observation equation of a sensor suite. `noise_cov` may be left empty
/// when the noise is unknown, in which case residuals are unweighted.
struct SuiteSensor {
  std::function<Vec(const Vec&)> observe;
  std::function<Mat(const Vec&)> jacobian;  // optional; forward differences otherwise
  Mat noise_cov;
};

struct SolveResult {
  Vec estimate;
  int iterations = 0;
  bool converged = false;
};

/// Least-squares solution of the noiseless system y_i = h_i(x) by damped Gauss-Newton.
SolveResult o2_solve_system(const std::vector<SuiteSensor>& suite, const std::vector<Vec>& observations,
                            const Vec& initial_guess);

/// Fisher information of (mean, variance) for a Gaussian with variance `sigma2`.
Mat fisher_information(double sigma2);
/// Its inverse: the Cramer-Rao bound on (mean, variance).
Mat fisher_crb(double sigma2);

}  // namespace o2b::o2
