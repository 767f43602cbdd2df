// SPDX-License-Identifier: Apache-2.0
#include "models/model.hpp"

#include <algorithm>
#include <cmath>

#include "core/error.hpp"

namespace o2b::models {

Vec StateSpaceModel::sample_observation_noise(RngStream& rng) const {
  const Mat r = observation_noise_cov();
  if (r.rows() == 1) return scalar_vec(std::sqrt(std::max(r(0, 0), 0.0)) * rng.normal());
  return gaussian_sample({Vec::Zero(r.rows()), r}, rng);
}

double StateSpaceModel::observation_loglik(const Vec& y, const Vec& x, int t) const {
  const Vec predicted = observe(x, t);
  const Mat r = observation_noise_cov();
  if (r.rows() == 1) return normal_logpdf(y(0), predicted(0), r(0, 0));
  return mvn_logpdf(y, predicted, r);
}

Trajectory simulate(const StateSpaceModel& model, int steps, RngStream& rng, const Vec* first_state) {
  if (steps < 1) fail(ErrorKind::invalid_input, "simulate needs at least one step");
  Trajectory out;
  out.states.reserve(static_cast<std::size_t>(steps));
  out.observations.reserve(static_cast<std::size_t>(steps));
  Vec x = first_state ? *first_state : gaussian_sample(model.initial_condition().truth, rng);
  for (int t = 1; t <= steps; ++t) {
    if (t > 1) x = model.sample_transition(x, t, rng);
    out.states.push_back(x);
    out.observations.push_back(model.sample_observation(x, t, rng));
  }
  return out;
}

}  // namespace o2b::models
