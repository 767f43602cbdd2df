// SPDX-License-Identifier: Apache-2.0
#include "mtt/phd.hpp"

#include <algorithm>
#include <cmath>

#include "core/error.hpp"
#include "filters/particle.hpp"

namespace o2b::mtt {

SmcPhdFilter::SmcPhdFilter(SensorPtr sensor, PhdParams params, RngStream rng)
    : sensor_(std::move(sensor)), p_(std::move(params)), rng_(rng) {
  if (!sensor_) fail(ErrorKind::invalid_input, "PHD filter needs a sensor");
  if (p_.birth_particles_per_component < 1 || p_.particles_per_target < 1 || p_.min_particles < 1)
    fail(ErrorKind::invalid_input, "PHD particle counts must be positive");
}

double SmcPhdFilter::mass() const {
  double s = 0.0;
  for (double w : weights_) s += w;
  return s;
}

int SmcPhdFilter::estimated_count() const { return static_cast<int>(std::lround(mass())); }

const PhdUpdate& SmcPhdFilter::step(const SensorScan& scan) {
  PhdUpdate& u = update_;
  u.particles.clear();
  u.predicted_weights.clear();

  // Prediction: survivors, then births.
  const std::size_t nb = static_cast<std::size_t>(p_.birth_particles_per_component) * p_.birth.components.size();
  u.particles.reserve(particles_.size() + nb);
  u.predicted_weights.reserve(particles_.size() + nb);
  for (std::size_t j = 0; j < particles_.size(); ++j) {
    u.particles.push_back(ct_transition(particles_[j], p_.motion, rng_));
    u.predicted_weights.push_back(p_.birth.survival * weights_[j]);
  }
  for (const auto& comp : p_.birth.components) {
    const double w = comp.rate / p_.birth_particles_per_component;
    for (int k = 0; k < p_.birth_particles_per_component; ++k) {
      CtState x = comp.mean;
      for (int d = 0; d < 5; ++d) x(d) += p_.birth.std(d) * rng_.normal();
      u.particles.push_back(x);
      u.predicted_weights.push_back(w);
    }
  }

  // Update.
  const std::size_t np = u.particles.size(), nz = scan.size();
  std::vector<double> pd(np);
  for (std::size_t j = 0; j < np; ++j) pd[j] = sensor_->detection_probability(position(u.particles[j]));
  u.likelihood.assign(nz * np, 0.0);
  u.observation_mass.assign(nz, 0.0);
  std::vector<double> factor(np);
  for (std::size_t j = 0; j < np; ++j) factor[j] = 1.0 - pd[j];
  const double kappa = sensor_->clutter_intensity();
  for (std::size_t k = 0; k < nz; ++k) {
    double* row = &u.likelihood[k * np];
    double denom = kappa;
    for (std::size_t j = 0; j < np; ++j) {
      row[j] = std::exp(sensor_->log_likelihood(scan[k], position(u.particles[j])));
      denom += pd[j] * row[j] * u.predicted_weights[j];
    }
    if (!(denom > 0.0)) continue;
    double share = 0.0;
    for (std::size_t j = 0; j < np; ++j) {
      const double c = pd[j] * row[j] / denom;
      factor[j] += c;
      share += c * u.predicted_weights[j];
    }
    u.observation_mass[k] = share;
  }
  std::vector<double> post(np);
  double mass = 0.0;
  for (std::size_t j = 0; j < np; ++j) {
    post[j] = factor[j] * u.predicted_weights[j];
    mass += post[j];
  }
  u.degenerate = !(mass >= p_.mass_floor) || !std::isfinite(mass);
  if (u.degenerate) {
    ++degeneracy_events_;
    std::fill(post.begin(), post.end(), 1.0);
    mass = p_.mass_floor;
  }
  u.mass = mass;

  // Resample to a count proportional to the expected number of targets.
  const std::size_t target = static_cast<std::size_t>(
      std::max<double>(p_.min_particles, std::round(p_.particles_per_target * mass)));
  const auto idx = filters::systematic_indices(post, target, rng_);
  particles_.resize(target);
  for (std::size_t i = 0; i < target; ++i) particles_[i] = u.particles[idx[i]];
  weights_.assign(target, mass / static_cast<double>(target));
  return u;
}

}  // namespace o2b::mtt
