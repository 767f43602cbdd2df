// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "core/rng.hpp"
#include "mtt/ct_model.hpp"
#include "mtt/scenario.hpp"
#include "mtt/sensor.hpp"

namespace o2b::mtt {

struct PhdParams {
  CtParams motion;
  BirthModel birth = BirthModel::standard();
  int birth_particles_per_component = 250;
  int particles_per_target = 1000;
  int min_particles = 600;
  /// Observations whose share of target mass exceeds this are taken as target-originated.
  double identify_threshold = 0.5;
  double mass_floor = 1e-6;
};

/// What one update saw; the extractors work from this.
struct PhdUpdate {
  std::vector<CtState> particles;        // predicted particles (survivors then births)
  std::vector<double> predicted_weights; // their predicted intensity weights
  std::vector<double> likelihood;        // g(z_k | x_j), row-major [k][j]
  std::vector<double> observation_mass;  // per observation: detected-target share
  double mass = 0.0;                     // expected target count after the update
  bool degenerate = false;

  std::size_t count() const { return particles.size(); }
  double g(std::size_t k, std::size_t j) const { return likelihood[k * particles.size() + j]; }
};

/// Bootstrap sequential Monte-Carlo PHD filter.
class SmcPhdFilter {
 public:
  SmcPhdFilter(SensorPtr sensor, PhdParams params, RngStream rng);

  /// Predict, update against `scan`, then resample. Returns the update record.
  const PhdUpdate& step(const SensorScan& scan);

  const std::vector<CtState>& particles() const { return particles_; }
  const std::vector<double>& weights() const { return weights_; }
  double mass() const;
  int estimated_count() const;
  int degeneracy_events() const { return degeneracy_events_; }
  const PhdUpdate& last_update() const { return update_; }
  const SensorModel& sensor() const { return *sensor_; }

 private:
  SensorPtr sensor_;
  PhdParams p_;
  RngStream rng_;
  std::vector<CtState> particles_;
  std::vector<double> weights_;
  PhdUpdate update_;
  int degeneracy_events_ = 0;
};

}  // namespace o2b::mtt
