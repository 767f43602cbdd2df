// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "core/rng.hpp"
#include "mtt/ct_model.hpp"
#include "mtt/sensor.hpp"
#include "mtt/types.hpp"

namespace o2b::mtt {

struct TargetTruth {
  int id = 0;
  CtState state;
};

/// Live targets per step, indexed by t-1.
struct Truth {
  std::vector<std::vector<TargetTruth>> steps;

  std::vector<Point> positions(int t) const;
};

struct BirthComponent {
  CtState mean;
  double rate = 0.0;
};

/// Poisson birth intensity: a sum of Gaussians with diagonal spread `std`.
struct BirthModel {
  std::vector<BirthComponent> components;
  CtState std;
  double survival = 0.99;

  static BirthModel standard();
  double total_rate() const;
};

struct CtScenarioConfig {
  int steps = 100;
  CtParams motion;
  BirthModel birth = BirthModel::standard();
  /// Targets present at t = 1 in addition to births.
  std::vector<CtState> initial_targets;
  /// Targets that leave the sensor region die.
  bool kill_outside = true;
};

Truth generate_ct_truth(const CtScenarioConfig& cfg, const SensorModel& region, RngStream& rng);

/// Ghost targets over a square view with a mix of motion types.
struct GhostScenarioConfig {
  int steps = 100;
  int targets = 10;
  double half_width = 100.0;
  int first_birth_max = 60;  // birth step drawn from [1, first_birth_max]
  int min_life = 30;
  int max_life = 100;
  double max_speed = 2.0;    // per step
};

Truth generate_ghost_truth(const GhostScenarioConfig& cfg, RngStream& rng);

/// One scan per sensor for the targets alive at t: detections (drawn with the
/// sensor's p_D) plus Poisson clutter, shuffled so order carries no label.
ScanData generate_scan(const std::vector<TargetTruth>& alive, int t, const std::vector<SensorPtr>& sensors,
                       RngStream& rng);

std::vector<ScanData> generate_scans(const Truth& truth, const std::vector<SensorPtr>& sensors, RngStream& rng);

}  // namespace o2b::mtt
