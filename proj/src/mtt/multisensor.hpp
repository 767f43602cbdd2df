// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "mtt/cluster.hpp"
#include "mtt/extract.hpp"
#include "mtt/ospa.hpp"
#include "mtt/phd.hpp"
#include "mtt/scenario.hpp"

namespace o2b::mtt {

/// Fuses per-filter estimate sets: estimates are chained greedily by nearest
/// neighbour within `gate_sigmas` mapped noise deviations (one per filter per
/// group), then only the best-supported round(mean count) groups are kept.
std::vector<Point> t2t_fuse(const std::vector<std::vector<Point>>& per_filter, const SensorModel& sensor,
                            double gate_sigmas = 3.0);

enum class ScenarioKind { ct, ghost };
enum class Fusion { none, t2t, oft, o2 };

ScenarioKind parse_scenario(std::string_view name);
Fusion parse_fusion(std::string_view name);

/// One estimator of a tracking experiment.
struct TrackerSpec {
  std::string name;
  Fusion fusion = Fusion::none;  // none: a single-sensor PHD filter
  ExtractorKind extractor = ExtractorKind::meap;
};

struct MttConfig {
  ScenarioKind scenario = ScenarioKind::ct;
  int sensors = 1;
  double clutter = 10.0;
  int steps = 100;
  CtScenarioConfig ct;
  GhostScenarioConfig ghost;
  RangeBearingParams range_bearing;
  DirectPositionParams direct;
  PhdParams phd;
  ClusterParams cluster;
  OspaParams ospa;
};

struct StepResult {
  double ospa = 0.0;
  int card_true = 0;
  int card_est = 0;
  double wall_ms = 0.0;
};

struct MttRunResult {
  std::vector<std::vector<StepResult>> per_tracker;  // [tracker][t-1]
  int degeneracy_events = 0;
};

/// Simulates one Monte-Carlo run and scores every tracker on it. All trackers
/// see the same truth and scans; single-sensor trackers share one filter.
MttRunResult run_mtt(const MttConfig& cfg, const std::vector<TrackerSpec>& trackers, std::uint64_t seed,
                     std::uint64_t run);

std::vector<SensorPtr> make_sensors(const MttConfig& cfg, int count, double noise_divisor = 1.0);

}  // namespace o2b::mtt
