// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include <json.hpp>

#include "mtt/multisensor.hpp"
#include "pofb/pofb.hpp"

namespace o2b::bench {

/// One experiment as read from a JSON file and CLI flags. Zero `runs` or
/// `steps` and an empty estimator list mean "use the experiment default".
///
/// JSON schema (all keys optional except "experiment"):
///   experiment   string   model-a | model-a-noise-sweep | model-b-sweep | ungm |
///                         ungm-noise-sweep | ungm-particle-sweep | pofb-x | pofb-y |
///                         pofb-min | mtt-ct | mtt-multisensor | ghost
///   estimators   [string]
///   runs, steps  integer
///   seed         integer
///   threads      integer (0 = all cores)
///   paper_scale  bool
///   model        object   model parameter overrides, e.g. {"R": 0.01}
///   params       object   experiment parameters (see README)
///   output       string   CSV path
struct ExperimentConfig {
  std::string experiment;
  std::vector<std::string> estimators;
  int runs = 0;
  int steps = 0;
  std::uint64_t seed = 1;
  unsigned threads = 0;
  bool paper_scale = false;
  nlohmann::json model = nlohmann::json::object();
  nlohmann::json params = nlohmann::json::object();
  std::string output;
};

ExperimentConfig config_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const ExperimentConfig& c);

const std::vector<std::string>& known_experiments();

/// Fills every default and validates names; the result has runs, steps,
/// estimators and params fully populated.
ExperimentConfig resolve(const ExperimentConfig& c);

/// One estimator at one sweep value.
struct SeriesSummary {
  std::string estimator;
  double param = std::numeric_limits<double>::quiet_NaN();
  std::vector<double> series;     // per-step RMSE or mean OSPA
  std::vector<double> run_means;  // per-run time average of |error| or OSPA
  double mean = 0.0;              // mean of `series`
  double variance = 0.0;          // sample variance of `run_means`
  std::vector<double> card_true;  // tracking only: per-step mean cardinalities
  std::vector<double> card_est;
  double card_mae = 0.0;
  double wall_ms = 0.0;           // mean over runs of the per-run total
  int degeneracy_events = 0;
  int failures = 0;
};

struct MttRow {
  std::size_t tracker = 0;
  std::size_t param = 0;
  int run = 0;
  int step = 0;
  mtt::StepResult result;
};

struct ExperimentReport {
  ExperimentConfig config;  // resolved
  std::string kind;         // "filter" | "pofb" | "mtt"
  std::string metric;       // "rmse" | "rmse-abs" | "pofb" | "ospa"
  std::string param_name;   // sweep parameter, empty when none
  std::vector<double> param_values;
  std::vector<SeriesSummary> series;
  std::vector<pofb::SweepCell> pofb_cells;
  std::vector<std::string> trackers;
  std::vector<MttRow> mtt_rows;
  double wall_ms = 0.0;

  const SeriesSummary* find(const std::string& estimator, std::size_t param_index = 0) const;
};

ExperimentReport run_experiment(const ExperimentConfig& config);

/// Builds the tracking configuration an "mtt-ct", "mtt-multisensor" or
/// "ghost" experiment uses for one sweep value.
mtt::MttConfig tracking_config(const ExperimentConfig& resolved, double param_value);
mtt::TrackerSpec tracker_spec(const std::string& name);

}  // namespace o2b::bench
