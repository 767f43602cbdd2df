// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "bench/experiment.hpp"

namespace o2b::bench {

/// Filter experiments: experiment,estimator,param,step,rmse.
/// PoFB experiments: r,p,m,pofb,stderr.
/// Tracking experiments: tracker,param,run,step,ospa,card_true,card_est,wall_ms.
void write_csv(std::ostream& os, const ExperimentReport& report);

/// Single-tracker per-run rows: run,step,ospa,card_true,card_est,wall_ms.
void write_mtt_csv(std::ostream& os, const ExperimentReport& report, std::size_t tracker = 0, std::size_t param = 0);

nlohmann::json summary_json(const ExperimentReport& report);

const std::vector<std::string>& figure_ids();

/// Default config whose report feeds `figure_id`.
ExperimentConfig figure_config(const std::string& figure_id);

/// Long-format x,series,value rows for one figure. Throws a config error when
/// the report was not produced by the experiment the figure needs.
void write_plotdata(std::ostream& os, const ExperimentReport& report, const std::string& figure_id);

}  // namespace o2b::bench
