// SPDX-License-Identifier: Apache-2.0
#include "bench/report.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "core/error.hpp"
#include "core/format.hpp"
#include "core/stats.hpp"

namespace o2b::bench {

using nlohmann::json;

namespace {

std::string param_text(double v) { return std::isnan(v) ? "" : fmt_num(v); }

json num(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

}  // namespace

void write_csv(std::ostream& os, const ExperimentReport& rep) {
  if (rep.kind == "pofb") {
    pofb::write_csv(os, rep.pofb_cells);
    return;
  }
  if (rep.kind == "mtt") {
    os << "tracker,param,run,step,ospa,card_true,card_est,wall_ms\n";
    for (const auto& r : rep.mtt_rows) {
      os << rep.trackers[r.tracker] << ','
         << (rep.param_values.empty() ? "" : fmt_num(rep.param_values[r.param])) << ',' << r.run << ',' << r.step
         << ',' << fmt_num(r.result.ospa) << ',' << r.result.card_true << ',' << r.result.card_est << ','
         << fmt_num(r.result.wall_ms) << '\n';
    }
    return;
  }
  os << "experiment,estimator,param,step,rmse\n";
  for (const auto& s : rep.series)
    for (std::size_t t = 0; t < s.series.size(); ++t)
      os << rep.config.experiment << ',' << s.estimator << ',' << param_text(s.param) << ',' << t + 1 << ','
         << fmt_num(s.series[t]) << '\n';
}

void write_mtt_csv(std::ostream& os, const ExperimentReport& rep, std::size_t tracker, std::size_t param) {
  if (rep.kind != "mtt") fail(ErrorKind::config, "not a tracking report");
  os << "run,step,ospa,card_true,card_est,wall_ms\n";
  for (const auto& r : rep.mtt_rows) {
    if (r.tracker != tracker || r.param != param) continue;
    os << r.run << ',' << r.step << ',' << fmt_num(r.result.ospa) << ',' << r.result.card_true << ','
       << r.result.card_est << ',' << fmt_num(r.result.wall_ms) << '\n';
  }
}

json summary_json(const ExperimentReport& rep) {
  json j;
  j["experiment"] = rep.config.experiment;
  j["config"] = config_to_json(rep.config);
  j["seed"] = rep.config.seed;
  j["metric"] = rep.metric;
  j["runs"] = rep.config.runs;
  j["steps"] = rep.config.steps;
  j["param_name"] = rep.param_name;
  j["param_values"] = rep.param_values;
  j["wall_ms"] = rep.wall_ms;
  j["variance_definition"] = "sample variance over runs of each run's time-averaged error";
  j["series_variance_definition"] = "sample variance over time steps of the per-step series";
  json series = json::array();
  for (const auto& s : rep.series) {
    json e{{"estimator", s.estimator},
           {"param", num(s.param)},
           {"mean", num(s.mean)},
           {"variance", num(s.variance)},
           {"series_variance", num(sample_variance(s.series))},
           {"wall_ms_per_run", s.wall_ms},
           {"degeneracy_events", s.degeneracy_events},
           {"failures", s.failures}};
    if (rep.kind == "mtt") {
      e["card_mae"] = s.card_mae;
      e["mean_card_true"] = mean_of(s.card_true);
      e["mean_card_est"] = mean_of(s.card_est);
    }
    series.push_back(std::move(e));
  }
  j["estimators"] = std::move(series);
  if (rep.kind == "pofb") {
    double lo = 1.0, hi = 0.0;
    for (const auto& c : rep.pofb_cells) {
      lo = std::min(lo, c.value.pofb);
      hi = std::max(hi, c.value.pofb);
    }
    j["cells"] = rep.pofb_cells.size();
    j["pofb_min"] = lo;
    j["pofb_max"] = hi;
  }
  return j;
}

namespace {

struct FigureSpec {
  std::vector<std::string> experiments;
  std::string x;  // "step" | "param" | "r"
  std::string value;  // "metric" | "wall_ms" | "card_est" | "pofb"
};

const std::map<std::string, FigureSpec>& figure_table() {
  static const std::map<std::string, FigureSpec> t{
      {"fig2", {{"model-a"}, "step", "metric"}},
      {"fig5", {{"pofb-x"}, "r", "pofb"}},
      {"fig6", {{"pofb-y"}, "r", "pofb"}},
      {"fig8", {{"pofb-min"}, "r", "pofb"}},
      {"fig9", {{"pofb-x"}, "r", "pofb"}},
      {"fig10", {{"pofb-x"}, "r", "pofb"}},
      {"fig11", {{"pofb-x"}, "r", "pofb"}},
      {"fig12", {{"model-b-sweep"}, "param", "metric"}},
      {"fig15", {{"ungm-particle-sweep"}, "param", "metric"}},
      {"fig16", {{"ungm-particle-sweep"}, "param", "wall_ms"}},
      {"fig17", {{"ungm-noise-sweep"}, "param", "metric"}},
      {"fig18", {{"model-a-noise-sweep"}, "param", "metric"}},
      {"fig21", {{"mtt-ct"}, "step", "metric"}},
      {"fig22", {{"mtt-ct"}, "param", "metric"}},
      {"fig25", {{"mtt-multisensor"}, "step", "card_est"}},
      {"fig26", {{"mtt-multisensor"}, "step", "metric"}},
      {"fig27", {{"mtt-multisensor"}, "param", "metric"}},
      {"fig31", {{"ghost"}, "step", "card_est"}},
      {"fig32", {{"ghost"}, "step", "metric"}},
  };
  return t;
}

void check_pofb_figure(const ExperimentReport& rep, const std::string& id) {
  const std::string rule = rep.config.params.value("rule", "kf");
  std::size_t m_count = 0;
  {
    std::vector<double> ms;
    for (const auto& c : rep.pofb_cells)
      if (std::find(ms.begin(), ms.end(), c.m) == ms.end()) ms.push_back(c.m);
    m_count = ms.size();
  }
  const bool wants_particle = id == "fig10" || id == "fig11";
  const bool wants_m_grid = id == "fig8" || id == "fig9" || id == "fig11";
  if ((rule == "particle") != wants_particle)
    fail(ErrorKind::config, id + " needs the " + (wants_particle ? "particle" : "kf") + " fusion rule");
  if (wants_m_grid ? m_count < 2 : m_count != 1)
    fail(ErrorKind::config, id + (wants_m_grid ? " needs several true-state offsets m" : " needs a single m"));
}

}  // namespace

const std::vector<std::string>& figure_ids() {
  static const std::vector<std::string> ids = [] {
    std::vector<std::string> v;
    for (const auto& [k, s] : figure_table()) v.push_back(k);
    std::sort(v.begin(), v.end(), [](const std::string& a, const std::string& b) {
      return std::stoi(a.substr(3)) < std::stoi(b.substr(3));
    });
    return v;
  }();
  return ids;
}

void write_plotdata(std::ostream& os, const ExperimentReport& rep, const std::string& id) {
  const auto it = figure_table().find(id);
  if (it == figure_table().end()) fail(ErrorKind::config, "unknown figure id '" + id + "'");
  const FigureSpec& f = it->second;
  if (std::find(f.experiments.begin(), f.experiments.end(), rep.config.experiment) == f.experiments.end())
    fail(ErrorKind::config, id + " needs a " + f.experiments.front() + " report, got " + rep.config.experiment);

  os << "x,series,value\n";
  if (f.value == "pofb") {
    check_pofb_figure(rep, id);
    const bool m_grid = id == "fig8" || id == "fig9" || id == "fig11";
    for (const auto& c : rep.pofb_cells) {
      const std::string series = (m_grid ? "m=" + fmt_num(c.m) + ";" : std::string()) + "p=" + fmt_num(c.p);
      os << fmt_num(c.r) << ',' << series << ',' << fmt_num(c.value.pofb) << '\n';
    }
    return;
  }
  if (f.x == "param") {
    if (rep.param_values.size() < 2) fail(ErrorKind::config, id + " needs a sweep over at least two values");
    for (const auto& s : rep.series)
      os << fmt_num(s.param) << ',' << s.estimator << ',' << fmt_num(f.value == "wall_ms" ? s.wall_ms : s.mean)
         << '\n';
    return;
  }
  // Per-step figures use the first sweep value.
  for (const auto& s : rep.series) {
    if (!rep.param_values.empty() && s.param != rep.param_values.front()) continue;
    if (f.value == "card_est" && s.estimator == rep.series.front().estimator)
      for (std::size_t t = 0; t < s.card_true.size(); ++t)
        os << t + 1 << ",truth," << fmt_num(s.card_true[t]) << '\n';
    const auto& v = f.value == "card_est" ? s.card_est : s.series;
    for (std::size_t t = 0; t < v.size(); ++t) os << t + 1 << ',' << s.estimator << ',' << fmt_num(v[t]) << '\n';
  }
}

ExperimentConfig figure_config(const std::string& id) {
  const auto it = figure_table().find(id);
  if (it == figure_table().end()) fail(ErrorKind::config, "unknown figure id '" + id + "'");
  ExperimentConfig c;
  c.experiment = it->second.experiments.front();
  if (id == "fig9" || id == "fig11") c.params["m"] = pofb::SweepGrid::standard().m;
  if (id == "fig10" || id == "fig11") c.params["rule"] = "particle";
  if (id == "fig22") c.params["sweep"] = {0.0, 5.0, 10.0, 15.0, 20.0, 25.0, 30.0};
  if (id == "fig27") {
    c.params["sweep"] = {2, 5, 10, 15, 20};
    c.estimators = {"phd-oft", "o2"};
  }
  return c;
}

}  // namespace o2b::bench
