// SPDX-License-Identifier: Apache-2.0
#include "bench/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <numbers>
#include <optional>
#include <set>

#include "bench/estimators.hpp"
#include "core/error.hpp"
#include "core/parallel.hpp"
#include "core/stats.hpp"
#include "models/benchmarks.hpp"

namespace o2b::bench {

using nlohmann::json;

namespace {

enum class Kind { filter, pofb, mtt };

struct Defaults {
  Kind kind;
  std::string model;  // filter experiments only
  int runs_desk;
  int runs_paper;
  int steps;
  std::vector<std::string> estimators;
  std::string sweep;  // name of the swept parameter, empty for none
  json params;
};

json log_grid(int lo, int hi) {
  json a = json::array();
  for (int e = lo; e <= hi; ++e) a.push_back(std::pow(10.0, e));
  return a;
}

const std::map<std::string, Defaults>& defaults_table() {
  static const std::map<std::string, Defaults> table = [] {
    std::map<std::string, Defaults> t;
    const json filter_params = {{"particles", 100},      {"debias_samples", 100}, {"pf_process_noise", "exact"},
                                {"rmse_mode", "signed"}, {"sweep", json::array()}};
    auto fp = [&](json extra) {
      json p = filter_params;
      for (auto& [k, v] : extra.items()) p[k] = v;
      return p;
    };
    t["model-a"] = {Kind::filter, "A", 100, 200, 60, {"ekf", "ukf", "sir", "ekpf", "ukpf", "o2"},
                    "", fp({{"particles", 200}})};
    t["model-a-noise-sweep"] = {Kind::filter, "A", 50, 100, 60,
                                {"ekf", "ukf", "sir", "ekpf", "ukpf", "o2", "o2-true-sign", "o2-unbiased"}, "R",
                                fp({{"particles", 200}, {"sweep", log_grid(-5, 2)}})};
    t["model-b-sweep"] = {Kind::filter, "B", 500, 1000, 1000, {"kf", "o2"},
                          "R", fp({{"sweep", log_grid(-5, 2)}})};
    t["ungm"] = {Kind::filter, "ungm", 50, 100, 100,
                 {"ekf", "ukf", "sir", "gpf", "apf", "o2", "o2-pf-sign", "o2-true-sign", "o2-unbiased"}, "", fp({})};
    t["ungm-noise-sweep"] = {Kind::filter, "ungm", 50, 100, 100,
                             {"ekf", "ukf", "sir", "gpf", "apf", "o2", "o2-pf-sign", "o2-true-sign", "o2-unbiased"},
                             "R", fp({{"sweep", log_grid(-5, 4)}})};
    t["ungm-particle-sweep"] = {Kind::filter, "ungm", 50, 100, 100, {"sir", "gpf", "apf", "o2-pf-sign", "o2-true-sign"},
                                "particles", fp({{"sweep", {20, 50, 100, 200, 500}}})};

    const json pofb_params = {{"rule", "kf"}, {"samples", 100000}, {"particles", 100000}, {"resample", false},
                              {"r", json::array()}, {"p", json::array()}, {"m", json::array()}};
    for (const char* id : {"pofb-x", "pofb-y", "pofb-min"}) t[id] = {Kind::pofb, "", 1, 1, 1, {}, "", pofb_params};

    const json mtt_params = {{"clutter", 10.0},
                             {"sensors", 1},
                             {"particles_per_target", 1000},
                             {"birth_particles", 250},
                             {"min_particles", 600},
                             {"cluster_scale", 1.5},
                             {"extra_groups", 1},
                             {"cluster_metric", "euclidean"},
                             {"cluster_fusion", "inverse-variance"},
                             {"sigma_r", 5.0},
                             {"sigma_theta", std::numbers::pi / 180.0},
                             {"ospa_cutoff", 100.0},
                             {"ospa_order", 2.0},
                             {"sweep", json::array()}};
    auto mp = [&](json extra) {
      json p = mtt_params;
      for (auto& [k, v] : extra.items()) p[k] = v;
      return p;
    };
    t["mtt-ct"] = {Kind::mtt, "", 50, 100, 100, {"phd-kmeans", "phd-meap", "phd-o2"},
                   "clutter", mp({{"sweep", {10.0}}})};
    t["mtt-multisensor"] = {Kind::mtt, "", 50, 100, 100, {"phd-oft", "phd-t2t", "o2"}, "sensors",
                            mp({{"sweep", {10}}, {"sensors", 10}, {"sigma_r", 20.0},
                                {"sigma_theta", std::numbers::pi / 90.0}})};
    t["ghost"] = {Kind::mtt, "", 50, 100, 100, {"o2"}, "", mp({{"sensors", 10}, {"cluster_scale", 2.0}})};
    return t;
  }();
  return table;
}

const Defaults& defaults_for(const std::string& id) {
  const auto& t = defaults_table();
  const auto it = t.find(id);
  if (it == t.end()) fail(ErrorKind::config, "unknown experiment '" + id + "'");
  return it->second;
}

std::string canonical_tracker(const std::string& name) {
  if (name == "kmeans" || name == "meap" || name == "oft" || name == "t2t") return "phd-" + name;
  if (name == "phd") return "phd-meap";
  return name;
}

// "o2", or "phd-" followed by an extractor, a fusion, or "<fusion>-<extractor>".
std::optional<mtt::TrackerSpec> parse_tracker(const std::string& name) {
  using mtt::ExtractorKind;
  using mtt::Fusion;
  const std::string n = canonical_tracker(name);
  if (n == "o2") return mtt::TrackerSpec{n, Fusion::o2, ExtractorKind::meap};
  if (!n.starts_with("phd-")) return std::nullopt;
  const std::string rest = n.substr(4);
  auto extractor = [](const std::string& e) -> std::optional<ExtractorKind> {
    if (e == "kmeans") return ExtractorKind::kmeans;
    if (e == "meap") return ExtractorKind::meap;
    if (e == "o2") return ExtractorKind::o2;
    return std::nullopt;
  };
  if (auto e = extractor(rest)) return mtt::TrackerSpec{n, Fusion::none, *e};
  for (auto [prefix, fusion] : {std::pair{"oft", Fusion::oft}, std::pair{"t2t", Fusion::t2t}}) {
    const std::string f = prefix;
    if (rest == f) return mtt::TrackerSpec{n, fusion, ExtractorKind::meap};
    if (rest.starts_with(f + "-"))
      if (auto e = extractor(rest.substr(f.size() + 1))) return mtt::TrackerSpec{n, fusion, *e};
  }
  return std::nullopt;
}

template <class T>
T get_param(const json& params, const char* key) {
  try {
    return params.at(key).get<T>();
  } catch (const json::exception&) {
    fail(ErrorKind::config, std::string("parameter '") + key + "' is missing or has the wrong type");
  }
}

std::vector<double> get_list(const json& params, const char* key) {
  const json& v = params.at(key);
  if (v.is_number()) return {v.get<double>()};
  return get_param<std::vector<double>>(params, key);
}

double elapsed_ms(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
}

void finish_summary(SeriesSummary& s) {
  s.mean = mean_of(s.series);
  s.variance = sample_variance(s.run_means);
}

// ---------------------------------------------------------------- filters

struct FilterRun {
  std::vector<double> truth;
  std::vector<std::vector<double>> estimates;  // [estimator][t-1]
  std::vector<double> wall_ms;
  std::vector<int> degeneracy;
  std::vector<int> failures;
};

EstimatorSetup filter_setup(const ExperimentConfig& c, const std::string& model_name, const std::string& sweep,
                            double value) {
  json overrides = c.model;
  int particles = get_param<int>(c.params, "particles");
  if (sweep == "R") overrides["R"] = value;
  if (sweep == "particles") particles = static_cast<int>(value);

  EstimatorSetup s;
  s.model = models::make_model(model_name, overrides);
  s.gaussian_model = s.particle_model = s.model;
  if (model_name == "A") {
    json g = overrides;
    g["process"] = "gaussian";
    s.gaussian_model = models::make_model("A", g);
    const auto pf_noise = get_param<std::string>(c.params, "pf_process_noise");
    if (pf_noise == "substitute") s.particle_model = s.gaussian_model;
    else if (pf_noise != "exact") fail(ErrorKind::config, "pf_process_noise must be 'exact' or 'substitute'");
  }
  s.particles = particles;
  s.debias_samples = get_param<int>(c.params, "debias_samples");
  return s;
}

FilterRun filter_run(const ExperimentConfig& c, const EstimatorSetup& setup, std::size_t param_index, int run) {
  RngStream truth_rng = RngStream(c.seed, stream_id(static_cast<std::uint64_t>(run), 0)).derive(param_index);
  const auto traj = models::simulate(*setup.model, c.steps, truth_rng);
  FilterRun out;
  out.truth.reserve(static_cast<std::size_t>(c.steps));
  for (const auto& x : traj.states) out.truth.push_back(x(0));
  for (const auto& name : c.estimators) {
    RngStream rng = RngStream(c.seed, stream_id(static_cast<std::uint64_t>(run), name_hash(name))).derive(param_index);
    const auto start = std::chrono::steady_clock::now();
    auto est = make_estimator(name, setup, rng);
    std::vector<double> xs;
    xs.reserve(static_cast<std::size_t>(c.steps));
    for (int t = 1; t <= c.steps; ++t) {
      const auto i = static_cast<std::size_t>(t - 1);
      xs.push_back(est->step(traj.observations[i], t, traj.states[i])(0));
    }
    out.wall_ms.push_back(elapsed_ms(start));
    out.estimates.push_back(std::move(xs));
    out.degeneracy.push_back(est->degeneracy_events());
    out.failures.push_back(est->failures());
  }
  return out;
}

void run_filters(ExperimentReport& rep, const Defaults& d) {
  const auto& c = rep.config;
  const std::size_t P = rep.param_values.empty() ? 1 : rep.param_values.size();
  const auto M = static_cast<std::size_t>(c.runs);
  const auto mode_name = get_param<std::string>(c.params, "rmse_mode");
  if (mode_name != "signed" && mode_name != "absolute")
    fail(ErrorKind::config, "rmse_mode must be 'signed' or 'absolute'");
  const RmseMode mode = mode_name == "absolute" ? RmseMode::absolute : RmseMode::signed_error;
  rep.metric = mode == RmseMode::absolute ? "rmse-abs" : "rmse";

  std::vector<EstimatorSetup> setups;
  for (std::size_t p = 0; p < P; ++p)
    setups.push_back(filter_setup(c, d.model, d.sweep, rep.param_values.empty() ? 0.0 : rep.param_values[p]));

  std::vector<FilterRun> runs(P * M);
  parallel_for(
      P * M, [&](std::size_t job) { runs[job] = filter_run(c, setups[job / M], job / M, static_cast<int>(job % M)); },
      c.threads);

  for (std::size_t p = 0; p < P; ++p) {
    RunSeries truth;
    for (std::size_t m = 0; m < M; ++m) truth.push_back(runs[p * M + m].truth);
    for (std::size_t e = 0; e < c.estimators.size(); ++e) {
      SeriesSummary s;
      s.estimator = c.estimators[e];
      if (!rep.param_values.empty()) s.param = rep.param_values[p];
      RunSeries est;
      for (std::size_t m = 0; m < M; ++m) {
        const auto& r = runs[p * M + m];
        est.push_back(r.estimates[e]);
        s.run_means.push_back(mean_of(rmse({r.truth}, {r.estimates[e]}, mode)));
        s.wall_ms += r.wall_ms[e] / static_cast<double>(M);
        s.degeneracy_events += r.degeneracy[e];
        s.failures += r.failures[e];
      }
      s.series = rmse(truth, est, mode);
      finish_summary(s);
      rep.series.push_back(std::move(s));
    }
  }
}

// ---------------------------------------------------------------- pofb

void run_pofb(ExperimentReport& rep) {
  const auto& c = rep.config;
  const auto target = pofb::parse_target(c.experiment.substr(5));
  pofb::Options opts;
  opts.rule = pofb::parse_rule(get_param<std::string>(c.params, "rule"));
  opts.samples = get_param<std::size_t>(c.params, "samples");
  opts.particles = get_param<std::size_t>(c.params, "particles");
  opts.resample = get_param<bool>(c.params, "resample");
  if (opts.samples < 1 || opts.particles < 1) fail(ErrorKind::config, "pofb sample counts must be positive");
  pofb::SweepGrid grid;
  grid.r = get_list(c.params, "r");
  grid.p = get_list(c.params, "p");
  grid.m = get_list(c.params, "m");
  for (double r : grid.r)
    if (!(r > 0.0)) fail(ErrorKind::config, "pofb variance ratios must be positive");
  rep.metric = "pofb";
  rep.pofb_cells = pofb::sweep(grid, target, opts, c.seed, c.threads);
}

// ---------------------------------------------------------------- tracking

void run_tracking(ExperimentReport& rep) {
  const auto& c = rep.config;
  rep.metric = "ospa";
  rep.trackers = c.estimators;
  std::vector<mtt::TrackerSpec> specs;
  for (const auto& n : c.estimators) specs.push_back(tracker_spec(n));

  const std::size_t P = rep.param_values.empty() ? 1 : rep.param_values.size();
  const auto M = static_cast<std::size_t>(c.runs);
  std::vector<mtt::MttConfig> cfgs;
  for (std::size_t p = 0; p < P; ++p)
    cfgs.push_back(tracking_config(c, rep.param_values.empty() ? std::nan("") : rep.param_values[p]));

  std::vector<mtt::MttRunResult> runs(P * M);
  parallel_for(
      P * M, [&](std::size_t job) { runs[job] = mtt::run_mtt(cfgs[job / M], specs, c.seed, job % M); }, c.threads);

  const auto T = static_cast<std::size_t>(c.steps);
  for (std::size_t p = 0; p < P; ++p) {
    for (std::size_t k = 0; k < specs.size(); ++k) {
      SeriesSummary s;
      s.estimator = c.estimators[k];
      if (!rep.param_values.empty()) s.param = rep.param_values[p];
      s.series.assign(T, 0.0);
      s.card_true.assign(T, 0.0);
      s.card_est.assign(T, 0.0);
      double card_err = 0.0;
      for (std::size_t m = 0; m < M; ++m) {
        const auto& r = runs[p * M + m];
        double run_sum = 0.0, run_ms = 0.0;
        for (std::size_t t = 0; t < T; ++t) {
          const auto& st = r.per_tracker[k][t];
          s.series[t] += st.ospa / static_cast<double>(M);
          s.card_true[t] += st.card_true / static_cast<double>(M);
          s.card_est[t] += st.card_est / static_cast<double>(M);
          card_err += std::abs(st.card_est - st.card_true);
          run_sum += st.ospa;
          run_ms += st.wall_ms;
          rep.mtt_rows.push_back({k, p, static_cast<int>(m), static_cast<int>(t + 1), st});
        }
        s.run_means.push_back(run_sum / static_cast<double>(T));
        s.wall_ms += run_ms / static_cast<double>(M);
        if (k == 0) s.degeneracy_events += r.degeneracy_events;
      }
      s.card_mae = card_err / static_cast<double>(M * T);
      finish_summary(s);
      rep.series.push_back(std::move(s));
    }
  }
  std::stable_sort(rep.mtt_rows.begin(), rep.mtt_rows.end(), [](const MttRow& a, const MttRow& b) {
    if (a.tracker != b.tracker) return a.tracker < b.tracker;
    if (a.param != b.param) return a.param < b.param;
    if (a.run != b.run) return a.run < b.run;
    return a.step < b.step;
  });
}

}  // namespace

const std::vector<std::string>& known_experiments() {
  static const std::vector<std::string> ids = [] {
    std::vector<std::string> v;
    for (const auto& [k, d] : defaults_table()) v.push_back(k);
    return v;
  }();
  return ids;
}

ExperimentConfig config_from_json(const json& j) {
  if (!j.is_object()) fail(ErrorKind::config, "config must be a JSON object");
  static const std::set<std::string> keys{"experiment", "estimators", "runs",   "steps",  "seed",
                                          "threads",    "paper_scale", "model", "params", "output"};
  for (const auto& [k, v] : j.items())
    if (!keys.count(k)) fail(ErrorKind::config, "unknown config key '" + k + "'");
  ExperimentConfig c;
  try {
    c.experiment = j.at("experiment").get<std::string>();
    if (j.contains("estimators")) c.estimators = j["estimators"].get<std::vector<std::string>>();
    if (j.contains("runs")) c.runs = j["runs"].get<int>();
    if (j.contains("steps")) c.steps = j["steps"].get<int>();
    if (j.contains("seed")) c.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("threads")) c.threads = j["threads"].get<unsigned>();
    if (j.contains("paper_scale")) c.paper_scale = j["paper_scale"].get<bool>();
    if (j.contains("model")) c.model = j["model"];
    if (j.contains("params")) c.params = j["params"];
    if (j.contains("output")) c.output = j["output"].get<std::string>();
  } catch (const json::exception& e) {
    fail(ErrorKind::config, std::string("bad config: ") + e.what());
  }
  if (!c.model.is_object() || !c.params.is_object()) fail(ErrorKind::config, "'model' and 'params' must be objects");
  return c;
}

json config_to_json(const ExperimentConfig& c) {
  return {{"experiment", c.experiment}, {"estimators", c.estimators}, {"runs", c.runs},
          {"steps", c.steps},           {"seed", c.seed},             {"threads", c.threads},
          {"paper_scale", c.paper_scale}, {"model", c.model},         {"params", c.params},
          {"output", c.output}};
}

ExperimentConfig resolve(const ExperimentConfig& in) {
  const Defaults& d = defaults_for(in.experiment);
  ExperimentConfig c = in;
  if (c.runs < 0 || c.steps < 0) fail(ErrorKind::config, "runs and steps must be at least 1");
  if (c.runs == 0) c.runs = c.paper_scale ? d.runs_paper : d.runs_desk;
  if (c.steps == 0) c.steps = d.steps;
  if (c.estimators.empty()) c.estimators = d.estimators;

  json params = d.params;
  for (auto& [k, v] : c.params.items()) {
    if (!params.contains(k)) fail(ErrorKind::config, "unknown parameter '" + k + "' for " + c.experiment);
    params[k] = v;
  }
  if (d.kind == Kind::pofb) {
    const auto g = pofb::SweepGrid::standard();
    if (params["r"].empty()) params["r"] = g.r;
    if (params["p"].empty()) params["p"] = g.p;
    if (params["m"].empty()) params["m"] = c.experiment == "pofb-min" ? g.m : std::vector<double>{0.0};
  }
  c.params = params;

  switch (d.kind) {
    case Kind::filter:
      if (!c.model.empty()) models::make_model(d.model, c.model);  // validates keys
      for (const auto& e : c.estimators) {
        if (!is_known_estimator(e)) fail(ErrorKind::config, "unknown estimator '" + e + "'");
        if (e == "kf" && d.model != "B") fail(ErrorKind::config, "kf only applies to the linear model");
      }
      if (d.sweep == "R" && c.model.contains("R") && !c.params["sweep"].empty())
        fail(ErrorKind::config, "R is swept; set params.sweep instead");
      break;
    case Kind::pofb:
      if (!c.model.empty()) fail(ErrorKind::config, "pofb experiments take no model overrides");
      c.estimators = {std::string(pofb::to_string(pofb::parse_rule(c.params["rule"].get<std::string>())))};
      break;
    case Kind::mtt:
      if (!c.model.empty()) fail(ErrorKind::config, "tracking experiments take no model overrides");
      for (auto& e : c.estimators) {
        e = canonical_tracker(e);
        if (!parse_tracker(e)) fail(ErrorKind::config, "unknown tracker '" + e + "'");
        if (c.experiment == "ghost" && e != "o2")
          fail(ErrorKind::config, "the ghost scenario only runs the o2 tracker");
      }
      break;
  }
  if (c.runs < 1 || c.steps < 1) fail(ErrorKind::config, "runs and steps must be at least 1");
  return c;
}

mtt::TrackerSpec tracker_spec(const std::string& name) {
  if (auto spec = parse_tracker(name)) return *spec;
  fail(ErrorKind::config, "unknown tracker '" + name + "'");
}

mtt::MttConfig tracking_config(const ExperimentConfig& c, double param_value) {
  const Defaults& d = defaults_for(c.experiment);
  if (d.kind != Kind::mtt) fail(ErrorKind::config, c.experiment + " is not a tracking experiment");
  const json& p = c.params;
  mtt::MttConfig cfg;
  cfg.scenario = c.experiment == "ghost" ? mtt::ScenarioKind::ghost : mtt::ScenarioKind::ct;
  cfg.steps = c.steps;
  cfg.clutter = get_param<double>(p, "clutter");
  cfg.sensors = get_param<int>(p, "sensors");
  if (!std::isnan(param_value)) {
    if (d.sweep.empty()) fail(ErrorKind::config, c.experiment + " has no sweep parameter");
    if (d.sweep == "clutter") cfg.clutter = param_value;
    if (d.sweep == "sensors") cfg.sensors = static_cast<int>(param_value);
  }
  cfg.range_bearing.sigma_r = get_param<double>(p, "sigma_r");
  cfg.range_bearing.sigma_theta = get_param<double>(p, "sigma_theta");
  cfg.phd.particles_per_target = get_param<int>(p, "particles_per_target");
  cfg.phd.birth_particles_per_component = get_param<int>(p, "birth_particles");
  cfg.phd.min_particles = get_param<int>(p, "min_particles");
  cfg.cluster.scale = get_param<double>(p, "cluster_scale");
  cfg.cluster.extra_groups = get_param<int>(p, "extra_groups");
  cfg.cluster.metric = mtt::parse_cluster_metric(get_param<std::string>(p, "cluster_metric"));
  const auto fusion = get_param<std::string>(p, "cluster_fusion");
  if (fusion != "inverse-variance" && fusion != "mean")
    fail(ErrorKind::config, "cluster_fusion must be 'inverse-variance' or 'mean'");
  cfg.cluster.inverse_variance = fusion == "inverse-variance";
  cfg.ospa.cutoff = get_param<double>(p, "ospa_cutoff");
  cfg.ospa.order = get_param<double>(p, "ospa_order");
  if (cfg.clutter < 0.0 || cfg.sensors < 1 || cfg.phd.particles_per_target < 1 || cfg.cluster.scale <= 0.0 ||
      cfg.ospa.cutoff <= 0.0 || cfg.ospa.order < 1.0)
    fail(ErrorKind::config, "invalid tracking parameter");
  return cfg;
}

const SeriesSummary* ExperimentReport::find(const std::string& estimator, std::size_t param_index) const {
  const double want = param_values.empty() ? std::nan("") : param_values.at(param_index);
  for (const auto& s : series)
    if (s.estimator == estimator && (std::isnan(want) ? std::isnan(s.param) : s.param == want)) return &s;
  return nullptr;
}

ExperimentReport run_experiment(const ExperimentConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  ExperimentReport rep;
  rep.config = resolve(config);
  const Defaults& d = defaults_for(rep.config.experiment);
  rep.param_name = d.sweep;
  if (!d.sweep.empty()) {
    rep.param_values = get_list(rep.config.params, "sweep");
    if (rep.param_values.empty()) rep.param_name.clear();
  }
  switch (d.kind) {
    case Kind::filter: rep.kind = "filter"; run_filters(rep, d); break;
    case Kind::pofb: rep.kind = "pofb"; run_pofb(rep); break;
    case Kind::mtt: rep.kind = "mtt"; run_tracking(rep); break;
  }
  rep.wall_ms = elapsed_ms(start);
  return rep;
}

}  // namespace o2b::bench
