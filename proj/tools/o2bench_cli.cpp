// SPDX-License-Identifier: Apache-2.0
// Command-line front end. Talks to the library through the C API only.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include <CLI11.hpp>

#include "o2bench/o2bench.h"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitRuntime = 3;

struct Failure {
  int code;
  std::string message;
};

void check(o2b_status s) {
  if (s == O2B_OK) return;
  const int code = (s == O2B_ERR_CONFIG || s == O2B_ERR_INVALID_ARGUMENT) ? kExitConfig : kExitRuntime;
  throw Failure{code, o2b_last_error()};
}

using ConfigPtr = std::unique_ptr<o2b_config, decltype(&o2b_config_free)>;
using ReportPtr = std::unique_ptr<o2b_report, decltype(&o2b_report_free)>;

struct Globals {
  std::uint64_t seed = 1;
  bool seed_set = false;
  int runs = 0;
  std::string out;
  bool paper_scale = false;
  unsigned threads = 0;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Failure{kExitConfig, "cannot read config file '" + path + "'"};
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string json_string(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

std::string json_list(const std::vector<std::string>& items) {
  std::string out = "[";
  for (std::size_t i = 0; i < items.size(); ++i) out += (i ? "," : "") + json_string(items[i]);
  return out + "]";
}

std::string json_numbers(const std::vector<double>& xs) {
  std::string out = "[";
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? "," : "") + std::to_string(xs[i]);
  return out + "]";
}

void set(o2b_config* c, const std::string& key, const std::string& value) {
  check(o2b_config_set(c, key.c_str(), value.c_str()));
}

void apply_globals(o2b_config* c, const Globals& g) {
  if (g.seed_set) set(c, "seed", std::to_string(g.seed));
  if (g.runs > 0) set(c, "runs", std::to_string(g.runs));
  if (g.paper_scale) set(c, "paper_scale", "true");
  if (g.threads > 0) set(c, "threads", std::to_string(g.threads));
}

// key=json pairs; a value that is not valid JSON is taken as a string.
void apply_sets(o2b_config* c, const std::vector<std::string>& sets) {
  for (const auto& kv : sets) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw Failure{kExitConfig, "--set expects key=value, got '" + kv + "'"};
    const std::string key = kv.substr(0, eq), value = kv.substr(eq + 1);
    if (o2b_config_set(c, key.c_str(), value.c_str()) != O2B_OK) set(c, key, json_string(value));
  }
}

std::string take_string(char* s) {
  std::string out = s ? s : "";
  o2b_string_free(s);
  return out;
}

ReportPtr run(const o2b_config* c) {
  o2b_report* r = nullptr;
  check(o2b_run_experiment(c, &r));
  return ReportPtr(r, o2b_report_free);
}

void write_summary(const o2b_report* r, const std::string& csv_path) {
  char* s = nullptr;
  check(o2b_report_summary_json(r, &s));
  const std::string text = take_string(s);
  if (csv_path.empty()) {
    std::cerr << text << '\n';
    return;
  }
  const std::string path = csv_path + ".summary.json";
  std::ofstream os(path);
  os << text << '\n';
  if (!os) throw Failure{kExitRuntime, "cannot write '" + path + "'"};
  std::cerr << "wrote " << csv_path << " and " << path << '\n';
}

// Writes through a temporary file when no --out was given, then copies to stdout.
template <class Fn>
void emit(const std::string& out, Fn&& write_to) {
  if (!out.empty()) {
    write_to(out);
    return;
  }
  char tmpl[] = "/tmp/o2bench-XXXXXX";
  const int fd = mkstemp(tmpl);
  if (fd < 0) throw Failure{kExitRuntime, "cannot create a temporary file"};
  close(fd);
  try {
    write_to(tmpl);
  } catch (...) {
    std::remove(tmpl);
    throw;
  }
  std::cout << read_file(tmpl);
  std::remove(tmpl);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Observation-only inference and filter benchmark"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--seed", g.seed, "Master RNG seed")->each([&](const std::string&) { g.seed_set = true; });
  app.add_option("--runs", g.runs, "Monte-Carlo runs (overrides the experiment default)")->check(CLI::PositiveNumber);
  app.add_option("--out", g.out, "Output CSV path (stdout when omitted)");
  app.add_flag("--paper-scale", g.paper_scale, "Use the full run counts of the original experiments");
  app.add_option("--threads", g.threads, "Worker threads (0 = all cores)");

  // bench
  auto* bench = app.add_subcommand("bench", "Run one experiment and write its CSV and JSON summary");
  std::string config_path, experiment;
  std::vector<std::string> estimators, sets;
  int steps = 0, particles = 0, debias = 0;
  bench->add_option("--config", config_path, "Experiment config (JSON)");
  bench->add_option("--experiment,-e", experiment, "Experiment id");
  bench->add_option("--estimators", estimators, "Estimator names")->delimiter(',');
  bench->add_option("--steps", steps, "Time steps per run")->check(CLI::PositiveNumber);
  bench->add_option("--particles", particles, "Particle count for particle filters")->check(CLI::PositiveNumber);
  bench->add_option("--debias-samples", debias, "Monte-Carlo samples of the unbiased O2 variant")
      ->check(CLI::PositiveNumber);
  bench->add_option("--set", sets, "Override key=value (dotted keys reach model.* and params.*)");

  // pofb sweep
  auto* pofb = app.add_subcommand("pofb", "Probability of fusion benefit");
  pofb->require_subcommand(1);
  auto* pofb_sweep = pofb->add_subcommand("sweep", "Sweep the (r, p, m) grid");
  std::string target = "x", rule = "kf";
  std::vector<double> grid_r, grid_p, grid_m;
  long samples = 0;
  pofb_sweep->add_option("--target", target, "x | y | min")->check(CLI::IsMember({"x", "y", "min"}));
  pofb_sweep->add_option("--rule", rule, "kf | particle")->check(CLI::IsMember({"kf", "particle"}));
  pofb_sweep->add_option("--samples", samples, "Monte-Carlo samples per cell")->check(CLI::PositiveNumber);
  pofb_sweep->add_option("--r", grid_r, "Variance ratios")->delimiter(',');
  pofb_sweep->add_option("--p", grid_p, "Bias ratios")->delimiter(',');
  pofb_sweep->add_option("--m", grid_m, "True-state offsets")->delimiter(',');

  // mtt run
  auto* mtt = app.add_subcommand("mtt", "Multi-target tracking");
  mtt->require_subcommand(1);
  auto* mtt_run = mtt->add_subcommand("run", "Run one tracker and write per-step OSPA rows");
  std::string scenario = "ct", tracker, extractor = "meap", fusion;
  double clutter = -1.0;
  int sensors = 0, ppt = 0;
  mtt_run->add_option("--scenario", scenario, "ct | multisensor | ghost")
      ->check(CLI::IsMember({"ct", "multisensor", "ghost"}));
  mtt_run->add_option("--tracker", tracker, "phd | o2 | a full tracker name such as phd-oft-meap");
  mtt_run->add_option("--extractor", extractor, "PHD estimate extractor")
      ->check(CLI::IsMember({"kmeans", "meap", "o2"}));
  mtt_run->add_option("--fusion", fusion, "PHD multi-sensor fusion")->check(CLI::IsMember({"t2t", "oft"}));
  mtt_run->add_option("--clutter", clutter, "Mean clutter count per scan")->check(CLI::NonNegativeNumber);
  mtt_run->add_option("--sensors", sensors, "Sensor count")->check(CLI::PositiveNumber);
  mtt_run->add_option("--particles-per-target", ppt, "PHD particles per expected target")->check(CLI::PositiveNumber);
  mtt_run->add_option("--steps", steps, "Time steps per run")->check(CLI::PositiveNumber);

  // plotdata
  auto* plot = app.add_subcommand("plotdata", "Write x,series,value data for one figure");
  std::string figure;
  plot->add_option("--figure,-f", figure, "Figure id (fig2, fig5, ...)")->required();
  plot->add_option("--config", config_path, "Experiment config overriding the figure default");
  plot->add_option("--set", sets, "Override key=value");

  // list
  auto* list = app.add_subcommand("list", "List experiments, estimators or figures");
  std::string what = "experiments";
  list->add_option("what", what, "experiments | estimators | figures")
      ->check(CLI::IsMember({"experiments", "estimators", "figures"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitConfig;
  }

  try {
    if (*list) {
      char* s = nullptr;
      check(o2b_list(what.c_str(), &s));
      std::cout << take_string(s) << '\n';
      return 0;
    }

    o2b_config* raw = nullptr;
    if (*plot && config_path.empty()) {
      check(o2b_config_for_figure(figure.c_str(), &raw));
    } else if (!config_path.empty()) {
      check(o2b_config_from_json(read_file(config_path).c_str(), &raw));
    } else {
      std::string id = experiment;
      if (*pofb_sweep) id = "pofb-" + target;
      if (*mtt_run) id = scenario == "ct" ? "mtt-ct" : scenario == "multisensor" ? "mtt-multisensor" : "ghost";
      if (id.empty()) throw Failure{kExitConfig, "bench needs --config or --experiment"};
      check(o2b_config_from_json(("{\"experiment\":" + json_string(id) + "}").c_str(), &raw));
    }
    ConfigPtr cfg(raw, o2b_config_free);
    apply_globals(cfg.get(), g);
    if (!experiment.empty() && !config_path.empty()) set(cfg.get(), "experiment", json_string(experiment));
    if (steps > 0) set(cfg.get(), "steps", std::to_string(steps));

    if (*bench) {
      if (!estimators.empty()) set(cfg.get(), "estimators", json_list(estimators));
      if (particles > 0) set(cfg.get(), "params.particles", std::to_string(particles));
      if (debias > 0) set(cfg.get(), "params.debias_samples", std::to_string(debias));
      apply_sets(cfg.get(), sets);
      auto rep = run(cfg.get());
      emit(g.out, [&](const std::string& p) { check(o2b_report_write_csv(rep.get(), p.c_str())); });
      write_summary(rep.get(), g.out);
    } else if (*pofb_sweep) {
      set(cfg.get(), "params.rule", json_string(rule));
      if (samples > 0) set(cfg.get(), "params.samples", std::to_string(samples));
      if (!grid_r.empty()) set(cfg.get(), "params.r", json_numbers(grid_r));
      if (!grid_p.empty()) set(cfg.get(), "params.p", json_numbers(grid_p));
      if (!grid_m.empty()) set(cfg.get(), "params.m", json_numbers(grid_m));
      auto rep = run(cfg.get());
      emit(g.out, [&](const std::string& p) { check(o2b_report_write_csv(rep.get(), p.c_str())); });
    } else if (*mtt_run) {
      if (tracker.empty()) tracker = scenario == "ct" ? "phd-o2" : "o2";
      if (tracker == "phd") tracker = "phd-" + (fusion.empty() ? extractor : fusion + "-" + extractor);
      set(cfg.get(), "estimators", json_list({tracker}));
      if (clutter >= 0.0) set(cfg.get(), "params.clutter", std::to_string(clutter));
      if (sensors > 0) set(cfg.get(), "params.sensors", std::to_string(sensors));
      if (ppt > 0) set(cfg.get(), "params.particles_per_target", std::to_string(ppt));
      // A single run configuration: no sweep, the flags above decide.
      if (scenario != "ghost") set(cfg.get(), "params.sweep", "[]");
      auto rep = run(cfg.get());
      emit(g.out, [&](const std::string& p) { check(o2b_report_write_mtt_csv(rep.get(), p.c_str(), 0, 0)); });
      write_summary(rep.get(), g.out);
    } else if (*plot) {
      apply_sets(cfg.get(), sets);
      auto rep = run(cfg.get());
      emit(g.out, [&](const std::string& p) { check(o2b_report_emit_plotdata(rep.get(), figure.c_str(), p.c_str())); });
    }
    return 0;
  } catch (const Failure& f) {
    std::cerr << "error: " << f.message << '\n';
    return f.code;
  }
}
