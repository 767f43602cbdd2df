// SPDX-License-Identifier: Apache-2.0
// Acceptance runner: `acceptance [criterion...]`, one PASS/FAIL line per criterion.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "bench/experiment.hpp"
#include "core/error.hpp"
#include "pofb/pofb.hpp"
#include "property_checks.hpp"

using namespace o2b;
using namespace o2b::bench;
using checks::CheckResult;
using nlohmann::json;

namespace {

using Clock = std::chrono::steady_clock;

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

double mean_of(const ExperimentReport& rep, const std::string& est, std::size_t param = 0) {
  const auto* s = rep.find(est, param);
  if (!s) fail(ErrorKind::config, "report has no series '" + est + "'");
  return s->mean;
}

ExperimentReport run(const std::string& id, int runs, int steps, std::vector<std::string> estimators,
                     json params = json::object()) {
  ExperimentConfig c;
  c.experiment = id;
  c.runs = runs;
  c.steps = steps;
  c.seed = 1;
  c.estimators = std::move(estimators);
  c.params = std::move(params);
  return run_experiment(c);
}

CheckResult within(const std::string& name, double value, double lo, double hi, const std::string& ref = "") {
  const bool ok = value >= lo && value <= hi;
  std::string detail = num(value) + " in [" + num(lo) + ", " + num(hi) + "]";
  if (!ref.empty()) detail += "; reference " + ref;
  return {name, ok, detail};
}

CheckResult below(const std::string& name, double value, double limit, const std::string& ref = "") {
  std::string detail = num(value) + " < " + num(limit);
  if (!ref.empty()) detail += "; reference " + ref;
  return {name, value < limit, detail};
}

CheckResult runtime(Clock::time_point start, double limit_s) {
  const double s = std::chrono::duration<double>(Clock::now() - start).count();
  return {"runtime", s < limit_s, num(s) + " s < " + num(limit_s) + " s"};
}

std::vector<CheckResult> model_a_comparison() {
  const auto start = Clock::now();
  const auto rep = run("model-a", 100, 60, {"ekf", "ukf", "sir", "ekpf", "ukpf", "o2"}, {{"particles", 200}});
  std::vector<CheckResult> out;
  const double o2 = mean_of(rep, "o2");
  out.push_back({"o2 mean RMSE <= 0.01", o2 <= 0.01, num(o2) + "; reference 0.006"});
  double best = INFINITY;
  for (const char* f : {"ekf", "ukf", "sir", "ekpf", "ukpf"}) {
    const double m = mean_of(rep, f);
    best = std::min(best, m);
    out.push_back({std::string(f) + " mean RMSE >= 0.1", m >= 0.1, num(m)});
  }
  out.push_back({"best filter / o2 >= 10", best >= 10.0 * o2, num(best / o2)});
  out.push_back(runtime(start, 120));
  return out;
}

std::vector<CheckResult> ungm_comparison() {
  const auto start = Clock::now();
  const auto rep = run("ungm", 50, 100, {"ekf", "ukf", "sir", "o2-true-sign", "o2-unbiased"}, {{"particles", 100}});
  const double truesign = mean_of(rep, "o2-true-sign"), unbiased = mean_of(rep, "o2-unbiased");
  return {
      within("ekf 15 +- 3", mean_of(rep, "ekf"), 12.0, 18.0, "15.193"),
      within("ukf 7.25 +- 1.5", mean_of(rep, "ukf"), 5.75, 8.75),
      within("sir in [3.0, 5.5]", mean_of(rep, "sir"), 3.0, 5.5),
      within("o2-true-sign 1.39 +- 0.25", truesign, 1.14, 1.64),
      within("o2-unbiased 1.23 +- 0.25", unbiased, 0.98, 1.48, "1.229"),
      {"o2-unbiased < o2-true-sign", unbiased < truesign, num(unbiased) + " < " + num(truesign)},
      runtime(start, 180),
  };
}

std::vector<CheckResult> model_b_sweep() {
  const auto start = Clock::now();
  const std::vector<double> grid{1e-4, 1e-2, 1.0, 100.0};
  const auto rep = run("model-b-sweep", 100, 500, {"kf", "o2"}, {{"sweep", grid}});
  std::vector<CheckResult> out;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const double kf = mean_of(rep, "kf", k), o2 = mean_of(rep, "o2", k);
    out.push_back({"kf <= o2 at R=" + num(grid[k]), kf <= o2, num(kf) + " <= " + num(o2)});
    sxy += std::sqrt(grid[k]) * o2;
    sxx += grid[k];
  }
  const double slope = sxy / sxx;
  out.push_back(within("o2 slope in sqrt(R) within 10% of 2", slope, 1.8, 2.2));
  out.push_back(runtime(start, 60));
  return out;
}

std::vector<CheckResult> pofb_pins() {
  const auto start = Clock::now();
  std::uint64_t stream = 0;
  auto estimate = [&](double r, double p, pofb::Target t, pofb::FusionRule rule = pofb::FusionRule::kf) {
    pofb::Options o;
    o.rule = rule;
    o.samples = 100000;
    o.particles = 100000;
    RngStream rng(1, stream++);
    return pofb::probability(pofb::FusionCase::from_ratios(r, p, 0.0), t, o, rng).pofb;
  };
  std::vector<CheckResult> out;
  out.push_back(within("case 1 (r=0.25, p=0) 0.732 +- 0.01", estimate(0.25, 0, pofb::Target::vs_x), 0.722, 0.742,
                       "0.732"));
  for (auto [t, name] : {std::pair{pofb::Target::vs_x, "x"}, {pofb::Target::vs_y, "y"}, {pofb::Target::vs_min, "min"}})
    for (double p : {0.0, 1.0})
      out.push_back(within("r=1000 p=" + num(p) + " vs_" + name + " 0.5 +- 0.012", estimate(1000, p, t), 0.488, 0.512));
  out.push_back(below("(r=0.01, p=5) vs_x < 0.05", estimate(0.01, 5, pofb::Target::vs_x), 0.05));
  double worst_y = 1.0;
  for (double r : pofb::SweepGrid::standard().r) worst_y = std::min(worst_y, estimate(r, 10, pofb::Target::vs_y));
  out.push_back({"vs_y > 0.5 at p=10 for every r", worst_y > 0.5, "minimum " + num(worst_y)});
  double gap = 0.0;
  for (double r : {0.01, 0.1, 1.0, 10.0, 100.0})
    for (double p : {0.0, 1.0, 2.0, 5.0, 10.0})
      gap = std::max(gap, std::abs(estimate(r, p, pofb::Target::vs_x) -
                                   estimate(r, p, pofb::Target::vs_x, pofb::FusionRule::particle)));
  out.push_back(below("particle vs kf rule max-abs on 5x5 grid < 0.02", gap, 0.02));
  out.push_back(runtime(start, 120));
  return out;
}

std::vector<CheckResult> crossover() {
  const auto start = Clock::now();
  std::vector<CheckResult> out;
  const auto ungm = run("ungm-noise-sweep", 50, 100, {"ekf", "ukf", "sir", "gpf", "apf", "o2-true-sign"},
                        {{"sweep", {1e-4, 1e4}}});
  const double o2_small = mean_of(ungm, "o2-true-sign", 0);
  for (const char* f : {"ekf", "ukf", "sir", "gpf", "apf"})
    out.push_back({std::string("ungm R=1e-4 ") + f + " > o2-true-sign", mean_of(ungm, f, 0) > o2_small,
                   num(mean_of(ungm, f, 0)) + " > " + num(o2_small)});
  const double sir_big = mean_of(ungm, "sir", 1), o2_big = mean_of(ungm, "o2-true-sign", 1);
  out.push_back({"ungm R=1e4 sir < o2-true-sign", sir_big < o2_big, num(sir_big) + " < " + num(o2_big)});

  const auto a = run("model-a-noise-sweep", 50, 60, {"ekf", "ukf", "sir", "ekpf", "ukpf", "o2-true-sign"},
                     {{"sweep", {1e-4}}});
  const double o2_a = mean_of(a, "o2-true-sign");
  for (const char* f : {"ekf", "ukf", "sir", "ekpf", "ukpf"})
    out.push_back({std::string("model A R=1e-4 ") + f + " > o2-true-sign", mean_of(a, f) > o2_a,
                   num(mean_of(a, f)) + " > " + num(o2_a)});
  out.push_back(runtime(start, 300));
  return out;
}

std::vector<CheckResult> extractors() {
  const auto start = Clock::now();
  const auto rep = run("mtt-ct", 20, 100, {"phd-kmeans", "phd-meap", "phd-o2"},
                       {{"particles_per_target", 500}, {"sweep", {10.0}}});
  const double km = mean_of(rep, "phd-kmeans"), meap = mean_of(rep, "phd-meap"), o2 = mean_of(rep, "phd-o2");
  const std::string refs = "; reference kmeans 48.1, meap 33.9, o2 35.1";
  return {
      {"OSPA kmeans > o2", km > o2, num(km) + " > " + num(o2) + refs},
      {"OSPA meap <= 1.1 o2", meap <= 1.1 * o2, num(meap) + " <= " + num(1.1 * o2)},
      runtime(start, 600),
  };
}

std::vector<CheckResult> multisensor() {
  const auto start = Clock::now();
  const auto rep = run("mtt-multisensor", 20, 100, {"phd-oft", "phd-t2t", "o2"}, {{"sweep", {10}}});
  const double oft = mean_of(rep, "phd-oft"), t2t = mean_of(rep, "phd-t2t"), o2 = mean_of(rep, "o2");
  std::vector<CheckResult> out{
      {"OSPA oft < o2 < t2t", oft < o2 && o2 < t2t,
       "oft " + num(oft) + ", o2 " + num(o2) + ", t2t " + num(t2t) +
           "; reference oft 31.5482, o2 36.9991, t2t 40.3143"},
  };
  const std::vector<double> ns{2, 5, 10, 20};
  const auto sweep = run("mtt-multisensor", 20, 100, {"o2"}, {{"sweep", ns}});
  double worst_rise = -INFINITY;
  std::string series;
  for (std::size_t k = 0; k < ns.size(); ++k) {
    series += (k ? " / " : "") + num(mean_of(sweep, "o2", k));
    if (k) worst_rise = std::max(worst_rise, mean_of(sweep, "o2", k) - mean_of(sweep, "o2", k - 1));
  }
  out.push_back({"o2 non-increasing in N within 1", worst_rise <= 1.0, "N=2,5,10,20: " + series});
  out.push_back(runtime(start, 900));
  return out;
}

std::vector<CheckResult> ghost() {
  const auto start = Clock::now();
  const auto rep = run("ghost", 20, 100, {"o2"});
  const auto* s = rep.find("o2");
  return {
      within("mean OSPA in [22, 38]", s->mean, 22.0, 38.0, "30.128"),
      within("cardinality MAE <= 1.5", s->card_mae, 0.0, 1.5),
      runtime(start, 300),
  };
}

std::vector<CheckResult> properties() { return checks::all_properties(); }

const std::map<int, std::pair<const char*, std::function<std::vector<CheckResult>()>>>& criteria() {
  static const std::map<int, std::pair<const char*, std::function<std::vector<CheckResult>()>>> table{
      {1, {"Model A filter comparison", model_a_comparison}},
      {2, {"UNGM filter comparison", ungm_comparison}},
      {3, {"Model B noise sweep", model_b_sweep}},
      {4, {"PoFB pins", pofb_pins}},
      {5, {"Small and large noise crossover", crossover}},
      {6, {"PHD estimate extractors", extractors}},
      {7, {"Multisensor fusion", multisensor}},
      {8, {"Ghost scenario", ghost}},
      {9, {"Property suites", properties}},
  };
  return table;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<int> picked;
  for (int i = 1; i < argc; ++i) picked.push_back(std::atoi(argv[i]));
  if (picked.empty())
    for (const auto& [id, _] : criteria()) picked.push_back(id);
  int failed = 0;
  for (int id : picked) {
    const auto it = criteria().find(id);
    if (it == criteria().end()) {
      std::fprintf(stderr, "unknown criterion %d\n", id);
      return 2;
    }
    bool pass = true;
    std::vector<CheckResult> results;
    try {
      results = it->second.second();
    } catch (const std::exception& e) {
      results.push_back({"run", false, e.what()});
    }
    for (const auto& r : results) {
      std::printf("    %s %s: %s\n", r.pass ? "ok  " : "FAIL", r.name.c_str(), r.detail.c_str());
      pass = pass && r.pass;
    }
    std::printf("%s criterion %d (%s)\n", pass ? "PASS" : "FAIL", id, it->second.first);
    std::fflush(stdout);
    failed += pass ? 0 : 1;
  }
  return failed == 0 ? 0 : 1;
}
