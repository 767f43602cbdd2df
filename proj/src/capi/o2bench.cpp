// SPDX-License-Identifier: Apache-2.0
#include "o2bench/o2bench.h"

#include <algorithm>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <memory>
#include <sstream>
#include <string>

#include "bench/estimators.hpp"
#include "bench/experiment.hpp"
#include "bench/report.hpp"
#include "core/error.hpp"
#include "core/stats.hpp"
#include "mtt/ospa.hpp"
#include "mtt/sensor.hpp"

struct o2b_config {
  o2b::bench::ExperimentConfig config;
};

struct o2b_report {
  o2b::bench::ExperimentReport report;
};

namespace {

thread_local std::string last_error;

o2b_status set_error(o2b_status s, const std::string& msg) {
  last_error = msg;
  return s;
}

o2b_status status_of(o2b::ErrorKind k) {
  switch (k) {
    case o2b::ErrorKind::config: return O2B_ERR_CONFIG;
    case o2b::ErrorKind::io: return O2B_ERR_IO;
    case o2b::ErrorKind::invalid_input: return O2B_ERR_INVALID_ARGUMENT;
    default: return O2B_ERR_RUNTIME;
  }
}

template <class Fn>
o2b_status guarded(Fn&& fn) {
  last_error.clear();
  try {
    fn();
    return O2B_OK;
  } catch (const o2b::Error& e) {
    return set_error(status_of(e.kind()), e.what());
  } catch (const nlohmann::json::exception& e) {
    return set_error(O2B_ERR_CONFIG, e.what());
  } catch (const std::bad_alloc&) {
    return set_error(O2B_ERR_RUNTIME, "out of memory");
  } catch (const std::exception& e) {
    return set_error(O2B_ERR_RUNTIME, e.what());
  }
}

char* dup_string(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (!p) throw std::bad_alloc();
  std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

template <class Fn>
void with_file(const char* path, Fn&& fn) {
  std::ofstream os(path, std::ios::binary);
  if (!os) o2b::fail(o2b::ErrorKind::io, std::string("cannot open '") + path + "' for writing");
  fn(os);
  os.flush();
  if (!os) o2b::fail(o2b::ErrorKind::io, std::string("write to '") + path + "' failed");
}

}  // namespace

extern "C" {

const char* o2b_version(void) { return "1.0.0"; }

const char* o2b_last_error(void) { return last_error.c_str(); }

void o2b_string_free(char* s) { std::free(s); }

o2b_status o2b_config_from_json(const char* json, o2b_config** out) {
  if (!json || !out) return set_error(O2B_ERR_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] {
    auto cfg = std::make_unique<o2b_config>();
    cfg->config = o2b::bench::config_from_json(nlohmann::json::parse(json));
    *out = cfg.release();
  });
}

o2b_status o2b_config_for_figure(const char* figure_id, o2b_config** out) {
  if (!figure_id || !out) return set_error(O2B_ERR_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] {
    auto cfg = std::make_unique<o2b_config>();
    cfg->config = o2b::bench::figure_config(figure_id);
    *out = cfg.release();
  });
}

o2b_status o2b_config_set(o2b_config* config, const char* key, const char* json_value) {
  if (!config || !key || !json_value) return set_error(O2B_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    auto j = o2b::bench::config_to_json(config->config);
    const std::string k = key;
    const auto value = nlohmann::json::parse(json_value);
    const auto dot = k.find('.');
    if (dot == std::string::npos) {
      if (!j.contains(k)) o2b::fail(o2b::ErrorKind::config, "unknown config key '" + k + "'");
      j[k] = value;
    } else {
      const std::string head = k.substr(0, dot);
      if (head != "model" && head != "params") o2b::fail(o2b::ErrorKind::config, "only model.* and params.* nest");
      j[head][k.substr(dot + 1)] = value;
    }
    config->config = o2b::bench::config_from_json(j);
  });
}

o2b_status o2b_config_resolved_json(const o2b_config* config, char** out) {
  if (!config || !out) return set_error(O2B_ERR_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] { *out = dup_string(o2b::bench::config_to_json(o2b::bench::resolve(config->config)).dump(2)); });
}

void o2b_config_free(o2b_config* config) { delete config; }

o2b_status o2b_run_experiment(const o2b_config* config, o2b_report** out) {
  if (!config || !out) return set_error(O2B_ERR_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] {
    auto rep = std::make_unique<o2b_report>();
    try {
      rep->report = o2b::bench::run_experiment(config->config);
    } catch (const o2b::Error& e) {
      // Past validation, bad input inside a run is a runtime failure.
      if (e.kind() == o2b::ErrorKind::invalid_input) o2b::fail(o2b::ErrorKind::numerical, e.what());
      throw;
    }
    *out = rep.release();
  });
}

void o2b_report_free(o2b_report* report) { delete report; }

o2b_status o2b_report_write_csv(const o2b_report* report, const char* path) {
  if (!report || !path) return set_error(O2B_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] { with_file(path, [&](std::ostream& os) { o2b::bench::write_csv(os, report->report); }); });
}

o2b_status o2b_report_write_mtt_csv(const o2b_report* report, const char* path, size_t tracker, size_t param_index) {
  if (!report || !path) return set_error(O2B_ERR_INVALID_ARGUMENT, "null argument");
  const auto& r = report->report;
  if (r.kind != "mtt") return set_error(O2B_ERR_INVALID_ARGUMENT, "not a tracking report");
  if (tracker >= r.trackers.size() || param_index >= std::max<std::size_t>(1, r.param_values.size()))
    return set_error(O2B_ERR_INVALID_ARGUMENT, "tracker or sweep index out of range");
  return guarded([&] {
    with_file(path, [&](std::ostream& os) { o2b::bench::write_mtt_csv(os, r, tracker, param_index); });
  });
}

o2b_status o2b_report_summary_json(const o2b_report* report, char** out) {
  if (!report || !out) return set_error(O2B_ERR_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] { *out = dup_string(o2b::bench::summary_json(report->report).dump(2)); });
}

o2b_status o2b_report_emit_plotdata(const o2b_report* report, const char* figure_id, const char* path) {
  if (!report || !figure_id || !path) return set_error(O2B_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    std::ostringstream buf;  // validate before touching the file
    o2b::bench::write_plotdata(buf, report->report, figure_id);
    with_file(path, [&](std::ostream& os) { os << buf.str(); });
  });
}

o2b_status o2b_report_mean(const o2b_report* report, const char* estimator, size_t param_index, double* mean,
                           double* variance) {
  if (!report || !estimator) return set_error(O2B_ERR_INVALID_ARGUMENT, "null argument");
  const auto& r = report->report;
  if (!r.param_values.empty() && param_index >= r.param_values.size())
    return set_error(O2B_ERR_INVALID_ARGUMENT, "sweep index out of range");
  const auto* s = r.find(estimator, param_index);
  if (!s) return set_error(O2B_ERR_INVALID_ARGUMENT, std::string("no series for '") + estimator + "'");
  if (mean) *mean = s->mean;
  if (variance) *variance = s->variance;
  last_error.clear();
  return O2B_OK;
}

o2b_status o2b_list(const char* what, char** out) {
  if (!what || !out) return set_error(O2B_ERR_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  const std::string w = what;
  return guarded([&] {
    nlohmann::json j;
    if (w == "experiments") j = o2b::bench::known_experiments();
    else if (w == "estimators") j = o2b::bench::known_estimators();
    else if (w == "figures") j = o2b::bench::figure_ids();
    else o2b::fail(o2b::ErrorKind::invalid_input, "unknown list '" + w + "'");
    *out = dup_string(j.dump());
  });
}

o2b_status o2b_kf_fuse(double mean_a, double var_a, double mean_b, double var_b, double* mean_out, double* var_out) {
  if (!mean_out || !var_out) return set_error(O2B_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    const auto z = o2b::kf_fuse(o2b::GaussianBelief::scalar(mean_a, var_a), o2b::GaussianBelief::scalar(mean_b, var_b));
    *mean_out = z.mean(0);
    *var_out = z.cov(0, 0);
  });
}

o2b_status o2b_ospa(const double* xs, size_t nx, const double* ys, size_t ny, double cutoff, double order,
                    double* out) {
  if (!out || (nx && !xs) || (ny && !ys)) return set_error(O2B_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    std::vector<o2b::mtt::Point> a, b;
    for (size_t i = 0; i < nx; ++i) a.emplace_back(xs[2 * i], xs[2 * i + 1]);
    for (size_t i = 0; i < ny; ++i) b.emplace_back(ys[2 * i], ys[2 * i + 1]);
    *out = o2b::mtt::ospa(a, b, {cutoff, order});
  });
}

o2b_status o2b_invert_range_bearing(double range, double bearing, double* x, double* y) {
  if (!x || !y) return set_error(O2B_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    const auto p = o2b::mtt::invert_range_bearing(o2b::mtt::Point(range, bearing));
    *x = p.x();
    *y = p.y();
  });
}

}  // extern "C"
