// SPDX-License-Identifier: Apache-2.0
#include "models/benchmarks.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "core/error.hpp"

namespace o2b::models {

namespace {

constexpr double kPi = std::numbers::pi;

double growth_drive(double omega, int t) { return 1.0 + std::sin(omega * kPi * t); }

// Inputs are validated before use so that a bad override fails loudly.
void require(bool ok, const char* what) {
  if (!ok) fail(ErrorKind::config, what);
}

}  // namespace

// ---- Model A ---------------------------------------------------------------

ModelA::ModelA(ModelAParams params) : p_(params) {
  require(p_.phi2 != 0.0 && p_.phi3 != 0.0, "model A needs non-zero phi2 and phi3");
  require(p_.R >= 0.0, "model A observation variance must be non-negative");
  require(p_.gaussian_var >= 0.0, "model A gaussian_var must be non-negative");
  if (p_.process == ProcessNoiseKind::gamma)
    require(p_.gamma.shape > 0.0 && p_.gamma.rate > 0.0, "model A gamma shape and rate must be positive");
}

ModelA ModelA::with_gaussian_substitute() const {
  ModelAParams q = p_;
  q.process = ProcessNoiseKind::gaussian;
  return ModelA(q);
}

Vec ModelA::transition(const Vec& prev, int t) const {
  return scalar_vec(growth_drive(p_.omega, t) + p_.phi1 * prev(0));
}

Vec ModelA::sample_transition(const Vec& prev, int t, RngStream& rng) const {
  double u = 0.0;
  switch (p_.process) {
    case ProcessNoiseKind::gamma: u = gamma_sample(p_.gamma, rng); break;
    case ProcessNoiseKind::gaussian: u = std::sqrt(p_.gaussian_var) * rng.normal(); break;
    case ProcessNoiseKind::none: break;
  }
  return scalar_vec(transition(prev, t)(0) + u);
}

double ModelA::transition_logpdf(const Vec& next, const Vec& prev, int t) const {
  const double u = next(0) - transition(prev, t)(0);
  switch (p_.process) {
    case ProcessNoiseKind::gamma: return gamma_logpdf(p_.gamma, u);
    case ProcessNoiseKind::gaussian: return normal_logpdf(u, 0.0, p_.gaussian_var);
    case ProcessNoiseKind::none: break;
  }
  return u == 0.0 ? 0.0 : -std::numeric_limits<double>::infinity();
}

Mat ModelA::transition_jacobian(const Vec&, int) const { return scalar_mat(p_.phi1); }

Vec ModelA::process_noise_mean() const {
  return scalar_vec(p_.process == ProcessNoiseKind::gamma ? p_.gamma.mean() : 0.0);
}

Mat ModelA::process_noise_cov() const {
  switch (p_.process) {
    case ProcessNoiseKind::gamma: return scalar_mat(p_.gamma.variance());
    case ProcessNoiseKind::gaussian: return scalar_mat(p_.gaussian_var);
    case ProcessNoiseKind::none: break;
  }
  return scalar_mat(0.0);
}

Vec ModelA::observe(const Vec& x, int t) const {
  if (t <= p_.switch_time) return scalar_vec(p_.phi2 * x(0) * x(0));
  return scalar_vec(p_.phi3 * x(0) - 2.0);
}

Mat ModelA::observation_jacobian(const Vec& x, int t) const {
  if (t <= p_.switch_time) return scalar_mat(2.0 * p_.phi2 * x(0));
  return scalar_mat(p_.phi3);
}

Inversion ModelA::invert_observation(const Vec& y, int t) const {
  if (t > p_.switch_time) return {{scalar_vec((y(0) + 2.0) / p_.phi3)}, false};
  const double mag = std::sqrt(std::abs(y(0) / p_.phi2));
  if (mag == 0.0) return {{scalar_vec(0.0)}, false};
  return {{scalar_vec(mag), scalar_vec(-mag)}, false};
}

InitialCondition ModelA::initial_condition() const {
  return {GaussianBelief::scalar(p_.x1, 0.0), GaussianBelief::scalar(p_.x1, p_.prior_var)};
}

// ---- Model B ---------------------------------------------------------------

ModelB::ModelB(ModelBParams params) : p_(params) {
  require(p_.gain != 0.0, "model B gain must be non-zero");
  require(p_.R >= 0.0 && p_.process_var >= 0.0, "model B variances must be non-negative");
}

Vec ModelB::transition(const Vec& prev, int t) const {
  return scalar_vec(growth_drive(p_.omega, t) + p_.phi1 * prev(0));
}

Vec ModelB::sample_transition(const Vec& prev, int t, RngStream& rng) const {
  return scalar_vec(transition(prev, t)(0) + std::sqrt(p_.process_var) * rng.normal());
}

double ModelB::transition_logpdf(const Vec& next, const Vec& prev, int t) const {
  return normal_logpdf(next(0), transition(prev, t)(0), p_.process_var);
}

Mat ModelB::transition_jacobian(const Vec&, int) const { return scalar_mat(p_.phi1); }

Vec ModelB::observe(const Vec& x, int) const { return scalar_vec(p_.gain * x(0) + p_.offset); }

Mat ModelB::observation_jacobian(const Vec&, int) const { return scalar_mat(p_.gain); }

Inversion ModelB::invert_observation(const Vec& y, int) const {
  return {{scalar_vec((y(0) - p_.offset) / p_.gain)}, false};
}

InitialCondition ModelB::initial_condition() const {
  return {GaussianBelief::scalar(p_.x1, 0.0), GaussianBelief::scalar(p_.x1, p_.prior_var)};
}

std::optional<LinearGaussianSystem> ModelB::linear_system(int t) const {
  return LinearGaussianSystem{scalar_mat(p_.phi1),     scalar_vec(growth_drive(p_.omega, t)),
                              scalar_mat(p_.process_var), scalar_mat(p_.gain),
                              scalar_vec(p_.offset),   scalar_mat(p_.R)};
}

// ---- UNGM ------------------------------------------------------------------

UngmModel::UngmModel(UngmParams params) : p_(params) {
  require(p_.Q >= 0.0 && p_.R >= 0.0, "ungm variances must be non-negative");
}

Vec UngmModel::transition(const Vec& prev, int t) const {
  const double x = prev(0);
  return scalar_vec(0.5 * x + 25.0 * x / (1.0 + x * x) + 8.0 * std::cos(1.2 * (t - 1)));
}

Vec UngmModel::sample_transition(const Vec& prev, int t, RngStream& rng) const {
  return scalar_vec(transition(prev, t)(0) + std::sqrt(p_.Q) * rng.normal());
}

double UngmModel::transition_logpdf(const Vec& next, const Vec& prev, int t) const {
  return normal_logpdf(next(0), transition(prev, t)(0), p_.Q);
}

Mat UngmModel::transition_jacobian(const Vec& prev, int) const {
  const double x = prev(0);
  const double d = 1.0 + x * x;
  return scalar_mat(0.5 + 25.0 * (1.0 - x * x) / (d * d));
}

Vec UngmModel::observe(const Vec& x, int) const { return scalar_vec(x(0) * x(0) / 20.0); }

Mat UngmModel::observation_jacobian(const Vec& x, int) const { return scalar_mat(x(0) / 10.0); }

Inversion UngmModel::invert_observation(const Vec& y, int) const {
  if (y(0) <= 0.0) return {{scalar_vec(0.0)}, y(0) < 0.0};
  const double mag = std::sqrt(20.0 * y(0));
  return {{scalar_vec(mag), scalar_vec(-mag)}, false};
}

InitialCondition UngmModel::initial_condition() const {
  const double v0 = p_.initial_var < 0.0 ? p_.Q : p_.initial_var;
  return {GaussianBelief::scalar(0.0, v0), GaussianBelief::scalar(0.0, p_.Q)};
}

// ---- ghost observation -----------------------------------------------------

GhostObsModel::GhostObsModel(GhostObsParams params) : p_(params) {
  require(p_.noise_var > 0.0 && p_.walk_var >= 0.0 && p_.half_width > 0.0, "ghost-obs parameters out of range");
}

Vec GhostObsModel::transition(const Vec& prev, int) const { return prev; }

Vec GhostObsModel::sample_transition(const Vec& prev, int, RngStream& rng) const {
  Vec out = prev;
  for (Eigen::Index i = 0; i < out.size(); ++i) out(i) += std::sqrt(p_.walk_var) * rng.normal();
  return out;
}

double GhostObsModel::transition_logpdf(const Vec& next, const Vec& prev, int) const {
  return normal_logpdf(next(0), prev(0), p_.walk_var) + normal_logpdf(next(1), prev(1), p_.walk_var);
}

Mat GhostObsModel::transition_jacobian(const Vec&, int) const { return Mat::Identity(2, 2); }

Vec GhostObsModel::observe(const Vec& x, int) const { return x; }

Mat GhostObsModel::observation_jacobian(const Vec&, int) const { return Mat::Identity(2, 2); }

Inversion GhostObsModel::invert_observation(const Vec& y, int) const { return {{y}, false}; }

InitialCondition GhostObsModel::initial_condition() const {
  const double v = p_.half_width * p_.half_width / 3.0;  // variance of U(-w, w)
  GaussianBelief b{Vec::Zero(2), Mat::Identity(2, 2) * v};
  return {b, b};
}

// ---- factory ---------------------------------------------------------------

namespace {

class OverrideReader {
 public:
  OverrideReader(std::string_view model, const nlohmann::json& j) : model_(model), j_(j) {
    if (!j_.is_object()) fail(ErrorKind::config, "model overrides must be a JSON object");
  }

  template <class T>
  void read(const char* key, T& field) {
    auto it = j_.find(key);
    if (it == j_.end()) return;
    try {
      field = it->template get<T>();
    } catch (const nlohmann::json::exception&) {
      fail(ErrorKind::config, "model " + std::string(model_) + ": bad value for '" + key + "'");
    }
    ++used_;
  }

  void finish() const {
    if (used_ != j_.size())
      fail(ErrorKind::config, "model " + std::string(model_) + ": unknown override key in " + j_.dump());
  }

 private:
  std::string_view model_;
  const nlohmann::json& j_;
  std::size_t used_ = 0;
};

ProcessNoiseKind parse_noise_kind(const std::string& s) {
  if (s == "gamma") return ProcessNoiseKind::gamma;
  if (s == "gaussian") return ProcessNoiseKind::gaussian;
  if (s == "none") return ProcessNoiseKind::none;
  fail(ErrorKind::config, "unknown process noise kind '" + s + "'");
}

}  // namespace

ModelPtr make_model(std::string_view name, const nlohmann::json& overrides) {
  const nlohmann::json& j = overrides.is_null() ? nlohmann::json::object() : overrides;
  OverrideReader r(name, j);
  if (name == "A") {
    ModelAParams p;
    std::string process = "gamma";
    r.read("omega", p.omega);
    r.read("phi1", p.phi1);
    r.read("phi2", p.phi2);
    r.read("phi3", p.phi3);
    r.read("process", process);
    r.read("gamma_shape", p.gamma.shape);
    r.read("gamma_rate", p.gamma.rate);
    r.read("gaussian_var", p.gaussian_var);
    r.read("R", p.R);
    r.read("switch_time", p.switch_time);
    r.read("x1", p.x1);
    r.read("prior_var", p.prior_var);
    r.finish();
    p.process = parse_noise_kind(process);
    return std::make_shared<ModelA>(p);
  }
  if (name == "B") {
    ModelBParams p;
    r.read("omega", p.omega);
    r.read("phi1", p.phi1);
    r.read("process_var", p.process_var);
    r.read("gain", p.gain);
    r.read("offset", p.offset);
    r.read("R", p.R);
    r.read("x1", p.x1);
    r.read("prior_var", p.prior_var);
    r.finish();
    return std::make_shared<ModelB>(p);
  }
  if (name == "ungm") {
    UngmParams p;
    r.read("Q", p.Q);
    r.read("R", p.R);
    r.read("initial_var", p.initial_var);
    r.finish();
    return std::make_shared<UngmModel>(p);
  }
  if (name == "ghost-obs") {
    GhostObsParams p;
    r.read("noise_var", p.noise_var);
    r.read("half_width", p.half_width);
    r.read("walk_var", p.walk_var);
    r.finish();
    return std::make_shared<GhostObsModel>(p);
  }
  fail(ErrorKind::config, "unknown model '" + std::string(name) + "'");
}

}  // namespace o2b::models
