// SPDX-License-Identifier: Apache-2.0
#include "mtt/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "core/error.hpp"

namespace o2b::mtt {

std::vector<Point> Truth::positions(int t) const {
  std::vector<Point> out;
  for (const auto& tt : steps.at(static_cast<std::size_t>(t - 1))) out.push_back(position(tt.state));
  return out;
}

BirthModel BirthModel::standard() {
  BirthModel b;
  auto at = [](double px, double py) {
    CtState x = CtState::Zero();
    x(0) = px;
    x(2) = py;
    return x;
  };
  b.components = {{at(-1500, 250), 0.02}, {at(-250, 1000), 0.02}, {at(250, 750), 0.03}, {at(1000, 1500), 0.03}};
  b.std << 50, 50, 50, 50, 6.0 * std::numbers::pi / 180.0;
  b.survival = 0.99;
  return b;
}

double BirthModel::total_rate() const {
  double s = 0.0;
  for (const auto& c : components) s += c.rate;
  return s;
}

namespace {

CtState draw_birth(const BirthComponent& c, const CtState& std, RngStream& rng) {
  CtState x = c.mean;
  for (int k = 0; k < 5; ++k) x(k) += std(k) * rng.normal();
  return x;
}

}  // namespace

Truth generate_ct_truth(const CtScenarioConfig& cfg, const SensorModel& region, RngStream& rng) {
  if (cfg.steps < 1) fail(ErrorKind::invalid_input, "scenario needs at least one step");
  Truth truth;
  truth.steps.resize(static_cast<std::size_t>(cfg.steps));
  std::vector<TargetTruth> alive;
  int next_id = 0;
  for (const auto& x : cfg.initial_targets) alive.push_back({next_id++, x});
  for (int t = 1; t <= cfg.steps; ++t) {
    if (t > 1) {
      std::vector<TargetTruth> kept;
      for (auto& tt : alive) {
        if (rng.uniform() >= cfg.birth.survival) continue;
        tt.state = ct_transition(tt.state, cfg.motion, rng);
        if (cfg.kill_outside && !region.in_region(position(tt.state))) continue;
        kept.push_back(tt);
      }
      alive = std::move(kept);
    }
    for (const auto& comp : cfg.birth.components) {
      const auto n = rng.poisson(comp.rate);
      for (std::uint64_t k = 0; k < n; ++k) {
        const CtState x = draw_birth(comp, cfg.birth.std, rng);
        if (cfg.kill_outside && !region.in_region(position(x))) continue;
        alive.push_back({next_id++, x});
      }
    }
    truth.steps[static_cast<std::size_t>(t - 1)] = alive;
  }
  return truth;
}

Truth generate_ghost_truth(const GhostScenarioConfig& cfg, RngStream& rng) {
  if (cfg.steps < 1 || cfg.targets < 0) fail(ErrorKind::invalid_input, "bad ghost scenario size");
  enum class Motion { cv, ncv, nct, noisy_ct, stationary };
  Truth truth;
  truth.steps.resize(static_cast<std::size_t>(cfg.steps));
  const double w = cfg.half_width;
  for (int id = 0; id < cfg.targets; ++id) {
    const int birth = 1 + static_cast<int>(rng.index(static_cast<std::size_t>(std::max(1, cfg.first_birth_max))));
    const auto span = static_cast<std::size_t>(cfg.max_life - cfg.min_life + 1);
    const int life = cfg.min_life + static_cast<int>(rng.index(span));
    const auto motion = static_cast<Motion>(rng.index(5));
    const double speed = motion == Motion::stationary ? 0.0 : rng.uniform(0.3, 1.0) * cfg.max_speed;
    const double heading = rng.uniform(-std::numbers::pi, std::numbers::pi);
    double px = rng.uniform(-0.8 * w, 0.8 * w), py = rng.uniform(-0.8 * w, 0.8 * w);
    double vx = speed * std::cos(heading), vy = speed * std::sin(heading);
    double turn = 0.0, turn_noise = 0.0, accel_noise = 0.0;
    switch (motion) {
      case Motion::cv: break;
      case Motion::ncv: accel_noise = 0.15; break;
      case Motion::nct: turn = rng.uniform(-0.08, 0.08); accel_noise = 0.05; break;
      case Motion::noisy_ct: turn = rng.uniform(-0.15, 0.15); turn_noise = 0.03; accel_noise = 0.3; break;
      case Motion::stationary: break;
    }
    for (int t = birth; t < std::min(cfg.steps + 1, birth + life); ++t) {
      if (t > birth) {
        const double c = std::cos(turn), s = std::sin(turn);
        const double nvx = c * vx - s * vy, nvy = s * vx + c * vy;
        vx = nvx + accel_noise * rng.normal();
        vy = nvy + accel_noise * rng.normal();
        turn += turn_noise * rng.normal();
        px += vx;
        py += vy;
        // Targets bounce off the edges of the view.
        if (std::abs(px) > w) {
          px = std::copysign(2.0 * w - std::abs(px), px);
          vx = -vx;
        }
        if (std::abs(py) > w) {
          py = std::copysign(2.0 * w - std::abs(py), py);
          vy = -vy;
        }
      }
      CtState x = CtState::Zero();
      x << px, vx, py, vy, turn;
      truth.steps[static_cast<std::size_t>(t - 1)].push_back({id, x});
    }
  }
  return truth;
}

ScanData generate_scan(const std::vector<TargetTruth>& alive, int t, const std::vector<SensorPtr>& sensors,
                       RngStream& rng) {
  ScanData scan;
  scan.t = t;
  scan.sensors.resize(sensors.size());
  for (std::size_t s = 0; s < sensors.size(); ++s) {
    const SensorModel& sensor = *sensors[s];
    auto& out = scan.sensors[s];
    for (const auto& tt : alive) {
      const Point p = position(tt.state);
      if (rng.uniform() < sensor.detection_probability(p)) out.push_back(sensor.sample_observation(p, rng));
    }
    const auto clutter = rng.poisson(sensor.clutter_rate());
    for (std::uint64_t k = 0; k < clutter; ++k) out.push_back(sensor.sample_clutter(rng));
    std::shuffle(out.begin(), out.end(), rng.engine());
  }
  return scan;
}

std::vector<ScanData> generate_scans(const Truth& truth, const std::vector<SensorPtr>& sensors, RngStream& rng) {
  std::vector<ScanData> out;
  out.reserve(truth.steps.size());
  for (std::size_t k = 0; k < truth.steps.size(); ++k)
    out.push_back(generate_scan(truth.steps[k], static_cast<int>(k + 1), sensors, rng));
  return out;
}

}  // namespace o2b::mtt
