// SPDX-License-Identifier: Apache-2.0
#include "mtt/sensor.hpp"

#include <cmath>
#include <numbers>

#include "core/error.hpp"

namespace o2b::mtt {

namespace {

constexpr double kPi = std::numbers::pi;

double wrap_angle(double a) { return std::remainder(a, 2.0 * kPi); }

}  // namespace

Point observe_range_bearing(const Point& p) { return {p.norm(), std::atan2(p.x(), p.y())}; }

Point invert_range_bearing(const Point& z) {
  if (z(0) < 0.0) fail(ErrorKind::invalid_input, "range must be non-negative");
  return {z(0) * std::sin(z(1)), z(0) * std::cos(z(1))};
}

// ---- range-bearing ---------------------------------------------------------

RangeBearingSensor::RangeBearingSensor(RangeBearingParams p) : p_(p) {
  if (!(p_.sigma_r > 0.0 && p_.sigma_theta > 0.0 && p_.max_range > 0.0 && p_.clutter_rate >= 0.0))
    fail(ErrorKind::invalid_input, "range-bearing sensor parameters out of range");
  log_norm_ = -std::log(2.0 * kPi * p_.sigma_r * p_.sigma_theta);
}

Point RangeBearingSensor::sample_observation(const Point& p, RngStream& rng) const {
  Point z = observe_range_bearing(p);
  z(0) += p_.sigma_r * rng.normal();
  z(1) += p_.sigma_theta * rng.normal();
  return z;
}

double RangeBearingSensor::log_likelihood(const Point& z, const Point& p) const {
  const double dr = (z(0) - p.norm()) / p_.sigma_r;
  const double db = wrap_angle(z(1) - std::atan2(p.x(), p.y())) / p_.sigma_theta;
  return log_norm_ - 0.5 * (dr * dr + db * db);
}

double RangeBearingSensor::detection_probability(const Point& p) const {
  return p_.pd_peak * std::exp(-0.5 * p.squaredNorm() / (p_.pd_scale * p_.pd_scale));
}

double RangeBearingSensor::clutter_intensity() const { return p_.clutter_rate / (p_.max_range * kPi); }

Point RangeBearingSensor::sample_clutter(RngStream& rng) const {
  const double r = rng.uniform(0.0, p_.max_range);
  const double b = rng.uniform(-0.5 * kPi, 0.5 * kPi);
  return {r, b};
}

Cov2 RangeBearingSensor::mapped_covariance(const Point& z) const {
  const double r = std::max(z(0), 0.0), s = std::sin(z(1)), c = std::cos(z(1));
  Eigen::Matrix2d j;
  j << s, r * c, c, -r * s;
  const Eigen::Vector2d var(p_.sigma_r * p_.sigma_r, p_.sigma_theta * p_.sigma_theta);
  return j * var.asDiagonal() * j.transpose();
}

double RangeBearingSensor::mapped_sigma(const Point& p) const {
  return std::max(p_.sigma_r, p.norm() * p_.sigma_theta);
}

bool RangeBearingSensor::in_region(const Point& p) const { return p.y() > 0.0 && p.norm() <= p_.max_range; }

// ---- direct position -------------------------------------------------------

DirectPositionSensor::DirectPositionSensor(DirectPositionParams p) : p_(p) {
  if (!(p_.noise_var > 0.0 && p_.half_width > 0.0 && p_.pd >= 0.0 && p_.pd <= 1.0 && p_.clutter_rate >= 0.0))
    fail(ErrorKind::invalid_input, "direct-position sensor parameters out of range");
}

Point DirectPositionSensor::sample_observation(const Point& p, RngStream& rng) const {
  const double s = std::sqrt(p_.noise_var);
  return {p.x() + s * rng.normal(), p.y() + s * rng.normal()};
}

double DirectPositionSensor::log_likelihood(const Point& z, const Point& p) const {
  return -std::log(2.0 * kPi * p_.noise_var) - 0.5 * (z - p).squaredNorm() / p_.noise_var;
}

double DirectPositionSensor::clutter_intensity() const {
  return p_.clutter_rate / (4.0 * p_.half_width * p_.half_width);
}

Point DirectPositionSensor::sample_clutter(RngStream& rng) const {
  return {rng.uniform(-p_.half_width, p_.half_width), rng.uniform(-p_.half_width, p_.half_width)};
}

double DirectPositionSensor::mapped_sigma(const Point&) const { return std::sqrt(p_.noise_var); }

bool DirectPositionSensor::in_region(const Point& p) const {
  return std::abs(p.x()) <= p_.half_width && std::abs(p.y()) <= p_.half_width;
}

}  // namespace o2b::mtt
