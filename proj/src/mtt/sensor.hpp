// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <memory>
#include <numbers>

#include "core/rng.hpp"
#include "mtt/types.hpp"

namespace o2b::mtt {

/// (range, bearing) of a planar point; bearing measured from the +y axis.
Point observe_range_bearing(const Point& p);
/// Inverse of observe_range_bearing: (r sin theta, r cos theta).
Point invert_range_bearing(const Point& z);

/// A sensor observing target positions with additive Gaussian noise,
/// state-dependent detection and uniform Poisson clutter.
class SensorModel {
 public:
  virtual ~SensorModel() = default;

  virtual Point observe(const Point& p) const = 0;
  virtual Point sample_observation(const Point& p, RngStream& rng) const = 0;
  /// Log of g(z | p).
  virtual double log_likelihood(const Point& z, const Point& p) const = 0;
  virtual double detection_probability(const Point& p) const = 0;

  /// Mean number of clutter points per scan.
  virtual double clutter_rate() const = 0;
  /// Clutter intensity per unit observation-space volume.
  virtual double clutter_intensity() const = 0;
  virtual Point sample_clutter(RngStream& rng) const = 0;

  /// Observation-only position estimate and its mapped covariance.
  virtual Point invert(const Point& z) const = 0;
  virtual Cov2 mapped_covariance(const Point& z) const = 0;
  /// Rough largest standard deviation of the mapped noise near `p`.
  virtual double mapped_sigma(const Point& p) const = 0;
  /// True when the point lies in the surveillance region.
  virtual bool in_region(const Point& p) const = 0;
};

using SensorPtr = std::shared_ptr<const SensorModel>;

struct RangeBearingParams {
  double sigma_r = 5.0;
  double sigma_theta = std::numbers::pi / 180.0;
  double max_range = 2000.0;
  double pd_peak = 0.95;
  double pd_scale = 6000.0;
  double clutter_rate = 10.0;
};

class RangeBearingSensor final : public SensorModel {
 public:
  explicit RangeBearingSensor(RangeBearingParams p = {});
  const RangeBearingParams& params() const { return p_; }

  Point observe(const Point& p) const override { return observe_range_bearing(p); }
  Point sample_observation(const Point& p, RngStream& rng) const override;
  double log_likelihood(const Point& z, const Point& p) const override;
  double detection_probability(const Point& p) const override;
  double clutter_rate() const override { return p_.clutter_rate; }
  double clutter_intensity() const override;
  Point sample_clutter(RngStream& rng) const override;
  Point invert(const Point& z) const override { return invert_range_bearing(z); }
  Cov2 mapped_covariance(const Point& z) const override;
  double mapped_sigma(const Point& p) const override;
  bool in_region(const Point& p) const override;

 private:
  RangeBearingParams p_;
  double log_norm_;
};

struct DirectPositionParams {
  double noise_var = 25.0;
  double half_width = 100.0;
  double pd = 0.95;
  double clutter_rate = 10.0;
};

class DirectPositionSensor final : public SensorModel {
 public:
  explicit DirectPositionSensor(DirectPositionParams p = {});
  const DirectPositionParams& params() const { return p_; }

  Point observe(const Point& p) const override { return p; }
  Point sample_observation(const Point& p, RngStream& rng) const override;
  double log_likelihood(const Point& z, const Point& p) const override;
  double detection_probability(const Point&) const override { return p_.pd; }
  double clutter_rate() const override { return p_.clutter_rate; }
  double clutter_intensity() const override;
  Point sample_clutter(RngStream& rng) const override;
  Point invert(const Point& z) const override { return z; }
  Cov2 mapped_covariance(const Point&) const override { return Cov2::Identity() * p_.noise_var; }
  double mapped_sigma(const Point&) const override;
  bool in_region(const Point& p) const override;

 private:
  DirectPositionParams p_;
};

}  // namespace o2b::mtt
