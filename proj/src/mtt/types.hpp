// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include <Eigen/Dense>

namespace o2b::mtt {

/// [px, vx, py, vy, turn rate]
using CtState = Eigen::Matrix<double, 5, 1>;
using Point = Eigen::Vector2d;
using Cov2 = Eigen::Matrix2d;

inline Point position(const CtState& x) { return {x(0), x(2)}; }

inline CtState state_at(const Point& p) {
  CtState x = CtState::Zero();
  x(0) = p.x();
  x(2) = p.y();
  return x;
}

/// All observations of one sensor at one step, unlabeled.
using SensorScan = std::vector<Point>;

/// One time step's observations for every sensor.
struct ScanData {
  int t = 0;
  std::vector<SensorScan> sensors;
};

}  // namespace o2b::mtt
