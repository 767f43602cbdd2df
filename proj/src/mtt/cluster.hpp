// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string_view>
#include <vector>

#include "mtt/sensor.hpp"
#include "mtt/types.hpp"

namespace o2b::mtt {

/// An observation mapped into the position space by the sensor inverse.
struct MappedPoint {
  Point p;
  Cov2 cov;
  int sensor = 0;
  double sigma = 0.0;  // largest mapped standard deviation
};

enum class ClusterMetric {
  /// Per-pair test under the average of the two mapped covariances.
  mahalanobis,
  /// Plain distance against scale times the larger mapped standard deviation of the pair.
  euclidean,
};

struct ClusterParams {
  /// Connection threshold in mapped noise standard deviations.
  double scale = 3.0;
  ClusterMetric metric = ClusterMetric::mahalanobis;
  /// Expected points per single target, as a fraction of the summed p_D.
  double single_fraction = 0.8;
  /// A dense group holding between k and k+1 single-target counts (k >= 2)
  /// is split into k + extra_groups groups.
  int extra_groups = 1;
  /// Fuse each group by inverse covariance instead of a plain mean.
  bool inverse_variance = true;
};

ClusterMetric parse_cluster_metric(std::string_view name);

std::vector<MappedPoint> map_scan(const ScanData& scan, const std::vector<SensorPtr>& sensors);

/// Two points from different sensors are connected when their difference is
/// within `scale` standard deviations under the average of their covariances.
bool connected(const MappedPoint& a, const MappedPoint& b, double scale);

/// Groups cross-sensor points by density and returns one position per group;
/// sparse points are treated as clutter.
std::vector<Point> cluster_clutter_filter(const std::vector<MappedPoint>& points,
                                          const std::vector<SensorPtr>& sensors, const ClusterParams& params = {});

}  // namespace o2b::mtt
