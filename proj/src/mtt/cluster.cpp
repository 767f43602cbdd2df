// SPDX-License-Identifier: Apache-2.0
#include "mtt/cluster.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "core/error.hpp"

namespace o2b::mtt {

std::vector<MappedPoint> map_scan(const ScanData& scan, const std::vector<SensorPtr>& sensors) {
  if (scan.sensors.size() != sensors.size()) fail(ErrorKind::invalid_input, "scan and sensor counts differ");
  std::vector<MappedPoint> out;
  for (std::size_t s = 0; s < sensors.size(); ++s)
    for (const auto& z : scan.sensors[s]) {
      const Point p = sensors[s]->invert(z);
      out.push_back({p, sensors[s]->mapped_covariance(z), static_cast<int>(s), sensors[s]->mapped_sigma(p)});
    }
  return out;
}

ClusterMetric parse_cluster_metric(std::string_view name) {
  if (name == "mahalanobis") return ClusterMetric::mahalanobis;
  if (name == "euclidean") return ClusterMetric::euclidean;
  fail(ErrorKind::config, "unknown cluster metric '" + std::string(name) + "'");
}

bool connected(const MappedPoint& a, const MappedPoint& b, double scale) {
  if (a.sensor == b.sensor) return false;
  const Point d = a.p - b.p;
  const Cov2 avg = 0.5 * (a.cov + b.cov);
  return d.dot(avg.ldlt().solve(d)) < scale * scale;
}

namespace {

Point fuse(const std::vector<MappedPoint>& pts, const std::vector<std::size_t>& members, bool inverse_variance) {
  if (!inverse_variance) {
    Point m = Point::Zero();
    for (std::size_t i : members) m += pts[i].p;
    return m / static_cast<double>(members.size());
  }
  Cov2 info = Cov2::Zero();
  Point info_mean = Point::Zero();
  for (std::size_t i : members) {
    const Cov2 inv = pts[i].cov.inverse();
    info += inv;
    info_mean += inv * pts[i].p;
  }
  return info.ldlt().solve(info_mean);
}

struct Group {
  std::vector<std::size_t> members;
  std::vector<char> sensors;
  Point centroid;
};

// Agglomerative merging of the closest pair of groups that share no sensor,
// until `target` groups remain or no pair can merge.
std::vector<Group> constrained_groups(const std::vector<MappedPoint>& pts, const std::vector<std::size_t>& items,
                                      std::size_t sensor_count, std::size_t target) {
  std::vector<Group> groups;
  for (std::size_t i : items) {
    Group g;
    g.members = {i};
    g.sensors.assign(sensor_count, 0);
    g.sensors[static_cast<std::size_t>(pts[i].sensor)] = 1;
    g.centroid = pts[i].p;
    groups.push_back(std::move(g));
  }
  auto disjoint = [](const Group& a, const Group& b) {
    for (std::size_t s = 0; s < a.sensors.size(); ++s)
      if (a.sensors[s] && b.sensors[s]) return false;
    return true;
  };
  while (groups.size() > target) {
    double best = std::numeric_limits<double>::infinity();
    std::size_t bi = 0, bj = 0;
    for (std::size_t i = 0; i < groups.size(); ++i)
      for (std::size_t j = i + 1; j < groups.size(); ++j) {
        if (!disjoint(groups[i], groups[j])) continue;
        const double d = (groups[i].centroid - groups[j].centroid).squaredNorm();
        if (d < best) {
          best = d;
          bi = i;
          bj = j;
        }
      }
    if (!std::isfinite(best)) break;
    Group& a = groups[bi];
    Group& b = groups[bj];
    const double na = static_cast<double>(a.members.size()), nb = static_cast<double>(b.members.size());
    a.centroid = (na * a.centroid + nb * b.centroid) / (na + nb);
    a.members.insert(a.members.end(), b.members.begin(), b.members.end());
    for (std::size_t s = 0; s < a.sensors.size(); ++s) a.sensors[s] = a.sensors[s] || b.sensors[s];
    groups.erase(groups.begin() + static_cast<std::ptrdiff_t>(bj));
  }
  std::stable_sort(groups.begin(), groups.end(),
                   [](const Group& a, const Group& b) { return a.members.size() > b.members.size(); });
  if (groups.size() > target) groups.resize(target);
  return groups;
}

}  // namespace

std::vector<Point> cluster_clutter_filter(const std::vector<MappedPoint>& points,
                                          const std::vector<SensorPtr>& sensors, const ClusterParams& params) {
  if (sensors.size() < 2) fail(ErrorKind::invalid_input, "clutter filtering needs at least two sensors");
  const std::size_t n = points.size();
  auto linked = [&](const MappedPoint& a, const MappedPoint& b) {
    if (params.metric == ClusterMetric::mahalanobis) return connected(a, b, params.scale);
    const double radius = params.scale * std::max(a.sigma, b.sigma);
    return a.sensor != b.sensor && (a.p - b.p).squaredNorm() < radius * radius;
  };
  std::vector<std::vector<std::size_t>> adj(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (linked(points[i], points[j])) {
        adj[i].push_back(j);
        adj[j].push_back(i);
      }

  std::vector<char> alive(n, 1);
  std::vector<Point> out;
  auto live_neighbours = [&](std::size_t i) {
    std::vector<std::size_t> nb;
    for (std::size_t j : adj[i])
      if (alive[j]) nb.push_back(j);
    return nb;
  };

  while (true) {
    // Seed: the live point with the most live connections.
    std::size_t seed = n;
    std::size_t best_deg = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (!alive[i]) continue;
      std::size_t deg = 0;
      for (std::size_t j : adj[i]) deg += alive[j] ? 1 : 0;
      if (seed == n || deg > best_deg) {
        seed = i;
        best_deg = deg;
      }
    }
    if (seed == n || best_deg == 0) break;

    const std::vector<std::size_t> nb = live_neighbours(seed);
    Point centroid = points[seed].p;
    for (std::size_t j : nb) centroid += points[j].p;
    centroid /= static_cast<double>(nb.size() + 1);
    double expected = 0.0;
    for (const auto& s : sensors) expected += s->detection_probability(centroid);
    const double single = params.single_fraction * expected;
    const double size = static_cast<double>(nb.size() + 1);
    if (size < single || !(single > 0.0)) break;

    const int k = static_cast<int>(std::floor(size / single));
    if (k <= 1) {
      // One target: the seed plus the closest neighbour from each other sensor.
      std::vector<std::size_t> closest(sensors.size(), n);
      for (std::size_t j : nb) {
        const auto s = static_cast<std::size_t>(points[j].sensor);
        if (closest[s] == n ||
            (points[j].p - points[seed].p).squaredNorm() < (points[closest[s]].p - points[seed].p).squaredNorm())
          closest[s] = j;
      }
      std::vector<std::size_t> members{seed};
      for (std::size_t j : closest)
        if (j != n) members.push_back(j);
      out.push_back(fuse(points, members, params.inverse_variance));
      for (std::size_t j : members) alive[j] = 0;
    } else {
      std::vector<std::size_t> items{seed};
      items.insert(items.end(), nb.begin(), nb.end());
      const auto groups = constrained_groups(points, items, sensors.size(),
                                             static_cast<std::size_t>(k + params.extra_groups));
      for (const auto& g : groups) out.push_back(fuse(points, g.members, params.inverse_variance));
      for (std::size_t j : items) alive[j] = 0;
    }
  }
  return out;
}

}  // namespace o2b::mtt
