// SPDX-License-Identifier: Apache-2.0
#include "mtt/extract.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "core/error.hpp"

namespace o2b::mtt {

ExtractorKind parse_extractor(std::string_view name) {
  if (name == "kmeans") return ExtractorKind::kmeans;
  if (name == "meap") return ExtractorKind::meap;
  if (name == "o2") return ExtractorKind::o2;
  fail(ErrorKind::config, "unknown extractor '" + std::string(name) + "'");
}

std::string_view to_string(ExtractorKind k) {
  switch (k) {
    case ExtractorKind::kmeans: return "kmeans";
    case ExtractorKind::meap: return "meap";
    case ExtractorKind::o2: return "o2";
  }
  return "?";
}

std::vector<CtState> kmeans_states(const std::vector<CtState>& particles, int k, RngStream& rng, int max_iter) {
  const std::size_t n = particles.size();
  if (k <= 0 || n == 0) return {};
  k = static_cast<int>(std::min<std::size_t>(static_cast<std::size_t>(k), n));
  std::vector<Point> pts(n);
  for (std::size_t i = 0; i < n; ++i) pts[i] = position(particles[i]);

  // k-means++ seeding.
  std::vector<Point> centers;
  centers.push_back(pts[rng.index(n)]);
  std::vector<double> d2(n, std::numeric_limits<double>::infinity());
  while (static_cast<int>(centers.size()) < k) {
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      d2[i] = std::min(d2[i], (pts[i] - centers.back()).squaredNorm());
      total += d2[i];
    }
    if (!(total > 0.0)) break;
    double u = rng.uniform() * total;
    std::size_t pick = n - 1;
    for (std::size_t i = 0; i < n; ++i) {
      u -= d2[i];
      if (u < 0.0) {
        pick = i;
        break;
      }
    }
    centers.push_back(pts[pick]);
  }

  std::vector<int> label(n, -1);
  for (int it = 0; it < max_iter; ++it) {
    bool changed = false;
    for (std::size_t i = 0; i < n; ++i) {
      int best = 0;
      double bd = (pts[i] - centers[0]).squaredNorm();
      for (std::size_t c = 1; c < centers.size(); ++c) {
        const double d = (pts[i] - centers[c]).squaredNorm();
        if (d < bd) {
          bd = d;
          best = static_cast<int>(c);
        }
      }
      if (label[i] != best) {
        label[i] = best;
        changed = true;
      }
    }
    std::vector<Point> sum(centers.size(), Point::Zero());
    std::vector<std::size_t> count(centers.size(), 0);
    for (std::size_t i = 0; i < n; ++i) {
      sum[static_cast<std::size_t>(label[i])] += pts[i];
      ++count[static_cast<std::size_t>(label[i])];
    }
    for (std::size_t c = 0; c < centers.size(); ++c)
      if (count[c] > 0) centers[c] = sum[c] / static_cast<double>(count[c]);
    if (!changed) break;
  }

  std::vector<CtState> out;
  std::vector<CtState> sum(centers.size(), CtState::Zero());
  std::vector<std::size_t> count(centers.size(), 0);
  for (std::size_t i = 0; i < n; ++i) {
    sum[static_cast<std::size_t>(label[i])] += particles[i];
    ++count[static_cast<std::size_t>(label[i])];
  }
  for (std::size_t c = 0; c < centers.size(); ++c)
    if (count[c] > 0) out.push_back(sum[c] / static_cast<double>(count[c]));
  return out;
}

std::vector<std::size_t> identified_observations(const PhdUpdate& update, double threshold) {
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < update.observation_mass.size(); ++k)
    if (update.observation_mass[k] > threshold) out.push_back(k);
  return out;
}

std::vector<CtState> meap_states(const PhdUpdate& update, const std::vector<std::size_t>& identified) {
  std::vector<CtState> out;
  for (std::size_t k : identified) {
    CtState acc = CtState::Zero();
    double norm = 0.0;
    for (std::size_t j = 0; j < update.count(); ++j) {
      const double w = update.g(k, j) * update.predicted_weights[j];
      acc += w * update.particles[j];
      norm += w;
    }
    if (norm > 0.0) out.push_back(acc / norm);
  }
  return out;
}

void difference_velocities(std::vector<CtState>& current, const std::vector<CtState>& previous, double dt,
                           double gate) {
  for (auto& x : current) {
    const Point p = position(x);
    double best = gate;
    const CtState* match = nullptr;
    for (const auto& q : previous) {
      const double d = (position(q) - p).norm();
      if (d < best) {
        best = d;
        match = &q;
      }
    }
    if (match) {
      x(1) = (p.x() - (*match)(0)) / dt;
      x(3) = (p.y() - (*match)(2)) / dt;
    }
  }
}

std::vector<CtState> Extractor::extract(const SmcPhdFilter& filter, const SensorScan& scan) {
  const PhdUpdate& u = filter.last_update();
  switch (kind_) {
    case ExtractorKind::kmeans: return kmeans_states(filter.particles(), filter.estimated_count(), rng_);
    case ExtractorKind::meap: return meap_states(u, identified_observations(u, threshold_));
    case ExtractorKind::o2: {
      std::vector<CtState> out;
      for (std::size_t k : identified_observations(u, threshold_))
        out.push_back(state_at(filter.sensor().invert(scan[k])));
      difference_velocities(out, previous_, 1.0, 200.0);
      previous_ = out;
      return out;
    }
  }
  return {};
}

}  // namespace o2b::mtt
