// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string_view>
#include <vector>

#include "core/rng.hpp"
#include "mtt/phd.hpp"

namespace o2b::mtt {

enum class ExtractorKind { kmeans, meap, o2 };

ExtractorKind parse_extractor(std::string_view name);
std::string_view to_string(ExtractorKind k);

/// Standard k-means on particle positions with k-means++ seeding.
/// Returns the mean state of each non-empty cluster.
std::vector<CtState> kmeans_states(const std::vector<CtState>& particles, int k, RngStream& rng, int max_iter = 50);

/// Observations whose detected-target share exceeds `threshold`.
std::vector<std::size_t> identified_observations(const PhdUpdate& update, double threshold);

/// Per identified observation, the likelihood-weighted mean of the predicted particles.
std::vector<CtState> meap_states(const PhdUpdate& update, const std::vector<std::size_t>& identified);

/// Turns identified observations into state estimates.
class Extractor {
 public:
  Extractor(ExtractorKind kind, RngStream rng, double identify_threshold = 0.5)
      : kind_(kind), rng_(rng), threshold_(identify_threshold) {}

  ExtractorKind kind() const { return kind_; }

  /// Estimates after `filter` has processed `scan`.
  std::vector<CtState> extract(const SmcPhdFilter& filter, const SensorScan& scan);

 private:
  ExtractorKind kind_;
  RngStream rng_;
  double threshold_;
  std::vector<CtState> previous_;  // last O2 estimates, for velocity by differencing
};

/// Attaches velocity to position-only estimates by differencing against the
/// nearest previous estimate within `gate`; unmatched estimates keep zero velocity.
void difference_velocities(std::vector<CtState>& current, const std::vector<CtState>& previous, double dt,
                           double gate);

}  // namespace o2b::mtt
