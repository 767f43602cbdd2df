// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace o2b {

/// Reproducible random stream identified by (seed, stream id).
///
/// Backed by std::mt19937_64 whose state is expanded from the four 32-bit
/// halves of seed and stream id through std::seed_seq. Both are fully
/// specified by the standard, so a given (seed, stream) pair yields the same
/// raw sequence on every conforming implementation. Distinct stream ids give
/// unrelated engine states; Monte-Carlo runs and estimators each draw from
/// their own stream.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream_id);

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t stream_id() const noexcept { return stream_id_; }

  /// Uniform on [0, 1).
  double uniform();
  /// Uniform on [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Standard normal.
  double normal();
  std::uint64_t poisson(double mean);
  std::size_t index(std::size_t n);

  std::mt19937_64& engine() noexcept { return engine_; }

  /// A child stream derived from this stream's identity; does not consume draws.
  RngStream derive(std::uint64_t purpose) const;

 private:
  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

/// Stable 64-bit stream id for a (run, purpose) pair.
std::uint64_t stream_id(std::uint64_t run, std::uint64_t purpose);

/// FNV-1a of a name; used to give each estimator a stream independent of its
/// position in the estimator list.
std::uint64_t name_hash(std::string_view name);

}  // namespace o2b
