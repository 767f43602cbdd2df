// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string_view>
#include <vector>

#include "core/rng.hpp"
#include "core/stats.hpp"
#include "filters/unscented.hpp"
#include "models/model.hpp"

namespace o2b::filters {

/// Weighted particles. `covs` is filled only by the EKPF/UKPF variants, which
/// carry a Gaussian per particle.
struct ParticleSet {
  std::vector<Vec> particles;
  std::vector<double> weights;
  std::vector<Mat> covs;

  std::size_t size() const { return particles.size(); }
  /// Scales weights to sum to one; returns false when the sum is not positive.
  bool normalize();
  double ess() const;
  Vec mean() const;
  Mat covariance() const;
};

ParticleSet sample_particles(const GaussianBelief& belief, std::size_t n, RngStream& rng);

/// Systematic resampling: returns `n` ancestor indices.
std::vector<std::size_t> systematic_indices(const std::vector<double>& weights, std::size_t n, RngStream& rng);

/// Copies particles by systematic ancestor draws and sets uniform weights.
ParticleSet resample(const ParticleSet& ps, RngStream& rng);

enum class PfVariant { sir, apf, gpf, ekpf, ukpf };

PfVariant parse_pf_variant(std::string_view name);
std::string_view to_string(PfVariant v);

struct PfOptions {
  PfVariant variant = PfVariant::sir;
  double ess_threshold = 0.5;  // resample when ESS < threshold * N
  UnscentedParams unscented;
  /// Model whose Gaussian approximation drives the EKPF/UKPF proposals; the
  /// filter's own model when null.
  const models::StateSpaceModel* proposal_model = nullptr;
};

struct PfStepResult {
  Vec estimate;
  bool degenerate = false;
  bool resampled = false;
};

/// Starting particle set for a variant; EKPF/UKPF particles carry the prior covariance.
ParticleSet pf_initialize(const GaussianBelief& prior, std::size_t n, const PfOptions& opts, RngStream& rng);

/// One filter recursion. When `propagate` is false the particles are taken as
/// already distributed at time t (first step from the prior) and only the
/// correction is applied.
PfStepResult pf_step(ParticleSet& ps, const Vec& y, int t, const models::StateSpaceModel& model,
                     const PfOptions& opts, RngStream& rng, bool propagate = true);

}  // namespace o2b::filters
