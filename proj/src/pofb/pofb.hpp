// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <ostream>
#include <string_view>
#include <vector>

#include "core/rng.hpp"
#include "core/stats.hpp"
#include "filters/particle.hpp"

namespace o2b::pofb {

/// Two scalar Gaussians to be fused and the true state they estimate. `x` is
/// the observation-inferred distribution, `y` the prediction.
struct FusionCase {
  double mx = 0.0;
  double vx = 1.0;
  double my = 0.0;
  double vy = 1.0;
  double truth = 0.0;

  /// vy = r * vx, my = mx + p * sd_x, truth = mx + m * sd_x.
  static FusionCase from_ratios(double r, double p, double m, double mx = 0.0, double vx = 1.0);
  double variance_ratio() const { return vy / vx; }
};

enum class Target { vs_x, vs_y, vs_min };
enum class FusionRule { kf, particle };

Target parse_target(std::string_view name);
FusionRule parse_rule(std::string_view name);
std::string_view to_string(Target t);
std::string_view to_string(FusionRule r);

struct Options {
  FusionRule rule = FusionRule::kf;
  std::size_t samples = 100000;
  std::size_t particles = 100000;
  bool resample = false;  // particle rule: resample the fused set before drawing z
};

struct Estimate {
  double pofb = 0.0;
  double std_error = 0.0;
  bool degenerate = false;
};

/// Particles drawn from `prior`, reweighted by the density of `likelihood`.
filters::ParticleSet particle_fusion(const GaussianBelief& prior, const GaussianBelief& likelihood, std::size_t n,
                                     RngStream& rng, bool resample = false, bool* degenerate = nullptr);

/// Monte-Carlo probability that a fused draw z is closer to the truth than
/// the reference draw(s) selected by `target`.
Estimate probability(const FusionCase& c, Target target, const Options& opts, RngStream& rng);

inline Estimate pofb_vs_x(const FusionCase& c, const Options& o, RngStream& rng) {
  return probability(c, Target::vs_x, o, rng);
}
inline Estimate pofb_vs_y(const FusionCase& c, const Options& o, RngStream& rng) {
  return probability(c, Target::vs_y, o, rng);
}
inline Estimate pofb_vs_min(const FusionCase& c, const Options& o, RngStream& rng) {
  return probability(c, Target::vs_min, o, rng);
}

struct SweepGrid {
  std::vector<double> r;
  std::vector<double> p;
  std::vector<double> m;

  /// r on 21 log-spaced points over [0.01, 1000], p in [0, 10], and the eleven m values.
  static SweepGrid standard();
  std::size_t cells() const { return r.size() * p.size() * m.size(); }
};

struct SweepCell {
  double r, p, m;
  Estimate value;
};

/// Cells are ordered r-major, then p, then m; each draws from its own stream.
std::vector<SweepCell> sweep(const SweepGrid& grid, Target target, const Options& opts, std::uint64_t seed,
                             unsigned threads = 0);

/// Columns r,p,m,pofb,stderr.
void write_csv(std::ostream& os, const std::vector<SweepCell>& cells);

}  // namespace o2b::pofb
