// SPDX-License-Identifier: Apache-2.0
#include "pofb/pofb.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <random>
#include <string>

#include "core/error.hpp"
#include "core/format.hpp"
#include "core/parallel.hpp"

namespace o2b::pofb {

FusionCase FusionCase::from_ratios(double r, double p, double m, double mx, double vx) {
  if (!(r > 0.0) || !(vx > 0.0)) fail(ErrorKind::invalid_input, "variances must be positive");
  const double sd = std::sqrt(vx);
  return {mx, vx, mx + p * sd, r * vx, mx + m * sd};
}

Target parse_target(std::string_view name) {
  if (name == "x") return Target::vs_x;
  if (name == "y") return Target::vs_y;
  if (name == "min") return Target::vs_min;
  fail(ErrorKind::config, "unknown PoFB target '" + std::string(name) + "'");
}

FusionRule parse_rule(std::string_view name) {
  if (name == "kf") return FusionRule::kf;
  if (name == "particle") return FusionRule::particle;
  fail(ErrorKind::config, "unknown fusion rule '" + std::string(name) + "'");
}

std::string_view to_string(Target t) {
  switch (t) {
    case Target::vs_x: return "x";
    case Target::vs_y: return "y";
    case Target::vs_min: return "min";
  }
  return "?";
}

std::string_view to_string(FusionRule r) { return r == FusionRule::kf ? "kf" : "particle"; }

filters::ParticleSet particle_fusion(const GaussianBelief& prior, const GaussianBelief& likelihood, std::size_t n,
                                     RngStream& rng, bool resample, bool* degenerate) {
  if (n < 1) fail(ErrorKind::invalid_input, "particle fusion needs particles");
  filters::ParticleSet ps = filters::sample_particles(prior, n, rng);
  std::vector<double> logw(n);
  double top = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    logw[i] = mvn_logpdf(ps.particles[i], likelihood.mean, likelihood.cov);
    top = std::max(top, logw[i]);
  }
  const bool bad = !std::isfinite(top) || top < std::log(std::numeric_limits<double>::min());
  if (degenerate) *degenerate = bad;
  for (std::size_t i = 0; i < n; ++i) ps.weights[i] = bad ? 1.0 : std::exp(logw[i] - top);
  ps.normalize();
  if (resample) ps = filters::resample(ps, rng);
  return ps;
}

Estimate probability(const FusionCase& c, Target target, const Options& opts, RngStream& rng) {
  if (!(c.vx > 0.0) || !(c.vy > 0.0)) fail(ErrorKind::invalid_input, "PoFB variances must be positive");
  if (opts.samples < 1) fail(ErrorKind::invalid_input, "PoFB needs samples");
  const double sx = std::sqrt(c.vx), sy = std::sqrt(c.vy);
  Estimate out;

  std::normal_distribution<double> unit(0.0, 1.0);
  std::function<double()> draw_z;
  filters::ParticleSet ps;
  std::discrete_distribution<std::size_t> pick;
  if (opts.rule == FusionRule::kf) {
    const GaussianBelief z = kf_fuse(GaussianBelief::scalar(c.mx, c.vx), GaussianBelief::scalar(c.my, c.vy));
    const double mz = z.mean(0), sz = std::sqrt(z.cov(0, 0));
    draw_z = [&, mz, sz] { return mz + sz * unit(rng.engine()); };
  } else {
    ps = particle_fusion(GaussianBelief::scalar(c.my, c.vy), GaussianBelief::scalar(c.mx, c.vx), opts.particles, rng,
                         opts.resample, &out.degenerate);
    pick = std::discrete_distribution<std::size_t>(ps.weights.begin(), ps.weights.end());
    draw_z = [&] { return ps.particles[pick(rng.engine())](0); };
  }

  std::size_t wins = 0;
  for (std::size_t i = 0; i < opts.samples; ++i) {
    const double dz = std::abs(c.truth - draw_z());
    double ref = 0.0;
    switch (target) {
      case Target::vs_x: ref = std::abs(c.truth - (c.mx + sx * unit(rng.engine()))); break;
      case Target::vs_y: ref = std::abs(c.truth - (c.my + sy * unit(rng.engine()))); break;
      case Target::vs_min: {
        const double ex = std::abs(c.truth - (c.mx + sx * unit(rng.engine())));
        const double ey = std::abs(c.truth - (c.my + sy * unit(rng.engine())));
        ref = std::min(ex, ey);
        break;
      }
    }
    if (ref > dz) ++wins;
  }
  const double n = static_cast<double>(opts.samples);
  out.pofb = static_cast<double>(wins) / n;
  out.std_error = std::sqrt(out.pofb * (1.0 - out.pofb) / n);
  return out;
}

SweepGrid SweepGrid::standard() {
  SweepGrid g;
  for (int k = 0; k <= 20; ++k) g.r.push_back(std::pow(10.0, -2.0 + 0.25 * k));
  g.p = {0.0, 0.2, 0.4, 1.0, 2.0, 5.0, 10.0};
  g.m = {-10.0, -5.0, -2.0, -1.0, -0.1, 0.1, 1.0, 2.0, 5.0, 10.0, 30.0};
  return g;
}

std::vector<SweepCell> sweep(const SweepGrid& grid, Target target, const Options& opts, std::uint64_t seed,
                             unsigned threads) {
  if (grid.cells() == 0) fail(ErrorKind::invalid_input, "PoFB grid is empty");
  std::vector<SweepCell> cells(grid.cells());
  const std::size_t np = grid.p.size(), nm = grid.m.size();
  parallel_for(
      cells.size(),
      [&](std::size_t k) {
        const double r = grid.r[k / (np * nm)], p = grid.p[(k / nm) % np], m = grid.m[k % nm];
        RngStream rng(seed, stream_id(k, name_hash("pofb")));
        cells[k] = {r, p, m, probability(FusionCase::from_ratios(r, p, m), target, opts, rng)};
      },
      threads);
  return cells;
}

void write_csv(std::ostream& os, const std::vector<SweepCell>& cells) {
  os << "r,p,m,pofb,stderr\n";
  for (const auto& c : cells)
    os << fmt_num(c.r) << ',' << fmt_num(c.p) << ',' << fmt_num(c.m) << ',' << fmt_num(c.value.pofb) << ','
       << fmt_num(c.value.std_error) << '\n';
}

}  // namespace o2b::pofb
