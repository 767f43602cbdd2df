// SPDX-License-Identifier: Apache-2.0
#include "filters/particle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "core/error.hpp"
#include "filters/kalman.hpp"

namespace o2b::filters {

namespace {

// Below this every likelihood would underflow in linear scale.
const double kUnderflowLog = std::log(std::numeric_limits<double>::min());

// Turns log weights into normalized weights. Returns false (and leaves
// uniform weights) when every entry underflows.
bool normalize_log(const std::vector<double>& logw, std::vector<double>& w) {
  const double top = *std::max_element(logw.begin(), logw.end());
  w.resize(logw.size());
  if (!std::isfinite(top) || top < kUnderflowLog) {
    std::fill(w.begin(), w.end(), 1.0 / static_cast<double>(w.size()));
    return false;
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < logw.size(); ++i) {
    w[i] = std::exp(logw[i] - top);
    sum += w[i];
  }
  for (double& x : w) x /= sum;
  return true;
}

Vec weighted_mean(const std::vector<Vec>& xs, const std::vector<double>& w) {
  Vec m = Vec::Zero(xs.front().size());
  for (std::size_t i = 0; i < xs.size(); ++i) m += w[i] * xs[i];
  return m;
}

ParticleSet gather(const ParticleSet& ps, const std::vector<std::size_t>& idx) {
  ParticleSet out;
  out.particles.reserve(idx.size());
  for (std::size_t i : idx) out.particles.push_back(ps.particles[i]);
  if (!ps.covs.empty()) {
    out.covs.reserve(idx.size());
    for (std::size_t i : idx) out.covs.push_back(ps.covs[i]);
  }
  out.weights.assign(idx.size(), 1.0 / static_cast<double>(idx.size()));
  return out;
}

double proposal_logpdf(const Vec& x, const GaussianBelief& g) {
  if (x.size() == 1) return g.cov(0, 0) > 0.0 ? normal_logpdf(x(0), g.mean(0), g.cov(0, 0)) : 0.0;
  return mvn_logpdf(x, g.mean, g.cov);
}

}  // namespace

bool ParticleSet::normalize() {
  double sum = 0.0;
  for (double w : weights) sum += w;
  if (!(sum > 0.0) || !std::isfinite(sum)) return false;
  for (double& w : weights) w /= sum;
  return true;
}

double ParticleSet::ess() const {
  double s = 0.0, s2 = 0.0;
  for (double w : weights) {
    s += w;
    s2 += w * w;
  }
  return s2 > 0.0 ? s * s / s2 : 0.0;
}

Vec ParticleSet::mean() const {
  double sum = 0.0;
  for (double w : weights) sum += w;
  Vec m = weighted_mean(particles, weights);
  return m / sum;
}

Mat ParticleSet::covariance() const {
  const Vec m = mean();
  double sum = 0.0;
  for (double w : weights) sum += w;
  Mat c = Mat::Zero(m.size(), m.size());
  for (std::size_t i = 0; i < particles.size(); ++i) {
    const Vec d = particles[i] - m;
    c += weights[i] * d * d.transpose();
  }
  return symmetrize(c / sum);
}

ParticleSet sample_particles(const GaussianBelief& belief, std::size_t n, RngStream& rng) {
  if (n == 0) fail(ErrorKind::invalid_input, "particle count must be at least one");
  ParticleSet ps;
  ps.particles.reserve(n);
  const Mat l = psd_factor(belief.cov);
  for (std::size_t i = 0; i < n; ++i) {
    Vec z(belief.mean.size());
    for (Eigen::Index k = 0; k < z.size(); ++k) z(k) = rng.normal();
    ps.particles.push_back(belief.mean + l * z);
  }
  ps.weights.assign(n, 1.0 / static_cast<double>(n));
  return ps;
}

std::vector<std::size_t> systematic_indices(const std::vector<double>& weights, std::size_t n, RngStream& rng) {
  if (weights.empty()) fail(ErrorKind::invalid_input, "cannot resample an empty particle set");
  double total = 0.0;
  for (double w : weights) total += w;
  if (!(total > 0.0)) fail(ErrorKind::invalid_input, "resampling weights sum to zero");
  std::vector<std::size_t> idx(n);
  const double step = total / static_cast<double>(n);
  double u = rng.uniform() * step;
  double cum = weights[0];
  std::size_t j = 0;
  for (std::size_t i = 0; i < n; ++i) {
    while (u > cum && j + 1 < weights.size()) cum += weights[++j];
    idx[i] = j;
    u += step;
  }
  return idx;
}

ParticleSet resample(const ParticleSet& ps, RngStream& rng) {
  return gather(ps, systematic_indices(ps.weights, ps.size(), rng));
}

PfVariant parse_pf_variant(std::string_view name) {
  if (name == "sir") return PfVariant::sir;
  if (name == "apf") return PfVariant::apf;
  if (name == "gpf") return PfVariant::gpf;
  if (name == "ekpf") return PfVariant::ekpf;
  if (name == "ukpf") return PfVariant::ukpf;
  fail(ErrorKind::config, "unknown particle filter variant '" + std::string(name) + "'");
}

std::string_view to_string(PfVariant v) {
  switch (v) {
    case PfVariant::sir: return "sir";
    case PfVariant::apf: return "apf";
    case PfVariant::gpf: return "gpf";
    case PfVariant::ekpf: return "ekpf";
    case PfVariant::ukpf: return "ukpf";
  }
  return "?";
}

ParticleSet pf_initialize(const GaussianBelief& prior, std::size_t n, const PfOptions& opts, RngStream& rng) {
  ParticleSet ps = sample_particles(prior, n, rng);
  if (opts.variant == PfVariant::ekpf || opts.variant == PfVariant::ukpf) ps.covs.assign(n, prior.cov);
  return ps;
}

PfStepResult pf_step(ParticleSet& ps, const Vec& y, int t, const models::StateSpaceModel& model,
                     const PfOptions& opts, RngStream& rng, bool propagate) {
  const std::size_t n = ps.size();
  if (n == 0) fail(ErrorKind::invalid_input, "particle set is empty");
  PfStepResult res;
  std::vector<double> logw(n);

  switch (opts.variant) {
    case PfVariant::sir: {
      for (std::size_t i = 0; i < n; ++i) {
        if (propagate) ps.particles[i] = model.sample_transition(ps.particles[i], t, rng);
        logw[i] = std::log(ps.weights[i]) + model.observation_loglik(y, ps.particles[i], t);
      }
      break;
    }
    case PfVariant::apf: {
      if (!propagate) {
        for (std::size_t i = 0; i < n; ++i)
          logw[i] = std::log(ps.weights[i]) + model.observation_loglik(y, ps.particles[i], t);
        break;
      }
      // First stage: look ahead through the transition mean.
      std::vector<double> first(n), look(n);
      for (std::size_t i = 0; i < n; ++i) {
        const Vec mu = model.transition(ps.particles[i], t) + model.process_noise_mean();
        look[i] = model.observation_loglik(y, mu, t);
        first[i] = std::log(ps.weights[i]) + look[i];
      }
      std::vector<double> first_w;
      if (!normalize_log(first, first_w)) res.degenerate = true;
      const auto idx = systematic_indices(first_w, n, rng);
      std::vector<Vec> next(n);
      for (std::size_t i = 0; i < n; ++i) {
        next[i] = model.sample_transition(ps.particles[idx[i]], t, rng);
        logw[i] = model.observation_loglik(y, next[i], t) - (res.degenerate ? 0.0 : look[idx[i]]);
      }
      ps.particles = std::move(next);
      res.resampled = true;
      break;
    }
    case PfVariant::gpf: {
      if (propagate) {
        // Redraw from the Gaussian summary of the current posterior, then push
        // through the transition prior.
        const GaussianBelief g{ps.mean(), ps.covariance()};
        ps = sample_particles(g, n, rng);
        for (auto& x : ps.particles) x = model.sample_transition(x, t, rng);
      }
      for (std::size_t i = 0; i < n; ++i)
        logw[i] = std::log(ps.weights[i]) + model.observation_loglik(y, ps.particles[i], t);
      break;
    }
    case PfVariant::ekpf:
    case PfVariant::ukpf: {
      if (!propagate) {
        for (std::size_t i = 0; i < n; ++i)
          logw[i] = std::log(ps.weights[i]) + model.observation_loglik(y, ps.particles[i], t);
        break;
      }
      const auto& prop = opts.proposal_model ? *opts.proposal_model : model;
      if (ps.covs.size() != n) fail(ErrorKind::invalid_input, "EKPF/UKPF particles need per-particle covariances");
      for (std::size_t i = 0; i < n; ++i) {
        const Vec prev = ps.particles[i];
        GaussianBelief g{prev, ps.covs[i]};
        try {
          g = opts.variant == PfVariant::ekpf ? ekf_step(g, y, prop, t) : ukf_step(g, y, prop, t, opts.unscented);
        } catch (const Error&) {
          // Fall back to the transition prior for this particle.
          g = {model.transition(prev, t) + model.process_noise_mean(), model.process_noise_cov()};
        }
        const Mat l = psd_factor(g.cov);
        Vec z(g.mean.size());
        for (Eigen::Index k = 0; k < z.size(); ++k) z(k) = rng.normal();
        const Vec x = g.mean + l * z;
        logw[i] = std::log(ps.weights[i]) + model.observation_loglik(y, x, t) + model.transition_logpdf(x, prev, t) -
                  proposal_logpdf(x, g);
        ps.particles[i] = x;
        ps.covs[i] = g.cov;
      }
      break;
    }
  }

  if (!normalize_log(logw, ps.weights)) res.degenerate = true;
  res.estimate = weighted_mean(ps.particles, ps.weights);
  if (ps.ess() < opts.ess_threshold * static_cast<double>(n)) {
    ps = resample(ps, rng);
    res.resampled = true;
  }
  return res;
}

}  // namespace o2b::filters
