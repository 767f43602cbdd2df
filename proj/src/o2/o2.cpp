// SPDX-License-Identifier: Apache-2.0
#include "o2/o2.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "core/error.hpp"

namespace o2b::o2 {

SignStrategy parse_sign_strategy(std::string_view name) {
  if (name == "transition-prediction") return SignStrategy::transition_prediction;
  if (name == "filter-assisted") return SignStrategy::filter_assisted;
  if (name == "oracle") return SignStrategy::oracle;
  if (name == "none") return SignStrategy::none;
  fail(ErrorKind::config, "unknown sign strategy '" + std::string(name) + "'");
}

std::optional<Vec> sign_reference(const models::StateSpaceModel& model, int t, SignStrategy strategy,
                                  const SignContext& ctx) {
  switch (strategy) {
    case SignStrategy::transition_prediction:
      if (ctx.previous_estimate) return model.transition(*ctx.previous_estimate, t);
      return std::nullopt;
    case SignStrategy::filter_assisted: return ctx.filter_estimate;
    case SignStrategy::oracle: return ctx.true_state;
    case SignStrategy::none: return std::nullopt;
  }
  return std::nullopt;
}

Vec select_candidate(const std::vector<Vec>& candidates, const std::optional<Vec>& reference) {
  if (candidates.empty()) fail(ErrorKind::invalid_input, "no candidates to select from");
  std::size_t best = 0;
  for (std::size_t i = 1; i < candidates.size(); ++i) {
    if (reference) {
      if ((candidates[i] - *reference).squaredNorm() < (candidates[best] - *reference).squaredNorm()) best = i;
    } else if (candidates[i](0) > candidates[best](0)) {
      best = i;
    }
  }
  return candidates[best];
}

O2Result o2_estimate(const models::StateSpaceModel& model, const Vec& y, int t, SignStrategy strategy,
                     const SignContext& ctx) {
  const models::Inversion inv = model.invert_observation(y, t);
  O2Result out;
  out.clamped = inv.clamped;
  if (inv.candidates.empty()) {
    out.failed = true;
    return out;
  }
  out.estimate = select_candidate(inv.candidates, sign_reference(model, t, strategy, ctx));
  return out;
}

O2Result o2_debias(const models::StateSpaceModel& model, const Vec& y, int t, const DebiasSpec& spec,
                   SignStrategy strategy, const SignContext& ctx, RngStream& rng) {
  if (spec.samples < 1) fail(ErrorKind::invalid_input, "debias sample count must be positive");
  const std::optional<Vec> reference = sign_reference(model, t, strategy, ctx);
  Vec sum = Vec::Zero(model.state_dim());
  int valid = 0;
  for (int i = 0; i < spec.samples; ++i) {
    const models::Inversion inv = model.invert_observation(y - model.sample_observation_noise(rng), t);
    if (inv.clamped || inv.candidates.empty()) continue;
    sum += select_candidate(inv.candidates, reference);
    ++valid;
  }
  if (valid == 0) {
    O2Result out = o2_estimate(model, y, t, strategy, ctx);
    out.valid_samples = 0;
    return out;
  }
  O2Result out;
  out.estimate = sum / static_cast<double>(valid);
  out.valid_samples = valid;
  return out;
}

GaussianBelief o2_multisensor_fuse(const std::vector<GaussianBelief>& estimates) {
  if (estimates.empty()) fail(ErrorKind::invalid_input, "nothing to fuse");
  if (estimates.size() == 1) return estimates.front();
  const Eigen::Index n = estimates.front().mean.size();
  Mat info = Mat::Zero(n, n);
  Vec info_mean = Vec::Zero(n);
  for (const auto& e : estimates) {
    if (e.mean.size() != n || e.cov.rows() != n) fail(ErrorKind::invalid_input, "fused estimates differ in dimension");
    Eigen::LLT<Mat> llt(symmetrize(e.cov));
    if (llt.info() != Eigen::Success) fail(ErrorKind::invalid_input, "fused estimates need positive variances");
    const Mat inv = llt.solve(Mat::Identity(n, n));
    info += inv;
    info_mean += inv * e.mean;
  }
  GaussianBelief out;
  out.cov = symmetrize(info.inverse());
  out.mean = out.cov * info_mean;
  return out;
}

namespace {

Mat numeric_jacobian(const std::function<Vec(const Vec&)>& h, const Vec& x) {
  const Vec base = h(x);
  Mat j(base.size(), x.size());
  for (Eigen::Index k = 0; k < x.size(); ++k) {
    const double step = 1e-7 * std::max(1.0, std::abs(x(k)));
    Vec xp = x;
    xp(k) += step;
    j.col(k) = (h(xp) - base) / step;
  }
  return j;
}

}  // namespace

SolveResult o2_solve_system(const std::vector<SuiteSensor>& suite, const std::vector<Vec>& observations,
                            const Vec& initial_guess) {
  if (suite.size() != observations.size()) fail(ErrorKind::invalid_input, "one observation per sensor expected");
  const Eigen::Index m = initial_guess.size();
  Eigen::Index rows = 0;
  for (const auto& y : observations) rows += y.size();
  if (rows < m) fail(ErrorKind::underdetermined, "fewer observation equations than state dimensions");
  const bool weighted =
      std::all_of(suite.begin(), suite.end(), [](const SuiteSensor& s) { return s.noise_cov.size() > 0; });

  using Dyn = Eigen::MatrixXd;
  auto assemble = [&](const Vec& x, Dyn* jac) {
    Eigen::VectorXd r(rows);
    if (jac) jac->resize(rows, m);
    Eigen::Index at = 0;
    for (std::size_t s = 0; s < suite.size(); ++s) {
      const auto& sensor = suite[s];
      Vec res = observations[s] - sensor.observe(x);
      Mat j = jac ? (sensor.jacobian ? sensor.jacobian(x) : numeric_jacobian(sensor.observe, x)) : Mat();
      if (weighted) {
        // Whitening by the inverse Cholesky factor gives inverse-variance weights.
        Eigen::LLT<Mat> llt(symmetrize(sensor.noise_cov));
        if (llt.info() != Eigen::Success)
          fail(ErrorKind::invalid_input, "sensor noise covariance is not positive definite");
        res = llt.matrixL().solve(res);
        if (jac) j = llt.matrixL().solve(j);
      }
      r.segment(at, res.size()) = res;
      if (jac) jac->block(at, 0, j.rows(), m) = j;
      at += res.size();
    }
    return r;
  };

  SolveResult out;
  Vec x = initial_guess;
  for (int it = 1; it <= 50; ++it) {
    Dyn j;
    const Eigen::VectorXd r = assemble(x, &j);
    Eigen::ColPivHouseholderQR<Dyn> qr(j);
    qr.setThreshold(1e-10);
    if (qr.rank() < m) fail(ErrorKind::underdetermined, "observation Jacobian is rank deficient");
    const Eigen::VectorXd dx = qr.solve(r);
    const double cost = r.squaredNorm();
    double scale = 1.0;
    Vec next = x + Vec(dx);
    // Backtrack when the full step increases the residual.
    while (scale > 1e-6 && assemble(next, nullptr).squaredNorm() > cost) {
      scale *= 0.5;
      next = x + scale * Vec(dx);
    }
    const double step = (next - x).norm();
    x = next;
    out.iterations = it;
    if (step < 1e-9) {
      out.converged = true;
      break;
    }
  }
  out.estimate = x;
  return out;
}

Mat fisher_information(double sigma2) {
  if (!(sigma2 > 0.0)) fail(ErrorKind::invalid_input, "variance must be positive");
  Mat f = Mat::Zero(2, 2);
  f(0, 0) = 1.0 / sigma2;
  f(1, 1) = 1.0 / (2.0 * sigma2 * sigma2);
  return f;
}

Mat fisher_crb(double sigma2) {
  if (!(sigma2 > 0.0)) fail(ErrorKind::invalid_input, "variance must be positive");
  Mat c = Mat::Zero(2, 2);
  c(0, 0) = sigma2;
  c(1, 1) = 2.0 * sigma2 * sigma2;
  return c;
}

}  // namespace o2b::o2
