// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>

#include "core/error.hpp"
#include "filters/kalman.hpp"
#include "filters/particle.hpp"
#include "filters/unscented.hpp"
#include "models/benchmarks.hpp"
#include "property_checks.hpp"

using namespace o2b;
using namespace o2b::filters;
using o2b::models::ModelB;
using o2b::models::ModelBParams;

TEST_SUITE("filters") {

TEST_CASE("kalman with an uninformative observation keeps the prediction") {
  ModelBParams p;
  p.R = 1e12;
  const ModelB b(p);
  const auto sys = *b.linear_system(2);
  const auto prior = GaussianBelief::scalar(3.0, 2.0);
  const auto pred = kalman_predict(prior, sys);
  const auto post = kalman_update(pred, scalar_vec(100.0), sys);
  CHECK(std::abs(post.mean(0) - pred.mean(0)) <= 1e-6 * std::abs(pred.mean(0)));
}

TEST_CASE("kalman without noise recovers the state") {
  ModelBParams p;
  p.R = 0.0;
  p.process_var = 0.0;
  const ModelB b(p);
  const double truth = 4.0;
  const auto sys = *b.linear_system(2);
  // Observation noise zero: the update snaps to the inverse of y.
  auto post = kalman_update(GaussianBelief::scalar(1.0, 5.0), b.observe(scalar_vec(truth), 2), sys);
  CHECK(post.mean(0) == doctest::Approx(truth));
  // Exact prior at the truth: the gain is zero.
  p.R = 1.0;
  const ModelB noisy(p);
  post = kalman_update(GaussianBelief::scalar(truth, 0.0), scalar_vec(9.0), *noisy.linear_system(2));
  CHECK(post.mean(0) == truth);
}

TEST_CASE("kalman rejects a singular innovation covariance") {
  ModelBParams p;
  p.R = 0.0;
  const ModelB b(p);
  CHECK_THROWS_AS(kalman_update(GaussianBelief::scalar(1.0, 0.0), scalar_vec(0.0), *b.linear_system(1)), Error);
}

TEST_CASE("EKF and UKF match the Kalman filter on the linear model") {
  const ModelB b;
  RngStream rng(1, 0);
  const auto traj = models::simulate(b, 100, rng);
  auto kf = b.initial_condition().prior, ekf = kf, ukf = kf;
  for (int t = 2; t <= 100; ++t) {
    const Vec& y = traj.observations[static_cast<std::size_t>(t - 1)];
    kf = kalman_step(kf, y, *b.linear_system(t));
    ekf = ekf_step(ekf, y, b, t);
    ukf = ukf_step(ukf, y, b, t);
    CHECK(std::abs(ekf.mean(0) - kf.mean(0)) <= 1e-10);
    CHECK(std::abs(ekf.cov(0, 0) - kf.cov(0, 0)) <= 1e-10);
    CHECK(std::abs(ukf.mean(0) - kf.mean(0)) <= 1e-8);
    CHECK(std::abs(ukf.cov(0, 0) - kf.cov(0, 0)) <= 1e-8);
  }
}

TEST_CASE("unscented transform of the identity and of a square") {
  Vec mean(2);
  mean << 1.0, -2.0;
  Mat cov(2, 2);
  cov << 2.0, 0.3, 0.3, 1.0;
  const auto id = unscented_transform(mean, cov, {}, [](const Vec& x) -> Vec { return x; });
  CHECK((id.mean - mean).cwiseAbs().maxCoeff() < 1e-10);
  CHECK((id.cov - cov).cwiseAbs().maxCoeff() < 1e-10);

  // Sigma points 0, +-sqrt(3) with weights 2/3, 1/6, 1/6: E[x^2] = 1.
  const auto sq = unscented_transform(scalar_vec(0.0), scalar_mat(1.0), {1.0, 0.0, 2.0},
                                      [](const Vec& x) -> Vec { return scalar_vec(x(0) * x(0)); });
  CHECK(sq.mean(0) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("unscented transform is exact for affine maps") {
  const auto r = checks::unscented_affine_exact();
  INFO(r.detail);
  CHECK(r.pass);
}

TEST_CASE("sigma points reject a non-PSD covariance") {
  CHECK_THROWS_AS(sigma_points(scalar_vec(0.0), scalar_mat(-1.0), {}), Error);
}

TEST_CASE("flat likelihood leaves the weights unchanged") {
  ModelBParams p;
  p.gain = 1e-100;
  const ModelB flat(p);
  ParticleSet ps;
  for (int i = 0; i < 10; ++i) {
    ps.particles.push_back(scalar_vec(i));
    ps.weights.push_back(1.0 + 0.05 * i);
  }
  ps.normalize();
  const auto before = ps.weights;
  RngStream rng(1, 0);
  const auto res = pf_step(ps, scalar_vec(0.3), 1, flat, {}, rng, false);
  CHECK_FALSE(res.resampled);
  for (std::size_t i = 0; i < before.size(); ++i) CHECK(ps.weights[i] == doctest::Approx(before[i]).epsilon(1e-12));
}

TEST_CASE("systematic resampling examples") {
  RngStream rng(1, 0);
  const int trials = 100000;
  std::vector<double> counts(4, 0.0);
  for (int k = 0; k < trials; ++k)
    for (auto i : systematic_indices({0.5, 0.5, 0.0, 0.0}, 4, rng)) counts[i] += 1.0;
  CHECK(counts[2] == 0.0);
  CHECK(counts[3] == 0.0);
  CHECK(std::abs(counts[0] / trials - 2.0) <= 0.02);
  CHECK(std::abs(counts[1] / trials - 2.0) <= 0.02);

  for (auto i : systematic_indices({0.0, 1.0, 0.0}, 3, rng)) CHECK(i == 1);
  std::vector<double> hits(5, 0.0);
  for (int k = 0; k < trials; ++k)
    for (auto i : systematic_indices(std::vector<double>(5, 0.2), 5, rng)) hits[i] += 1.0;
  for (double h : hits) CHECK(h / trials == doctest::Approx(1.0).epsilon(0.01));
}

TEST_CASE("resampling unbiasedness bound") {
  const auto r = checks::resampling_unbiased();
  INFO(r.detail);
  CHECK(r.pass);
}

TEST_CASE("ESS after resampling equals N") {
  ParticleSet ps;
  for (int i = 0; i < 50; ++i) {
    ps.particles.push_back(scalar_vec(i));
    ps.weights.push_back(i + 1.0);
  }
  ps.normalize();
  CHECK(ps.ess() < 50.0);
  RngStream rng(2, 0);
  const auto rs = resample(ps, rng);
  CHECK(rs.size() == 50);
  CHECK(rs.ess() == doctest::Approx(50.0).epsilon(1e-12));
}

TEST_CASE("normalize") {
  ParticleSet ps;
  ps.particles = {scalar_vec(0), scalar_vec(1)};
  ps.weights = {1.0, 3.0};
  CHECK(ps.normalize());
  CHECK(ps.weights[0] + ps.weights[1] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(ps.mean()(0) == doctest::Approx(0.75));
  ps.weights = {0.0, 0.0};
  CHECK_FALSE(ps.normalize());
}

TEST_CASE("likelihood underflow is a degeneracy event with uniform weights") {
  ModelBParams p;
  p.R = 1e-6;
  const ModelB b(p);
  RngStream rng(3, 0);
  auto ps = pf_initialize(GaussianBelief::scalar(0.0, 1.0), 20, {}, rng);
  const auto res = pf_step(ps, scalar_vec(1e6), 1, b, {}, rng, false);
  CHECK(res.degenerate);
  for (double w : ps.weights) CHECK(w == doctest::Approx(1.0 / 20));
}

TEST_CASE("every particle variant tracks the linear model") {
  const ModelB b;
  RngStream sim(5, 0);
  const auto traj = models::simulate(b, 40, sim);
  for (auto v : {PfVariant::sir, PfVariant::apf, PfVariant::gpf, PfVariant::ekpf, PfVariant::ukpf}) {
    PfOptions opts;
    opts.variant = v;
    RngStream rng(6, static_cast<std::uint64_t>(v));
    auto ps = pf_initialize(b.initial_condition().prior, 500, opts, rng);
    auto kf = b.initial_condition().prior;
    double worst = 0.0;
    for (int t = 1; t <= 40; ++t) {
      const Vec& y = traj.observations[static_cast<std::size_t>(t - 1)];
      const auto res = pf_step(ps, y, t, b, opts, rng, t > 1);
      kf = t > 1 ? kalman_step(kf, y, *b.linear_system(t)) : kalman_update(kf, y, *b.linear_system(t));
      worst = std::max(worst, std::abs(res.estimate(0) - kf.mean(0)));
    }
    INFO(to_string(v));
    CHECK(worst < 0.5);
  }
}

TEST_CASE("variant names") {
  CHECK(parse_pf_variant("ukpf") == PfVariant::ukpf);
  CHECK(to_string(PfVariant::apf) == "apf");
  CHECK_THROWS_AS(parse_pf_variant("xyz"), Error);
}

}
