// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "core/error.hpp"
#include "pofb/pofb.hpp"

using namespace o2b;
using namespace o2b::pofb;

namespace {

Estimate run(double r, double p, double m, Target target, FusionRule rule = FusionRule::kf,
             std::size_t samples = 100000, std::uint64_t stream = 0) {
  Options o;
  o.rule = rule;
  o.samples = samples;
  RngStream rng(42, stream);
  return probability(FusionCase::from_ratios(r, p, m), target, o, rng);
}

}  // namespace

TEST_SUITE("pofb") {

TEST_CASE("case 1 matches the ratio-of-normals closed form") {
  // z ~ N(0, 80), x ~ N(0, 400): |z|/|x| is a scaled |Cauchy|.
  const double oracle = 2.0 / std::numbers::pi * std::atan(std::sqrt(400.0 / 80.0));
  CHECK(oracle == doctest::Approx(0.732).epsilon(1e-3));
  FusionCase c{0.0, 400.0, 0.0, 100.0, 0.0};
  Options o;
  RngStream rng(1, 0);
  const auto e = probability(c, Target::vs_x, o, rng);
  CHECK(std::abs(e.pofb - oracle) < 0.01);
  CHECK(std::abs(e.pofb - 0.732) < 0.01);
}

TEST_CASE("from_ratios") {
  const auto c = FusionCase::from_ratios(4.0, 2.0, -1.0, 1.0, 9.0);
  CHECK(c.vy == 36.0);
  CHECK(c.my == 7.0);
  CHECK(c.truth == -2.0);
  CHECK(c.variance_ratio() == 4.0);
}

TEST_CASE("large variance ratio tends to one half") {
  for (auto t : {Target::vs_x, Target::vs_min}) CHECK(std::abs(run(1000, 3, 0, t).pofb - 0.5) < 0.01);
  CHECK(std::abs(run(1000, 0, 0, Target::vs_x).pofb - 0.5) < 0.01);
}

TEST_CASE("small variance ratio with a large bias loses against x") {
  CHECK(run(0.01, 5, 0, Target::vs_x).pofb < 0.05);
}

TEST_CASE("a strongly biased prediction is beaten at every ratio") {
  for (double r : SweepGrid::standard().r) CHECK(run(r, 10, 0, Target::vs_y, FusionRule::kf, 20000).pofb > 0.5);
}

TEST_CASE("roles of x and y are symmetric without bias") {
  const auto x = run(1, 0, 0, Target::vs_x, FusionRule::kf, 100000, 1);
  const auto y = run(1, 0, 0, Target::vs_y, FusionRule::kf, 100000, 2);
  CHECK(std::abs(x.pofb - y.pofb) < 4.0 * std::hypot(x.std_error, y.std_error));
}

TEST_CASE("truth far outside the means stays below one half") {
  const auto g = SweepGrid::standard();
  for (double r : g.r)
    for (double p : g.p) CHECK(run(r, p, -10, Target::vs_min, FusionRule::kf, 5000).pofb < 0.5);
}

TEST_CASE("single-cell grid and bias monotonicity") {
  SweepGrid g{{1.0}, {0.0, 10.0}, {0.0}};
  const auto cells = sweep(g, Target::vs_x, {}, 3, 1);
  REQUIRE(cells.size() == 2);
  CHECK(cells[0].value.pofb > 0.5);
  CHECK(cells[0].value.pofb > cells[1].value.pofb);
}

TEST_CASE("sweep invariants") {
  SweepGrid g = SweepGrid::standard();
  g.m = {0.0};
  Options o;
  o.samples = 20000;
  const auto cells = sweep(g, Target::vs_x, o, 5, 2);
  for (const auto& c : cells) {
    CHECK(c.value.pofb >= 0.0);
    CHECK(c.value.pofb <= 1.0);
    if (c.p == 0.0) CHECK(c.value.pofb >= 0.5 - 3.0 * c.value.std_error);
  }
  // Negating the bias mirrors the problem.
  SweepGrid neg = g;
  for (auto& p : neg.p) p = -p;
  const auto mirrored = sweep(neg, Target::vs_x, o, 6, 2);
  for (std::size_t k = 0; k < cells.size(); ++k)
    CHECK(std::abs(cells[k].value.pofb - mirrored[k].value.pofb) <=
          4.0 * std::hypot(cells[k].value.std_error, mirrored[k].value.std_error) + 1e-12);
}

TEST_CASE("sweep is independent of the thread count") {
  SweepGrid g{{0.1, 1.0, 10.0}, {0.0, 2.0}, {0.0, 1.0}};
  Options o;
  o.samples = 2000;
  const auto a = sweep(g, Target::vs_min, o, 9, 1);
  const auto b = sweep(g, Target::vs_min, o, 9, 3);
  for (std::size_t k = 0; k < a.size(); ++k) CHECK(a[k].value.pofb == b[k].value.pofb);
  std::ostringstream os;
  write_csv(os, a);
  CHECK(os.str().rfind("r,p,m,pofb,stderr\n0.1,0,0,", 0) == 0);
  CHECK_THROWS_AS(sweep({}, Target::vs_x, o, 1), Error);
}

TEST_CASE("particle fusion against the Kalman fusion") {
  RngStream rng(4, 0);
  const std::size_t n = 100000;
  const auto prior = GaussianBelief::scalar(50.0, 100.0), lik = GaussianBelief::scalar(0.0, 400.0);
  auto ps = particle_fusion(prior, lik, n, rng);
  const auto kf = kf_fuse(lik, prior);
  const double ess = ps.ess();
  const double se = std::sqrt(kf.cov(0, 0) / ess);
  CHECK(std::abs(ps.mean()(0) - kf.mean(0)) <= 3.0 * se);
  CHECK(ps.mean()(0) == doctest::Approx(40.0).epsilon(0.01));
}

TEST_CASE("particle fusion with a flat likelihood keeps the prior sample") {
  RngStream rng(4, 1);
  auto ps = particle_fusion(GaussianBelief::scalar(3.0, 1.0), GaussianBelief::scalar(0.0, 1e12), 10000, rng);
  double plain = 0.0;
  for (const auto& p : ps.particles) plain += p(0);
  plain /= static_cast<double>(ps.size());
  CHECK(ps.mean()(0) == doctest::Approx(plain).epsilon(1e-9));
}

TEST_CASE("particle rule agrees with the kf rule on a coarse grid") {
  for (double r : {0.01, 0.1, 1.0, 10.0, 100.0})
    for (double p : {0.0, 1.0, 2.0, 5.0, 10.0}) {
      const auto kf = run(r, p, 0, Target::vs_x, FusionRule::kf, 20000, 10);
      const auto pf = run(r, p, 0, Target::vs_x, FusionRule::particle, 20000, 11);
      CHECK(std::abs(kf.pofb - pf.pofb) < 0.03);
    }
}

TEST_CASE("names and bad input") {
  CHECK(parse_target("min") == Target::vs_min);
  CHECK(parse_rule("particle") == FusionRule::particle);
  CHECK_THROWS_AS(parse_target("z"), Error);
  FusionCase bad{0, 0, 0, 1, 0};
  RngStream rng(1, 0);
  CHECK_THROWS_AS(probability(bad, Target::vs_x, {}, rng), Error);
}

}
