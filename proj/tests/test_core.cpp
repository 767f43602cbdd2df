// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>
#include <vector>

#include "core/error.hpp"
#include "core/format.hpp"
#include "core/linalg.hpp"
#include "core/parallel.hpp"
#include "core/rng.hpp"
#include "core/stats.hpp"
#include "property_checks.hpp"

using namespace o2b;

TEST_SUITE("core") {

TEST_CASE("same seed and stream give the same sequence") {
  RngStream a(1, 0), b(1, 0);
  for (int i = 0; i < 100; ++i) {
    CHECK(a.uniform() == b.uniform());
    CHECK(a.normal() == b.normal());
  }
}

TEST_CASE("distinct streams differ and are uncorrelated") {
  RngStream a(1, stream_id(0, 0)), b(1, stream_id(1, 0));
  const int n = 200000;
  double sa = 0, sb = 0, sab = 0;
  for (int i = 0; i < n; ++i) {
    const double x = a.normal(), y = b.normal();
    sa += x;
    sb += y;
    sab += x * y;
  }
  const double corr = sab / n - (sa / n) * (sb / n);
  CHECK(std::abs(corr) < 4.0 / std::sqrt(n));
}

TEST_CASE("derive does not consume draws") {
  RngStream a(3, 4), b(3, 4);
  (void)a.derive(9);
  CHECK(a.uniform() == b.uniform());
  CHECK(a.derive(1).stream_id() == b.derive(1).stream_id());
  CHECK(a.derive(1).stream_id() != a.derive(2).stream_id());
}

TEST_CASE("name_hash is FNV-1a") {
  CHECK(name_hash("") == 0xcbf29ce484222325ULL);
  CHECK(name_hash("a") == 0xaf63dc4c8601ec8cULL);
}

TEST_CASE("gaussian_sample with zero covariance returns the mean") {
  RngStream rng(1, 0);
  const auto x = gaussian_sample(GaussianBelief::scalar(0.0, 0.0), rng);
  CHECK(x(0) == 0.0);
}

TEST_CASE("gaussian_sample moments") {
  RngStream rng(1, 0);
  const int n = 1000000;
  std::vector<double> xs(n);
  for (auto& x : xs) x = gaussian_sample(GaussianBelief::scalar(0.0, 1.0), rng)(0);
  CHECK(std::abs(mean_of(xs)) < 4e-3);
  CHECK(std::abs(sample_variance(xs) - 1.0) < 0.01);
}

TEST_CASE("gaussian_sample rejects a non-PSD covariance") {
  RngStream rng(1, 0);
  Mat cov(2, 2);
  cov << 1.0, 0.0, 0.0, -1.0;
  CHECK_THROWS_AS(gaussian_sample({Vec::Zero(2), cov}, rng), Error);
}

TEST_CASE("gamma_sample moments and support") {
  RngStream rng(2, 0);
  const int n = 1000000;
  std::vector<double> xs(n);
  bool positive = true;
  for (auto& x : xs) {
    x = gamma_sample({3.0, 2.0}, rng);
    positive = positive && x > 0.0;
  }
  CHECK(positive);
  CHECK(std::abs(mean_of(xs) - 1.5) < 0.01);
  CHECK(std::abs(sample_variance(xs) - 0.75) < 0.02);
}

TEST_CASE("gamma(1, 1) tail matches the exponential CDF") {
  RngStream rng(2, 1);
  const int n = 1000000;
  int above = 0;
  for (int i = 0; i < n; ++i) above += gamma_sample({1.0, 1.0}, rng) > 1.0;
  CHECK(std::abs(static_cast<double>(above) / n - std::exp(-1.0)) < 0.005);
}

TEST_CASE("gamma_sample rejects non-positive parameters") {
  RngStream rng(1, 0);
  CHECK_THROWS_AS(gamma_sample({0.0, 1.0}, rng), Error);
  CHECK_THROWS_AS(gamma_sample({1.0, -1.0}, rng), Error);
}

TEST_CASE("GammaSpec moments") {
  const GammaSpec g{3.0, 2.0};
  CHECK(g.mean() == doctest::Approx(1.5));
  CHECK(g.variance() == doctest::Approx(0.75));
}

TEST_CASE("kf_fuse examples") {
  auto f = kf_fuse(GaussianBelief::scalar(0, 400), GaussianBelief::scalar(0, 100));
  CHECK(f.mean(0) == doctest::Approx(0.0));
  CHECK(f.cov(0, 0) == doctest::Approx(80.0));
  f = kf_fuse(GaussianBelief::scalar(0, 400), GaussianBelief::scalar(50, 100));
  CHECK(f.mean(0) == doctest::Approx(40.0));
  CHECK(f.cov(0, 0) == doctest::Approx(80.0));
  f = kf_fuse(GaussianBelief::scalar(7, 3), GaussianBelief::scalar(7, 3));
  CHECK(f.mean(0) == doctest::Approx(7.0));
  CHECK(f.cov(0, 0) == doctest::Approx(1.5));
}

TEST_CASE("kf_fuse with two exact beliefs") {
  CHECK_THROWS_AS(kf_fuse(GaussianBelief::scalar(0, 0), GaussianBelief::scalar(1, 0)), Error);
  const auto f = kf_fuse(GaussianBelief::scalar(2, 0), GaussianBelief::scalar(2, 0));
  CHECK(f.mean(0) == 2.0);
}

TEST_CASE("kf_fuse identities hold on random inputs") {
  const auto r = checks::kf_fuse_identities();
  INFO(r.detail);
  CHECK(r.pass);
}

TEST_CASE("rmse") {
  CHECK(rmse({{1, 2, 3}}, {{1, 2, 3}}) == std::vector<double>{0, 0, 0});
  CHECK(rmse({{2}}, {{5}})[0] == doctest::Approx(3.0));
  CHECK(rmse({{-4}}, {{4}}, RmseMode::signed_error)[0] == doctest::Approx(8.0));
  CHECK(rmse({{-4}}, {{4}}, RmseMode::absolute)[0] == 0.0);
  // Two runs: sqrt((1 + 9) / 2).
  CHECK(rmse({{0}, {0}}, {{1}, {3}})[0] == doctest::Approx(std::sqrt(5.0)));
  CHECK_THROWS_AS(rmse({{1, 2}}, {{1}}), Error);
  CHECK_THROWS_AS(rmse({}, {}), Error);
}

TEST_CASE("psd_factor handles semidefinite input") {
  Mat cov(2, 2);
  cov << 1.0, 1.0, 1.0, 1.0;
  const Mat l = psd_factor(cov);
  CHECK((l * l.transpose() - cov).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(is_symmetric_psd(cov));
  cov(0, 1) = 2.0;
  CHECK_FALSE(is_symmetric_psd(cov));
}

TEST_CASE("parallel_for results do not depend on the thread count") {
  std::vector<double> a(100), b(100);
  auto fill = [](std::vector<double>& out) {
    return [&out](std::size_t i) {
      RngStream rng(1, stream_id(i, 0));
      out[i] = rng.normal();
    };
  };
  parallel_for(a.size(), fill(a), 1);
  parallel_for(b.size(), fill(b), 4);
  CHECK(a == b);
  CHECK_THROWS(parallel_for(10, [](std::size_t i) { if (i == 5) fail(ErrorKind::numerical, "x"); }, 3));
}

TEST_CASE("fmt_num is the shortest round-trip form") {
  CHECK(fmt_num(0.1) == "0.1");
  CHECK(fmt_num(2.0) == "2");
  CHECK(std::stod(fmt_num(1.0 / 3.0)) == 1.0 / 3.0);
}

}
