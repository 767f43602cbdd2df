// SPDX-License-Identifier: Apache-2.0
#include "property_checks.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "core/stats.hpp"
#include "filters/particle.hpp"
#include "filters/unscented.hpp"
#include "models/benchmarks.hpp"
#include "mtt/ospa.hpp"
#include "mtt/sensor.hpp"
#include "o2/o2.hpp"

namespace o2b::checks {

namespace {

std::string join(const std::vector<std::string>& parts) {
  std::string out;
  for (const auto& p : parts) out += (out.empty() ? "" : "; ") + p;
  return out;
}

Mat random_psd(int n, std::mt19937_64& gen) {
  std::normal_distribution<double> nd;
  Mat a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = nd(gen);
  return a * a.transpose() + Mat::Identity(n, n) * 0.1;
}

}  // namespace

CheckResult resampling_unbiased() {
  CheckResult r{"resampling unbiasedness", true, ""};
  std::vector<std::string> bad;
  std::mt19937_64 gen(7);
  std::uniform_real_distribution<double> ud(0.0, 1.0);
  const int trials = 100000;
  std::vector<std::vector<double>> cases{{0.5, 0.5, 0.0, 0.0}};
  for (int c = 0; c < 3; ++c) {
    std::vector<double> w(10);
    for (auto& x : w) x = -std::log(ud(gen));  // flat Dirichlet
    double s = 0.0;
    for (double x : w) s += x;
    for (auto& x : w) x /= s;
    cases.push_back(w);
  }
  double worst = 0.0;
  for (std::size_t c = 0; c < cases.size(); ++c) {
    const auto& w = cases[c];
    const std::size_t n = w.size();
    std::vector<double> counts(n, 0.0);
    RngStream rng(11, c);
    for (int k = 0; k < trials; ++k)
      for (std::size_t i : filters::systematic_indices(w, n, rng)) counts[i] += 1.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double mean = counts[i] / trials;
      const double expect = static_cast<double>(n) * w[i];
      const double bound = 4.0 * std::sqrt(expect * (1.0 - w[i]) / trials);
      const double dev = std::abs(mean - expect);
      if (bound > 0.0) worst = std::max(worst, dev / bound);
      if (dev > bound) bad.push_back("case " + std::to_string(c) + " particle " + std::to_string(i));
    }
  }
  r.pass = bad.empty();
  r.detail = bad.empty() ? "worst deviation " + std::to_string(worst) + " of the bound" : join(bad);
  return r;
}

CheckResult unscented_affine_exact() {
  CheckResult r{"unscented transform affine exactness", true, ""};
  std::mt19937_64 gen(3);
  std::normal_distribution<double> nd;
  double worst = 0.0;
  for (int n = 1; n <= 4; ++n) {
    for (int k = 1; k <= 4; ++k) {
      for (int rep = 0; rep < 5; ++rep) {
        Vec mean(n);
        for (int i = 0; i < n; ++i) mean(i) = nd(gen);
        const Mat cov = random_psd(n, gen);
        Mat a(k, n);
        Vec b(k);
        for (int i = 0; i < k; ++i) {
          b(i) = nd(gen);
          for (int j = 0; j < n; ++j) a(i, j) = nd(gen);
        }
        const auto ut = filters::unscented_transform(mean, cov, {}, [&](const Vec& x) -> Vec { return a * x + b; });
        worst = std::max(worst, (ut.mean - (a * mean + b)).cwiseAbs().maxCoeff());
        worst = std::max(worst, (ut.cov - a * cov * a.transpose()).cwiseAbs().maxCoeff());
        worst = std::max(worst, (ut.cross_cov - cov * a.transpose()).cwiseAbs().maxCoeff());
      }
    }
  }
  r.pass = worst <= 1e-10;
  r.detail = "max abs error " + std::to_string(worst);
  return r;
}

CheckResult ospa_axioms() {
  CheckResult r{"OSPA metric axioms", true, ""};
  std::mt19937_64 gen(5);
  std::uniform_real_distribution<double> pos(-150.0, 150.0);
  std::uniform_int_distribution<int> card(0, 4);
  auto random_set = [&](int n) {
    std::vector<mtt::Point> s;
    for (int i = 0; i < n; ++i) s.emplace_back(pos(gen), pos(gen));
    return s;
  };
  const mtt::OspaParams params{100.0, 2.0};
  int failures = 0;
  std::vector<std::string> bad;
  for (int k = 0; k < 1000; ++k) {
    const auto x = random_set(card(gen)), y = random_set(card(gen)), z = random_set(card(gen));
    const double dxy = mtt::ospa(x, y, params), dyx = mtt::ospa(y, x, params);
    const double dyz = mtt::ospa(y, z, params), dxz = mtt::ospa(x, z, params);
    if (std::abs(dxy - dyx) > 1e-9) ++failures, bad.push_back("symmetry");
    if (dxy < 0.0 || dxy > params.cutoff + 1e-12) ++failures, bad.push_back("range");
    if (mtt::ospa(x, x, params) > 1e-9) ++failures, bad.push_back("identity");
    if (dxz > dxy + dyz + 1e-9) ++failures, bad.push_back("triangle");
  }
  std::sort(bad.begin(), bad.end());
  bad.erase(std::unique(bad.begin(), bad.end()), bad.end());
  r.pass = failures == 0;
  r.detail = failures == 0 ? "1000 random triples" : std::to_string(failures) + " violations: " + join(bad);
  return r;
}

CheckResult kf_fuse_identities() {
  CheckResult r{"kf_fuse identities", true, ""};
  std::mt19937_64 gen(9);
  std::uniform_real_distribution<double> mean(-100.0, 100.0);
  std::uniform_real_distribution<double> logv(-3.0, 3.0);
  double worst = 0.0;
  std::vector<std::string> bad;
  for (int k = 0; k < 10000; ++k) {
    const double ma = mean(gen), mb = mean(gen);
    const double va = std::pow(10.0, logv(gen)), vb = std::pow(10.0, logv(gen));
    const auto ab = kf_fuse(GaussianBelief::scalar(ma, va), GaussianBelief::scalar(mb, vb));
    const auto ba = kf_fuse(GaussianBelief::scalar(mb, vb), GaussianBelief::scalar(ma, va));
    const double m = (va * mb + vb * ma) / (va + vb);
    const double v = va * vb / (va + vb);
    const double scale = std::max({1.0, std::abs(ma), std::abs(mb)});
    worst = std::max({worst, std::abs(ab.mean(0) - m) / scale, std::abs(ab.cov(0, 0) - v) / std::max(v, 1e-300),
                      std::abs(ab.mean(0) - ba.mean(0)) / scale, std::abs(ab.cov(0, 0) - ba.cov(0, 0)) / v});
    if (ab.cov(0, 0) > std::min(va, vb)) bad.push_back("variance not reduced");
    if (ab.mean(0) < std::min(ma, mb) || ab.mean(0) > std::max(ma, mb)) bad.push_back("mean outside the interval");
  }
  const auto same = kf_fuse(GaussianBelief::scalar(3.0, 2.0), GaussianBelief::scalar(3.0, 2.0));
  worst = std::max({worst, std::abs(same.mean(0) - 3.0), std::abs(same.cov(0, 0) - 1.0)});
  r.pass = bad.empty() && worst <= 1e-12;
  r.detail = bad.empty() ? "max relative error " + std::to_string(worst) : join(bad);
  return r;
}

CheckResult model_round_trips() {
  CheckResult r{"model round-trip inversions", true, ""};
  std::mt19937_64 gen(13);
  std::vector<std::string> bad;
  double worst = 0.0;
  auto check_model = [&](const std::string& label, const models::StateSpaceModel& m, int t,
                         std::uniform_real_distribution<double> range) {
    for (int k = 0; k < 1000; ++k) {
      Vec x(m.state_dim());
      for (int i = 0; i < x.size(); ++i) x(i) = range(gen);
      const auto inv = m.invert_observation(m.observe(x, t), t);
      double best = std::numeric_limits<double>::infinity();
      for (const auto& c : inv.candidates) best = std::min(best, (c - x).cwiseAbs().maxCoeff());
      worst = std::max(worst, best);
      if (!(best <= 1e-9)) {
        bad.push_back(label);
        return;
      }
    }
  };
  const models::ModelA a;
  check_model("A quadratic", a, 30, std::uniform_real_distribution<double>(-30.0, 30.0));
  check_model("A linear", a, 31, std::uniform_real_distribution<double>(-30.0, 30.0));
  check_model("B", models::ModelB{}, 5, std::uniform_real_distribution<double>(-30.0, 30.0));
  check_model("ungm", models::UngmModel{}, 5, std::uniform_real_distribution<double>(-30.0, 30.0));
  check_model("ghost-obs", models::GhostObsModel{}, 5, std::uniform_real_distribution<double>(-100.0, 100.0));

  std::uniform_real_distribution<double> radius(1.0, 2000.0), angle(-1.5, 1.5);
  for (int k = 0; k < 1000; ++k) {
    const double rr = radius(gen), th = angle(gen);
    const mtt::Point p(rr * std::sin(th), rr * std::cos(th));
    const double err = (mtt::invert_range_bearing(mtt::observe_range_bearing(p)) - p).cwiseAbs().maxCoeff();
    worst = std::max(worst, err);
    if (!(err <= 1e-9)) {
      bad.push_back("range-bearing");
      break;
    }
  }
  r.pass = bad.empty();
  r.detail = bad.empty() ? "max error " + std::to_string(worst) : "failed: " + join(bad);
  return r;
}

CheckResult debias_convergence() {
  CheckResult r{"debias convergence", true, ""};
  // Brute-force conditional mean of sqrt(20 (y - v)) over v ~ N(0, 1), kept
  // apart from the library's own sampling.
  const double y = 5.0;
  std::mt19937_64 gen(2024);
  std::normal_distribution<double> nd;
  double s = 0.0, s2 = 0.0;
  long valid = 0;
  for (long i = 0; i < 10000000; ++i) {
    const double u = y - nd(gen);
    if (u < 0.0) continue;
    const double g = std::sqrt(20.0 * u);
    s += g;
    s2 += g * g;
    ++valid;
  }
  const double oracle = s / valid;
  const double sample_sd = std::sqrt(s2 / valid - oracle * oracle);

  const models::UngmModel model;
  o2::SignContext ctx;
  ctx.true_state = scalar_vec(9.0);
  std::ostringstream detail;
  detail.precision(4);
  std::vector<double> rms;
  bool ok = true;
  const int reps = 200;
  for (int samples : {100, 1000, 10000}) {
    double acc = 0.0;
    for (int k = 0; k < reps; ++k) {
      RngStream rng(77, static_cast<std::uint64_t>(samples) * 1000 + k);
      const auto est = o2::o2_debias(model, scalar_vec(y), 2, {samples}, o2::SignStrategy::oracle, ctx, rng);
      const double e = est.estimate(0) - oracle;
      acc += e * e;
    }
    const double err = std::sqrt(acc / reps);
    const double expected = sample_sd / std::sqrt(samples);
    rms.push_back(err);
    // The RMS over 200 repetitions has about 5% relative spread.
    if (err > 1.3 * expected || err < 0.7 * expected) ok = false;
    detail << "I=" << samples << " rms " << err << " (expected " << expected << ") ";
  }
  const double ratio = rms.front() / rms.back();
  if (ratio < 7.0 || ratio > 14.0) ok = false;
  detail << "shrink x" << ratio;
  r.pass = ok;
  r.detail = detail.str();
  return r;
}

CheckResult crb_attainment() {
  CheckResult r{"CRB attainment on the linear model", true, ""};
  const double noise = 1.0;
  models::ModelBParams p;
  p.R = noise;
  const models::ModelB model(p);
  const double bound = o2::fisher_crb(noise / (p.gain * p.gain))(0, 0);
  RngStream rng(5, 0);
  const int n = 100000;
  std::vector<double> err(n);
  Vec x = scalar_vec(p.x1);
  for (int t = 1; t <= n; ++t) {
    if (t > 1) x = model.sample_transition(x, t, rng);
    const Vec y = model.sample_observation(x, t, rng);
    const auto est = o2::o2_estimate(model, y, t, o2::SignStrategy::none, {});
    err[static_cast<std::size_t>(t - 1)] = est.estimate(0) - x(0);
  }
  const double var = sample_variance(err);
  const double rel = std::abs(var / bound - 1.0);
  r.pass = rel <= 0.02;
  std::ostringstream d;
  d << "empirical " << var << " vs bound " << bound << " (" << rel * 100.0 << "%)";
  r.detail = d.str();
  return r;
}

std::vector<CheckResult> all_properties() {
  return {resampling_unbiased(), unscented_affine_exact(), ospa_axioms(),       kf_fuse_identities(),
          model_round_trips(),   debias_convergence(),     crb_attainment()};
}

}  // namespace o2b::checks
