// SPDX-License-Identifier: Apache-2.0
#include "bench/estimators.hpp"

#include <algorithm>

#include "core/error.hpp"
#include "filters/kalman.hpp"
#include "filters/unscented.hpp"

namespace o2b::bench {

namespace {

using models::StateSpaceModel;

class KalmanEstimator final : public Estimator {
 public:
  enum class Kind { kf, ekf, ukf };
  KalmanEstimator(Kind kind, models::ModelPtr model) : kind_(kind), model_(std::move(model)) {
    belief_ = model_->initial_condition().prior;
    if (kind_ == Kind::kf && !model_->linear_system(1))
      fail(ErrorKind::config, "kf needs a linear-Gaussian model");
  }
  std::string_view name() const override {
    return kind_ == Kind::kf ? "kf" : kind_ == Kind::ekf ? "ekf" : "ukf";
  }
  Vec step(const Vec& y, int t, const Vec&) override {
    try {
      switch (kind_) {
        case Kind::kf: {
          const auto sys = *model_->linear_system(t);
          belief_ = t == 1 ? filters::kalman_update(belief_, y, sys) : filters::kalman_step(belief_, y, sys);
          break;
        }
        case Kind::ekf:
          belief_ = t == 1 ? filters::ekf_update(belief_, y, *model_, t) : filters::ekf_step(belief_, y, *model_, t);
          break;
        case Kind::ukf:
          belief_ = t == 1 ? filters::ukf_update(belief_, y, *model_, t) : filters::ukf_step(belief_, y, *model_, t);
          break;
      }
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::numerical) throw;
      // Keep the prediction when the correction is singular.
      ++failures_;
      if (t > 1)
        belief_ = kind_ == Kind::ukf ? filters::ukf_predict(belief_, *model_, t)
                                     : filters::ekf_predict(belief_, *model_, t);
    }
    return belief_.mean;
  }

 private:
  Kind kind_;
  models::ModelPtr model_;
  GaussianBelief belief_;
};

class ParticleEstimator final : public Estimator {
 public:
  ParticleEstimator(filters::PfVariant variant, const EstimatorSetup& s, RngStream rng)
      : model_(s.particle_model), proposal_(s.gaussian_model), rng_(rng) {
    opts_.variant = variant;
    opts_.proposal_model = proposal_.get();
    ps_ = filters::pf_initialize(model_->initial_condition().prior, static_cast<std::size_t>(s.particles), opts_, rng_);
  }
  std::string_view name() const override { return filters::to_string(opts_.variant); }
  Vec step(const Vec& y, int t, const Vec&) override {
    const auto r = filters::pf_step(ps_, y, t, *model_, opts_, rng_, t > 1);
    if (r.degenerate) ++degeneracy_events_;
    return r.estimate;
  }

 private:
  models::ModelPtr model_;
  models::ModelPtr proposal_;
  RngStream rng_;
  filters::PfOptions opts_;
  filters::ParticleSet ps_;
};

class O2Estimator final : public Estimator {
 public:
  enum class Kind { plain, pf_sign, true_sign, unbiased };
  O2Estimator(Kind kind, const EstimatorSetup& s, RngStream rng)
      : kind_(kind), model_(s.model), debias_{s.debias_samples}, rng_(rng) {
    if (kind_ == Kind::pf_sign)
      sign_filter_ = std::make_unique<ParticleEstimator>(filters::PfVariant::sir, s, rng_.derive(1));
  }
  std::string_view name() const override {
    switch (kind_) {
      case Kind::plain: return "o2";
      case Kind::pf_sign: return "o2-pf-sign";
      case Kind::true_sign: return "o2-true-sign";
      case Kind::unbiased: return "o2-unbiased";
    }
    return "o2";
  }
  Vec step(const Vec& y, int t, const Vec& truth) override {
    o2::SignContext ctx;
    o2::SignStrategy strategy = o2::SignStrategy::transition_prediction;
    switch (kind_) {
      case Kind::plain: ctx.previous_estimate = previous_; break;
      case Kind::pf_sign:
        strategy = o2::SignStrategy::filter_assisted;
        ctx.filter_estimate = sign_filter_->step(y, t, truth);
        degeneracy_events_ = sign_filter_->degeneracy_events();
        break;
      case Kind::true_sign:
      case Kind::unbiased:
        strategy = o2::SignStrategy::oracle;
        ctx.true_state = truth;
        break;
    }
    const o2::O2Result r = kind_ == Kind::unbiased ? o2::o2_debias(*model_, y, t, debias_, strategy, ctx, rng_)
                                                   : o2::o2_estimate(*model_, y, t, strategy, ctx);
    if (r.failed || (kind_ == Kind::unbiased && r.valid_samples == 0)) ++failures_;
    if (r.failed) return previous_ ? *previous_ : model_->initial_condition().prior.mean;
    previous_ = r.estimate;
    return r.estimate;
  }

 private:
  Kind kind_;
  models::ModelPtr model_;
  o2::DebiasSpec debias_;
  RngStream rng_;
  std::optional<Vec> previous_;
  std::unique_ptr<ParticleEstimator> sign_filter_;
};

}  // namespace

const std::vector<std::string>& known_estimators() {
  static const std::vector<std::string> names{"kf",   "ekf",  "ukf", "sir",        "apf",          "gpf",
                                              "ekpf", "ukpf", "o2",  "o2-pf-sign", "o2-true-sign", "o2-unbiased"};
  return names;
}

bool is_known_estimator(std::string_view name) {
  const auto& k = known_estimators();
  return std::find(k.begin(), k.end(), name) != k.end();
}

std::unique_ptr<Estimator> make_estimator(std::string_view name, const EstimatorSetup& setup, RngStream rng) {
  if (!setup.model || !setup.gaussian_model || !setup.particle_model)
    fail(ErrorKind::config, "estimator setup is missing a model");
  if (setup.particles < 1) fail(ErrorKind::config, "particle count must be positive");
  if (setup.debias_samples < 1) fail(ErrorKind::config, "debias sample count must be positive");
  using K = KalmanEstimator::Kind;
  using O = O2Estimator::Kind;
  if (name == "kf") return std::make_unique<KalmanEstimator>(K::kf, setup.gaussian_model);
  if (name == "ekf") return std::make_unique<KalmanEstimator>(K::ekf, setup.gaussian_model);
  if (name == "ukf") return std::make_unique<KalmanEstimator>(K::ukf, setup.gaussian_model);
  if (name == "o2") return std::make_unique<O2Estimator>(O::plain, setup, rng);
  if (name == "o2-pf-sign") return std::make_unique<O2Estimator>(O::pf_sign, setup, rng);
  if (name == "o2-true-sign") return std::make_unique<O2Estimator>(O::true_sign, setup, rng);
  if (name == "o2-unbiased") return std::make_unique<O2Estimator>(O::unbiased, setup, rng);
  for (const char* pf : {"sir", "apf", "gpf", "ekpf", "ukpf"})
    if (name == pf) return std::make_unique<ParticleEstimator>(filters::parse_pf_variant(name), setup, rng);
  fail(ErrorKind::config, "unknown estimator '" + std::string(name) + "'");
}

}  // namespace o2b::bench
