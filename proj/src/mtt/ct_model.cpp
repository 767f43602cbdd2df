// SPDX-License-Identifier: Apache-2.0
#include "mtt/ct_model.hpp"

#include <cmath>

namespace o2b::mtt {

CtState ct_propagate(const CtState& x, const CtParams& p) {
  const double w = x(4), dt = p.dt;
  const double wt = w * dt;
  double s_over_w, c_over_w;  // sin(w dt)/w and (1 - cos(w dt))/w
  if (std::abs(wt) < 1e-9) {
    s_over_w = dt;
    c_over_w = 0.5 * w * dt * dt;
  } else {
    s_over_w = std::sin(wt) / w;
    c_over_w = (1.0 - std::cos(wt)) / w;
  }
  const double c = std::cos(wt), s = std::sin(wt);
  CtState out;
  out(0) = x(0) + s_over_w * x(1) - c_over_w * x(3);
  out(1) = c * x(1) - s * x(3);
  out(2) = x(2) + c_over_w * x(1) + s_over_w * x(3);
  out(3) = s * x(1) + c * x(3);
  out(4) = w;
  return out;
}

CtState ct_transition(const CtState& x, const CtParams& p, RngStream& rng) {
  CtState out = ct_propagate(x, p);
  const double wx = p.sigma_w * rng.normal(), wy = p.sigma_w * rng.normal();
  const double half = 0.5 * p.dt * p.dt;
  out(0) += half * wx;
  out(1) += p.dt * wx;
  out(2) += half * wy;
  out(3) += p.dt * wy;
  out(4) += p.dt * p.sigma_u * rng.normal();
  return out;
}

}  // namespace o2b::mtt
