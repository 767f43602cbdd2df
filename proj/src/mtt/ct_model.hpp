// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <numbers>

#include "core/rng.hpp"
#include "mtt/types.hpp"

namespace o2b::mtt {

/// Nearly constant turn-rate motion.
struct CtParams {
  double dt = 1.0;
  double sigma_w = 15.0;                 // m/s^2
  double sigma_u = std::numbers::pi / 180.0;  // rad/s
};

/// Noiseless turn: position and velocity rotate with the current turn rate.
/// The straight-line limit is used for |omega * dt| below 1e-9.
CtState ct_propagate(const CtState& x, const CtParams& p);

CtState ct_transition(const CtState& x, const CtParams& p, RngStream& rng);

}  // namespace o2b::mtt
