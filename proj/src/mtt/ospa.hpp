// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "mtt/types.hpp"

namespace o2b::mtt {

struct OspaParams {
  double cutoff = 100.0;
  double order = 2.0;
};

/// OSPA distance between two planar point sets.
double ospa(const std::vector<Point>& x, const std::vector<Point>& y, const OspaParams& params = {});

}  // namespace o2b::mtt
