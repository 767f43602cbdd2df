// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

namespace o2b::checks {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

CheckResult resampling_unbiased();
CheckResult unscented_affine_exact();
CheckResult ospa_axioms();
CheckResult kf_fuse_identities();
CheckResult model_round_trips();
CheckResult debias_convergence();
CheckResult crb_attainment();

std::vector<CheckResult> all_properties();

}  // namespace o2b::checks
