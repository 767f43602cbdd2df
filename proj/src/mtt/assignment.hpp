// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include <Eigen/Dense>

namespace o2b::mtt {

/// Minimum-cost assignment (Hungarian method with potentials, O(n^2 m)).
/// Returns the assigned column for each row; rows may not outnumber columns.
std::vector<int> solve_assignment(const Eigen::MatrixXd& cost);

}  // namespace o2b::mtt
