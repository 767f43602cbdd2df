// SPDX-License-Identifier: Apache-2.0
#include "mtt/ospa.hpp"

#include <algorithm>
#include <cmath>

#include "core/error.hpp"
#include "mtt/assignment.hpp"

namespace o2b::mtt {

double ospa(const std::vector<Point>& x, const std::vector<Point>& y, const OspaParams& params) {
  if (!(params.cutoff > 0.0) || !(params.order >= 1.0)) fail(ErrorKind::invalid_input, "OSPA needs c > 0 and p >= 1");
  const std::vector<Point>& small = x.size() <= y.size() ? x : y;
  const std::vector<Point>& large = x.size() <= y.size() ? y : x;
  const std::size_t m = small.size(), n = large.size();
  if (n == 0) return 0.0;
  const double cp = std::pow(params.cutoff, params.order);
  double total = cp * static_cast<double>(n - m);
  if (m > 0) {
    Eigen::MatrixXd cost(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < n; ++j)
        cost(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
            std::pow(std::min(params.cutoff, (small[i] - large[j]).norm()), params.order);
    const auto assign = solve_assignment(cost);
    for (std::size_t i = 0; i < m; ++i)
      total += cost(static_cast<Eigen::Index>(i), assign[i]);
  }
  return std::pow(total / static_cast<double>(n), 1.0 / params.order);
}

}  // namespace o2b::mtt
