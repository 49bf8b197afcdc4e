// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>

namespace sercm {

enum class LpStatus { Optimal, Unbounded };

struct LpResult {
  LpStatus status = LpStatus::Optimal;
  double value = 0.0;
  Eigen::VectorXd x;
};

/// maximize c^T x subject to A x <= b, x unrestricted in sign.
/// Requires b >= 0 so that x = 0 is feasible (always true for the Voronoi
/// systems this backs, where the origin is interior).  Bland's rule, dense
/// tableau; intended for the small systems of this library (tens of rows).
LpResult lp_maximize(const Eigen::VectorXd& c, const Eigen::MatrixXd& A,
                     const Eigen::VectorXd& b);

}  // namespace sercm
