// SPDX-License-Identifier: Apache-2.0
#include "sercm/linprog.hpp"

#include <stdexcept>
#include <vector>

namespace sercm {

LpResult lp_maximize(const Eigen::VectorXd& c, const Eigen::MatrixXd& A,
                     const Eigen::VectorXd& b) {
  const int m = static_cast<int>(A.rows());
  const int nfree = static_cast<int>(A.cols());
  if (c.size() != nfree || b.size() != m) {
    throw std::invalid_argument("lp_maximize: inconsistent dimensions");
  }
  if (m > 0 && b.minCoeff() < 0) {
    throw std::invalid_argument("lp_maximize: requires b >= 0 (origin feasible)");
  }

  // Free variables split as x = u - v; columns [u v slack | rhs].
  const int n = 2 * nfree;
  const int cols = n + m + 1;
  Eigen::MatrixXd T = Eigen::MatrixXd::Zero(m + 1, cols);
  for (int i = 0; i < m; ++i) {
    T.block(i, 0, 1, nfree) = A.row(i);
    T.block(i, nfree, 1, nfree) = -A.row(i);
    T(i, n + i) = 1.0;
    T(i, cols - 1) = b(i);
  }
  for (int j = 0; j < nfree; ++j) {
    T(m, j) = -c(j);
    T(m, nfree + j) = c(j);
  }

  std::vector<int> basis(m);
  for (int i = 0; i < m; ++i) basis[i] = n + i;

  const double eps = 1e-11;
  const int max_iter = 50 * (m + n + 4);
  for (int iter = 0; iter < max_iter; ++iter) {
    // Bland: first column with negative reduced cost.
    int enter = -1;
    for (int j = 0; j < n + m; ++j) {
      if (T(m, j) < -eps) {
        enter = j;
        break;
      }
    }
    if (enter < 0) {
      LpResult r;
      r.status = LpStatus::Optimal;
      r.value = T(m, cols - 1);
      r.x = Eigen::VectorXd::Zero(nfree);
      for (int i = 0; i < m; ++i) {
        if (basis[i] < nfree) {
          r.x(basis[i]) += T(i, cols - 1);
        } else if (basis[i] < n) {
          r.x(basis[i] - nfree) -= T(i, cols - 1);
        }
      }
      return r;
    }
    // Ratio test, ties broken on smallest basis index (Bland).
    int leave = -1;
    double best = 0.0;
    for (int i = 0; i < m; ++i) {
      if (T(i, enter) > eps) {
        double ratio = T(i, cols - 1) / T(i, enter);
        if (leave < 0 || ratio < best - eps ||
            (ratio < best + eps && basis[i] < basis[leave])) {
          leave = i;
          best = ratio;
        }
      }
    }
    if (leave < 0) {
      LpResult r;
      r.status = LpStatus::Unbounded;
      return r;
    }
    // Pivot.
    T.row(leave) /= T(leave, enter);
    for (int i = 0; i <= m; ++i) {
      if (i == leave) continue;
      double f = T(i, enter);
      if (f != 0.0) T.row(i) -= f * T.row(leave);
    }
    basis[leave] = enter;
  }
  throw std::runtime_error("lp_maximize: iteration limit exceeded");
}

}  // namespace sercm
