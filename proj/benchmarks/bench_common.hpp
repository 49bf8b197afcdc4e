// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>

#include <cmath>

namespace bench {

inline Eigen::MatrixXd qam16_points() {
  Eigen::MatrixXd p(2, 16);
  int c = 0;
  double s = std::sqrt(0.2);
  for (int a : {-3, -1, 1, 3}) {
    for (int b : {-3, -1, 1, 3}) {
      p(0, c) = s * a;
      p(1, c) = s * b;
      ++c;
    }
  }
  return p;
}

inline Eigen::MatrixXd cube_points() {
  Eigen::MatrixXd p(3, 8);
  int c = 0;
  double s = std::sqrt(2.0);
  for (int a : {-1, 1}) for (int b : {-1, 1}) for (int d : {-1, 1}) {
    p(0, c) = s * a; p(1, c) = s * b; p(2, c) = s * d; ++c;
  }
  return p;
}

}  // namespace bench
