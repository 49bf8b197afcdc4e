// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <vector>

namespace sercm {

/// Gaussian tail probability Q(x) = P[N(0,1) > x], evaluated via erfc.
/// Relative error is that of std::erfc (< 1e-14 over the useful range).
double q_function(double x);

/// Upper incomplete gamma Gamma(s, x) for half-integer s = two_s/2,
/// two_s in {1,...,8}, x >= 0.  Exact recurrences on erfc/exp.
double upper_gamma_half(int two_s, double x);

/// Complete Gamma(s) for half-integer s = two_s/2.
double gamma_half(int two_s);

/// n-th derivative with respect to rho of Gamma(s, rho*c), s = two_s/2.
/// n = 0 returns Gamma(s, rho*c) itself.  Valid for rho*c > 0, n <= 8.
double upper_gamma_half_drho(int two_s, double rho, double c, int n);

struct QuadRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Gauss-Legendre rule on [-1, 1].
const QuadRule& gauss_legendre(int n);

/// Generalized Gauss-Laguerre rule: sum w_k f(x_k) ~ int_0^inf f(x) x^alpha e^-x dx.
QuadRule gauss_laguerre(int n, double alpha);

}  // namespace sercm
