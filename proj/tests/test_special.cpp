// SPDX-License-Identifier: Apache-2.0
#include <sercm/special.hpp>

#include <doctest.h>

#include <cmath>
#include <limits>

using namespace sercm;

TEST_CASE("q_function basics") {
  CHECK(q_function(0.0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(q_function(std::numeric_limits<double>::infinity()) == 0.0);
  CHECK(q_function(-std::numeric_limits<double>::infinity()) == 1.0);
  // Independent route: Q(x) = erfc(x/sqrt 2)/2 evaluated directly.
  CHECK(q_function(std::sqrt(2.0)) == doctest::Approx(0.5 * std::erfc(1.0)).epsilon(1e-15));
  CHECK(q_function(std::sqrt(2.0)) == doctest::Approx(0.0786496035251426).epsilon(1e-12));
  CHECK(q_function(2.0) == doctest::Approx(0.02275013194817921).epsilon(1e-12));
  // Symmetry Q(-x) = 1 - Q(x).
  for (double x : {0.3, 1.1, 2.7}) {
    CHECK(q_function(-x) == doctest::Approx(1.0 - q_function(x)).epsilon(1e-14));
  }
}

TEST_CASE("half-integer upper incomplete gamma") {
  CHECK(gamma_half(1) == doctest::Approx(std::sqrt(M_PI)).epsilon(1e-15));
  CHECK(gamma_half(2) == doctest::Approx(1.0));
  CHECK(gamma_half(3) == doctest::Approx(0.5 * std::sqrt(M_PI)).epsilon(1e-15));
  CHECK(gamma_half(4) == doctest::Approx(1.0));
  CHECK(gamma_half(6) == doctest::Approx(2.0));

  for (double x : {0.1, 0.7, 2.5, 9.0}) {
    CHECK(upper_gamma_half(1, x) == doctest::Approx(std::sqrt(M_PI) * std::erfc(std::sqrt(x))).epsilon(1e-14));
    CHECK(upper_gamma_half(2, x) == doctest::Approx(std::exp(-x)).epsilon(1e-14));
    // Gamma(3/2, x) = (1/2) Gamma(1/2, x) + sqrt(x) e^-x
    CHECK(upper_gamma_half(3, x) ==
          doctest::Approx(0.5 * std::sqrt(M_PI) * std::erfc(std::sqrt(x)) +
                          std::sqrt(x) * std::exp(-x)).epsilon(1e-14));
    CHECK(upper_gamma_half(4, x) == doctest::Approx((1.0 + x) * std::exp(-x)).epsilon(1e-14));
  }
  CHECK(upper_gamma_half(3, 0.0) == doctest::Approx(gamma_half(3)));
  CHECK(upper_gamma_half(3, std::numeric_limits<double>::infinity()) == 0.0);

  // Brute-force quadrature oracle for Gamma(3/2, 1.2).
  double acc = 0.0;
  const int n = 200000;
  const double hi = 50.0;
  for (int k = 0; k < n; ++k) {
    double a = 1.2 + (hi - 1.2) * k / n;
    double b = 1.2 + (hi - 1.2) * (k + 1) / n;
    double m = 0.5 * (a + b);
    auto f = [](double t) { return std::sqrt(t) * std::exp(-t); };
    acc += (b - a) / 6.0 * (f(a) + 4.0 * f(m) + f(b));
  }
  CHECK(upper_gamma_half(3, 1.2) == doctest::Approx(acc).epsilon(1e-10));
}

TEST_CASE("gamma tail derivatives match finite differences") {
  const double c = 0.8;
  for (int two_s : {2, 3, 4}) {
    for (double rho : {0.5, 2.0, 7.0}) {
      double h = 1e-5 * rho;
      double fd1 = (upper_gamma_half(two_s, (rho + h) * c) -
                    upper_gamma_half(two_s, (rho - h) * c)) / (2 * h);
      CHECK(upper_gamma_half_drho(two_s, rho, c, 1) == doctest::Approx(fd1).epsilon(1e-8));
      double fd2 = (upper_gamma_half_drho(two_s, rho + h, c, 1) -
                    upper_gamma_half_drho(two_s, rho - h, c, 1)) / (2 * h);
      CHECK(upper_gamma_half_drho(two_s, rho, c, 2) == doctest::Approx(fd2).epsilon(1e-8));
      double fd3 = (upper_gamma_half_drho(two_s, rho + h, c, 2) -
                    upper_gamma_half_drho(two_s, rho - h, c, 2)) / (2 * h);
      CHECK(upper_gamma_half_drho(two_s, rho, c, 3) == doctest::Approx(fd3).epsilon(1e-7));
    }
  }
  // Empty tail: zero for every order.
  CHECK(upper_gamma_half_drho(3, 1.0, std::numeric_limits<double>::infinity(), 2) == 0.0);
  CHECK(upper_gamma_half_drho(3, 1.0, 0.7, 0) == doctest::Approx(upper_gamma_half(3, 0.7)));
}

TEST_CASE("gauss-legendre integrates polynomials exactly") {
  const QuadRule& r5 = gauss_legendre(5);
  double acc = 0.0;
  for (int i = 0; i < 5; ++i) acc += r5.weights[i] * std::pow(r5.nodes[i], 8);
  CHECK(acc == doctest::Approx(2.0 / 9.0).epsilon(1e-13));  // int x^8 over [-1,1]
  const QuadRule& r7 = gauss_legendre(7);
  acc = 0.0;
  for (int i = 0; i < 7; ++i) acc += r7.weights[i];
  CHECK(acc == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("generalized gauss-laguerre") {
  QuadRule gl = gauss_laguerre(32, 0.0);
  double acc = 0.0;
  for (size_t i = 0; i < gl.nodes.size(); ++i) acc += gl.weights[i] * std::pow(gl.nodes[i], 3);
  CHECK(acc == doctest::Approx(6.0).epsilon(1e-12));  // Gamma(4)

  QuadRule gl2 = gauss_laguerre(48, 1.5);
  acc = 0.0;
  for (size_t i = 0; i < gl2.nodes.size(); ++i) acc += gl2.weights[i] * gl2.nodes[i] * gl2.nodes[i];
  CHECK(acc == doctest::Approx(std::tgamma(4.5)).epsilon(1e-11));  // int t^{1.5+2} e^-t

  // Expectation of e^-X for X ~ Gamma(2.5, 1): (1/2)^2.5 * Gamma... = 2^-2.5
  QuadRule gl3 = gauss_laguerre(48, 1.5);
  acc = 0.0;
  for (size_t i = 0; i < gl3.nodes.size(); ++i) acc += gl3.weights[i] * std::exp(-gl3.nodes[i]);
  CHECK(acc / std::tgamma(2.5) == doctest::Approx(std::pow(2.0, -2.5)).epsilon(1e-10));
}
