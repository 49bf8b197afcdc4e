// SPDX-License-Identifier: Apache-2.0
#include "sercm/special.hpp"

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace sercm {

namespace {
constexpr double kSqrtPi = 1.7724538509055160273;
constexpr double kSqrt2 = 1.4142135623730950488;
}  // namespace

double q_function(double x) {
  if (std::isnan(x)) return std::numeric_limits<double>::quiet_NaN();
  return 0.5 * std::erfc(x / kSqrt2);
}

double gamma_half(int two_s) {
  if (two_s <= 0) throw std::invalid_argument("gamma_half: two_s must be positive");
  // Gamma(1/2) = sqrt(pi), Gamma(1) = 1, Gamma(s+1) = s Gamma(s).
  double g = (two_s % 2 == 1) ? kSqrtPi : 1.0;
  for (int k = two_s % 2 == 1 ? 1 : 2; k + 2 <= two_s; k += 2) {
    g *= 0.5 * k;
  }
  return g;
}

double upper_gamma_half(int two_s, double x) {
  if (two_s < 1 || two_s > 8) throw std::invalid_argument("upper_gamma_half: two_s out of range");
  if (x < 0) throw std::invalid_argument("upper_gamma_half: x < 0");
  if (x == 0) return gamma_half(two_s);
  if (std::isinf(x)) return 0.0;
  const double sx = std::sqrt(x);
  const double ex = std::exp(-x);
  // Gamma(1/2, x) = sqrt(pi) erfc(sqrt(x)); Gamma(1, x) = exp(-x);
  // Gamma(s+1, x) = s Gamma(s, x) + x^s exp(-x).
  double g;
  int k;  // current two_s
  if (two_s % 2 == 1) {
    g = kSqrtPi * std::erfc(sx);
    k = 1;
  } else {
    g = ex;
    k = 2;
  }
  double xpow = std::pow(x, 0.5 * k);  // x^s at current s
  while (k < two_s) {
    g = 0.5 * k * g + xpow * ex;
    xpow *= x;
    k += 2;
  }
  return g;
}

double upper_gamma_half_drho(int two_s, double rho, double c, int n) {
  if (n < 0 || n > 8) throw std::invalid_argument("upper_gamma_half_drho: n out of range");
  if (c <= 0 || std::isinf(c)) return 0.0;  // empty tail differentiates to zero
  if (n == 0) return upper_gamma_half(two_s, rho * c);
  // d/drho Gamma(s, rho c) = -c (rho c)^(s-1) e^(-rho c); higher orders by
  // differentiating h(x) = x^(s-1) e^(-x) at x = rho c.
  const double s = 0.5 * two_s;
  const double x = rho * c;
  // h^(k)(x) = e^-x sum_j coef[j] x^(s-1-j)
  std::array<double, 10> coef{};
  coef[0] = 1.0;
  for (int k = 0; k < n - 1; ++k) {
    std::array<double, 10> next{};
    for (int j = 0; j <= k; ++j) {
      if (coef[j] == 0.0) continue;
      next[j + 1] += coef[j] * (s - 1.0 - j);
      next[j] -= coef[j];
    }
    coef = next;
  }
  double sum = 0.0;
  for (int j = 0; j <= n - 1; ++j) {
    if (coef[j] == 0.0) continue;
    sum += coef[j] * std::pow(x, s - 1.0 - j);
  }
  // d^n/drho^n Gamma(s, rho c) = -c^n h^(n-1)(rho c), h(x) = x^(s-1) e^-x.
  return -std::pow(c, n) * std::exp(-x) * sum;
}

namespace {

QuadRule compute_gauss_legendre(int n) {
  // Newton iteration on Legendre polynomials; nodes symmetric about zero.
  QuadRule r;
  r.nodes.resize(n);
  r.weights.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      pp = n * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    r.nodes[i] = -x;
    r.nodes[n - 1 - i] = x;
    double w = 2.0 / ((1.0 - x * x) * pp * pp);
    r.weights[i] = w;
    r.weights[n - 1 - i] = w;
  }
  return r;
}

}  // namespace

const QuadRule& gauss_legendre(int n) {
  static std::map<int, QuadRule> cache;
  static std::mutex mtx;
  std::lock_guard<std::mutex> lock(mtx);
  auto it = cache.find(n);
  if (it == cache.end()) {
    it = cache.emplace(n, compute_gauss_legendre(n)).first;
  }
  return it->second;
}

QuadRule gauss_laguerre(int n, double alpha) {
  if (n < 1 || alpha <= -1.0) throw std::invalid_argument("gauss_laguerre: bad parameters");
  // Golub-Welsch on the symmetrized Laguerre Jacobi matrix.
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    J(i, i) = 2.0 * i + alpha + 1.0;
    if (i + 1 < n) {
      double b = std::sqrt((i + 1.0) * (i + 1.0 + alpha));
      J(i, i + 1) = b;
      J(i + 1, i) = b;
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
  const double mu0 = std::tgamma(alpha + 1.0);
  QuadRule r;
  r.nodes.resize(n);
  r.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    r.nodes[i] = es.eigenvalues()(i);
    double v = es.eigenvectors()(0, i);
    r.weights[i] = mu0 * v * v;
  }
  return r;
}

}  // namespace sercm
