// SPDX-License-Identifier: Apache-2.0
#include "sercm/ser.hpp"

#include "sercm/special.hpp"

#include <cmath>
#include <stdexcept>

namespace sercm {

std::string to_string(SerMethod m) {
  switch (m) {
    case SerMethod::mc: return "mc";
    case SerMethod::quadrature: return "quadrature";
    case SerMethod::closed_form: return "closed_form";
  }
  return "?";
}

namespace {

struct QamParams {
  double w1, w2, eta;
};

QamParams qam_params(int M) {
  int s = static_cast<int>(std::lround(std::sqrt(static_cast<double>(M))));
  if (M < 4 || s * s != M) {
    throw std::invalid_argument("ser_closed_qam: M must be a perfect square >= 4");
  }
  QamParams p;
  p.w1 = 4.0 * (s - 1.0) / s;
  p.eta = 3.0 / (M - 1.0);
  p.w2 = 0.25 * p.w1 * p.w1;
  return p;
}

}  // namespace

SerEstimate ser_closed_qam(int M, double rho) {
  if (!(rho > 0)) throw std::invalid_argument("ser_closed_qam: rho must be positive");
  QamParams p = qam_params(M);
  double q = q_function(std::sqrt(p.eta * rho));
  SerEstimate e;
  e.value = p.w1 * q - p.w2 * q * q;
  e.method = SerMethod::closed_form;
  e.rho = rho;
  return e;
}

double qam_mu(int M, double u) {
  if (u < 0) throw std::invalid_argument("qam_mu: u must be nonnegative");
  QamParams p = qam_params(M);
  if (u < 0.5) return 0.0;
  double density = std::sqrt(p.eta) / (2.0 * M_PI * u * std::sqrt(2.0 * u - 1.0));
  if (u < 1.0) return p.w1 * density;
  return (p.w1 - p.w2) * density;
}

SerEstimate ser_closed_cube(double rho) {
  if (!(rho > 0)) throw std::invalid_argument("ser_closed_cube: rho must be positive");
  double q = q_function(std::sqrt(2.0 * rho));
  double c = 1.0 - q;
  SerEstimate e;
  e.value = 1.0 - c * c * c;
  e.method = SerMethod::closed_form;
  e.rho = rho;
  return e;
}

double cube_mu(double u) {
  if (u < 0) throw std::invalid_argument("cube_mu: u must be nonnegative");
  // 1 - (1-Q)^3 = 3Q - 3Q^2 + Q^3 with Q = Q(sqrt(2 rho)).  The single-Q and
  // squared-Q tail densities coincide and cancel beyond u = 2; the cubed term
  // is the convolution of those two densities, which integrates in closed
  // form to the arctan expression below (supported on u >= 3).
  double mu = 0.0;
  if (u >= 1.0 && u <= 2.0) {
    mu += 3.0 / (2.0 * M_PI * u * std::sqrt(u - 1.0));
  }
  if (u >= 3.0) {
    double t1 = std::atan(std::sqrt((u - 1.0) * (u - 3.0)));
    double t2 = std::atan(std::sqrt((u - 3.0) / (u - 1.0)));
    mu += (t1 + t2) / (2.0 * M_PI * M_PI * u * std::sqrt(u - 1.0));
  }
  return mu;
}

}  // namespace sercm
