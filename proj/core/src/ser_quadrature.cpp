// SPDX-License-Identifier: Apache-2.0
#include "sercm/ser.hpp"

#include "cone_param.hpp"
#include "sercm/cubature.hpp"
#include "sercm/special.hpp"

#include <cmath>
#include <stdexcept>

namespace sercm {

namespace {

double pi_pow_half(int n) { return std::pow(M_PI, 0.5 * n); }

}  // namespace

SerEngine::SerEngine(ReducedConstellation reduced, Eigen::VectorXd priors)
    : reduced_(std::move(reduced)), priors_(std::move(priors)) {
  if (priors_.size() != reduced_.size()) {
    throw std::invalid_argument("SerEngine: priors length mismatch");
  }
  dmin_ = sercm::min_distance(reduced_.points);
  decomp_.resize(reduced_.size());
}

SerEngine SerEngine::from_constellation(const Constellation& c) {
  return SerEngine(reduce(c), c.priors);
}

const SymbolDecomposition& SerEngine::decomposition(int symbol) const {
  if (symbol < 0 || symbol >= reduced_.size()) {
    throw std::invalid_argument("SerEngine: symbol index out of range");
  }
  if (!decomp_[symbol]) {
    decomp_[symbol] = decompose_symbol(reduced_, symbol);
  }
  return *decomp_[symbol];
}

double SerEngine::angular_integral(double rho, int order, double tol, long max_cells) const {
  const int n = reduced_.reduced_dim;
  if (n > 4) throw std::invalid_argument("quadrature supports reduced dimension <= 4");
  const int M = reduced_.size();

  if (n == 1) {
    // Up to two boundary points per symbol; the radial tail is the whole
    // story:  P_e,i = sum_h Q(b_h sqrt(rho)) = sum_h Gamma(1/2, rho b_h^2/2) / (2 sqrt(pi)).
    double total = 0.0;
    for (int i = 0; i < M; ++i) {
      if (priors_(i) <= 0) continue;
      const SymbolDecomposition& d = decomposition(i);
      double acc = 0.0;
      for (const auto& h : d.region.halfspaces) {
        acc += upper_gamma_half_drho(1, rho, 0.5 * h.b * h.b, order);
      }
      total += priors_(i) * acc;
    }
    return total / (2.0 * std::sqrt(M_PI));
  }

  // Count cones first to split the tolerance budget.
  long total_cones = 0;
  for (int i = 0; i < M; ++i) {
    if (priors_(i) <= 0) continue;
    total_cones += static_cast<long>(decomposition(i).cones.size());
  }
  const double cone_tol = tol / std::max<long>(1, total_cones);
  const double norm = 1.0 / (2.0 * pi_pow_half(n));

  double total = 0.0;
  for (int i = 0; i < M; ++i) {
    if (priors_(i) <= 0) continue;
    const SymbolDecomposition& d = decomposition(i);
    double sym = 0.0;
    detail::DirectionSample s;
    for (const auto& cone : d.cones) {
      auto f = [&](const double* x) -> double {
        detail::cone_direction(cone, x, s);
        if (s.weight == 0.0) return 0.0;
        double r = detail::cone_exit_radius(cone, d.clipped, d.region, s.u);
        if (std::isinf(r)) return 0.0;
        double c = 0.5 * r * r;
        return s.weight * upper_gamma_half_drho(n, rho, c, order);
      };
      double lo[3] = {0.0, 0.0, 0.0};
      double hi[3] = {1.0, 1.0, 1.0};
      CubatureResult res = integrate_box(f, lo, hi, n - 1, cone_tol, 1e-11, max_cells);
      if (!res.converged) {
        throw NumericalError("cone quadrature did not converge");
      }
      sym += res.value;
    }
    total += priors_(i) * sym * norm;
  }
  return total;
}

SerEstimate SerEngine::quadrature(double rho, double tol, long max_cells) const {
  if (!(rho > 0)) throw std::invalid_argument("quadrature: rho must be positive");
  if (!(tol > 0)) throw std::invalid_argument("quadrature: tol must be positive");
  SerEstimate e;
  e.value = angular_integral(rho, 0, tol, max_cells);
  e.method = SerMethod::quadrature;
  e.rho = rho;
  return e;
}

double SerEngine::derivative(double rho, int order, double tol, long max_cells) const {
  if (!(rho > 0)) throw std::invalid_argument("derivative: rho must be positive");
  if (order < 0 || order > 6) throw std::invalid_argument("derivative: order must be 0..6");
  return angular_integral(rho, order, tol, max_cells);
}

SerEstimate ser_quadrature(const ReducedConstellation& reduced, const Eigen::VectorXd& priors,
                           double rho, double tol) {
  return SerEngine(reduced, priors).quadrature(rho, tol);
}

double ser_derivative(const ReducedConstellation& reduced, const Eigen::VectorXd& priors,
                      double rho, int order, double tol) {
  return SerEngine(reduced, priors).derivative(rho, order, tol);
}

}  // namespace sercm
