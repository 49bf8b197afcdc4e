// SPDX-License-Identifier: Apache-2.0
#include "sercm/ser.hpp"

#include <cmath>
#include <stdexcept>

namespace sercm {

std::string to_string(CmVerdict::State s) {
  switch (s) {
    case CmVerdict::State::yes: return "yes";
    case CmVerdict::State::no: return "no";
    case CmVerdict::State::inconclusive: return "inconclusive";
  }
  return "?";
}

std::string to_string(CmVerdict::Basis b) {
  switch (b) {
    case CmVerdict::Basis::reduced_dim_rule: return "reduced_dim_rule";
    case CmVerdict::Basis::derivative_scan: return "derivative_scan";
    case CmVerdict::Basis::mu_nonneg: return "mu_nonneg";
  }
  return "?";
}

double rho0(const Constellation& c) {
  ReducedConstellation r = reduce(c);
  if (r.reduced_dim <= 2) {
    throw std::invalid_argument("rho0: defined only for reduced dimension > 2 "
                                "(the error rate is already convex otherwise)");
  }
  const double p = 0.5 * r.reduced_dim - 1.0;
  const double d = min_distance(c);
  return 4.0 * (p + std::sqrt(p)) / (d * d);
}

CmVerdict derivative_scan(const SerEngine& engine, const std::vector<double>& rho_grid,
                          int max_order, double eps_num) {
  if (max_order > 6) throw std::invalid_argument("derivative_scan: max order is 6");
  CmVerdict v;
  v.basis = CmVerdict::Basis::derivative_scan;
  v.max_order_checked = max_order;
  for (int order = 0; order <= max_order; ++order) {
    const double sign = (order % 2 == 0) ? 1.0 : -1.0;
    for (double rho : rho_grid) {
      double d = engine.derivative(rho, order, 1e-9);
      if (sign * d < -eps_num) {
        v.is_cm = CmVerdict::State::no;
        v.witness = std::make_pair(rho, order);
        return v;
      }
    }
  }
  v.is_cm = CmVerdict::State::inconclusive;  // finitely many checks cannot certify
  return v;
}

CmVerdict cm_check(const Constellation& c, const std::vector<double>& rho_grid,
                   int max_order) {
  if (max_order > 6) throw std::invalid_argument("cm_check: max order is 6");
  ReducedConstellation r = reduce(c);
  if (r.reduced_dim <= 2) {
    CmVerdict v;
    v.is_cm = CmVerdict::State::yes;
    v.basis = CmVerdict::Basis::reduced_dim_rule;
    v.max_order_checked = 0;
    return v;
  }
  SerEngine engine(std::move(r), c.priors);
  return derivative_scan(engine, rho_grid, max_order);
}

OrderConditionReport cm_order_conditions(const RepresentingFn& mu, int alpha) {
  if (alpha != 1 && alpha != 2) {
    throw std::invalid_argument("cm_order_conditions: alpha must be 1 or 2");
  }
  OrderConditionReport rep;
  rep.alpha = alpha;
  const auto& u = mu.u_grid;
  const auto& m = mu.mu_values;
  if (u.size() < 3) throw std::invalid_argument("cm_order_conditions: grid too coarse");

  double peak = 0.0;
  for (double v : m) peak = std::max(peak, std::abs(v));

  for (size_t k = 0; k < m.size(); ++k) {
    if (m[k] < -1e-12) {
      rep.passed = false;
      rep.failure_index = static_cast<int>(k);
      rep.detail = "negative value";
      return rep;
    }
  }
  // Zero below the support onset.
  size_t onset = m.size();
  for (size_t k = 0; k < m.size(); ++k) {
    if (m[k] > 1e-9 * std::max(peak, 1.0)) {
      onset = k;
      break;
    }
  }
  for (size_t k = 0; k + 1 < onset; ++k) {
    if (std::abs(m[k]) > 1e-12 * std::max(peak, 1.0)) {
      rep.passed = false;
      rep.failure_index = static_cast<int>(k);
      rep.detail = "nonzero below support";
      return rep;
    }
  }
  if (alpha == 1) {
    for (size_t k = 1; k < m.size(); ++k) {
      if (m[k] < m[k - 1] - 1e-9 * std::max(peak, 1.0)) {
        rep.passed = false;
        rep.failure_index = static_cast<int>(k);
        rep.detail = "not nondecreasing";
        return rep;
      }
    }
  } else {
    // First difference quotients must be nondecreasing.
    double prev_q = 0.0;
    double qscale = 0.0;
    for (size_t k = 1; k < m.size(); ++k) {
      qscale = std::max(qscale, std::abs((m[k] - m[k - 1]) / (u[k] - u[k - 1])));
    }
    for (size_t k = 1; k < m.size(); ++k) {
      double q = (m[k] - m[k - 1]) / (u[k] - u[k - 1]);
      if (k > 1 && q < prev_q - 1e-9 * std::max(qscale, 1.0)) {
        rep.passed = false;
        rep.failure_index = static_cast<int>(k);
        rep.detail = "difference quotient not nondecreasing";
        return rep;
      }
      prev_q = q;
    }
  }
  rep.passed = true;
  return rep;
}

}  // namespace sercm
