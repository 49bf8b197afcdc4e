// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "sercm/constellation.hpp"
#include "sercm/geometry.hpp"
#include "sercm/noise.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace sercm {

enum class SerMethod { mc, quadrature, closed_form };

std::string to_string(SerMethod m);

struct SerEstimate {
  double value = 0.0;
  double std_error = 0.0;  // 0 for deterministic methods
  SerMethod method = SerMethod::closed_form;
  double rho = 0.0;
};

// ---------------------------------------------------------------------------
// Closed forms.

/// Square M-QAM error rate w1 Q(sqrt(eta rho)) - w2 Q^2(sqrt(eta rho)) with
/// w1 = 4(sqrt(M)-1)/sqrt(M), eta = 3/(M-1), w2 = w1^2/4.  M must be an even
/// power of 2 (4, 16, 64, ...).
SerEstimate ser_closed_qam(int M, double rho);

/// Exponential-mixture density of the M-QAM error rate above, in the scaling
/// where eta = 1 (M = 4); zero below u = 1/2.  For other M the same shape
/// represents the curve at rescaled SNR: integrating e^(-rho u) against it
/// yields sqrt(eta) * ser_closed_qam(M, rho / eta).
double qam_mu(int M, double u);

/// Error rate 1 - (1 - Q(sqrt(2 rho)))^3 of the cube constellation with
/// vertices (+-sqrt(2))^3 under per-dimension noise variance 1/rho.
SerEstimate ser_closed_cube(double rho);

/// Exponential-mixture density of the cube error rate: the integral of
/// e^(-rho u) cube_mu(u) equals ser_closed_cube(rho).  Supported on
/// [1, 2] u [3, inf).
double cube_mu(double u);

// ---------------------------------------------------------------------------
// Monte Carlo oracle.

/// Unbiased minimum-distance-detector simulation.  Deterministic for fixed
/// (seed, n_samples): samples are drawn in fixed-size chunks with seeds
/// derived from (seed, chunk index).
SerEstimate ser_mc(const Constellation& c, const NoiseModel& noise, double rho,
                   long n_samples, std::uint64_t seed);

/// Same detector on a complex constellation under circularly symmetric noise
/// of variance 2/rho per complex dimension.
SerEstimate ser_mc_complex(const Eigen::MatrixXcd& points, const Eigen::VectorXd& priors,
                           double rho, long n_samples, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Exponential-mixture machinery.

/// Sampled mixture density of the error rate: P_e(rho) = rho^(N*/2) *
/// integral of e^(-rho u) mu(u) du.  mu is nonnegative, nondecreasing, and
/// vanishes below u0 = d_min^2 / 8 (the squared nearest-facet distance over
/// two, in the time scale of the e^(-rho u) kernel).
struct RepresentingFn {
  std::vector<double> u_grid;    // strictly increasing, nonnegative
  std::vector<double> mu_values; // same length
  int reduced_dim = 0;
  bool onset_resolved = true;    // false warns that the grid is too coarse
                                 // to place the support onset
};

struct CmVerdict {
  enum class State { yes, no, inconclusive };
  enum class Basis { reduced_dim_rule, derivative_scan, mu_nonneg };
  State is_cm = State::inconclusive;
  Basis basis = Basis::derivative_scan;
  int max_order_checked = 0;
  std::optional<std::pair<double, int>> witness;  // (rho, order) of a sign violation
};

std::string to_string(CmVerdict::State s);
std::string to_string(CmVerdict::Basis b);

/// Caches the Voronoi cone decomposition of one constellation and evaluates
/// error rates, derivatives and the representing function from it.
class SerEngine {
 public:
  SerEngine(ReducedConstellation reduced, Eigen::VectorXd priors);
  static SerEngine from_constellation(const Constellation& c);

  const ReducedConstellation& reduced() const { return reduced_; }
  const Eigen::VectorXd& priors() const { return priors_; }
  const SymbolDecomposition& decomposition(int symbol) const;
  double min_distance() const { return dmin_; }

  /// Cone-decomposition quadrature with closed-form radial integral and
  /// adaptive angular integration to absolute tolerance tol.
  SerEstimate quadrature(double rho, double tol = 1e-6, long max_cells = 400000) const;

  /// n-th derivative of the error rate in rho, by differentiating the radial
  /// closed form under the angular integral.  n <= 6.
  double derivative(double rho, int order, double tol = 1e-9, long max_cells = 400000) const;

  /// Sampled representing function on u_grid.
  RepresentingFn representing(const std::vector<double>& u_grid) const;

 private:
  struct Deposits;  // (onset, angular measure) pairs across all cones

  const Deposits& deposits(double u_max) const;
  double angular_integral(double rho, int order, double tol, long max_cells) const;

  ReducedConstellation reduced_;
  Eigen::VectorXd priors_;
  double dmin_ = 0.0;
  mutable std::vector<std::optional<SymbolDecomposition>> decomp_;
  mutable std::shared_ptr<const Deposits> deposits_;
  mutable double deposits_u_max_ = 0.0;
};

SerEstimate ser_quadrature(const ReducedConstellation& reduced, const Eigen::VectorXd& priors,
                           double rho, double tol = 1e-6);

RepresentingFn representing_fn(const ReducedConstellation& reduced, const Eigen::VectorXd& priors,
                               const std::vector<double>& u_grid);

/// rho^(N*/2) times the trapezoid evaluation of int e^(-rho u) mu(u) du.
/// Throws when the grid tail is too short for the requested rho.
SerEstimate reconstruct_ser(const RepresentingFn& mu, double rho, double tail_tol = 1e-9);

double ser_derivative(const ReducedConstellation& reduced, const Eigen::VectorXd& priors,
                      double rho, int order, double tol = 1e-9);

/// SNR threshold 4(p + sqrt(p)) / d_min^2, p = N*/2 - 1, beyond which the
/// second derivative of the error rate is guaranteed nonnegative.
/// Requires reduced dimension > 2.
double rho0(const Constellation& c);

/// Complete-monotonicity verdict: reduced dimension <= 2 certifies yes;
/// otherwise an alternating-sign scan of derivatives up to max_order over
/// rho_grid either finds a witness (no) or stays inconclusive.
CmVerdict cm_check(const Constellation& c, const std::vector<double>& rho_grid,
                   int max_order);

/// The alternating-sign derivative scan on its own.
CmVerdict derivative_scan(const SerEngine& engine, const std::vector<double>& rho_grid,
                          int max_order, double eps_num = 1e-7);

struct OrderConditionReport {
  bool passed = true;
  int alpha = 1;
  int failure_index = -1;
  std::string detail;
};

/// Numerical order-alpha mixture conditions on a sampled representing
/// function: nonnegativity, vanishing below the support, and monotonicity of
/// the (alpha-1)-th difference quotient.  alpha in {1, 2}.
OrderConditionReport cm_order_conditions(const RepresentingFn& mu, int alpha);

}  // namespace sercm
