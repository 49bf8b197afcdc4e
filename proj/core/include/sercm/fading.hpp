// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "sercm/constellation.hpp"
#include "sercm/ser.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace sercm {

/// Unit-mean instantaneous channel power gain X; the instantaneous SNR is
/// rho * X.
struct FadingModel {
  enum class Family { degenerate, nakagami_power, rician_power, empirical };
  Family family = Family::degenerate;
  double x0 = 1.0;  // degenerate
  double m = 1.0;   // nakagami_power: X ~ Gamma(m, 1/m)
  double K = 0.0;   // rician_power: squared Rician with unit mean
  std::vector<double> samples;

  static FadingModel degenerate(double x0 = 1.0);
  static FadingModel nakagami(double m);
  static FadingModel rician(double K);
  static FadingModel empirical(std::vector<double> samples);

  std::string describe() const;
};

/// E[X^p exp(-rho X)].  Closed form for degenerate and nakagami_power,
/// adaptive quadrature in the envelope domain for rician_power, sample mean
/// for empirical.
double gp_functional(const FadingModel& f, double p, double rho);

/// Draws from the power-gain distribution.
std::vector<double> sample_fading(const FadingModel& f, long count, std::uint64_t seed);

struct OrderVerdict {
  enum class Relation { first_dominates, second_dominates, crossing, indeterminate };
  Relation relation = Relation::indeterminate;
  bool tied = false;       // |difference| below tolerance over the whole grid
  double p = 0.0;
  std::vector<double> grid;
  std::vector<double> difference;  // functional(F1) - functional(F2)
  // Crossing location, bisection-refined to 1e-6 relative.
  double rho1 = 0.0;
  double rho1_lo = 0.0;
  double rho1_hi = 0.0;
};

std::string to_string(OrderVerdict::Relation r);

/// Grid-certified comparison of E[X^p e^(-rho X)] between two gain models.
/// first_dominates means the first argument is the weaker channel: its
/// functional is the larger one everywhere on the grid.
OrderVerdict check_gp_order(const FadingModel& f1, const FadingModel& f2, double p,
                            const std::vector<double>& rho_grid, double tie_tol = 1e-12);

/// The p = 0 (Laplace transform) case.
OrderVerdict lt_order_check(const FadingModel& f1, const FadingModel& f2,
                            const std::vector<double>& rho_grid);

/// 60 log-spaced points on [1e-2, 1e2].
std::vector<double> default_rho_grid();

enum class AvgSerMethod { quadrature, mc };

/// Average error rate E[P_e(rho X)] over the gain distribution, by adaptive
/// quadrature against the gain density (written in sqrt(x), where the
/// Gaussian-tail cusp disappears) or by symbol-level simulation.  The
/// instantaneous curve comes from `instantaneous` when given, otherwise from
/// the cone-decomposition quadrature of `c`.
SerEstimate avg_ser_fading(const Constellation& c, const FadingModel& f, double rho,
                           AvgSerMethod method = AvgSerMethod::quadrature,
                           std::uint64_t seed = 1, long n_samples = 200000,
                           const std::function<double(double)>& instantaneous = nullptr);

struct SerComparisonReport {
  OrderVerdict order;            // at p = N*/2 - 1
  std::vector<double> rho_grid;
  std::vector<double> avg_ser1;
  std::vector<double> avg_ser2;
  bool order_holds = false;      // antecedent on the grid
  bool ser_ordered = false;      // consequent on the grid (within tolerance)
  std::optional<double> ser_crossing_rho;
};

/// Order antecedent at p = N*/2 - 1, and the implied average-error-rate
/// comparison, both evaluated on the grid.
SerComparisonReport order_implies_ser_comparison(const Constellation& c,
                                                 const FadingModel& f1,
                                                 const FadingModel& f2,
                                                 const std::vector<double>& rho_grid,
                                                 double tol = 1e-6);

struct GpImplicationReport {
  double p = 0.0, q = 0.0;
  bool antecedent_holds = false;  // order at p on the grid
  bool consequent_holds = false;  // order at q on the grid
  bool vacuous = false;           // antecedent false
  bool passed = false;            // implication satisfied
};

/// Order at p implies order at q for q <= p; counterexamples are reported.
GpImplicationReport gp_implies_gq_check(const FadingModel& f1, const FadingModel& f2,
                                        double p, double q,
                                        const std::vector<double>& rho_grid);

struct UniversalOrderScanReport {
  std::vector<double> p_grid;
  std::vector<OrderVerdict::Relation> relations;
  std::optional<double> first_failing_p;  // smallest p where F1 <=_{G_p} F2 fails
  bool tie_everywhere = false;
};

/// Scans p and records where the order fails; for genuinely distinct models a
/// failure must exist at some p.
UniversalOrderScanReport no_universal_order_scan(const FadingModel& f1,
                                                 const FadingModel& f2,
                                                 const std::vector<double>& p_grid,
                                                 const std::vector<double>& rho_grid);

}  // namespace sercm
