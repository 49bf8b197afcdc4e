// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <stdexcept>

namespace sercm {

/// Raised when an adaptive scheme cannot reach its tolerance.
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CubatureResult {
  double value = 0.0;
  double error = 0.0;
  long evaluations = 0;
  bool converged = true;
};

/// Adaptive tensor-product Gauss-Legendre integration over an axis-aligned
/// box, dim in {1, 2, 3}.  Cells are split along their widest axis until the
/// summed error estimate meets max(abs_tol, rel_tol * |value|) or max_cells
/// is reached (converged = false).  Fully deterministic.  The two-rule error
/// estimate is tight for piecewise-smooth integrands; pure step
/// discontinuities can under-report at coarse budgets, so indicator-type
/// integrals are handled elsewhere by interval classification.
CubatureResult integrate_box(const std::function<double(const double*)>& f,
                             const double* lo, const double* hi, int dim,
                             double abs_tol, double rel_tol = 0.0,
                             long max_cells = 200000);

}  // namespace sercm
