// SPDX-License-Identifier: Apache-2.0
#include "sercm/ser.hpp"

#include "cone_param.hpp"
#include "sercm/cubature.hpp"
#include "sercm/special.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace sercm {

// The representing function is accumulated as point masses: each leaf cell of
// an adaptive split of a cone's direction simplex deposits its angular
// measure at the onset u0 = rexit^2 / 2 evaluated at the cell center.  The
// running sum over deposits is the angular-measure staircase sigma(u), and
// mu(u) = u^(N/2-1) sigma(u) / (2 pi^(N/2)).  Monotonicity in u is exact by
// construction.
struct SerEngine::Deposits {
  std::vector<std::pair<double, double>> items;  // (u0, weight), sorted by u0
  std::vector<double> prefix;                    // running weight sums
  double min_onset = 0.0;
};

namespace {

constexpr int kMaxDepth = 24;

struct CellJob {
  double lo[3];
  double hi[3];
  int depth;
};

double cell_measure(const SimplicialCone& cone, const CellJob& cell, int dim) {
  const QuadRule& rule = gauss_legendre(4);
  double mid[3], half[3];
  for (int d = 0; d < dim; ++d) {
    mid[d] = 0.5 * (cell.lo[d] + cell.hi[d]);
    half[d] = 0.5 * (cell.hi[d] - cell.lo[d]);
  }
  double sum = 0.0;
  double x[3] = {0, 0, 0};
  detail::DirectionSample s;
  auto eval = [&](const double* p) {
    detail::cone_direction(cone, p, s);
    return s.weight;
  };
  if (dim == 1) {
    for (int i = 0; i < 4; ++i) {
      x[0] = mid[0] + half[0] * rule.nodes[i];
      sum += rule.weights[i] * eval(x);
    }
    return sum * half[0];
  }
  if (dim == 2) {
    for (int i = 0; i < 4; ++i) {
      x[0] = mid[0] + half[0] * rule.nodes[i];
      for (int j = 0; j < 4; ++j) {
        x[1] = mid[1] + half[1] * rule.nodes[j];
        sum += rule.weights[i] * rule.weights[j] * eval(x);
      }
    }
    return sum * half[0] * half[1];
  }
  for (int i = 0; i < 4; ++i) {
    x[0] = mid[0] + half[0] * rule.nodes[i];
    for (int j = 0; j < 4; ++j) {
      x[1] = mid[1] + half[1] * rule.nodes[j];
      for (int k = 0; k < 4; ++k) {
        x[2] = mid[2] + half[2] * rule.nodes[k];
        sum += rule.weights[i] * rule.weights[j] * rule.weights[k] * eval(x);
      }
    }
  }
  return sum * half[0] * half[1] * half[2];
}

}  // namespace

const SerEngine::Deposits& SerEngine::deposits(double u_max) const {
  if (deposits_ && u_max <= deposits_u_max_) return *deposits_;
  const int n = reduced_.reduced_dim;
  if (n < 2) {
    throw std::invalid_argument("representing function requires reduced dimension >= 2");
  }
  auto dep = std::make_shared<Deposits>();
  const double onset_scale = 0.125 * dmin_ * dmin_;  // d^2/8, the true onset
  const int dim = n - 1;

  for (int i = 0; i < reduced_.size(); ++i) {
    if (priors_(i) <= 0) continue;
    const SymbolDecomposition& d = decomposition(i);
    const double prior = priors_(i);
    detail::DirectionSample s;
    for (const auto& cone : d.cones) {
      auto onset_at = [&](const double* x) -> double {
        detail::cone_direction(cone, x, s);
        if (s.weight == 0.0) return std::numeric_limits<double>::infinity();
        double r = detail::cone_exit_radius(cone, d.clipped, d.region, s.u);
        return 0.5 * r * r;
      };

      std::vector<CellJob> stack;
      CellJob root{{0, 0, 0}, {1, 1, 1}, 0};
      stack.push_back(root);
      while (!stack.empty()) {
        CellJob cell = stack.back();
        stack.pop_back();
        // Probe corners and center for the spread of the onset over the cell.
        double lo_val = std::numeric_limits<double>::infinity();
        double hi_val = 0.0;
        bool any_finite = false, any_infinite = false;
        double probe[3];
        const int corners = 1 << dim;
        for (int mask = 0; mask <= corners; ++mask) {
          for (int d2 = 0; d2 < dim; ++d2) {
            probe[d2] = (mask == corners) ? 0.5 * (cell.lo[d2] + cell.hi[d2])
                                          : ((mask >> d2) & 1 ? cell.hi[d2] : cell.lo[d2]);
          }
          double v = onset_at(probe);
          if (std::isinf(v)) {
            any_infinite = true;
          } else {
            any_finite = true;
            lo_val = std::min(lo_val, v);
            hi_val = std::max(hi_val, v);
          }
        }
        if (!any_finite) continue;  // recession directions carry no error mass

        const double spread_tol = 0.01 * std::max(lo_val, onset_scale);
        // Mass with onset past the sampled range never changes mu on the grid.
        bool resolved = lo_val > u_max ||
                        (!any_infinite && (hi_val - lo_val) <= spread_tol);
        if (!resolved && cell.depth < kMaxDepth) {
          int axis = 0;
          double w = cell.hi[0] - cell.lo[0];
          for (int d2 = 1; d2 < dim; ++d2) {
            if (cell.hi[d2] - cell.lo[d2] > w) {
              w = cell.hi[d2] - cell.lo[d2];
              axis = d2;
            }
          }
          CellJob left = cell, right = cell;
          left.hi[axis] = right.lo[axis] = 0.5 * (cell.lo[axis] + cell.hi[axis]);
          ++left.depth;
          ++right.depth;
          stack.push_back(left);
          stack.push_back(right);
          continue;
        }
        double measure = cell_measure(cone, cell, dim);
        if (measure <= 0) continue;
        for (int d2 = 0; d2 < dim; ++d2) probe[d2] = 0.5 * (cell.lo[d2] + cell.hi[d2]);
        double u0 = onset_at(probe);
        if (std::isinf(u0)) u0 = lo_val;  // depth-capped mixed cell
        dep->items.emplace_back(u0, prior * measure);
      }
    }
  }

  std::sort(dep->items.begin(), dep->items.end());
  dep->prefix.resize(dep->items.size());
  double acc = 0.0;
  for (size_t k = 0; k < dep->items.size(); ++k) {
    acc += dep->items[k].second;
    dep->prefix[k] = acc;
  }
  dep->min_onset = dep->items.empty() ? 0.0 : dep->items.front().first;
  deposits_ = dep;
  deposits_u_max_ = u_max;
  return *deposits_;
}

RepresentingFn SerEngine::representing(const std::vector<double>& u_grid) const {
  const int n = reduced_.reduced_dim;
  if (n < 2) throw std::invalid_argument("representing: reduced dimension must be >= 2");
  if (u_grid.size() < 2) throw std::invalid_argument("representing: grid too small");
  for (size_t k = 0; k < u_grid.size(); ++k) {
    if (u_grid[k] < 0 || (k > 0 && u_grid[k] <= u_grid[k - 1])) {
      throw std::invalid_argument("representing: grid must be nonnegative and increasing");
    }
  }
  const Deposits& dep = deposits(u_grid.back());
  const double norm = 1.0 / (2.0 * std::pow(M_PI, 0.5 * n));
  const double p = 0.5 * n - 1.0;

  RepresentingFn out;
  out.u_grid = u_grid;
  out.reduced_dim = n;
  out.mu_values.resize(u_grid.size());
  // Grid steps around the onset must be fine enough to localize it.
  {
    double onset = dep.min_onset;
    double step_at_onset = u_grid.back() - u_grid.front();
    for (size_t k = 1; k < u_grid.size(); ++k) {
      if (u_grid[k] >= onset) {
        step_at_onset = u_grid[k] - u_grid[k - 1];
        break;
      }
    }
    out.onset_resolved = step_at_onset <= 0.25 * onset;
  }
  for (size_t k = 0; k < u_grid.size(); ++k) {
    double u = u_grid[k];
    // sigma(u): total deposit weight with onset <= u.
    auto it = std::upper_bound(dep.items.begin(), dep.items.end(),
                               std::make_pair(u, std::numeric_limits<double>::infinity()));
    double sigma = (it == dep.items.begin()) ? 0.0 : dep.prefix[it - dep.items.begin() - 1];
    out.mu_values[k] = (sigma == 0.0) ? 0.0 : norm * std::pow(u, p) * sigma;
  }
  return out;
}

RepresentingFn representing_fn(const ReducedConstellation& reduced, const Eigen::VectorXd& priors,
                               const std::vector<double>& u_grid) {
  return SerEngine(reduced, priors).representing(u_grid);
}

SerEstimate reconstruct_ser(const RepresentingFn& mu, double rho, double tail_tol) {
  if (!(rho > 0)) throw std::invalid_argument("reconstruct_ser: rho must be positive");
  const auto& u = mu.u_grid;
  const auto& m = mu.mu_values;
  if (u.size() < 2) throw std::invalid_argument("reconstruct_ser: grid too small");

  double integral = 0.0;
  double prev = std::exp(-rho * u[0]) * m[0];
  for (size_t k = 1; k < u.size(); ++k) {
    double cur = std::exp(-rho * u[k]) * m[k];
    integral += 0.5 * (prev + cur) * (u[k] - u[k - 1]);
    prev = cur;
  }
  const double prefactor = std::pow(rho, 0.5 * mu.reduced_dim);
  const double value = prefactor * integral;

  // Tail bound: extend mu by its last value.
  const double tail = prefactor * m.back() * std::exp(-rho * u.back()) / rho;
  if (tail > tail_tol * std::max(value, 1e-300) && tail > tail_tol) {
    throw NumericalError("reconstruct_ser: insufficient tail coverage of the u grid");
  }

  SerEstimate e;
  e.value = value;
  e.method = SerMethod::quadrature;
  e.rho = rho;
  return e;
}

}  // namespace sercm
