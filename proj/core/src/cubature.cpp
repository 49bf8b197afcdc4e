// SPDX-License-Identifier: Apache-2.0
#include "sercm/cubature.hpp"

#include "sercm/special.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <queue>
#include <stdexcept>
#include <vector>

namespace sercm {

namespace {

struct Cell {
  std::array<double, 3> lo{};
  std::array<double, 3> hi{};
  double value = 0.0;
  double error = 0.0;
  std::uint64_t id = 0;
};

struct CellOrder {
  bool operator()(const Cell& a, const Cell& b) const {
    if (a.error != b.error) return a.error < b.error;
    return a.id > b.id;  // older cells first on ties, keeps runs reproducible
  }
};

// Tensor rule of order `n` over the cell.
double tensor_gl(const std::function<double(const double*)>& f, const Cell& c,
                 int dim, int n, long* evals) {
  const QuadRule& rule = gauss_legendre(n);
  std::array<double, 3> mid{}, half{};
  for (int d = 0; d < dim; ++d) {
    mid[d] = 0.5 * (c.lo[d] + c.hi[d]);
    half[d] = 0.5 * (c.hi[d] - c.lo[d]);
  }
  double sum = 0.0;
  double x[3];
  if (dim == 1) {
    for (int i = 0; i < n; ++i) {
      x[0] = mid[0] + half[0] * rule.nodes[i];
      sum += rule.weights[i] * f(x);
    }
    *evals += n;
    return sum * half[0];
  }
  if (dim == 2) {
    for (int i = 0; i < n; ++i) {
      x[0] = mid[0] + half[0] * rule.nodes[i];
      double row = 0.0;
      for (int j = 0; j < n; ++j) {
        x[1] = mid[1] + half[1] * rule.nodes[j];
        row += rule.weights[j] * f(x);
      }
      sum += rule.weights[i] * row;
    }
    *evals += static_cast<long>(n) * n;
    return sum * half[0] * half[1];
  }
  for (int i = 0; i < n; ++i) {
    x[0] = mid[0] + half[0] * rule.nodes[i];
    double plane = 0.0;
    for (int j = 0; j < n; ++j) {
      x[1] = mid[1] + half[1] * rule.nodes[j];
      double row = 0.0;
      for (int k = 0; k < n; ++k) {
        x[2] = mid[2] + half[2] * rule.nodes[k];
        row += rule.weights[k] * f(x);
      }
      plane += rule.weights[j] * row;
    }
    sum += rule.weights[i] * plane;
  }
  *evals += static_cast<long>(n) * n * n;
  return sum * half[0] * half[1] * half[2];
}

void estimate(const std::function<double(const double*)>& f, Cell& c, int dim,
              long* evals) {
  double fine = tensor_gl(f, c, dim, 5, evals);
  double coarse = tensor_gl(f, c, dim, 3, evals);
  c.value = fine;
  c.error = std::abs(fine - coarse);
}

}  // namespace

CubatureResult integrate_box(const std::function<double(const double*)>& f,
                             const double* lo, const double* hi, int dim,
                             double abs_tol, double rel_tol, long max_cells) {
  if (dim < 1 || dim > 3) throw std::invalid_argument("integrate_box: dim must be 1..3");
  CubatureResult res;
  Cell root;
  for (int d = 0; d < dim; ++d) {
    root.lo[d] = lo[d];
    root.hi[d] = hi[d];
    if (!(hi[d] >= lo[d])) throw std::invalid_argument("integrate_box: empty box");
  }
  std::uint64_t next_id = 0;
  root.id = next_id++;
  long evals = 0;
  estimate(f, root, dim, &evals);

  std::priority_queue<Cell, std::vector<Cell>, CellOrder> heap;
  heap.push(root);
  double total_value = root.value;
  double total_error = root.error;
  long cells = 1;

  while (total_error > std::max(abs_tol, rel_tol * std::abs(total_value))) {
    if (cells >= max_cells || heap.empty()) {
      res.converged = false;
      break;
    }
    Cell worst = heap.top();
    heap.pop();
    total_value -= worst.value;
    total_error -= worst.error;

    int axis = 0;
    double w = worst.hi[0] - worst.lo[0];
    for (int d = 1; d < dim; ++d) {
      if (worst.hi[d] - worst.lo[d] > w) {
        w = worst.hi[d] - worst.lo[d];
        axis = d;
      }
    }
    double mid = 0.5 * (worst.lo[axis] + worst.hi[axis]);
    Cell left = worst, right = worst;
    left.hi[axis] = mid;
    right.lo[axis] = mid;
    left.id = next_id++;
    right.id = next_id++;
    estimate(f, left, dim, &evals);
    estimate(f, right, dim, &evals);
    heap.push(left);
    heap.push(right);
    total_value += left.value + right.value;
    total_error += left.error + right.error;
    ++cells;
  }

  // Re-sum leaves in creation order; avoids drift from incremental updates.
  std::vector<Cell> leaves;
  leaves.reserve(heap.size());
  while (!heap.empty()) {
    leaves.push_back(heap.top());
    heap.pop();
  }
  std::sort(leaves.begin(), leaves.end(),
            [](const Cell& a, const Cell& b) { return a.id < b.id; });
  double value = 0.0, comp = 0.0, err = 0.0;
  for (const Cell& c : leaves) {
    double y = c.value - comp;
    double t = value + y;
    comp = (t - value) - y;
    value = t;
    err += c.error;
  }
  res.value = value;
  res.error = err;
  res.evaluations = evals;
  return res;
}

}  // namespace sercm
