// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "sercm/geometry.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <limits>

namespace sercm::detail {

// Stack-allocated vector for the hot integration path (ambient dim <= 4).
using SmallVec = Eigen::Matrix<double, Eigen::Dynamic, 1, Eigen::ColMajor, 4, 1>;

// A simplicial cone is integrated over directions by mapping the unit box
// through barycentric weights w (Duffy-style) onto the standard simplex,
// then through the edge matrix onto the sphere:
//   u = V w / ||V w||,
//   int_{cone ^ sphere} f(u) dsigma = |det V| int f(u(w)) / ||V w||^N dw.
struct DirectionSample {
  SmallVec u;          // unit direction inside the cone
  double weight = 0.0; // duffy jacobian * |det V| / ||V w||^N
};

inline void cone_direction(const SimplicialCone& cone, const double* x,
                           DirectionSample& s) {
  const int n = static_cast<int>(cone.edges.rows());
  double w[4] = {0, 0, 0, 0};
  double jac = 1.0;
  switch (n) {
    case 2:
      w[0] = x[0];
      w[1] = 1.0 - x[0];
      break;
    case 3:
      w[0] = x[0];
      w[1] = (1.0 - x[0]) * x[1];
      w[2] = (1.0 - x[0]) * (1.0 - x[1]);
      jac = 1.0 - x[0];
      break;
    case 4:
      w[0] = x[0];
      w[1] = (1.0 - x[0]) * x[1];
      w[2] = (1.0 - x[0]) * (1.0 - x[1]) * x[2];
      w[3] = (1.0 - x[0]) * (1.0 - x[1]) * (1.0 - x[2]);
      jac = (1.0 - x[0]) * (1.0 - x[0]) * (1.0 - x[1]);
      break;
    default:
      break;
  }
  s.u.resize(n);
  s.u.setZero();
  for (int k = 0; k < n; ++k) {
    if (w[k] != 0.0) s.u += w[k] * cone.edges.col(k);
  }
  double len = s.u.norm();
  if (len < 1e-300) {
    s.weight = 0.0;
    return;
  }
  s.u /= len;
  s.weight = jac * cone.abs_det / std::pow(len, n);
}

inline DirectionSample cone_direction(const SimplicialCone& cone, const double* x) {
  DirectionSample s;
  cone_direction(cone, x, s);
  return s;
}

// Exit radius of the true region along u; the generating facet for real
// cones, the minimum over all real halfspaces for clip-box cones.
inline double cone_exit_radius(const SimplicialCone& cone, const Polyhedron& clipped,
                               const Polyhedron& region, const SmallVec& u) {
  if (!cone.artificial_facet) {
    const Halfspace& h = clipped.halfspaces[cone.facet_index];
    double denom = h.a.dot(u);
    if (denom <= 1e-14) return std::numeric_limits<double>::infinity();
    return h.b / denom;
  }
  double best = std::numeric_limits<double>::infinity();
  for (const auto& h : region.halfspaces) {
    if (h.artificial) continue;
    double denom = h.a.dot(u);
    if (denom > 1e-14) {
      double r = h.b / denom;
      if (r < best) best = r;
    }
  }
  return best;
}

}  // namespace sercm::detail
