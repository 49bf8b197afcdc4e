// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "sercm/constellation.hpp"

#include <Eigen/Dense>

#include <vector>

namespace sercm {

/// Closed halfspace {x : a.x <= b} with unit outward normal and b >= 0.
struct Halfspace {
  Eigen::VectorXd a;
  double b = 0.0;
  bool artificial = false;  // clip-box facet, not part of the true region

  Halfspace() = default;
  Halfspace(Eigen::VectorXd normal, double offset, bool artificial_facet = false);
};

/// Non-redundant halfspace description of a region containing the origin in
/// its interior (the coordinate origin sits on the generating symbol).
struct Polyhedron {
  std::vector<Halfspace> halfspaces;
  int symbol_index = -1;
  bool bounded = true;

  int dim() const {
    return halfspaces.empty() ? 0 : static_cast<int>(halfspaces.front().a.size());
  }
};

/// Simplicial cone with unit edge vectors as columns; anchored at the symbol.
struct SimplicialCone {
  Eigen::MatrixXd edges;  // N* x N*, linearly independent unit columns
  int facet_index = -1;
  int symbol_index = -1;

  // Derived quantities, filled by make_simplicial_cone.
  Eigen::MatrixXd edges_inv;
  double abs_det = 0.0;
  Eigen::MatrixXd frame;  // orthonormal; column 0 along the last edge
  bool artificial_facet = false;

  bool contains(const Eigen::VectorXd& x, double tol = 1e-10) const {
    return ((edges_inv * x).array() >= -tol).all();
  }
};

SimplicialCone make_simplicial_cone(const Eigen::MatrixXd& edges, int facet_index,
                                    int symbol_index, bool artificial_facet = false);

/// Per-coordinate upper angle limits, each in (0, pi].
struct AngleBox {
  std::vector<double> max_angles;
};

/// Vertex set lying on one facet; the polyhedral cone it generates is
/// cone(vertices).  Vertices of 2-D facets are in cyclic order.
struct FacetVertices {
  int facet_index = -1;
  std::vector<Eigen::VectorXd> vertices;
};

/// Voronoi region of symbol i, origin shifted to the symbol: one halfspace
/// per other symbol, reduced to a non-redundant description.
Polyhedron voronoi_region(const ReducedConstellation& reduced, int symbol_index);

/// LP-certified redundancy removal.  Requires all offsets strictly positive.
Polyhedron remove_redundant(const std::vector<Halfspace>& halfspaces,
                            int symbol_index = -1);

/// True if the region has a nontrivial recession direction.
bool is_unbounded(const Polyhedron& p);

/// Adds axis-aligned clip facets at +-radius (tagged artificial), dropping
/// the redundant ones.  Real halfspaces are never dropped here.
Polyhedron clip_to_box(const Polyhedron& p, double radius);

/// One polyhedral cone per facet, generated by the facet's vertices.
/// Requires a bounded region (clip first if needed).
std::vector<FacetVertices> cone_fan(const Polyhedron& p);

/// Fan triangulation of a facet's cone into simplicial cones, from the
/// lowest-index vertex, deterministic.
std::vector<SimplicialCone> triangulate_cone(const FacetVertices& cone,
                                             const Polyhedron& p);

/// Hyperspherical coordinates in an orthonormal frame (columns of `frame`):
///   y_k = r cos(phi_k) prod_{k1<k} sin(phi_k1),  y_N = r prod sin(phi_k1).
Eigen::VectorXd hyperspherical_to_cartesian(double r, const std::vector<double>& phi,
                                            const Eigen::MatrixXd& frame);

/// Inverse of the above; r = ||x||.  Throws on the zero vector.
void cartesian_to_hyperspherical(const Eigen::VectorXd& x, const Eigen::MatrixXd& frame,
                                 double* r, std::vector<double>* phi);

/// Distance along direction phi to the halfspace boundary; +infinity when the
/// ray never meets the hyperplane.
double rbar(const Halfspace& h, const std::vector<double>& phi,
            const Eigen::MatrixXd& frame);

/// Angle limits of the cone: max_angles[k] = angle(last edge, edge k).
AngleBox angle_box(const SimplicialCone& cone);

/// Full decomposition used by the error-rate engine.
struct SymbolDecomposition {
  int symbol_index = -1;
  Polyhedron region;   // true (unclipped) non-redundant region
  Polyhedron clipped;  // region actually fanned (== region when bounded)
  std::vector<FacetVertices> fan;
  std::vector<SimplicialCone> cones;
};

/// clip_radius <= 0 selects max distance to any other symbol + 10.
SymbolDecomposition decompose_symbol(const ReducedConstellation& reduced,
                                     int symbol_index, double clip_radius = 0.0);

/// Exit radius of the true region along unit direction u: min over real
/// halfspaces of b / (a.u), +infinity if the ray stays inside forever.
double exit_radius(const Polyhedron& region, const Eigen::VectorXd& u);

bool point_in_polyhedron(const Polyhedron& p, const Eigen::VectorXd& x,
                         double tol = 1e-10);

}  // namespace sercm
