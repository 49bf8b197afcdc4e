// SPDX-License-Identifier: Apache-2.0
#include "sercm/geometry.hpp"

#include "sercm/linprog.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace sercm {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool lex_less(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  for (int k = 0; k < a.size(); ++k) {
    if (a(k) < b(k)) return true;
    if (a(k) > b(k)) return false;
  }
  return false;
}

double offset_scale(const std::vector<Halfspace>& hs) {
  double s = 1.0;
  for (const auto& h : hs) s = std::max(s, h.b);
  return s;
}

}  // namespace

Halfspace::Halfspace(Eigen::VectorXd normal, double offset, bool artificial_facet)
    : a(std::move(normal)), b(offset), artificial(artificial_facet) {
  if (std::abs(a.norm() - 1.0) > 1e-12) {
    throw std::invalid_argument("Halfspace: normal must be unit length");
  }
  if (b < 0) throw std::invalid_argument("Halfspace: offset must be nonnegative");
}

SimplicialCone make_simplicial_cone(const Eigen::MatrixXd& edges, int facet_index,
                                    int symbol_index, bool artificial_facet) {
  const int n = static_cast<int>(edges.rows());
  if (edges.cols() != n) throw std::invalid_argument("simplicial cone needs N edges in R^N");
  SimplicialCone c;
  c.edges.resize(n, n);
  for (int k = 0; k < n; ++k) {
    double len = edges.col(k).norm();
    if (len == 0) throw std::invalid_argument("simplicial cone: zero edge");
    c.edges.col(k) = edges.col(k) / len;
  }
  Eigen::FullPivLU<Eigen::MatrixXd> lu(c.edges);
  c.abs_det = std::abs(lu.determinant());
  if (c.abs_det <= 1e-10) {
    throw std::invalid_argument("simplicial cone: edges nearly dependent (|det| <= 1e-10)");
  }
  c.edges_inv = lu.inverse();
  c.facet_index = facet_index;
  c.symbol_index = symbol_index;
  c.artificial_facet = artificial_facet;

  // Orthonormal frame with the last edge first (the reference direction of
  // the angular parameterization), then Gram-Schmidt over the other edges.
  c.frame.resize(n, n);
  c.frame.col(0) = c.edges.col(n - 1);
  int filled = 1;
  for (int k = 0; k < n - 1 && filled < n; ++k) {
    Eigen::VectorXd v = c.edges.col(k);
    for (int j = 0; j < filled; ++j) v -= c.frame.col(j).dot(v) * c.frame.col(j);
    double len = v.norm();
    if (len > 1e-12) {
      c.frame.col(filled++) = v / len;
    }
  }
  // Linear independence guarantees the frame is complete by now.
  if (filled != n) throw std::invalid_argument("simplicial cone: frame construction failed");
  return c;
}

Polyhedron remove_redundant(const std::vector<Halfspace>& halfspaces, int symbol_index) {
  if (halfspaces.empty()) throw std::invalid_argument("remove_redundant: empty system");
  const int n = static_cast<int>(halfspaces.front().a.size());
  for (const auto& h : halfspaces) {
    if (h.b <= 0) throw std::invalid_argument("remove_redundant: origin must be strictly feasible");
  }
  // Exact duplicates would certify each other as redundant; drop them first.
  std::vector<int> kept_input;
  for (int i = 0; i < static_cast<int>(halfspaces.size()); ++i) {
    bool dup = false;
    for (int j : kept_input) {
      if ((halfspaces[i].a - halfspaces[j].a).norm() < 1e-12 &&
          std::abs(halfspaces[i].b - halfspaces[j].b) < 1e-12) {
        dup = true;
        break;
      }
    }
    if (!dup) kept_input.push_back(i);
  }

  const double scale = offset_scale(halfspaces);
  const double keep_tol = 1e-9 * scale;
  std::vector<int> kept;
  for (int idx = 0; idx < static_cast<int>(kept_input.size()); ++idx) {
    const Halfspace& h = halfspaces[kept_input[idx]];
    // Maximize a_h.x subject to every other constraint, plus a cap on the
    // objective itself so the LP stays bounded.
    const int m = static_cast<int>(kept_input.size());
    Eigen::MatrixXd A(m, n);
    Eigen::VectorXd b(m);
    int row = 0;
    for (int jdx = 0; jdx < m; ++jdx) {
      if (jdx == idx) continue;
      A.row(row) = halfspaces[kept_input[jdx]].a.transpose();
      b(row) = halfspaces[kept_input[jdx]].b;
      ++row;
    }
    A.row(row) = h.a.transpose();
    b(row) = h.b + scale;  // cap
    LpResult lp = lp_maximize(h.a, A, b);
    if (lp.status != LpStatus::Optimal) {
      throw std::runtime_error("remove_redundant: unexpected unbounded LP");
    }
    if (lp.value > h.b + keep_tol) kept.push_back(kept_input[idx]);
  }

  Polyhedron p;
  p.symbol_index = symbol_index;
  for (int i : kept) p.halfspaces.push_back(halfspaces[i]);
  if (p.halfspaces.empty()) {
    throw std::runtime_error("remove_redundant: no facets left (degenerate input)");
  }
  p.bounded = !is_unbounded(p);
  return p;
}

Polyhedron voronoi_region(const ReducedConstellation& reduced, int symbol_index) {
  const int M = reduced.size();
  if (symbol_index < 0 || symbol_index >= M) {
    throw std::invalid_argument("voronoi_region: symbol index out of range");
  }
  std::vector<Halfspace> hs;
  hs.reserve(M - 1);
  const Eigen::VectorXd si = reduced.points.col(symbol_index);
  for (int j = 0; j < M; ++j) {
    if (j == symbol_index) continue;
    Eigen::VectorXd d = reduced.points.col(j) - si;
    double len = d.norm();
    hs.emplace_back(d / len, 0.5 * len);
  }
  return remove_redundant(hs, symbol_index);
}

bool is_unbounded(const Polyhedron& p) {
  const int n = p.dim();
  const int m = static_cast<int>(p.halfspaces.size());
  // Nontrivial recession direction: A d <= 0 with d in the unit box and some
  // coordinate stretched to 1.
  Eigen::MatrixXd A(m + 2 * n, n);
  Eigen::VectorXd b(m + 2 * n);
  for (int i = 0; i < m; ++i) {
    A.row(i) = p.halfspaces[i].a.transpose();
    b(i) = 0.0;
  }
  for (int k = 0; k < n; ++k) {
    A.row(m + 2 * k).setZero();
    A(m + 2 * k, k) = 1.0;
    b(m + 2 * k) = 1.0;
    A.row(m + 2 * k + 1).setZero();
    A(m + 2 * k + 1, k) = -1.0;
    b(m + 2 * k + 1) = 1.0;
  }
  for (int k = 0; k < n; ++k) {
    for (double sign : {1.0, -1.0}) {
      Eigen::VectorXd c = Eigen::VectorXd::Zero(n);
      c(k) = sign;
      LpResult lp = lp_maximize(c, A, b);
      if (lp.status == LpStatus::Optimal && lp.value > 1e-6) return true;
    }
  }
  return false;
}

Polyhedron clip_to_box(const Polyhedron& p, double radius) {
  if (radius <= 0) throw std::invalid_argument("clip_to_box: radius must be positive");
  const int n = p.dim();
  Polyhedron out = p;
  for (int k = 0; k < n; ++k) {
    for (double sign : {1.0, -1.0}) {
      Eigen::VectorXd a = Eigen::VectorXd::Zero(n);
      a(k) = sign;
      // Keep the clip facet only when it cuts the region.
      const int m = static_cast<int>(out.halfspaces.size());
      Eigen::MatrixXd A(m, n);
      Eigen::VectorXd b(m);
      for (int i = 0; i < m; ++i) {
        A.row(i) = out.halfspaces[i].a.transpose();
        b(i) = out.halfspaces[i].b;
      }
      LpResult lp = lp_maximize(a, A, b);
      if (lp.status == LpStatus::Unbounded || lp.value > radius) {
        out.halfspaces.emplace_back(a, radius, true);
      }
    }
  }
  out.bounded = true;
  return out;
}

namespace {

std::vector<Eigen::VectorXd> enumerate_vertices(const Polyhedron& p) {
  const int n = p.dim();
  const int m = static_cast<int>(p.halfspaces.size());
  const double scale = offset_scale(p.halfspaces);
  const double feas_tol = 1e-8 * scale;
  std::vector<Eigen::VectorXd> verts;

  std::vector<int> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  auto try_subset = [&](const std::vector<int>& subset) {
    Eigen::MatrixXd A(n, n);
    Eigen::VectorXd b(n);
    for (int k = 0; k < n; ++k) {
      A.row(k) = p.halfspaces[subset[k]].a.transpose();
      b(k) = p.halfspaces[subset[k]].b;
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(A);
    if (!lu.isInvertible() || std::abs(lu.determinant()) < 1e-10) return;
    Eigen::VectorXd v = lu.solve(b);
    for (const auto& h : p.halfspaces) {
      if (h.a.dot(v) > h.b + feas_tol) return;
    }
    for (const auto& u : verts) {
      if ((u - v).norm() < 1e-8 * scale) return;
    }
    verts.push_back(v);
  };

  // All n-subsets of the m hyperplanes.
  std::vector<int> subset(n);
  std::function<void(int, int)> rec = [&](int start, int depth) {
    if (depth == n) {
      try_subset(subset);
      return;
    }
    for (int i = start; i <= m - (n - depth); ++i) {
      subset[depth] = i;
      rec(i + 1, depth + 1);
    }
  };
  if (m >= n) rec(0, 0);

  std::sort(verts.begin(), verts.end(), lex_less);
  return verts;
}

// Cyclic order of coplanar points around their centroid, within the plane
// orthogonal to `normal` (dimension 3 only).
std::vector<int> cyclic_order(const std::vector<Eigen::VectorXd>& pts,
                              const Eigen::VectorXd& normal) {
  Eigen::VectorXd t1 = normal.unitOrthogonal();
  Eigen::Vector3d n3(normal(0), normal(1), normal(2));
  Eigen::Vector3d t13(t1(0), t1(1), t1(2));
  Eigen::Vector3d t23 = n3.cross(t13);
  Eigen::VectorXd centroid = Eigen::VectorXd::Zero(3);
  for (const auto& v : pts) centroid += v;
  centroid /= static_cast<double>(pts.size());
  std::vector<int> order(pts.size());
  std::iota(order.begin(), order.end(), 0);
  std::vector<double> ang(pts.size());
  for (size_t i = 0; i < pts.size(); ++i) {
    Eigen::VectorXd d = pts[i] - centroid;
    Eigen::Vector3d d3(d(0), d(1), d(2));
    ang[i] = std::atan2(d3.dot(t23), d3.dot(t13));
  }
  std::sort(order.begin(), order.end(), [&](int a, int b) { return ang[a] < ang[b]; });
  return order;
}

}  // namespace

std::vector<FacetVertices> cone_fan(const Polyhedron& p) {
  if (is_unbounded(p)) {
    throw std::invalid_argument("cone_fan: region is unbounded; clip it first");
  }
  const int n = p.dim();
  const double scale = offset_scale(p.halfspaces);
  const double on_tol = 1e-8 * scale;
  std::vector<Eigen::VectorXd> verts = enumerate_vertices(p);

  std::vector<FacetVertices> fan;
  for (int f = 0; f < static_cast<int>(p.halfspaces.size()); ++f) {
    const Halfspace& h = p.halfspaces[f];
    FacetVertices fv;
    fv.facet_index = f;
    for (const auto& v : verts) {
      if (std::abs(h.a.dot(v) - h.b) <= on_tol) fv.vertices.push_back(v);
    }
    if (static_cast<int>(fv.vertices.size()) < n) {
      throw std::runtime_error("cone_fan: degenerate facet (too few vertices)");
    }
    if (n == 3) {
      auto order = cyclic_order(fv.vertices, h.a);
      std::vector<Eigen::VectorXd> sorted;
      sorted.reserve(fv.vertices.size());
      for (int i : order) sorted.push_back(fv.vertices[i]);
      // Rotate so the lexicographically smallest vertex leads.
      int lead = 0;
      for (int i = 1; i < static_cast<int>(sorted.size()); ++i) {
        if (lex_less(sorted[i], sorted[lead])) lead = i;
      }
      std::rotate(sorted.begin(), sorted.begin() + lead, sorted.end());
      fv.vertices = std::move(sorted);
    }
    fan.push_back(std::move(fv));
  }
  return fan;
}

namespace {

// 2-faces of a 3-D polytope cell given only its vertices: maximal coplanar
// subsets whose plane supports the cell.
std::vector<std::vector<int>> cell_faces_3d(const std::vector<Eigen::Vector3d>& v) {
  const int n = static_cast<int>(v.size());
  double scale = 0.0;
  for (const auto& x : v) scale = std::max(scale, x.norm());
  const double tol = 1e-8 * std::max(scale, 1.0);
  std::vector<std::vector<int>> faces;
  std::vector<Eigen::Vector4d> planes;  // (normal, offset), outward
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      for (int k = j + 1; k < n; ++k) {
        Eigen::Vector3d nrm = (v[j] - v[i]).cross(v[k] - v[i]);
        double len = nrm.norm();
        if (len < tol * tol) continue;
        nrm /= len;
        double off = nrm.dot(v[i]);
        int pos = 0, neg = 0;
        for (int t = 0; t < n; ++t) {
          double s = nrm.dot(v[t]) - off;
          if (s > tol) ++pos;
          if (s < -tol) ++neg;
        }
        if (pos > 0 && neg > 0) continue;  // not supporting
        if (pos > 0) {
          nrm = -nrm;
          off = -off;
        }
        bool known = false;
        for (const auto& pl : planes) {
          if ((pl.head<3>() - nrm).norm() < 1e-7 && std::abs(pl(3) - off) < tol) {
            known = true;
            break;
          }
        }
        if (known) continue;
        planes.emplace_back(nrm(0), nrm(1), nrm(2), off);
        std::vector<int> face;
        for (int t = 0; t < n; ++t) {
          if (std::abs(nrm.dot(v[t]) - off) <= tol) face.push_back(t);
        }
        if (static_cast<int>(face.size()) >= 3) faces.push_back(std::move(face));
      }
    }
  }
  return faces;
}

}  // namespace

std::vector<SimplicialCone> triangulate_cone(const FacetVertices& cone,
                                             const Polyhedron& p) {
  const int n = p.dim();
  const Halfspace& h = p.halfspaces[cone.facet_index];
  const auto& vs = cone.vertices;
  std::vector<SimplicialCone> out;

  auto push_cone = [&](const std::vector<Eigen::VectorXd>& pts) {
    Eigen::MatrixXd edges(n, n);
    for (int k = 0; k < n; ++k) edges.col(k) = pts[k];
    out.push_back(make_simplicial_cone(edges, cone.facet_index, p.symbol_index,
                                       h.artificial));
  };

  if (n == 1) {
    if (vs.size() != 1) throw std::invalid_argument("triangulate_cone: 1-D facet is a point");
    push_cone({vs[0]});
    return out;
  }
  if (n == 2) {
    if (vs.size() != 2) throw std::invalid_argument("triangulate_cone: 2-D facet is a segment");
    push_cone({vs[0], vs[1]});
    return out;
  }
  if (n == 3) {
    // vs is cyclically ordered starting at the lex-lowest vertex.
    for (size_t k = 1; k + 1 < vs.size(); ++k) {
      push_cone({vs[0], vs[k], vs[k + 1]});
    }
    return out;
  }
  if (n == 4) {
    // Project the cell into its affine hull and triangulate from the lowest
    // vertex over the 2-faces that do not contain it.
    Eigen::VectorXd origin = vs[0];
    Eigen::MatrixXd basis(4, 3);
    {
      // Orthonormal basis of the facet hyperplane.
      Eigen::MatrixXd nrm = h.a;
      Eigen::FullPivHouseholderQR<Eigen::MatrixXd> qr(nrm);
      Eigen::MatrixXd Q = qr.matrixQ();
      basis = Q.rightCols(3);
    }
    std::vector<Eigen::Vector3d> local(vs.size());
    for (size_t i = 0; i < vs.size(); ++i) {
      Eigen::VectorXd d = vs[i] - origin;
      local[i] = (basis.transpose() * d).head<3>();
    }
    auto faces = cell_faces_3d(local);
    const int apex = 0;  // vs sorted lexicographically, 0 is lowest
    for (const auto& face : faces) {
      if (std::find(face.begin(), face.end(), apex) != face.end()) continue;
      // Cyclic order of the polygon face inside the cell.
      std::vector<Eigen::VectorXd> fpts3;
      for (int i : face) {
        Eigen::VectorXd x(3);
        x << local[i](0), local[i](1), local[i](2);
        fpts3.push_back(x);
      }
      Eigen::Vector3d fn = (local[face[1]] - local[face[0]])
                               .cross(local[face[2]] - local[face[0]])
                               .normalized();
      Eigen::VectorXd fnx(3);
      fnx << fn(0), fn(1), fn(2);
      auto order = cyclic_order(fpts3, fnx);
      std::vector<int> ring;
      for (int i : order) ring.push_back(face[i]);
      int lead = 0;
      for (int i = 1; i < static_cast<int>(ring.size()); ++i) {
        if (lex_less(vs[ring[i]], vs[ring[lead]])) lead = i;
      }
      std::rotate(ring.begin(), ring.begin() + lead, ring.end());
      for (size_t k = 1; k + 1 < ring.size(); ++k) {
        push_cone({vs[apex], vs[ring[0]], vs[ring[k]], vs[ring[k + 1]]});
      }
    }
    return out;
  }
  throw std::invalid_argument("triangulate_cone: dimension not supported");
}

Eigen::VectorXd hyperspherical_to_cartesian(double r, const std::vector<double>& phi,
                                            const Eigen::MatrixXd& frame) {
  const int n = static_cast<int>(frame.rows());
  if (static_cast<int>(phi.size()) != n - 1) {
    throw std::invalid_argument("hyperspherical_to_cartesian: need N-1 angles");
  }
  if (r < 0) throw std::invalid_argument("hyperspherical_to_cartesian: r must be nonnegative");
  Eigen::VectorXd y(n);
  double sin_prod = 1.0;
  for (int k = 0; k < n - 1; ++k) {
    y(k) = r * std::cos(phi[k]) * sin_prod;
    sin_prod *= std::sin(phi[k]);
  }
  y(n - 1) = r * sin_prod;
  return frame * y;
}

void cartesian_to_hyperspherical(const Eigen::VectorXd& x, const Eigen::MatrixXd& frame,
                                 double* r, std::vector<double>* phi) {
  const int n = static_cast<int>(frame.rows());
  Eigen::VectorXd y = frame.transpose() * x;
  double radius = y.norm();
  if (radius == 0) throw std::invalid_argument("cartesian_to_hyperspherical: zero vector");
  *r = radius;
  phi->assign(n - 1, 0.0);
  for (int k = 0; k < n - 1; ++k) {
    double tail = y.tail(n - k - 1).norm();
    if (k == n - 2) {
      (*phi)[k] = std::atan2(y(n - 1), y(n - 2));
    } else {
      (*phi)[k] = std::atan2(tail, y(k));
    }
  }
}

double rbar(const Halfspace& h, const std::vector<double>& phi,
            const Eigen::MatrixXd& frame) {
  Eigen::VectorXd u = hyperspherical_to_cartesian(1.0, phi, frame);
  double denom = h.a.dot(u);
  if (denom <= 1e-14) return kInf;
  return h.b / denom;
}

AngleBox angle_box(const SimplicialCone& cone) {
  const int n = static_cast<int>(cone.edges.rows());
  AngleBox box;
  for (int k = 0; k < n - 1; ++k) {
    double c = cone.edges.col(n - 1).dot(cone.edges.col(k));
    c = std::clamp(c, -1.0, 1.0);
    double ang = std::acos(c);
    if (ang <= 0) throw std::invalid_argument("angle_box: coincident edges");
    box.max_angles.push_back(ang);
  }
  return box;
}

double exit_radius(const Polyhedron& region, const Eigen::VectorXd& u) {
  double best = kInf;
  for (const auto& h : region.halfspaces) {
    if (h.artificial) continue;
    double denom = h.a.dot(u);
    if (denom > 1e-14) best = std::min(best, h.b / denom);
  }
  return best;
}

bool point_in_polyhedron(const Polyhedron& p, const Eigen::VectorXd& x, double tol) {
  for (const auto& h : p.halfspaces) {
    if (h.artificial) continue;
    if (h.a.dot(x) > h.b + tol) return false;
  }
  return true;
}

SymbolDecomposition decompose_symbol(const ReducedConstellation& reduced,
                                     int symbol_index, double clip_radius) {
  SymbolDecomposition d;
  d.symbol_index = symbol_index;
  d.region = voronoi_region(reduced, symbol_index);
  if (d.region.bounded) {
    d.clipped = d.region;
  } else {
    double radius = clip_radius;
    if (radius <= 0) {
      double dmax = 0.0;
      const Eigen::VectorXd si = reduced.points.col(symbol_index);
      for (int j = 0; j < reduced.size(); ++j) {
        dmax = std::max(dmax, (reduced.points.col(j) - si).norm());
      }
      radius = dmax + 10.0;
    }
    d.clipped = clip_to_box(d.region, radius);
  }
  if (reduced.reduced_dim >= 2) {
    d.fan = cone_fan(d.clipped);
    for (const auto& fv : d.fan) {
      auto cones = triangulate_cone(fv, d.clipped);
      d.cones.insert(d.cones.end(), cones.begin(), cones.end());
    }
  }
  return d;
}

}  // namespace sercm
