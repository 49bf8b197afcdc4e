// SPDX-License-Identifier: Apache-2.0
#include <sercm/geometry.hpp>

#include "test_fixtures.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace sercm;

namespace {

ReducedConstellation as_reduced(const Eigen::MatrixXd& pts) {
  return reduce(new_constellation(pts));
}

// Brute-force redundancy oracle: a halfspace is redundant iff dropping it
// never admits a point the full system rejects (checked on random samples).
bool brute_redundant(const std::vector<Halfspace>& all, size_t drop, double box,
                     int n_samples) {
  std::mt19937 gen(4242);
  std::uniform_real_distribution<double> ud(-box, box);
  const int dim = static_cast<int>(all[0].a.size());
  Eigen::VectorXd x(dim);
  for (int s = 0; s < n_samples; ++s) {
    for (int k = 0; k < dim; ++k) x(k) = ud(gen);
    bool in_without = true;
    for (size_t j = 0; j < all.size(); ++j) {
      if (j == drop) continue;
      if (all[j].a.dot(x) > all[j].b) {
        in_without = false;
        break;
      }
    }
    if (in_without && all[drop].a.dot(x) > all[drop].b + 1e-12) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("voronoi region of antipodal pair") {
  ReducedConstellation r;
  r.points = fixtures::bpsk();
  r.reduced_dim = 1;
  Polyhedron p = voronoi_region(r, 0);  // symbol at -1
  REQUIRE(p.halfspaces.size() == 1);
  CHECK(p.halfspaces[0].a(0) == doctest::Approx(1.0));
  CHECK(p.halfspaces[0].b == doctest::Approx(1.0));
  CHECK_FALSE(p.bounded);
}

TEST_CASE("diagonal neighbor is redundant for a 4-point grid") {
  ReducedConstellation r = as_reduced(fixtures::qpsk(1.0));
  Polyhedron p = voronoi_region(r, 0);
  CHECK(p.halfspaces.size() == 2);

  // LP verdict agrees with a sampling oracle on the raw 3-halfspace system.
  std::vector<Halfspace> raw;
  const Eigen::VectorXd s0 = r.points.col(0);
  for (int j = 1; j < 4; ++j) {
    Eigen::VectorXd d = r.points.col(j) - s0;
    raw.emplace_back(d.normalized(), 0.5 * d.norm());
  }
  int kept_by_oracle = 0;
  for (size_t h = 0; h < raw.size(); ++h) {
    if (!brute_redundant(raw, h, 6.0, 20000)) ++kept_by_oracle;
  }
  CHECK(kept_by_oracle == 2);
}

TEST_CASE("interior symbol of a 16-point grid") {
  // Scaling with d_min = sqrt(2): per-axis levels (sqrt2/2)*{+-1,+-3}.
  ReducedConstellation r = as_reduced(fixtures::qam16(std::sqrt(2.0) / 2.0));
  // Find an interior symbol: both coordinates at the inner level.
  int interior = -1;
  for (int j = 0; j < 16; ++j) {
    if (std::abs(r.points.col(j).cwiseAbs().maxCoeff() - std::sqrt(2.0) / 2.0) < 1e-9) {
      interior = j;
      break;
    }
  }
  REQUIRE(interior >= 0);
  Polyhedron p = voronoi_region(r, interior);
  CHECK(p.halfspaces.size() == 4);
  CHECK(p.bounded);
  for (const auto& h : p.halfspaces) {
    CHECK(h.b == doctest::Approx(std::sqrt(2.0) / 2.0).epsilon(1e-12));
  }
}

TEST_CASE("remove_redundant basics") {
  Eigen::VectorXd e1(1);
  e1 << 1;
  std::vector<Halfspace> hs{Halfspace(e1, 1.0), Halfspace(e1, 2.0)};
  Polyhedron p = remove_redundant(hs);
  REQUIRE(p.halfspaces.size() == 1);
  CHECK(p.halfspaces[0].b == doctest::Approx(1.0));

  // Unit square plus a diagonal cut too far away to bind.
  Eigen::VectorXd ex(2), ey(2), diag(2);
  ex << 1, 0;
  ey << 0, 1;
  diag << std::sqrt(0.5), std::sqrt(0.5);
  std::vector<Halfspace> sq{Halfspace(ex, 1.0), Halfspace(-ex, 1.0),
                            Halfspace(ey, 1.0), Halfspace(-ey, 1.0),
                            Halfspace(diag, 2.0)};
  Polyhedron square = remove_redundant(sq);
  CHECK(square.halfspaces.size() == 4);
  CHECK(square.bounded);

  CHECK_THROWS(remove_redundant({Halfspace(ex, 0.0)}));  // origin not interior
}

TEST_CASE("fan of a square cell") {
  Eigen::VectorXd ex(2), ey(2);
  ex << 1, 0;
  ey << 0, 1;
  Polyhedron square = remove_redundant({Halfspace(ex, 1.0), Halfspace(-ex, 1.0),
                                        Halfspace(ey, 1.0), Halfspace(-ey, 1.0)});
  auto fan = cone_fan(square);
  REQUIRE(fan.size() == 4);
  double total = 0.0;
  for (const auto& fv : fan) {
    auto cones = triangulate_cone(fv, square);
    REQUIRE(cones.size() == 1);
    AngleBox box = angle_box(cones[0]);
    CHECK(box.max_angles[0] == doctest::Approx(M_PI / 2).epsilon(1e-12));
    total += box.max_angles[0];
  }
  CHECK(total == doctest::Approx(2 * M_PI).epsilon(1e-12));
}

TEST_CASE("hexagonal cell: six cones of opening pi/3") {
  ReducedConstellation r = as_reduced(fixtures::hex7(1.0));
  Polyhedron cell = voronoi_region(r, 0);  // center symbol
  REQUIRE(cell.halfspaces.size() == 6);
  CHECK(cell.bounded);
  auto fan = cone_fan(cell);
  CHECK(fan.size() == 6);
  double total = 0.0;
  for (const auto& fv : fan) {
    auto cones = triangulate_cone(fv, cell);
    REQUIRE(cones.size() == 1);
    CHECK(angle_box(cones[0]).max_angles[0] == doctest::Approx(M_PI / 3).epsilon(1e-9));
    total += angle_box(cones[0]).max_angles[0];
  }
  CHECK(total == doctest::Approx(2 * M_PI).epsilon(1e-9));
}

TEST_CASE("cube cell: six square facets, two simplicial cones each") {
  Eigen::VectorXd a(3);
  std::vector<Halfspace> hs;
  for (int k = 0; k < 3; ++k) {
    for (double s : {1.0, -1.0}) {
      a.setZero();
      a(k) = s;
      hs.emplace_back(a, 1.0);
    }
  }
  Polyhedron cube = remove_redundant(hs);
  auto fan = cone_fan(cube);
  REQUIRE(fan.size() == 6);
  int total_cones = 0;
  for (const auto& fv : fan) {
    CHECK(fv.vertices.size() == 4);
    total_cones += static_cast<int>(triangulate_cone(fv, cube).size());
  }
  CHECK(total_cones == 12);  // 2 per square facet
}

TEST_CASE("hexagonal facet triangulates into four cones") {
  // Hexagonal prism: six side walls plus top and bottom.
  std::vector<Halfspace> hs;
  for (int k = 0; k < 6; ++k) {
    Eigen::VectorXd a(3);
    a << std::cos(M_PI * k / 3.0), std::sin(M_PI * k / 3.0), 0.0;
    hs.emplace_back(a, 1.0);
  }
  Eigen::VectorXd ez(3);
  ez << 0, 0, 1;
  hs.emplace_back(ez, 1.0);
  hs.emplace_back(-ez, 1.0);
  Polyhedron prism = remove_redundant(hs);
  auto fan = cone_fan(prism);
  REQUIRE(fan.size() == 8);
  for (const auto& fv : fan) {
    auto cones = triangulate_cone(fv, prism);
    if (fv.vertices.size() == 6) {
      CHECK(cones.size() == 4);  // hexagon fans into 4 triangles
    } else {
      CHECK(fv.vertices.size() == 4);
      CHECK(cones.size() == 2);
    }
  }
}

TEST_CASE("hyperspherical transform") {
  Eigen::MatrixXd I3 = Eigen::MatrixXd::Identity(3, 3);
  Eigen::VectorXd x = hyperspherical_to_cartesian(1.0, {M_PI / 2, M_PI / 2}, I3);
  CHECK(x(0) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(x(1) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(x(2) == doctest::Approx(1.0));

  Eigen::MatrixXd I2 = Eigen::MatrixXd::Identity(2, 2);
  Eigen::VectorXd y = hyperspherical_to_cartesian(2.0, {0.0}, I2);
  CHECK(y(0) == doctest::Approx(2.0));
  CHECK(y(1) == doctest::Approx(0.0));

  // Norm preservation and roundtrip, random frames and angles.
  std::mt19937 gen(3);
  std::normal_distribution<double> nd;
  std::uniform_real_distribution<double> ua(0.05, M_PI - 0.05);
  for (int n : {2, 3, 4}) {
    Eigen::MatrixXd rnd(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) rnd(i, j) = nd(gen);
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(rnd);
    Eigen::MatrixXd frame = qr.householderQ();
    for (int rep = 0; rep < 50; ++rep) {
      std::vector<double> phi(n - 1);
      for (auto& p : phi) p = ua(gen);
      double r = 0.1 + 4.9 * std::abs(nd(gen));
      Eigen::VectorXd pt = hyperspherical_to_cartesian(r, phi, frame);
      CHECK(pt.norm() == doctest::Approx(r).epsilon(1e-12));
      double r2;
      std::vector<double> phi2;
      cartesian_to_hyperspherical(pt, frame, &r2, &phi2);
      CHECK(r2 == doctest::Approx(r).epsilon(1e-10));
      for (int k = 0; k < n - 1; ++k) {
        CHECK(phi2[k] == doctest::Approx(phi[k]).epsilon(1e-10));
      }
    }
  }
  CHECK_THROWS(cartesian_to_hyperspherical(Eigen::VectorXd::Zero(2),
                                           Eigen::MatrixXd::Identity(2, 2), nullptr, nullptr));
}

TEST_CASE("ray-facet distance") {
  Eigen::VectorXd a(2);
  a << 1, 0;
  Halfspace h(a, 1.0);
  Eigen::MatrixXd I2 = Eigen::MatrixXd::Identity(2, 2);
  CHECK(rbar(h, {0.0}, I2) == doctest::Approx(1.0));
  CHECK(rbar(h, {M_PI / 3}, I2) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(std::isinf(rbar(h, {M_PI}, I2)));  // ray parallel or away

  // The touch point lies on the hyperplane.
  std::mt19937 gen(8);
  std::uniform_real_distribution<double> ua(-1.2, 1.2);
  for (int rep = 0; rep < 100; ++rep) {
    double phi = ua(gen);
    double r = rbar(h, {phi}, I2);
    if (std::isinf(r)) continue;
    Eigen::VectorXd pt = hyperspherical_to_cartesian(r, {phi}, I2);
    CHECK(a.dot(pt) == doctest::Approx(1.0).epsilon(1e-10));
  }
}

TEST_CASE("angle boxes of canonical cones") {
  Eigen::MatrixXd quad(2, 2);
  quad << 1, 0, 0, 1;
  SimplicialCone c2 = make_simplicial_cone(quad, 0, 0);
  CHECK(angle_box(c2).max_angles[0] == doctest::Approx(M_PI / 2));

  Eigen::MatrixXd orthant = Eigen::MatrixXd::Identity(3, 3);
  SimplicialCone c3 = make_simplicial_cone(orthant, 0, 0);
  AngleBox b3 = angle_box(c3);
  CHECK(b3.max_angles[0] == doctest::Approx(M_PI / 2));
  CHECK(b3.max_angles[1] == doctest::Approx(M_PI / 2));

  Eigen::MatrixXd dependent(2, 2);
  dependent << 1, 1, 0, 1e-13;
  CHECK_THROWS(make_simplicial_cone(dependent, 0, 0));
}

TEST_CASE("coverage and classification invariants") {
  std::mt19937 gen(21);
  std::normal_distribution<double> nd;
  for (const Eigen::MatrixXd& pts :
       {fixtures::qpsk(1.0), fixtures::qam16(std::sqrt(0.2)), fixtures::cube(std::sqrt(2.0))}) {
    ReducedConstellation r = as_reduced(pts);
    const int n = r.reduced_dim;
    for (int sym : {0, static_cast<int>(pts.cols()) - 1}) {
      SymbolDecomposition d = decompose_symbol(r, sym);
      int hits_ge2_far_from_boundary = 0;
      for (int rep = 0; rep < 2000; ++rep) {
        Eigen::VectorXd x(n);
        for (int k = 0; k < n; ++k) x(k) = 2.0 * nd(gen);
        Eigen::VectorXd u = x.normalized();
        int hits = 0;
        double min_boundary_gap = 1e300;
        for (const auto& cone : d.cones) {
          Eigen::VectorXd lam = cone.edges_inv * u;
          if ((lam.array() >= -1e-8).all()) {
            ++hits;
            min_boundary_gap = std::min(min_boundary_gap, lam.minCoeff());
          }
        }
        CHECK(hits >= 1);
        if (hits >= 2 && min_boundary_gap > 1e-8) ++hits_ge2_far_from_boundary;

        // Halfspace test and radial test agree away from the cell boundary.
        bool inside = point_in_polyhedron(d.region, x, 0.0);
        double rexit = exit_radius(d.region, u);
        double margin = std::abs(x.norm() - rexit);
        if (margin > 1e-8) {
          CHECK(inside == (x.norm() <= rexit));
        }
      }
      CHECK(hits_ge2_far_from_boundary == 0);
    }
  }
}

TEST_CASE("two-dimensional fans close the full angle") {
  for (const Eigen::MatrixXd& pts : {fixtures::qpsk(1.0), fixtures::qam16(std::sqrt(0.2))}) {
    ReducedConstellation r = as_reduced(pts);
    for (int sym = 0; sym < r.size(); ++sym) {
      SymbolDecomposition d = decompose_symbol(r, sym);
      double total = 0.0;
      for (const auto& cone : d.cones) total += angle_box(cone).max_angles[0];
      CHECK(total == doctest::Approx(2 * M_PI).epsilon(1e-9));
    }
  }
}

TEST_CASE("facet distance floors the ray distance") {
  ReducedConstellation r = as_reduced(fixtures::qam16(std::sqrt(0.2)));
  double min_b = 1e300;
  double min_rbar = 1e300;
  for (int sym = 0; sym < r.size(); ++sym) {
    SymbolDecomposition d = decompose_symbol(r, sym);
    for (const auto& h : d.region.halfspaces) min_b = std::min(min_b, h.b);
    for (const auto& cone : d.cones) {
      AngleBox box = angle_box(cone);
      const Halfspace& h = d.clipped.halfspaces[cone.facet_index];
      for (int k = 0; k <= 64; ++k) {
        double phi = box.max_angles[0] * k / 64.0;
        double rb = rbar(h, {phi}, cone.frame);
        if (!std::isinf(rb) && !h.artificial) min_rbar = std::min(min_rbar, rb);
      }
    }
  }
  CHECK(min_rbar >= min_b - 1e-12);
  CHECK(min_rbar == doctest::Approx(min_b).epsilon(0.01));
}

TEST_CASE("unbounded cells are clipped for fanning") {
  ReducedConstellation r = as_reduced(fixtures::qpsk(1.0));
  Polyhedron cell = voronoi_region(r, 0);
  CHECK_FALSE(cell.bounded);
  CHECK_THROWS(cone_fan(cell));
  Polyhedron clipped = clip_to_box(cell, 8.0);
  CHECK(is_unbounded(clipped) == false);
  auto fan = cone_fan(clipped);
  CHECK(fan.size() >= 3);
  int artificial = 0;
  for (const auto& h : clipped.halfspaces) artificial += h.artificial ? 1 : 0;
  CHECK(artificial >= 2);
}
