// SPDX-License-Identifier: Apache-2.0
#include <sercm/constellation.hpp>

#include "test_fixtures.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace sercm;

namespace {

// Brute-force oracle, independent of the library routine.
double brute_min_distance(const Eigen::MatrixXd& p) {
  double best = 1e300;
  for (int i = 0; i < p.cols(); ++i) {
    for (int j = i + 1; j < p.cols(); ++j) {
      best = std::min(best, (p.col(i) - p.col(j)).norm());
    }
  }
  return best;
}

}  // namespace

TEST_CASE("construction and priors") {
  Constellation b = new_constellation(fixtures::bpsk());
  CHECK(b.priors(0) == doctest::Approx(0.5));
  CHECK(b.priors(1) == doctest::Approx(0.5));

  Eigen::MatrixXd dup(1, 3);
  dup << 1, 1, 2;
  CHECK_THROWS_WITH_AS(new_constellation(dup), doctest::Contains("duplicate symbol"),
                       std::invalid_argument);

  Eigen::VectorXd bad(2);
  bad << 0.7, 0.7;
  CHECK_THROWS(new_constellation(fixtures::bpsk(), bad));
  bad << -0.5, 1.5;
  CHECK_THROWS(new_constellation(fixtures::bpsk(), bad));
  Eigen::VectorXd wrong_len(3);
  wrong_len << 0.5, 0.25, 0.25;
  CHECK_THROWS(new_constellation(fixtures::bpsk(), wrong_len));

  // 16-QAM on the unit-average-energy grid.
  Constellation q = new_constellation(fixtures::qam16(1.0 / std::sqrt(10.0)));
  CHECK(q.size() == 16);
  CHECK(q.dim() == 2);
  double energy = 0.0;
  for (int j = 0; j < q.size(); ++j) energy += q.points.col(j).squaredNorm();
  CHECK(energy / q.size() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("energy normalization") {
  Eigen::MatrixXd wide(1, 2);
  wide << -2, 2;
  Constellation c = energy_normalize(new_constellation(wide));
  CHECK(c.points(0, 0) == doctest::Approx(-1.0));
  CHECK(c.points(0, 1) == doctest::Approx(1.0));

  Constellation qpsk = new_constellation(fixtures::qpsk(std::sqrt(0.5)));
  Constellation same = energy_normalize(qpsk);
  CHECK((same.points - qpsk.points).norm() < 1e-12);
  Constellation twice = energy_normalize(same);
  CHECK((twice.points - same.points).norm() < 1e-12);

  Constellation cube = energy_normalize(new_constellation(fixtures::cube(1.0)));
  CHECK(std::abs(cube.points(0, 0)) == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-14));

  Constellation zeroish;  // bypasses validation on purpose
  zeroish.points = Eigen::MatrixXd::Zero(2, 2);
  zeroish.priors = Eigen::VectorXd::Constant(2, 0.5);
  CHECK_THROWS(energy_normalize(zeroish));
}

TEST_CASE("minimum distance") {
  CHECK(min_distance(new_constellation(fixtures::bpsk())) == doctest::Approx(2.0));
  // Unit-energy 4-point grid: the scaling where d_min = sqrt(2) holds.
  CHECK(min_distance(new_constellation(fixtures::qpsk(std::sqrt(0.5)))) ==
        doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
  Eigen::MatrixXd q3 = fixtures::qam3d();
  CHECK(min_distance(q3) == doctest::Approx(brute_min_distance(q3)).epsilon(1e-14));
  CHECK(min_distance(q3) == doctest::Approx(0.51763809).epsilon(1e-7));
}

TEST_CASE("svd reduction") {
  // Diagonal pair in R^2 collapses to a 1-D antipodal pair.
  ReducedConstellation r = reduce(new_constellation(fixtures::rank1_pair()));
  CHECK(r.reduced_dim == 1);
  CHECK(std::abs(r.points(0, 0)) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(r.points(0, 0) + r.points(0, 1)) < 1e-12);

  Constellation qpsk = new_constellation(fixtures::qpsk(1.0));
  ReducedConstellation rq = reduce(qpsk);
  CHECK(rq.reduced_dim == 2);
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) {
      CHECK((rq.points.col(i) - rq.points.col(j)).norm() ==
            doctest::Approx((qpsk.points.col(i) - qpsk.points.col(j)).norm()).epsilon(1e-10));
    }
  }

  Eigen::MatrixXd collinear(3, 3);
  collinear << 0, 1, 2,
               0, 2, 4,
               0, -1, -2;
  CHECK(reduce(new_constellation(collinear)).reduced_dim == 1);

  // Reducing again is dimension-stable.
  ReducedConstellation rr = reduce(rq.points);
  CHECK(rr.reduced_dim == rq.reduced_dim);
}

TEST_CASE("reduction is rotation invariant") {
  std::mt19937 gen(5);
  std::normal_distribution<double> nd;
  Eigen::MatrixXd random(3, 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) random(i, j) = nd(gen);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(random);
  Eigen::MatrixXd U = qr.householderQ();

  Eigen::MatrixXd pts = fixtures::cube(0.7);
  Constellation base = new_constellation(pts);
  Constellation rotated = new_constellation(U * pts);
  CHECK(min_distance(base) == doctest::Approx(min_distance(rotated)).epsilon(1e-12));
  CHECK(reduce(base).reduced_dim == reduce(rotated).reduced_dim);
}

TEST_CASE("complex embedding") {
  Eigen::MatrixXcd qpsk(1, 4);
  qpsk << std::complex<double>(1, 0), std::complex<double>(0, 1),
      std::complex<double>(-1, 0), std::complex<double>(0, -1);
  Constellation e = complex_embed(qpsk);
  CHECK(e.dim() == 2);
  CHECK(e.size() == 4);
  CHECK(e.points(0, 0) == doctest::Approx(1.0));
  CHECK(e.points(1, 1) == doctest::Approx(1.0));
  CHECK(e.points(0, 2) == doctest::Approx(-1.0));
  CHECK(e.points(1, 3) == doctest::Approx(-1.0));

  Eigen::MatrixXcd bpsk(1, 2);
  bpsk << 1.0, -1.0;
  Constellation eb = complex_embed(bpsk);
  CHECK(eb.points(1, 0) == 0.0);
  CHECK(reduce(eb).reduced_dim == 1);

  // Distances survive the embedding exactly.
  std::mt19937 gen(11);
  std::normal_distribution<double> nd;
  Eigen::MatrixXcd rnd(2, 8);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 8; ++j) rnd(i, j) = std::complex<double>(nd(gen), nd(gen));
  Constellation er = complex_embed(rnd);
  for (int i = 0; i < 8; ++i) {
    for (int j = i + 1; j < 8; ++j) {
      CHECK((er.points.col(i) - er.points.col(j)).norm() ==
            doctest::Approx((rnd.col(i) - rnd.col(j)).norm()).epsilon(1e-14));
    }
  }
}

TEST_CASE("snr point validation") {
  CHECK_THROWS(SnrPoint(0.0));
  CHECK_THROWS(SnrPoint(-2.0));
  CHECK(SnrPoint(3.5).rho == 3.5);
}
