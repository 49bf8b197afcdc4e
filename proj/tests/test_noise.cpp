// SPDX-License-Identifier: Apache-2.0
#include <sercm/noise.hpp>
#include <sercm/ser.hpp>

#include "test_fixtures.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

using namespace sercm;

TEST_CASE("awgn sample variance") {
  Eigen::MatrixXd z = sample_noise(NoiseModel::awgn(), 4.0, 2, 500000, 17);
  for (int k = 0; k < 2; ++k) {
    double var = z.row(k).squaredNorm() / z.cols();
    CHECK(var == doctest::Approx(0.25).epsilon(0.01));
    CHECK(std::abs(z.row(k).mean()) < 0.005);
  }
}

TEST_CASE("unit degenerate mixing reproduces plain gaussian noise") {
  NoiseModel comp = NoiseModel::compound(MixingSpec::degenerate(1.0));
  Eigen::MatrixXd a = sample_noise(NoiseModel::awgn(), 2.0, 3, 5000, 5);
  Eigen::MatrixXd b = sample_noise(comp, 2.0, 3, 5000, 5);
  CHECK((a - b).norm() == 0.0);  // same stream, unit scale

  // Two-sample Kolmogorov-Smirnov against an independent stream.
  Eigen::MatrixXd c = sample_noise(NoiseModel::awgn(), 2.0, 1, 20000, 6);
  Eigen::MatrixXd d = sample_noise(comp, 2.0, 1, 20000, 7);
  std::vector<double> xs(c.data(), c.data() + c.size());
  std::vector<double> ys(d.data(), d.data() + d.size());
  std::sort(xs.begin(), xs.end());
  std::sort(ys.begin(), ys.end());
  double dmax = 0.0;
  size_t i = 0, j = 0;
  while (i < xs.size() && j < ys.size()) {
    if (xs[i] <= ys[j]) ++i;
    else ++j;
    dmax = std::max(dmax, std::abs(static_cast<double>(i) / xs.size() -
                                   static_cast<double>(j) / ys.size()));
  }
  double critical = 1.63 * std::sqrt(2.0 / xs.size());  // alpha = 0.01
  CHECK(dmax < critical);
}

TEST_CASE("scale mixing makes coordinates dependent but uncorrelated") {
  NoiseModel comp = NoiseModel::compound(MixingSpec::gamma_mix(2.0, 0.5));
  const long n = 400000;
  Eigen::MatrixXd z = sample_noise(comp, 1.0, 2, n, 23);
  double c01 = 0.0, c_sq = 0.0, m0 = 0.0, m1 = 0.0, s0 = 0.0, s1 = 0.0;
  for (long j = 0; j < n; ++j) {
    c01 += z(0, j) * z(1, j);
    m0 += z(0, j) * z(0, j);
    m1 += z(1, j) * z(1, j);
  }
  c01 /= n;
  m0 /= n;
  m1 /= n;
  for (long j = 0; j < n; ++j) {
    double a = z(0, j) * z(0, j) - m0;
    double b = z(1, j) * z(1, j) - m1;
    c_sq += a * b;
    s0 += a * a;
    s1 += b * b;
  }
  double corr = c01 / std::sqrt(m0 * m1);
  double corr_sq = c_sq / std::sqrt(s0 * s1);
  CHECK(std::abs(corr) < 3.0 / std::sqrt(static_cast<double>(n)));
  CHECK(corr_sq > 0.1);  // shared scale couples the magnitudes
}

TEST_CASE("mixing samplers") {
  auto w = sample_mixing(MixingSpec::degenerate(3.0), 1000, 1);
  for (double v : w) CHECK(v == 3.0);

  auto levy = sample_mixing(MixingSpec::levy(1.0), 1000000, 2);
  std::nth_element(levy.begin(), levy.begin() + levy.size() / 2, levy.end());
  CHECK(levy[levy.size() / 2] == doctest::Approx(2.1981).epsilon(0.02));

  auto ap = sample_mixing(MixingSpec::affine_poisson(0.1, 1.0, 2.0), 200000, 3);
  double mean = 0.0;
  for (double v : ap) {
    CHECK(v > 0.0);
    mean += v;
  }
  mean /= ap.size();
  double se = std::sqrt(2.0) / std::sqrt(static_cast<double>(ap.size()));
  CHECK(std::abs(mean - 2.1) < 3.0 * se);

  CHECK_THROWS(MixingSpec::affine_poisson(0.0, 1.0, 1.0));  // must stay positive
  CHECK_THROWS(MixingSpec::gamma_mix(-1.0, 1.0));
}

TEST_CASE("compound error rate equals the scale mixture of plain-noise rates") {
  Constellation q16 = new_constellation(fixtures::qam16(std::sqrt(0.2)));
  auto closed = [](double rho) { return ser_closed_qam(16, rho).value; };

  // W = 2 shifts the effective SNR to rho/2 exactly.
  MixtureIdentityReport r = compound_ser_identity_check(
      q16, MixingSpec::degenerate(2.0), 10.0, 400000, 31, closed);
  CHECK(std::abs(r.z_score) < 3.0);
  CHECK(std::abs(r.direct - ser_closed_qam(16, 5.0).value) < 3.0 * r.direct_std_error);
  CHECK(r.mixture == doctest::Approx(ser_closed_qam(16, 5.0).value).epsilon(1e-12));

  r = compound_ser_identity_check(q16, MixingSpec::gamma_mix(2.0, 0.5), 10.0, 400000, 33, closed);
  CHECK(std::abs(r.z_score) < 3.0);

  Constellation cube = new_constellation(fixtures::cube(std::sqrt(2.0)));
  auto cube_closed = [](double rho) { return ser_closed_cube(rho).value; };
  r = compound_ser_identity_check(cube, MixingSpec::levy(1.0), 2.0, 400000, 35, cube_closed);
  CHECK(std::abs(r.z_score) < 3.0);
}

TEST_CASE("identity check falls back to quadrature") {
  Constellation qpsk = new_constellation(fixtures::qpsk(1.0));
  MixtureIdentityReport r = compound_ser_identity_check(
      qpsk, MixingSpec::degenerate(2.0), 8.0, 200000, 41);
  CHECK(std::abs(r.z_score) < 3.0);
}
