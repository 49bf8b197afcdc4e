// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "sercm/constellation.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace sercm {

/// Positive mixing variable W of a scale-mixture noise Z = sqrt(W) G.
struct MixingSpec {
  enum class Family { degenerate, gamma, levy, affine_poisson };
  Family family = Family::degenerate;
  double w0 = 1.0;                         // degenerate: W = w0
  double shape = 1.0, scale = 1.0;         // gamma(shape, scale)
  double levy_scale = 1.0;                 // levy: W = scale / Z^2, Z ~ N(0,1)
  double a = 0.1, b = 1.0, lambda = 1.0;   // affine_poisson: W = a + b Pois(lambda)

  static MixingSpec degenerate(double w0);
  static MixingSpec gamma_mix(double shape, double scale);
  static MixingSpec levy(double scale);
  static MixingSpec affine_poisson(double a, double b, double lambda);
};

struct NoiseModel {
  enum class Kind { awgn, compound };
  Kind kind = Kind::awgn;
  std::optional<MixingSpec> mixing;

  static NoiseModel awgn();
  static NoiseModel compound(const MixingSpec& spec);
};

class Rng;

/// One draw of the mixing variable from an existing stream.
double draw_mixing(const MixingSpec& spec, Rng& rng);

/// count noise vectors as columns; AWGN entries are iid N(0, 1/rho), compound
/// vectors share one W draw per column.
Eigen::MatrixXd sample_noise(const NoiseModel& model, double rho, int dim, long count,
                             std::uint64_t seed);

std::vector<double> sample_mixing(const MixingSpec& spec, long count, std::uint64_t seed);

struct MixtureIdentityReport {
  double direct = 0.0;           // Monte Carlo under compound noise
  double direct_std_error = 0.0;
  double mixture = 0.0;          // E over W of the AWGN error rate at rho/W
  double mixture_std_error = 0.0;
  double z_score = 0.0;
};

/// Checks that the compound-noise error rate equals the W-mixture of AWGN
/// error rates at effective SNR rho/W.  awgn_ser(rho') must return the exact
/// AWGN error rate of `c`; when absent, the cone-decomposition quadrature is
/// used.
MixtureIdentityReport compound_ser_identity_check(
    const Constellation& c, const MixingSpec& spec, double rho, long n,
    std::uint64_t seed,
    const std::function<double(double)>& awgn_ser = nullptr);

}  // namespace sercm
