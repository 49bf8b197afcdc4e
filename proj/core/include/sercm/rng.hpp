// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <random>

namespace sercm {

/// Deterministic random source.  All distributions are implemented by hand on
/// top of mt19937_64 so that streams are reproducible bit-for-bit across
/// standard libraries and platforms.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  /// Uniform in [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  /// Uniform in (0, 1], never zero.
  double uniform01_open_below() { return 1.0 - uniform01(); }

  /// Standard normal via Box-Muller; pairs are cached.
  double normal();

  /// Gamma(shape, 1) via Marsaglia-Tsang, any shape > 0.
  double gamma(double shape);

  /// Poisson by sequential inversion.
  std::uint64_t poisson(double lambda);

  /// Positively skewed stable with alpha = 1/2 (Levy) and scale c: c / Z^2.
  double levy(double scale);

  std::uint64_t raw() { return gen_(); }

 private:
  std::mt19937_64 gen_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

/// Stream derivation for parallel chunks: splitmix64 of (seed, stream).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

}  // namespace sercm
