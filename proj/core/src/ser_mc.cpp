// SPDX-License-Identifier: Apache-2.0
#include "sercm/ser.hpp"

#include "sercm/rng.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace sercm {

namespace {

constexpr long kChunk = 8192;

// Cumulative prior table for symbol draws; uniform priors round-trip exactly.
std::vector<double> cumulative(const Eigen::VectorXd& priors) {
  std::vector<double> c(priors.size());
  double acc = 0.0;
  for (int i = 0; i < priors.size(); ++i) {
    acc += priors(i);
    c[i] = acc;
  }
  c.back() = 1.0;
  return c;
}

int draw_symbol(const std::vector<double>& cum, double u01) {
  int lo = 0, hi = static_cast<int>(cum.size()) - 1;
  while (lo < hi) {
    int mid = (lo + hi) / 2;
    if (u01 < cum[mid]) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  return lo;
}

}  // namespace

SerEstimate ser_mc(const Constellation& c, const NoiseModel& noise, double rho,
                   long n_samples, std::uint64_t seed) {
  if (n_samples < 1000) throw std::invalid_argument("ser_mc: need at least 1000 samples");
  if (!(rho > 0)) throw std::invalid_argument("ser_mc: rho must be positive");
  if (noise.kind == NoiseModel::Kind::compound && !noise.mixing) {
    throw std::invalid_argument("ser_mc: compound noise requires a mixing spec");
  }
  const int N = c.dim();
  const int M = c.size();
  const double sigma = 1.0 / std::sqrt(rho);
  const std::vector<double> cum = cumulative(c.priors);

  // argmin ||y - s_j||^2 = argmin (||s_j||^2 - 2 y.s_j)
  Eigen::VectorXd half_norms(M);
  for (int j = 0; j < M; ++j) half_norms(j) = 0.5 * c.points.col(j).squaredNorm();

  long errors = 0;
  Eigen::VectorXd y(N);
  const long chunks = (n_samples + kChunk - 1) / kChunk;
  for (long ch = 0; ch < chunks; ++ch) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(ch)));
    const long lo = ch * kChunk;
    const long hi = std::min(n_samples, lo + kChunk);
    for (long t = lo; t < hi; ++t) {
      int tx = draw_symbol(cum, rng.uniform01());
      double s = sigma;
      if (noise.kind == NoiseModel::Kind::compound) {
        s = sigma * std::sqrt(draw_mixing(*noise.mixing, rng));
      }
      for (int k = 0; k < N; ++k) y(k) = c.points(k, tx) + s * rng.normal();
      int best = 0;
      double best_metric = half_norms(0) - y.dot(c.points.col(0));
      for (int j = 1; j < M; ++j) {
        double metric = half_norms(j) - y.dot(c.points.col(j));
        if (metric < best_metric) {
          best_metric = metric;
          best = j;
        }
      }
      if (best != tx) ++errors;
    }
  }

  SerEstimate e;
  e.value = static_cast<double>(errors) / static_cast<double>(n_samples);
  e.std_error = std::sqrt(e.value * (1.0 - e.value) / static_cast<double>(n_samples));
  e.method = SerMethod::mc;
  e.rho = rho;
  return e;
}

SerEstimate ser_mc_complex(const Eigen::MatrixXcd& points, const Eigen::VectorXd& priors,
                           double rho, long n_samples, std::uint64_t seed) {
  if (n_samples < 1000) throw std::invalid_argument("ser_mc_complex: need at least 1000 samples");
  if (!(rho > 0)) throw std::invalid_argument("ser_mc_complex: rho must be positive");
  const int N = static_cast<int>(points.rows());
  const int M = static_cast<int>(points.cols());
  if (priors.size() != M) throw std::invalid_argument("ser_mc_complex: priors length mismatch");
  const double sigma = 1.0 / std::sqrt(rho);  // per real component: 2/rho per complex dim
  std::vector<double> cum;
  {
    double acc = 0.0;
    cum.resize(M);
    for (int i = 0; i < M; ++i) {
      acc += priors(i);
      cum[i] = acc;
    }
    cum.back() = 1.0;
  }

  long errors = 0;
  Eigen::VectorXcd y(N);
  const long chunks = (n_samples + kChunk - 1) / kChunk;
  for (long ch = 0; ch < chunks; ++ch) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(ch)));
    const long lo = ch * kChunk;
    const long hi = std::min(n_samples, lo + kChunk);
    for (long t = lo; t < hi; ++t) {
      int tx = draw_symbol(cum, rng.uniform01());
      for (int k = 0; k < N; ++k) {
        y(k) = points(k, tx) + std::complex<double>(sigma * rng.normal(), sigma * rng.normal());
      }
      int best = 0;
      double best_metric = (y - points.col(0)).squaredNorm();
      for (int j = 1; j < M; ++j) {
        double metric = (y - points.col(j)).squaredNorm();
        if (metric < best_metric) {
          best_metric = metric;
          best = j;
        }
      }
      if (best != tx) ++errors;
    }
  }

  SerEstimate e;
  e.value = static_cast<double>(errors) / static_cast<double>(n_samples);
  e.std_error = std::sqrt(e.value * (1.0 - e.value) / static_cast<double>(n_samples));
  e.method = SerMethod::mc;
  e.rho = rho;
  return e;
}

}  // namespace sercm
