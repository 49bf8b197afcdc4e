// SPDX-License-Identifier: Apache-2.0
#include "sercm/noise.hpp"

#include "sercm/rng.hpp"
#include "sercm/ser.hpp"

#include <cmath>
#include <stdexcept>

namespace sercm {

MixingSpec MixingSpec::degenerate(double w0) {
  if (!(w0 > 0)) throw std::invalid_argument("degenerate mixing needs w0 > 0");
  MixingSpec s;
  s.family = Family::degenerate;
  s.w0 = w0;
  return s;
}

MixingSpec MixingSpec::gamma_mix(double shape, double scale) {
  if (!(shape > 0) || !(scale > 0)) throw std::invalid_argument("gamma mixing needs positive parameters");
  MixingSpec s;
  s.family = Family::gamma;
  s.shape = shape;
  s.scale = scale;
  return s;
}

MixingSpec MixingSpec::levy(double scale) {
  if (!(scale > 0)) throw std::invalid_argument("levy mixing needs scale > 0");
  MixingSpec s;
  s.family = Family::levy;
  s.levy_scale = scale;
  return s;
}

MixingSpec MixingSpec::affine_poisson(double a, double b, double lambda) {
  if (!(a > 0) || !(b > 0) || !(lambda > 0)) {
    throw std::invalid_argument("affine_poisson mixing needs positive a, b, lambda");
  }
  MixingSpec s;
  s.family = Family::affine_poisson;
  s.a = a;
  s.b = b;
  s.lambda = lambda;
  return s;
}

NoiseModel NoiseModel::awgn() { return NoiseModel{Kind::awgn, std::nullopt}; }

NoiseModel NoiseModel::compound(const MixingSpec& spec) {
  return NoiseModel{Kind::compound, spec};
}

double draw_mixing(const MixingSpec& spec, Rng& rng) {
  switch (spec.family) {
    case MixingSpec::Family::degenerate:
      return spec.w0;
    case MixingSpec::Family::gamma:
      return spec.scale * rng.gamma(spec.shape);
    case MixingSpec::Family::levy:
      return rng.levy(spec.levy_scale);
    case MixingSpec::Family::affine_poisson:
      return spec.a + spec.b * static_cast<double>(rng.poisson(spec.lambda));
  }
  throw std::logic_error("draw_mixing: unknown family");
}

std::vector<double> sample_mixing(const MixingSpec& spec, long count, std::uint64_t seed) {
  Rng rng(derive_seed(seed, 0));
  std::vector<double> out(count);
  for (long i = 0; i < count; ++i) out[i] = draw_mixing(spec, rng);
  return out;
}

Eigen::MatrixXd sample_noise(const NoiseModel& model, double rho, int dim, long count,
                             std::uint64_t seed) {
  if (!(rho > 0)) throw std::invalid_argument("sample_noise: rho must be positive");
  if (dim < 1) throw std::invalid_argument("sample_noise: dim must be >= 1");
  if (model.kind == NoiseModel::Kind::compound && !model.mixing) {
    throw std::invalid_argument("sample_noise: compound model requires a mixing spec");
  }
  Rng rng(derive_seed(seed, 0));
  const double sigma = 1.0 / std::sqrt(rho);
  Eigen::MatrixXd z(dim, count);
  for (long j = 0; j < count; ++j) {
    double s = sigma;
    if (model.kind == NoiseModel::Kind::compound) {
      s *= std::sqrt(draw_mixing(*model.mixing, rng));
    }
    for (int k = 0; k < dim; ++k) z(k, j) = s * rng.normal();
  }
  return z;
}

MixtureIdentityReport compound_ser_identity_check(
    const Constellation& c, const MixingSpec& spec, double rho, long n,
    std::uint64_t seed, const std::function<double(double)>& awgn_ser) {
  MixtureIdentityReport rep;

  SerEstimate direct = ser_mc(c, NoiseModel::compound(spec), rho, n, seed);
  rep.direct = direct.value;
  rep.direct_std_error = direct.std_error;

  std::function<double(double)> ser = awgn_ser;
  std::shared_ptr<SerEngine> engine;
  if (!ser) {
    engine = std::make_shared<SerEngine>(SerEngine::from_constellation(c));
    ser = [engine](double r) { return engine->quadrature(r, 1e-6).value; };
  }

  const long n_w = 4000;
  std::vector<double> w = sample_mixing(spec, n_w, derive_seed(seed, 0x6d69785fULL));
  double mean = 0.0, m2 = 0.0;
  for (long i = 0; i < n_w; ++i) {
    double v = ser(rho / w[i]);
    double delta = v - mean;
    mean += delta / (i + 1);
    m2 += delta * (v - mean);
  }
  rep.mixture = mean;
  rep.mixture_std_error = std::sqrt(m2 / (n_w - 1) / n_w);

  double se = std::hypot(rep.direct_std_error, rep.mixture_std_error);
  rep.z_score = se > 0 ? (rep.direct - rep.mixture) / se : 0.0;
  return rep;
}

}  // namespace sercm
