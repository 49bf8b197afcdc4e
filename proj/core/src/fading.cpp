// SPDX-License-Identifier: Apache-2.0
#include "sercm/fading.hpp"

#include "sercm/cubature.hpp"
#include "sercm/rng.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <sstream>
#include <stdexcept>

namespace sercm {

namespace {

// E[g(X)] against the gain density, written in s = sqrt(x) where the
// integrands are smooth (plain Laguerre rules stumble on the sqrt(x) cusp
// that Gaussian-tail curves carry at the origin).
double gain_average_nakagami(double m, const std::function<double(double)>& g) {
  // X ~ Gamma(m, 1/m):  E[g(X)] = (2 m^m / Gamma(m)) int g(s^2) s^(2m-1) e^(-m s^2) ds
  const double s_hi = std::sqrt((60.0 + m + 30.0 * std::sqrt(m)) / m);
  auto f = [&](const double* s) {
    double ss = s[0];
    return g(ss * ss) * std::pow(ss, 2.0 * m - 1.0) * std::exp(-m * ss * ss);
  };
  double lo = 0.0;
  CubatureResult r = integrate_box(f, &lo, &s_hi, 1, 1e-14, 1e-10, 400000);
  return 2.0 * std::exp(m * std::log(m) - std::lgamma(m)) * r.value;
}

double gain_average_rician(double K, const std::function<double(double)>& g) {
  // Envelope r with X = r^2/(1+K):
  // E[g(X)] = int g(r^2/(1+K)) 2 r e^(-K - r^2) I0(2 sqrt(K) r) dr
  const double r_hi = 9.0 + 2.0 * std::sqrt(K);
  auto f = [&](const double* s) {
    double r = s[0];
    return g(r * r / (1.0 + K)) * 2.0 * r *
           std::exp(-K - r * r) * std::cyl_bessel_i(0.0, 2.0 * std::sqrt(K) * r);
  };
  double lo = 0.0;
  CubatureResult res = integrate_box(f, &lo, &r_hi, 1, 1e-14, 1e-10, 400000);
  return res.value;
}

}  // namespace

FadingModel FadingModel::degenerate(double x0) {
  if (!(x0 > 0)) throw std::invalid_argument("degenerate gain must be positive");
  FadingModel f;
  f.family = Family::degenerate;
  f.x0 = x0;
  return f;
}

FadingModel FadingModel::nakagami(double m) {
  if (!(m > 0)) throw std::invalid_argument("nakagami shape must be positive");
  FadingModel f;
  f.family = Family::nakagami_power;
  f.m = m;
  return f;
}

FadingModel FadingModel::rician(double K) {
  if (K < 0) throw std::invalid_argument("rician K must be nonnegative");
  FadingModel f;
  f.family = Family::rician_power;
  f.K = K;
  return f;
}

FadingModel FadingModel::empirical(std::vector<double> samples) {
  if (samples.empty()) throw std::invalid_argument("empirical model needs samples");
  for (double s : samples) {
    if (!(s > 0)) throw std::invalid_argument("empirical samples must be positive");
  }
  FadingModel f;
  f.family = Family::empirical;
  f.samples = std::move(samples);
  return f;
}

std::string FadingModel::describe() const {
  std::ostringstream os;
  switch (family) {
    case Family::degenerate: os << "degenerate(" << x0 << ")"; break;
    case Family::nakagami_power: os << "nakagami(m=" << m << ")"; break;
    case Family::rician_power: os << "rician(K=" << K << ")"; break;
    case Family::empirical: os << "empirical(n=" << samples.size() << ")"; break;
  }
  return os.str();
}

double gp_functional(const FadingModel& f, double p, double rho) {
  if (p < 0) throw std::invalid_argument("gp_functional: p must be nonnegative");
  if (rho < 0) throw std::invalid_argument("gp_functional: rho must be nonnegative");
  switch (f.family) {
    case FadingModel::Family::degenerate:
      return std::pow(f.x0, p) * std::exp(-rho * f.x0);
    case FadingModel::Family::nakagami_power: {
      // X ~ Gamma(m, 1/m):  E[X^p e^-rho X] = m^m (m+rho)^-(m+p) Gamma(m+p)/Gamma(m)
      const double m = f.m;
      return std::exp(m * std::log(m) - (m + p) * std::log(m + rho) +
                      std::lgamma(m + p) - std::lgamma(m));
    }
    case FadingModel::Family::rician_power: {
      if (p == 0.0 && rho == 0.0) return 1.0;
      double pp = p, rr = rho;
      return gain_average_rician(f.K, [pp, rr](double x) {
        return std::pow(x, pp) * std::exp(-rr * x);
      });
    }
    case FadingModel::Family::empirical: {
      double acc = 0.0;
      for (double x : f.samples) acc += std::pow(x, p) * std::exp(-rho * x);
      return acc / static_cast<double>(f.samples.size());
    }
  }
  throw std::logic_error("gp_functional: unknown family");
}

std::vector<double> sample_fading(const FadingModel& f, long count, std::uint64_t seed) {
  Rng rng(derive_seed(seed, 0));
  std::vector<double> out(count);
  switch (f.family) {
    case FadingModel::Family::degenerate:
      std::fill(out.begin(), out.end(), f.x0);
      break;
    case FadingModel::Family::nakagami_power:
      for (auto& x : out) x = rng.gamma(f.m) / f.m;
      break;
    case FadingModel::Family::rician_power: {
      const double mean = std::sqrt(f.K / (f.K + 1.0));
      const double s = std::sqrt(0.5 / (f.K + 1.0));
      for (auto& x : out) {
        double re = mean + s * rng.normal();
        double im = s * rng.normal();
        x = re * re + im * im;
      }
      break;
    }
    case FadingModel::Family::empirical:
      for (auto& x : out) {
        size_t idx = static_cast<size_t>(rng.uniform01() * f.samples.size());
        x = f.samples[std::min(idx, f.samples.size() - 1)];
      }
      break;
  }
  return out;
}

std::string to_string(OrderVerdict::Relation r) {
  switch (r) {
    case OrderVerdict::Relation::first_dominates: return "first_dominates";
    case OrderVerdict::Relation::second_dominates: return "second_dominates";
    case OrderVerdict::Relation::crossing: return "crossing";
    case OrderVerdict::Relation::indeterminate: return "indeterminate";
  }
  return "?";
}

std::vector<double> default_rho_grid() {
  std::vector<double> g(60);
  for (int k = 0; k < 60; ++k) {
    g[k] = std::pow(10.0, -2.0 + 4.0 * k / 59.0);
  }
  return g;
}

OrderVerdict check_gp_order(const FadingModel& f1, const FadingModel& f2, double p,
                            const std::vector<double>& rho_grid, double tie_tol) {
  if (rho_grid.empty()) throw std::invalid_argument("check_gp_order: empty grid");
  OrderVerdict v;
  v.p = p;
  v.grid = rho_grid;
  v.difference.resize(rho_grid.size());
  int pos = 0, neg = 0;
  for (size_t k = 0; k < rho_grid.size(); ++k) {
    double g1 = gp_functional(f1, p, rho_grid[k]);
    double g2 = gp_functional(f2, p, rho_grid[k]);
    double d = g1 - g2;
    v.difference[k] = d;
    double tol = tie_tol * (std::abs(g1) + std::abs(g2) + 1e-300);
    if (d > tol) ++pos;
    else if (d < -tol) ++neg;
  }
  if (pos == 0 && neg == 0) {
    v.tied = true;
    v.relation = OrderVerdict::Relation::indeterminate;
    return v;
  }
  if (neg == 0) {
    v.relation = OrderVerdict::Relation::first_dominates;
    return v;
  }
  if (pos == 0) {
    v.relation = OrderVerdict::Relation::second_dominates;
    return v;
  }
  v.relation = OrderVerdict::Relation::crossing;
  // Bracket the first strict sign change and bisect.
  auto diff_at = [&](double rho) {
    return gp_functional(f1, p, rho) - gp_functional(f2, p, rho);
  };
  for (size_t k = 1; k < rho_grid.size(); ++k) {
    if (v.difference[k - 1] * v.difference[k] < 0) {
      double lo = rho_grid[k - 1], hi = rho_grid[k];
      double flo = v.difference[k - 1];
      while ((hi - lo) > 1e-6 * 0.5 * (hi + lo)) {
        double mid = 0.5 * (lo + hi);
        double fm = diff_at(mid);
        if (fm == 0.0) {
          lo = hi = mid;
          break;
        }
        if ((fm > 0) == (flo > 0)) {
          lo = mid;
          flo = fm;
        } else {
          hi = mid;
        }
      }
      v.rho1_lo = lo;
      v.rho1_hi = hi;
      v.rho1 = 0.5 * (lo + hi);
      break;
    }
  }
  return v;
}

OrderVerdict lt_order_check(const FadingModel& f1, const FadingModel& f2,
                            const std::vector<double>& rho_grid) {
  return check_gp_order(f1, f2, 0.0, rho_grid);
}

namespace {

SerEstimate mc_fading(const Constellation& c, const FadingModel& f, double rho,
                      long n_samples, std::uint64_t seed) {
  const int N = c.dim();
  const int M = c.size();
  std::vector<double> cum(M);
  double acc = 0.0;
  for (int i = 0; i < M; ++i) {
    acc += c.priors(i);
    cum[i] = acc;
  }
  cum.back() = 1.0;
  Eigen::VectorXd half_norms(M);
  for (int j = 0; j < M; ++j) half_norms(j) = 0.5 * c.points.col(j).squaredNorm();

  long errors = 0;
  Eigen::VectorXd y(N);
  constexpr long kChunk = 8192;
  const long chunks = (n_samples + kChunk - 1) / kChunk;
  for (long ch = 0; ch < chunks; ++ch) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(ch)));
    const long lo = ch * kChunk;
    const long hi = std::min(n_samples, lo + kChunk);
    for (long t = lo; t < hi; ++t) {
      double u = rng.uniform01();
      int tx = 0;
      while (tx < M - 1 && u >= cum[tx]) ++tx;
      double x;
      switch (f.family) {
        case FadingModel::Family::degenerate: x = f.x0; break;
        case FadingModel::Family::nakagami_power: x = rng.gamma(f.m) / f.m; break;
        case FadingModel::Family::rician_power: {
          const double mean = std::sqrt(f.K / (f.K + 1.0));
          const double s = std::sqrt(0.5 / (f.K + 1.0));
          double re = mean + s * rng.normal();
          double im = s * rng.normal();
          x = re * re + im * im;
          break;
        }
        case FadingModel::Family::empirical: {
          size_t idx = static_cast<size_t>(rng.uniform01() * f.samples.size());
          x = f.samples[std::min(idx, f.samples.size() - 1)];
          break;
        }
        default: x = 1.0; break;
      }
      double sigma = 1.0 / std::sqrt(rho * x);
      for (int k = 0; k < N; ++k) y(k) = c.points(k, tx) + sigma * rng.normal();
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

}  // namespace

SerEstimate avg_ser_fading(const Constellation& c, const FadingModel& f, double rho,
                           AvgSerMethod method, std::uint64_t seed, long n_samples,
                           const std::function<double(double)>& instantaneous) {
  if (!(rho > 0)) throw std::invalid_argument("avg_ser_fading: rho must be positive");
  if (method == AvgSerMethod::mc) {
    return mc_fading(c, f, rho, n_samples, seed);
  }

  std::function<double(double)> ser = instantaneous;
  std::shared_ptr<SerEngine> engine;
  if (!ser) {
    engine = std::make_shared<SerEngine>(SerEngine::from_constellation(c));
    ser = [engine](double r) { return engine->quadrature(r, 1e-7).value; };
  }

  SerEstimate e;
  e.method = SerMethod::quadrature;
  e.rho = rho;
  switch (f.family) {
    case FadingModel::Family::degenerate:
      e.value = ser(rho * f.x0);
      return e;
    case FadingModel::Family::nakagami_power:
      e.value = gain_average_nakagami(f.m, [&](double x) { return ser(rho * x); });
      return e;
    case FadingModel::Family::rician_power:
      e.value = gain_average_rician(f.K, [&](double x) { return ser(rho * x); });
      return e;
    case FadingModel::Family::empirical: {
      double acc = 0.0;
      for (double x : f.samples) acc += ser(rho * x);
      e.value = acc / static_cast<double>(f.samples.size());
      return e;
    }
  }
  throw std::logic_error("avg_ser_fading: unknown family");
}

SerComparisonReport order_implies_ser_comparison(const Constellation& c,
                                                 const FadingModel& f1,
                                                 const FadingModel& f2,
                                                 const std::vector<double>& rho_grid,
                                                 double tol) {
  SerComparisonReport rep;
  rep.rho_grid = rho_grid;
  ReducedConstellation r = reduce(c);
  const double p = std::max(0.0, 0.5 * r.reduced_dim - 1.0);
  rep.order = check_gp_order(f1, f2, p, rho_grid);
  rep.order_holds = rep.order.relation == OrderVerdict::Relation::first_dominates;

  auto engine = std::make_shared<SerEngine>(r, c.priors);
  auto ser = [engine](double rr) { return engine->quadrature(rr, 1e-7).value; };
  rep.avg_ser1.resize(rho_grid.size());
  rep.avg_ser2.resize(rho_grid.size());
  for (size_t k = 0; k < rho_grid.size(); ++k) {
    rep.avg_ser1[k] = avg_ser_fading(c, f1, rho_grid[k], AvgSerMethod::quadrature,
                                     1, 0, ser).value;
    rep.avg_ser2[k] = avg_ser_fading(c, f2, rho_grid[k], AvgSerMethod::quadrature,
                                     1, 0, ser).value;
  }
  bool ordered = true;
  std::optional<double> crossing;
  for (size_t k = 0; k < rho_grid.size(); ++k) {
    if (rep.avg_ser1[k] < rep.avg_ser2[k] - tol) ordered = false;
    if (k > 0) {
      double d0 = rep.avg_ser1[k - 1] - rep.avg_ser2[k - 1];
      double d1 = rep.avg_ser1[k] - rep.avg_ser2[k];
      if (!crossing && ((d0 > tol && d1 < -tol) || (d0 < -tol && d1 > tol))) {
        crossing = 0.5 * (rho_grid[k - 1] + rho_grid[k]);
      }
    }
  }
  rep.ser_ordered = ordered;
  rep.ser_crossing_rho = crossing;
  return rep;
}

GpImplicationReport gp_implies_gq_check(const FadingModel& f1, const FadingModel& f2,
                                        double p, double q,
                                        const std::vector<double>& rho_grid) {
  if (q > p) throw std::invalid_argument("gp_implies_gq_check: needs q <= p");
  GpImplicationReport rep;
  rep.p = p;
  rep.q = q;
  OrderVerdict vp = check_gp_order(f1, f2, p, rho_grid);
  OrderVerdict vq = check_gp_order(f1, f2, q, rho_grid);
  rep.antecedent_holds = vp.relation == OrderVerdict::Relation::first_dominates || vp.tied;
  rep.consequent_holds = vq.relation == OrderVerdict::Relation::first_dominates || vq.tied;
  rep.vacuous = !rep.antecedent_holds;
  rep.passed = rep.vacuous || rep.consequent_holds;
  return rep;
}

UniversalOrderScanReport no_universal_order_scan(const FadingModel& f1,
                                                 const FadingModel& f2,
                                                 const std::vector<double>& p_grid,
                                                 const std::vector<double>& rho_grid) {
  UniversalOrderScanReport rep;
  rep.p_grid = p_grid;
  bool all_tied = true;
  for (double p : p_grid) {
    OrderVerdict v = check_gp_order(f1, f2, p, rho_grid);
    rep.relations.push_back(v.relation);
    if (!v.tied) all_tied = false;
    bool holds = v.tied || v.relation == OrderVerdict::Relation::first_dominates;
    if (!holds && !rep.first_failing_p) rep.first_failing_p = p;
  }
  rep.tie_everywhere = all_tied;
  return rep;
}

}  // namespace sercm
