// SPDX-License-Identifier: Apache-2.0
#include "sercm/constellation.hpp"

#include <Eigen/SVD>

#include <cmath>
#include <limits>
#include <stdexcept>

namespace sercm {

SnrPoint::SnrPoint(double r) : rho(r) {
  if (!(r > 0) || std::isinf(r)) throw std::invalid_argument("SnrPoint: rho must be positive and finite");
}

Constellation new_constellation(const Eigen::MatrixXd& points,
                                const std::optional<Eigen::VectorXd>& priors,
                                std::string label) {
  const int M = static_cast<int>(points.cols());
  if (M < 2) throw std::invalid_argument("constellation needs at least 2 symbols");
  for (int i = 0; i < M; ++i) {
    for (int j = i + 1; j < M; ++j) {
      if ((points.col(i) - points.col(j)).norm() == 0.0) {
        throw std::invalid_argument("duplicate symbol at columns " + std::to_string(i) +
                                    " and " + std::to_string(j));
      }
    }
  }
  Constellation c;
  c.points = points;
  c.label = std::move(label);
  if (priors) {
    if (priors->size() != M) throw std::invalid_argument("priors length must equal symbol count");
    if (priors->minCoeff() < 0) throw std::invalid_argument("priors must be nonnegative");
    if (std::abs(priors->sum() - 1.0) > 1e-12) throw std::invalid_argument("priors must sum to 1");
    c.priors = *priors;
  } else {
    c.priors = Eigen::VectorXd::Constant(M, 1.0 / M);
  }
  return c;
}

Constellation energy_normalize(const Constellation& c) {
  const double mean_energy = c.points.squaredNorm() / c.size();
  if (mean_energy <= 0) throw std::invalid_argument("energy_normalize: all-zero constellation");
  Constellation out = c;
  out.points = c.points / std::sqrt(mean_energy);
  return out;
}

double min_distance(const Eigen::MatrixXd& points) {
  const int M = static_cast<int>(points.cols());
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i < M; ++i) {
    for (int j = i + 1; j < M; ++j) {
      best = std::min(best, (points.col(i) - points.col(j)).norm());
    }
  }
  return best;
}

double min_distance(const Constellation& c) { return min_distance(c.points); }

ReducedConstellation reduce(const Eigen::MatrixXd& points, double rank_tol) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(points, Eigen::ComputeFullU | Eigen::ComputeThinV);
  const Eigen::VectorXd& sv = svd.singularValues();
  double tol = rank_tol;
  if (tol <= 0) {
    tol = std::max(points.rows(), points.cols()) *
          std::numeric_limits<double>::epsilon() * (sv.size() > 0 ? sv(0) : 0.0);
  }
  int rank = 0;
  for (int k = 0; k < sv.size(); ++k) {
    if (sv(k) > tol) ++rank;
  }
  rank = std::max(rank, 1);

  ReducedConstellation r;
  r.reduced_dim = rank;
  r.rotation = svd.matrixU();
  r.singular_values = sv;
  // First N* rows of Sigma V^T.
  r.points = sv.head(rank).asDiagonal() * svd.matrixV().leftCols(rank).transpose();
  return r;
}

ReducedConstellation reduce(const Constellation& c, double rank_tol) {
  return reduce(c.points, rank_tol);
}

Constellation complex_embed(const Eigen::MatrixXcd& complex_points,
                            const std::optional<Eigen::VectorXd>& priors,
                            std::string label) {
  const int N = static_cast<int>(complex_points.rows());
  const int M = static_cast<int>(complex_points.cols());
  Eigen::MatrixXd stacked(2 * N, M);
  stacked.topRows(N) = complex_points.real();
  stacked.bottomRows(N) = complex_points.imag();
  return new_constellation(stacked, priors, std::move(label));
}

}  // namespace sercm
