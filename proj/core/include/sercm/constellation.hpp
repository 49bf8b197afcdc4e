// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>

#include <optional>
#include <string>

namespace sercm {

/// Signal set: columns of `points` are the M symbols in R^N.  Immutable after
/// construction; all operations return new values.
struct Constellation {
  Eigen::MatrixXd points;  // N x M
  Eigen::VectorXd priors;  // length M, nonnegative, sums to 1
  std::string label;

  int dim() const { return static_cast<int>(points.rows()); }
  int size() const { return static_cast<int>(points.cols()); }
};

/// Strictly positive average SNR per dimension.
struct SnrPoint {
  double rho;
  explicit SnrPoint(double r);
};

/// Rank-reduced, distance-preserving re-expression of a constellation.
struct ReducedConstellation {
  Eigen::MatrixXd points;          // N* x M
  int reduced_dim = 0;             // N*
  Eigen::MatrixXd rotation;        // the N x N orthogonal factor, kept for audit
  Eigen::VectorXd singular_values;

  int size() const { return static_cast<int>(points.cols()); }
};

/// Validates points/priors; priors default to uniform.
/// Throws std::invalid_argument on duplicate columns or malformed priors.
Constellation new_constellation(const Eigen::MatrixXd& points,
                                const std::optional<Eigen::VectorXd>& priors = std::nullopt,
                                std::string label = {});

/// Rescales so that M^-1 sum ||s_i||^2 = 1.  Throws if all points are zero.
Constellation energy_normalize(const Constellation& c);

double min_distance(const Constellation& c);
double min_distance(const Eigen::MatrixXd& points);

/// SVD-based rank reduction.  rank_tol <= 0 selects the default
/// max(N, M) * machine_eps * sigma_max.
ReducedConstellation reduce(const Constellation& c, double rank_tol = 0.0);
ReducedConstellation reduce(const Eigen::MatrixXd& points, double rank_tol = 0.0);

/// Stacks Re over Im: a complex N x M constellation becomes real 2N x M with
/// identical pairwise distances and, under matched noise, identical SER.
Constellation complex_embed(const Eigen::MatrixXcd& complex_points,
                            const std::optional<Eigen::VectorXd>& priors = std::nullopt,
                            std::string label = {});

}  // namespace sercm
