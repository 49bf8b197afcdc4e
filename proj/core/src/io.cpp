// SPDX-License-Identifier: Apache-2.0
#include "sercm/io.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace sercm {

namespace {

Eigen::MatrixXd parse_rows(const nlohmann::json& rows) {
  if (!rows.is_array() || rows.empty() || !rows.front().is_array()) {
    throw std::invalid_argument("constellation: \"points\" must be an array of rows");
  }
  const int n = static_cast<int>(rows.size());
  const int m = static_cast<int>(rows.front().size());
  Eigen::MatrixXd points(n, m);
  for (int r = 0; r < n; ++r) {
    if (static_cast<int>(rows[r].size()) != m) {
      throw std::invalid_argument("constellation: ragged \"points\" rows");
    }
    for (int c = 0; c < m; ++c) points(r, c) = rows[r][c].get<double>();
  }
  return points;
}

std::optional<Eigen::VectorXd> parse_priors(const nlohmann::json& j) {
  if (!j.contains("priors")) return std::nullopt;
  const auto& p = j.at("priors");
  Eigen::VectorXd v(p.size());
  for (size_t k = 0; k < p.size(); ++k) v(static_cast<int>(k)) = p[k].get<double>();
  return v;
}

}  // namespace

Eigen::MatrixXcd load_complex_points(const nlohmann::json& j) {
  Eigen::MatrixXd raw = parse_rows(j.at("points"));
  if (raw.cols() % 2 != 0) {
    throw std::invalid_argument("complex constellation rows need (Re, Im) pairs");
  }
  const int n = static_cast<int>(raw.rows());
  const int m = static_cast<int>(raw.cols()) / 2;
  Eigen::MatrixXcd pts(n, m);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < m; ++c) {
      pts(r, c) = std::complex<double>(raw(r, 2 * c), raw(r, 2 * c + 1));
    }
  }
  return pts;
}

Constellation load_constellation(const nlohmann::json& j) {
  std::string label = j.value("label", std::string{});
  auto priors = parse_priors(j);
  if (j.value("complex", false)) {
    return complex_embed(load_complex_points(j), priors, label);
  }
  return new_constellation(parse_rows(j.at("points")), priors, label);
}

Constellation load_constellation_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open constellation file: " + path);
  nlohmann::json j;
  in >> j;
  return load_constellation(j);
}

MixingSpec mixing_from_json(const nlohmann::json& j) {
  const std::string family = j.at("family").get<std::string>();
  if (family == "degenerate") return MixingSpec::degenerate(j.at("w0").get<double>());
  if (family == "gamma") {
    return MixingSpec::gamma_mix(j.at("shape").get<double>(), j.at("scale").get<double>());
  }
  if (family == "levy") return MixingSpec::levy(j.at("scale").get<double>());
  if (family == "affine_poisson") {
    return MixingSpec::affine_poisson(j.at("a").get<double>(), j.at("b").get<double>(),
                                      j.at("lambda").get<double>());
  }
  throw std::invalid_argument("unknown mixing family: " + family);
}

FadingModel fading_from_json(const nlohmann::json& j) {
  const std::string family = j.at("family").get<std::string>();
  if (family == "degenerate") return FadingModel::degenerate(j.value("x0", 1.0));
  if (family == "nakagami") return FadingModel::nakagami(j.at("m").get<double>());
  if (family == "rician") return FadingModel::rician(j.at("K").get<double>());
  if (family == "empirical") {
    std::vector<double> samples = j.at("samples").get<std::vector<double>>();
    return FadingModel::empirical(std::move(samples));
  }
  throw std::invalid_argument("unknown fading family: " + family);
}

nlohmann::ordered_json order_verdict_to_json(const OrderVerdict& v) {
  nlohmann::ordered_json j;
  j["relation"] = to_string(v.relation);
  j["certification"] = "grid";  // finite evidence, never a for-all-rho proof
  j["tied"] = v.tied;
  j["p"] = v.p;
  j["grid"] = v.grid;
  j["difference"] = v.difference;
  if (v.relation == OrderVerdict::Relation::crossing) {
    j["rho1"] = v.rho1;
    j["rho1_bracket"] = {v.rho1_lo, v.rho1_hi};
  }
  return j;
}

nlohmann::ordered_json decomposition_to_json(const SymbolDecomposition& d) {
  nlohmann::ordered_json j;
  j["symbol"] = d.symbol_index;
  j["bounded"] = d.region.bounded;
  auto hs_json = [](const Polyhedron& p) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& h : p.halfspaces) {
      nlohmann::ordered_json hj;
      hj["a"] = std::vector<double>(h.a.data(), h.a.data() + h.a.size());
      hj["b"] = h.b;
      hj["artificial"] = h.artificial;
      arr.push_back(hj);
    }
    return arr;
  };
  j["halfspaces"] = hs_json(d.region);
  j["clipped_halfspaces"] = hs_json(d.clipped);
  nlohmann::ordered_json cones = nlohmann::ordered_json::array();
  for (const auto& cone : d.cones) {
    nlohmann::ordered_json cj;
    cj["facet"] = cone.facet_index;
    cj["artificial"] = cone.artificial_facet;
    nlohmann::ordered_json edges = nlohmann::ordered_json::array();
    for (int k = 0; k < cone.edges.cols(); ++k) {
      edges.push_back(std::vector<double>(cone.edges.col(k).data(),
                                          cone.edges.col(k).data() + cone.edges.rows()));
    }
    cj["edges"] = edges;
    cj["angle_box"] = angle_box(cone).max_angles;
    cones.push_back(cj);
  }
  j["cones"] = cones;
  return j;
}

std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

}  // namespace sercm
