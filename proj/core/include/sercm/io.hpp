// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "sercm/constellation.hpp"
#include "sercm/fading.hpp"
#include "sercm/geometry.hpp"
#include "sercm/noise.hpp"

#include <json.hpp>

#include <string>

namespace sercm {

/// Constellation file: {"label": str, "points": [[row-major reals]],
/// "priors": [reals] (optional), "complex": bool (optional)}.  When complex,
/// each row holds interleaved (Re, Im) pairs and the real embedding is
/// applied on load.
Constellation load_constellation(const nlohmann::json& j);
Constellation load_constellation_file(const std::string& path);

/// The complex points of a "complex": true file, for detectors that work in
/// the complex domain directly.
Eigen::MatrixXcd load_complex_points(const nlohmann::json& j);

MixingSpec mixing_from_json(const nlohmann::json& j);
FadingModel fading_from_json(const nlohmann::json& j);
nlohmann::ordered_json order_verdict_to_json(const OrderVerdict& v);
nlohmann::ordered_json decomposition_to_json(const SymbolDecomposition& d);

/// 17 significant digits, '.' separator; the bit-exact interchange format.
std::string format_double(double x);

}  // namespace sercm
