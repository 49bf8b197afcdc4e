// SPDX-License-Identifier: Apache-2.0
//
// Command line front end: turns constellation/fading configs into SER curves,
// mixture-density tables and monotonicity/order verdicts.

#include <sercm/cubature.hpp>
#include <sercm/fading.hpp>
#include <sercm/io.hpp>
#include <sercm/ser.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using nlohmann::json;
using nlohmann::ordered_json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitNumerical = 3;

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct GridSpec {
  double min = 0.5;
  double max = 30.0;
  int count = 20;
  bool log = true;

  std::vector<double> build() const {
    if (!(min > 0) || !(max > min) || count < 2) {
      throw InputError("rho grid needs 0 < min < max and count >= 2");
    }
    std::vector<double> g(count);
    for (int k = 0; k < count; ++k) {
      double t = static_cast<double>(k) / (count - 1);
      g[k] = log ? min * std::pow(max / min, t) : min + (max - min) * t;
    }
    return g;
  }
};

struct RunConfig {
  fs::path config_dir;
  json raw;
  sercm::Constellation constellation;
  std::optional<Eigen::MatrixXcd> complex_points;
  GridSpec grid;
  double tol = 1e-5;
  std::uint64_t seed = 1;
  long mc_samples = 1000000;
  int max_order = 4;
  long quad_max_cells = 400000;
  std::vector<std::string> methods{"quadrature"};
  std::string closed_form;  // "", "qam4", "qam16", "cube"
  sercm::NoiseModel noise = sercm::NoiseModel::awgn();
  std::vector<sercm::FadingModel> fading;
  bool dump_geometry = false;
};

GridSpec parse_grid_json(const json& j) {
  GridSpec g;
  g.min = j.at("min").get<double>();
  g.max = j.at("max").get<double>();
  g.count = j.at("count").get<int>();
  std::string spacing = j.value("spacing", std::string("log"));
  if (spacing != "log" && spacing != "lin") throw InputError("grid spacing must be log or lin");
  g.log = spacing == "log";
  return g;
}

GridSpec parse_grid_flag(const std::string& s) {
  GridSpec g;
  std::vector<std::string> parts;
  std::string cur;
  for (char c : s) {
    if (c == ':') {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  parts.push_back(cur);
  if (parts.size() != 4) throw InputError("--grid wants MIN:MAX:COUNT:log|lin");
  g.min = std::stod(parts[0]);
  g.max = std::stod(parts[1]);
  g.count = std::stoi(parts[2]);
  if (parts[3] != "log" && parts[3] != "lin") throw InputError("--grid spacing must be log or lin");
  g.log = parts[3] == "log";
  return g;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open config file: " + path);
  RunConfig cfg;
  try {
    in >> cfg.raw;
  } catch (const std::exception& e) {
    throw InputError(std::string("malformed config JSON: ") + e.what());
  }
  cfg.config_dir = fs::path(path).parent_path();

  if (!cfg.raw.contains("constellation")) {
    throw InputError("config missing \"constellation\" path");
  }
  fs::path cpath = cfg.raw.at("constellation").get<std::string>();
  if (cpath.is_relative()) cpath = cfg.config_dir / cpath;
  std::ifstream cin_(cpath);
  if (!cin_) throw InputError("cannot open constellation file: " + cpath.string());
  json cjson;
  try {
    cin_ >> cjson;
  } catch (const std::exception& e) {
    throw InputError("malformed constellation JSON in " + cpath.string() + ": " + e.what());
  }
  try {
    cfg.constellation = sercm::load_constellation(cjson);
    if (cjson.value("complex", false)) {
      cfg.complex_points = sercm::load_complex_points(cjson);
    }
  } catch (const std::exception& e) {
    throw InputError("invalid constellation in " + cpath.string() + ": " + e.what());
  }

  if (cfg.raw.contains("rhoGrid")) cfg.grid = parse_grid_json(cfg.raw.at("rhoGrid"));
  cfg.tol = cfg.raw.value("tol", cfg.tol);
  cfg.seed = cfg.raw.value("seed", cfg.seed);
  cfg.mc_samples = cfg.raw.value("mcSamples", cfg.mc_samples);
  cfg.max_order = cfg.raw.value("maxOrder", cfg.max_order);
  cfg.quad_max_cells = cfg.raw.value("quadMaxCells", cfg.quad_max_cells);
  if (cfg.raw.contains("methods")) {
    cfg.methods = cfg.raw.at("methods").get<std::vector<std::string>>();
  }
  cfg.closed_form = cfg.raw.value("closedForm", std::string{});
  cfg.dump_geometry = cfg.raw.value("dumpGeometry", false);
  if (cfg.raw.contains("noise")) {
    try {
      cfg.noise = sercm::NoiseModel::compound(sercm::mixing_from_json(cfg.raw.at("noise")));
    } catch (const std::exception& e) {
      throw InputError(std::string("invalid noise spec: ") + e.what());
    }
  }
  if (cfg.raw.contains("fading")) {
    for (const auto& fj : cfg.raw.at("fading")) {
      try {
        cfg.fading.push_back(sercm::fading_from_json(fj));
      } catch (const std::exception& e) {
        throw InputError(std::string("invalid fading spec: ") + e.what());
      }
    }
  }
  return cfg;
}

double closed_ser(const std::string& kind, double rho) {
  if (kind == "qam4") return sercm::ser_closed_qam(4, rho).value;
  if (kind == "qam16") return sercm::ser_closed_qam(16, rho).value;
  if (kind == "qam64") return sercm::ser_closed_qam(64, rho).value;
  if (kind == "cube") return sercm::ser_closed_cube(rho).value;
  throw InputError("unknown closedForm: " + kind);
}

void write_file(const fs::path& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write output file: " + path.string());
  out << contents;
}

int cmd_analyze(const RunConfig& cfg, const fs::path& out_dir) {
  const auto& c = cfg.constellation;
  sercm::ReducedConstellation red = sercm::reduce(c);
  std::cout << "label: " << (c.label.empty() ? "(none)" : c.label) << "\n";
  std::cout << "dimension N: " << c.dim() << "\n";
  std::cout << "symbols M: " << c.size() << "\n";
  std::cout << "reduced dimension N*: " << red.reduced_dim << "\n";
  std::cout << "d_min: " << sercm::format_double(sercm::min_distance(c)) << "\n";
  if (red.reduced_dim > 2) {
    std::cout << "rho0: " << sercm::format_double(sercm::rho0(c)) << "\n";
  }
  ordered_json dump = ordered_json::array();
  for (int i = 0; i < red.size(); ++i) {
    sercm::SymbolDecomposition d = sercm::decompose_symbol(red, i);
    std::cout << "symbol " << i << ": facets=" << d.region.halfspaces.size()
              << (d.region.bounded ? "" : " (unbounded, clipped)")
              << " cones=" << d.cones.size() << "\n";
    if (cfg.dump_geometry) dump.push_back(sercm::decomposition_to_json(d));
  }
  if (cfg.dump_geometry) {
    write_file(out_dir / "geometry.json", dump.dump(2) + "\n");
  }
  return kExitOk;
}

int cmd_ser_curve(const RunConfig& cfg, const fs::path& out_dir) {
  if (cfg.methods.empty()) throw InputError("ser-curve: no methods selected");
  for (const auto& m : cfg.methods) {
    if (m != "mc" && m != "quadrature" && m != "closed") {
      throw InputError("ser-curve: unknown method " + m);
    }
    if (m == "closed" && cfg.closed_form.empty()) {
      throw InputError("ser-curve: method closed requires \"closedForm\"");
    }
  }
  std::vector<double> grid = cfg.grid.build();
  std::optional<sercm::SerEngine> engine;

  std::string csv = "rho,value,stderr,method\n";
  try {
    for (double rho : grid) {
      for (const auto& m : cfg.methods) {
        sercm::SerEstimate e;
        if (m == "closed") {
          e = sercm::SerEstimate{closed_ser(cfg.closed_form, rho), 0.0,
                                 sercm::SerMethod::closed_form, rho};
        } else if (m == "mc") {
          e = sercm::ser_mc(cfg.constellation, cfg.noise, rho, cfg.mc_samples, cfg.seed);
        } else {
          if (!engine) engine = sercm::SerEngine::from_constellation(cfg.constellation);
          e = engine->quadrature(rho, cfg.tol, cfg.quad_max_cells);
        }
        csv += sercm::format_double(rho);
        csv += ',';
        csv += sercm::format_double(e.value);
        csv += ',';
        csv += sercm::format_double(e.std_error);
        csv += ',';
        csv += to_string(e.method);
        csv += '\n';
      }
    }
  } catch (const sercm::NumericalError& e) {
    // Retain what was computed, flag every row, and signal failure.
    std::string flagged = "rho,value,stderr,method,status\n";
    size_t start = csv.find('\n') + 1;
    for (size_t pos = start; pos < csv.size();) {
      size_t end = csv.find('\n', pos);
      flagged += csv.substr(pos, end - pos) + ",ok\n";
      pos = end + 1;
    }
    flagged += std::string(",,,,failed: ") + e.what() + "\n";
    write_file(out_dir / "ser_curve.csv", flagged);
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  }
  write_file(out_dir / "ser_curve.csv", csv);
  return kExitOk;
}

int cmd_cm_check(const RunConfig& cfg, const fs::path& out_dir) {
  std::vector<double> grid = cfg.grid.build();
  sercm::CmVerdict v = sercm::cm_check(cfg.constellation, grid, cfg.max_order);
  ordered_json j;
  j["isCm"] = to_string(v.is_cm);
  j["basis"] = to_string(v.basis);
  j["maxOrderChecked"] = v.max_order_checked;
  if (v.witness) {
    j["witness"] = {{"rho", v.witness->first}, {"order", v.witness->second}};
  }
  write_file(out_dir / "cm_verdict.json", j.dump(2) + "\n");

  if (cfg.raw.contains("muGrid")) {
    const auto& mj = cfg.raw.at("muGrid");
    double umax = mj.at("max").get<double>();
    int count = mj.at("count").get<int>();
    if (count < 2 || !(umax > 0)) throw InputError("muGrid needs positive max, count >= 2");
    std::vector<double> ugrid(count);
    for (int k = 0; k < count; ++k) ugrid[k] = umax * k / (count - 1);
    sercm::SerEngine engine = sercm::SerEngine::from_constellation(cfg.constellation);
    sercm::RepresentingFn mu = engine.representing(ugrid);
    std::string csv = "u,mu\n";
    for (size_t k = 0; k < mu.u_grid.size(); ++k) {
      csv += sercm::format_double(mu.u_grid[k]);
      csv += ',';
      csv += sercm::format_double(mu.mu_values[k]);
      csv += '\n';
    }
    write_file(out_dir / "mu.csv", csv);
  }
  return kExitOk;
}

int cmd_fading_compare(const RunConfig& cfg, const fs::path& out_dir) {
  if (cfg.fading.size() != 2) {
    throw InputError("fading-compare: config needs exactly two entries in \"fading\"");
  }
  std::vector<double> grid = cfg.grid.build();
  sercm::ReducedConstellation red = sercm::reduce(cfg.constellation);
  const double p = std::max(0.0, 0.5 * red.reduced_dim - 1.0);

  sercm::OrderVerdict v0 = sercm::check_gp_order(cfg.fading[0], cfg.fading[1], 0.0, grid);
  sercm::OrderVerdict vp = sercm::check_gp_order(cfg.fading[0], cfg.fading[1], p, grid);

  sercm::SerComparisonReport rep = sercm::order_implies_ser_comparison(
      cfg.constellation, cfg.fading[0], cfg.fading[1], grid, cfg.tol);

  ordered_json j;
  j["first"] = cfg.fading[0].describe();
  j["second"] = cfg.fading[1].describe();
  j["p"] = p;
  j["order_p0"] = sercm::order_verdict_to_json(v0);
  j["order_p"] = sercm::order_verdict_to_json(vp);
  j["ser_ordered"] = rep.ser_ordered;
  if (rep.ser_crossing_rho) j["ser_crossing_rho"] = *rep.ser_crossing_rho;
  write_file(out_dir / "fading_verdict.json", j.dump(2) + "\n");

  std::string csv = "rho,ser_first,ser_second\n";
  for (size_t k = 0; k < grid.size(); ++k) {
    csv += sercm::format_double(grid[k]);
    csv += ',';
    csv += sercm::format_double(rep.avg_ser1[k]);
    csv += ',';
    csv += sercm::format_double(rep.avg_ser2[k]);
    csv += '\n';
  }
  write_file(out_dir / "fading_curves.csv", csv);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Symbol error rates, exponential-mixture representations and "
               "stochastic orders for multi-dimensional constellations"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir_s = ".";
  std::string grid_flag;
  std::optional<std::uint64_t> seed_flag;
  std::optional<double> tol_flag;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "Run configuration JSON")->required();
    sub->add_option("--out", out_dir_s, "Output directory");
    sub->add_option("--seed", seed_flag, "Override RNG seed");
    sub->add_option("--tol", tol_flag, "Override numerical tolerance");
    sub->add_option("--grid", grid_flag, "Override rho grid, MIN:MAX:COUNT:log|lin");
  };

  CLI::App* analyze = app.add_subcommand("analyze", "Report constellation geometry");
  CLI::App* ser_curve = app.add_subcommand("ser-curve", "Write an error-rate curve CSV");
  CLI::App* cm = app.add_subcommand("cm-check", "Complete-monotonicity verdict JSON");
  CLI::App* fading = app.add_subcommand("fading-compare", "Order verdicts and fading-averaged curves");
  for (CLI::App* sub : {analyze, ser_curve, cm, fading}) add_common(sub);

  CLI11_PARSE(app, argc, argv);

  try {
    RunConfig cfg = load_config(config_path);
    if (seed_flag) cfg.seed = *seed_flag;
    if (tol_flag) cfg.tol = *tol_flag;
    if (!grid_flag.empty()) cfg.grid = parse_grid_flag(grid_flag);

    fs::path out_dir = out_dir_s;
    std::error_code ec;
    fs::create_directories(out_dir, ec);

    if (app.got_subcommand(analyze)) return cmd_analyze(cfg, out_dir);
    if (app.got_subcommand(ser_curve)) return cmd_ser_curve(cfg, out_dir);
    if (app.got_subcommand(cm)) return cmd_cm_check(cfg, out_dir);
    if (app.got_subcommand(fading)) return cmd_fading_compare(cfg, out_dir);
    return kExitInput;
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const sercm::NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerical;
  }
}
