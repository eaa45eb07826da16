// Copyright 2026 The Collapse Lab Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <vector>

#include <CLI11.hpp>

#include "collapse_lab/cli.hpp"
#include "collapse_lab/error.hpp"
#include "collapse_lab/kernels.hpp"
#include "collapse_lab/killing_quotient.hpp"
#include "collapse_lab/soliton.hpp"
#include "collapse_lab/su2_geometry.hpp"

namespace collapse_lab::cli {
namespace {

using nlohmann::json;

class Csv {
 public:
  Csv(std::ostream& out, std::initializer_list<const char*> header) : out_(out) {
    std::vector<std::string> h(header.begin(), header.end());
    write_header(h);
  }
  Csv(std::ostream& out, const std::vector<std::string>& header) : out_(out) {
    write_header(header);
  }

  void row(std::initializer_list<double> values) { row(std::vector<double>(values)); }
  void row(const std::vector<double>& values) {
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (i) out_ << ',';
      out_ << format_double(values[i]);
    }
    out_ << '\n';
  }

 private:
  void write_header(const std::vector<std::string>& header) {
    for (std::size_t i = 0; i < header.size(); ++i) out_ << (i ? "," : "") << header[i];
    out_ << '\n';
  }
  std::ostream& out_;
};

double get(const json& j, const char* key, double fallback) {
  if (!j.contains(key)) return fallback;
  if (!j.at(key).is_number()) throw ConfigError(std::string("\"") + key + "\" must be a number");
  return j.at(key).get<double>();
}

double require_number(const json& j, const char* key) {
  if (!j.contains(key)) throw ConfigError(std::string("missing required key \"") + key + "\"");
  return get(j, key, 0.0);
}

int get_int(const json& j, const char* key, int fallback) {
  if (!j.contains(key)) return fallback;
  if (!j.at(key).is_number_integer()) {
    throw ConfigError(std::string("\"") + key + "\" must be an integer");
  }
  return j.at(key).get<int>();
}

std::uint64_t get_seed(const json& j) {
  if (!j.contains("seed")) return 0;
  if (!j.at("seed").is_number_unsigned()) {
    throw ConfigError("\"seed\" must be a nonnegative integer");
  }
  return j.at("seed").get<std::uint64_t>();
}

// Slope from "kappa", or from "m1"/"m2" when those are given.
TransformParams transform_params(const json& j) {
  const double r = get(j, "r", 1.0);
  if (j.contains("m1") || j.contains("m2")) {
    return TransformParams::rational(r, get_int(j, "m1", 1), get_int(j, "m2", 1));
  }
  return TransformParams(r, get(j, "kappa", 1.0));
}

std::vector<double> rho_grid(const json& j) {
  const double lo = get(j, "rho_min", 0.0);
  const double hi = get(j, "rho_max", 4.0);
  const int n = get_int(j, "points", 200);
  if (n < 2 || !(hi > lo)) throw ConfigError("need points >= 2 and rho_max > rho_min");
  std::vector<double> rho(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) rho[static_cast<std::size_t>(k)] = lo + (hi - lo) * k / (n - 1);
  rho.back() = hi;
  return rho;
}

Eigen::MatrixXd matrix(const json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_array() || j.at(key).empty()) {
    throw ConfigError(std::string("\"") + key + "\" must be a non-empty array of rows");
  }
  const json& m = j.at(key);
  const std::size_t rows = m.size();
  const std::size_t cols = m[0].is_array() ? m[0].size() : 0;
  Eigen::MatrixXd out(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (std::size_t i = 0; i < rows; ++i) {
    if (!m[i].is_array() || m[i].size() != cols || cols == 0) {
      throw ConfigError(std::string("\"") + key + "\" rows must have equal nonzero length");
    }
    for (std::size_t k = 0; k < cols; ++k) {
      if (!m[i][k].is_number()) throw ConfigError(std::string("\"") + key + "\" has a non-number");
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = m[i][k].get<double>();
    }
  }
  return out;
}

std::vector<Eigen::VectorXd> vectors(const json& j, const char* key) {
  const Eigen::MatrixXd m = matrix(j, key);
  std::vector<Eigen::VectorXd> out;
  for (Eigen::Index i = 0; i < m.rows(); ++i) out.emplace_back(m.row(i).transpose());
  return out;
}

void cmd_transform(const json& cfg, std::ostream& out) {
  const WarpCurve warp = warp_from_config(cfg);
  const TransformParams params = transform_params(cfg);
  const std::vector<double> rho = rho_grid(cfg);
  std::vector<double> f(rho.size()), ft(rho.size());
  for (std::size_t i = 0; i < rho.size(); ++i) f[i] = warp.eval(rho[i]).f;
  const bool inverse = cfg.value("inverse", false);
  if (inverse) {
    const RotSymMetric m = inverse_transform(RotSymMetric::natural(warp), params);
    for (std::size_t i = 0; i < rho.size(); ++i) ft[i] = eval_warp(m, rho[i]).f;
  } else {
    kernels::upsilon(f, ft, params.r(), params.kappa());
  }
  Csv csv(out, {"rho", "f", "f_transformed"});
  for (std::size_t i = 0; i < rho.size(); ++i) csv.row({rho[i], f[i], ft[i]});
}

void cmd_curvature(const json& cfg, std::ostream& out) {
  RotSymMetric metric = RotSymMetric::natural(warp_from_config(cfg));
  if (cfg.contains("r") || cfg.contains("kappa") || cfg.contains("m1")) {
    metric = transform_upsilon(metric, transform_params(cfg));
  }
  Csv csv(out, {"rho", "K"});
  for (double rho : rho_grid(cfg)) csv.row({rho, gauss_curvature(metric, rho)});
}

void cmd_soliton(const json& cfg, std::ostream& out) {
  const SolitonParams params{require_number(cfg, "A"), get(cfg, "B", 1.0)};
  const double rho_max = require_number(cfg, "rho_max");
  const double step = get(cfg, "step", 1e-3);
  const WarpCurve warp = solve_warp_ode(params, rho_max, step);
  const Potential phi = params.A == 0.0 ? RadialFunction::constant(0.0) : soliton_potential(params);
  const RotSymMetric metric = RotSymMetric::truncated(warp, rho_max);
  const long nodes = std::lround(std::ceil(rho_max / step));
  const double h = rho_max / static_cast<double>(nodes);
  Csv csv(out, {"rho", "f", "fprime", "K", "phi", "res1", "res2"});
  for (long k = 0; k <= nodes; ++k) {
    const double rho = k == nodes ? rho_max : static_cast<double>(k) * h;
    const WarpJet w = warp.eval(rho);
    // Curvature and residuals divide by f; pole rows are left out.
    if (!(w.f > kPoleTolerance)) continue;
    const SolitonResidual res = soliton_residual(warp, phi, rho);
    csv.row({rho, w.f, w.df, gauss_curvature(metric, rho), phi(rho).value, res.res1, res.res2});
  }
}

void cmd_quotient(const json& cfg, std::ostream& out) {
  const PointMetric g(matrix(cfg, "metric"));
  PointMetric h = PointMetric::identity(1);
  if (cfg.contains("killing")) {
    const Eigen::MatrixXd k = matrix(json{{"k", json::array({cfg.at("killing")})}}, "k");
    h = transform_killing(g, KillingVector{k.row(0).transpose()}, get(cfg, "r", 1.0),
                          get(cfg, "kappa", 1.0));
  } else {
    h = quotient_metric_form(g, HBasis{vectors(cfg, "H")}, vectors(cfg, "frame"));
  }
  std::vector<std::string> header;
  for (int i = 0; i < h.dim(); ++i) header.push_back("c" + std::to_string(i));
  Csv csv(out, header);
  for (int i = 0; i < h.dim(); ++i) {
    std::vector<double> row;
    for (int k = 0; k < h.dim(); ++k) row.push_back(h(i, k));
    csv.row(row);
  }
}

void cmd_berger(const json& cfg, std::ostream& out, std::ostream& err, bool quiet) {
  BergerMetric m;
  if (cfg.contains("xi")) {
    m = xi_quotient_metric(require_number(cfg, "xi"));
  } else {
    m = {require_number(cfg, "A"), require_number(cfg, "B"), require_number(cfg, "C")};
  }
  m.validate();
  const int samples = get_int(cfg, "samples", 200);
  const std::uint64_t seed = get_seed(cfg);
  const double lo = get(cfg, "radius_min", 0.05);
  const double hi = get(cfg, "radius_max", 3.0);
  const int points = get_int(cfg, "points", 60);
  const RadiusFit fit = best_submersion_radius(m, samples, seed, lo, hi);
  if (!quiet) {
    err << "A=" << format_double(m.A) << " B=" << format_double(m.B)
        << " C=" << format_double(m.C) << " R*=" << format_double(fit.radius)
        << " distortion(R*)=" << format_double(fit.distortion) << '\n';
  }
  Csv csv(out, {"target_radius", "max_distortion"});
  for (const auto& [radius, d] : distortion_scan(m, samples, seed, lo, hi, points)) {
    csv.row({radius, d});
  }
}

void cmd_collapse(const json& cfg, std::ostream& out) {
  const CollapseConfig config = parse_collapse_config(cfg);
  Csv csv(out, {"p", "distortion", "gh_upper_bound", "grid_floor_estimate"});
  for (const CollapseRow& row : collapse_experiment(config)) {
    csv.row({static_cast<double>(row.p), row.distortion, row.gh_upper_bound,
             row.grid_floor_estimate});
  }
}

}  // namespace

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"collapse_lab: warped metrics, circle quotients and collapse experiments",
               "collapse_lab"};
  std::string config_path, out_path;
  bool quiet = false;
  const char* names[] = {"transform", "curvature", "soliton", "quotient", "berger", "collapse"};
  const char* blurbs[] = {
      "rho,f,f_transformed for a warp under the circle-quotient transform",
      "rho,K Gauss curvature of a (possibly transformed) warp",
      "rho,f,fprime,K,phi,res1,res2 for the radial soliton ODE",
      "metric matrix of a quotient by Killing or orbit directions",
      "target_radius,max_distortion scan for the Hopf map of a Berger sphere",
      "p,distortion,gh_upper_bound,grid_floor_estimate for Z_p quotients"};
  std::vector<CLI::App*> subs;
  for (std::size_t i = 0; i < std::size(names); ++i) {
    CLI::App* sub = app.add_subcommand(names[i], blurbs[i]);
    sub->add_option("--config", config_path, "JSON config file")->required();
    sub->add_option("--out", out_path, "write CSV here instead of stdout");
    sub->add_flag("--quiet", quiet, "suppress summaries and warnings");
    subs.push_back(sub);
  }
  app.require_subcommand(1);

  if (!args.empty() && !args[0].empty() && args[0][0] != '-' &&
      std::find(std::begin(names), std::end(names), args[0]) == std::end(names)) {
    err << "error: unknown subcommand \"" << args[0] << "\"\n\n" << app.help();
    return kExitConfig;
  }
  std::vector<std::string> argv(args.rbegin(), args.rend());
  try {
    app.parse(argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitConfig;
  }

  struct RestoreHandler {
    WarningHandler previous;
    ~RestoreHandler() { set_warning_handler(std::move(previous)); }
  } restore{set_warning_handler([&err, quiet](std::string_view msg) {
    if (!quiet) err << "warning: " << msg << '\n';
  })};

  std::ostringstream buffer;
  try {
    const json cfg = load_json_file(config_path);
    const std::string name = app.get_subcommands().front()->get_name();
    if (name == "transform") cmd_transform(cfg, buffer);
    else if (name == "curvature") cmd_curvature(cfg, buffer);
    else if (name == "soliton") cmd_soliton(cfg, buffer);
    else if (name == "quotient") cmd_quotient(cfg, buffer);
    else if (name == "berger") cmd_berger(cfg, buffer, err, quiet);
    else cmd_collapse(cfg, buffer);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const nlohmann::json::exception& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kExitDomain;
  }

  if (out_path.empty()) {
    out << buffer.str();
  } else {
    std::ofstream file(out_path, std::ios::binary);
    if (!(file << buffer.str())) {
      err << "error: cannot write " << out_path << '\n';
      return kExitDomain;
    }
  }
  return kExitOk;
}

}  // namespace collapse_lab::cli
