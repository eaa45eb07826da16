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

#include <cstdio>
#include <fstream>
#include <sstream>

#include "collapse_lab/cli.hpp"

namespace collapse_lab::cli {
namespace {

using nlohmann::json;

std::pair<std::size_t, std::size_t> line_column(const std::string& text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < text.size() && i + 1 < byte; ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw ConfigError(std::string("missing required key \"") + key + "\"");
  }
  return j.at(key);
}

double number(const json& j, const char* key) {
  const json& v = field(j, key);
  if (!v.is_number()) throw ConfigError(std::string("\"") + key + "\" must be a number");
  return v.get<double>();
}

double number_or(const json& j, const char* key, double fallback) {
  return j.contains(key) ? number(j, key) : fallback;
}

int integer(const json& j, const char* key) {
  const json& v = field(j, key);
  if (!v.is_number_integer()) throw ConfigError(std::string("\"") + key + "\" must be an integer");
  return v.get<int>();
}

GridSize grid(const json& j, const char* key, GridSize fallback) {
  if (!j.contains(key)) return fallback;
  const json& g = j.at(key);
  return {integer(g, "n_rho"), integer(g, "n_theta"), integer(g, "n_s")};
}

}  // namespace

json parse_json(const std::string& text, const std::string& source) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    const auto [line, col] = line_column(text, e.byte);
    std::ostringstream os;
    os << source << ':' << line << ':' << col << ": " << e.what();
    throw ConfigError(os.str());
  }
}

json load_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_json(buf.str(), path);
}

WarpCurve parse_warp(const json& j) {
  const json& fam = field(j, "family");
  if (!fam.is_string()) throw ConfigError("\"family\" must be a string");
  const std::string name = fam.get<std::string>();
  const double a = number(j, "a");
  if (name == "sinh") return WarpCurve::sinh(a);
  if (name == "tanh") return WarpCurve::tanh(a);
  if (name == "tan") return WarpCurve::tan(a);
  if (name == "sin") return WarpCurve::sin(a);
  if (name == "const") return WarpCurve::constant(a);
  if (name == "linear") return WarpCurve::linear(a);
  throw ConfigError("unknown warp family \"" + name +
                    "\" (expected sinh, tanh, tan, sin, const or linear)");
}

WarpCurve warp_from_config(const json& config) {
  if (config.is_object() && config.contains("surface")) return parse_warp(config.at("surface"));
  return parse_warp(config);
}

CollapseConfig parse_collapse_config(const json& j) {
  CollapseConfig c;
  c.surface = warp_from_config(j);
  c.rho_max = number(j, "rho_max");
  c.r = number_or(j, "r", c.r);
  if (j.contains("m1")) c.m1 = integer(j, "m1");
  if (j.contains("m2")) c.m2 = integer(j, "m2");
  const json& ps = field(j, "p_values");
  if (!ps.is_array() || ps.empty()) throw ConfigError("\"p_values\" must be a non-empty array");
  for (const json& p : ps) {
    if (!p.is_number_integer()) throw ConfigError("\"p_values\" entries must be integers");
    c.p_values.push_back(p.get<int>());
  }
  c.grid = grid(j, "grid", c.grid);
  c.sample = grid(j, "sample", c.sample);
  if (j.contains("seed")) {
    const json& s = j.at("seed");
    if (!s.is_number_unsigned()) throw ConfigError("\"seed\" must be a nonnegative integer");
    c.seed = s.get<std::uint64_t>();
  }
  if (j.contains("stencil")) {
    const json& s = j.at("stencil");
    c.stencil = {integer(s, "rho"), integer(s, "theta")};
  }
  return c;
}

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace collapse_lab::cli
