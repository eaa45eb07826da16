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

// Command-line front end: JSON configs in, CSV out.

#pragma once

#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>

#include <nlohmann/json.hpp>

#include "collapse_lab/gh_collapse.hpp"
#include "collapse_lab/warped_metric.hpp"

namespace collapse_lab::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomain = 1;
inline constexpr int kExitConfig = 2;

// Malformed or invalid configuration; maps to kExitConfig.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Parses JSON text, reporting syntax errors as "<source>:<line>:<column>: ...".
nlohmann::json parse_json(const std::string& text, const std::string& source);
nlohmann::json load_json_file(const std::string& path);

// {"family": name, "a": number}.
WarpCurve parse_warp(const nlohmann::json& j);
// The warp nested under "surface", or the family/a keys of `config` itself.
WarpCurve warp_from_config(const nlohmann::json& config);
CollapseConfig parse_collapse_config(const nlohmann::json& j);

// %.17g.
std::string format_double(double x);

// args excludes the program name.
int run(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace collapse_lab::cli
