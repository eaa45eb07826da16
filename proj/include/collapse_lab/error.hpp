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

#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace collapse_lab {

// Shared pole/endpoint tolerance: curvature-type quotients by f are refused
// when f <= kPoleTolerance unless a closed form is available.
inline constexpr double kPoleTolerance = 1e-4;

// Raised for any violated mathematical precondition (argument outside a
// domain, degenerate frame, non-SPD metric, ...). The CLI maps it to exit 1.
class DomainError : public std::domain_error {
 public:
  enum class Kind {
    kOutOfDomain,
    kPoleProximity,
    kNotInRange,
    kNoAsymptote,
    kInvalidMetric,
    kDegenerateBasis,
    kTransversality,
    kBlowUp,
    kTrivialSoliton,
    kTangency,
    kCollapsedQuotient,
    kConnectivity,
    kInvalidArgument,
  };

  DomainError(Kind kind, const std::string& what)
      : std::domain_error(what), kind_(kind) {}

  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

// Non-fatal diagnostics (ill-conditioned Gram systems and the like) go
// through a process-wide handler. The default writes to stderr.
using WarningHandler = std::function<void(std::string_view)>;

// Returns the previous handler. An empty handler discards warnings.
WarningHandler set_warning_handler(WarningHandler handler);
void warn(std::string_view message);

}  // namespace collapse_lab
