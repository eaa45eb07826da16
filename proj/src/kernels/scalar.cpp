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
#include <limits>

#include "collapse_lab/kernels.hpp"
#include "collapse_lab/warped_metric.hpp"

namespace collapse_lab::kernels {
namespace {

double max_abs_diff_scalar(const double* a, const double* b, std::size_t n) {
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

double min_sum_squares_scalar(const double* x, const double* y, std::size_t n) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) best = std::min(best, x[i] * x[i] + y[i] * y[i]);
  return best;
}

void upsilon_scalar(const double* f, double* out, std::size_t n, double r, double kappa) {
  for (std::size_t i = 0; i < n; ++i) out[i] = upsilon_value(f[i], r, kappa);
}

}  // namespace

const KernelTable& scalar_table() {
  static const KernelTable table{Isa::kScalar, &max_abs_diff_scalar, &min_sum_squares_scalar,
                                 &upsilon_scalar};
  return table;
}

}  // namespace collapse_lab::kernels
