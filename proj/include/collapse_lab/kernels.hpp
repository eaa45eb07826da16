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

// Data-parallel inner loops with a scalar reference implementation and
// vector variants chosen once at runtime. Every variant performs the same
// IEEE operations in the same order per element (no FMA contraction), so the
// results are bitwise identical across variants; the equivalence tests rely
// on that.

#pragma once

#include <cstddef>
#include <span>

namespace collapse_lab::kernels {

enum class Isa { kScalar, kAvx2 };

const char* isa_name(Isa isa);

struct KernelTable {
  Isa isa;
  // max_i |a_i - b_i|; 0 for empty input.
  double (*max_abs_diff)(const double* a, const double* b, std::size_t n);
  // min_i (x_i^2 + y_i^2); +inf for empty input.
  double (*min_sum_squares)(const double* x, const double* y, std::size_t n);
  // out_i = r f_i / sqrt(kappa^2 f_i^2 + r^2).
  void (*upsilon)(const double* f, double* out, std::size_t n, double r, double kappa);
};

const KernelTable& scalar_table();
// nullptr when the AVX2 variant was not compiled in or the CPU lacks AVX2.
const KernelTable* avx2_table();
// Best available table. Setting COLLAPSE_LAB_ISA=scalar in the environment
// forces the reference kernels.
const KernelTable& active();

double max_abs_diff(std::span<const double> a, std::span<const double> b);
double min_sum_squares(std::span<const double> x, std::span<const double> y);
void upsilon(std::span<const double> f, std::span<double> out, double r, double kappa);

namespace detail {
const KernelTable* avx2_table_if_built();
}  // namespace detail

}  // namespace collapse_lab::kernels
