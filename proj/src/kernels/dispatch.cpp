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

#include <cstdlib>
#include <stdexcept>
#include <string_view>

#include "collapse_lab/kernels.hpp"

namespace collapse_lab::kernels {

#ifndef COLLAPSE_LAB_HAVE_AVX2
namespace detail {
const KernelTable* avx2_table_if_built() { return nullptr; }
}  // namespace detail
#endif

const char* isa_name(Isa isa) {
  switch (isa) {
    case Isa::kScalar: return "scalar";
    case Isa::kAvx2: return "avx2";
  }
  return "?";
}

const KernelTable* avx2_table() {
#if defined(__x86_64__) || defined(__i386__)
  static const bool supported = __builtin_cpu_supports("avx2");
  if (!supported) return nullptr;
#endif
  return detail::avx2_table_if_built();
}

const KernelTable& active() {
  static const KernelTable* chosen = [] {
    const char* env = std::getenv("COLLAPSE_LAB_ISA");
    if (env != nullptr && std::string_view(env) == "scalar") return &scalar_table();
    if (const KernelTable* t = avx2_table()) return t;
    return &scalar_table();
  }();
  return *chosen;
}

double max_abs_diff(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw std::invalid_argument("max_abs_diff: size mismatch");
  return active().max_abs_diff(a.data(), b.data(), a.size());
}

double min_sum_squares(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw std::invalid_argument("min_sum_squares: size mismatch");
  return active().min_sum_squares(x.data(), y.data(), x.size());
}

void upsilon(std::span<const double> f, std::span<double> out, double r, double kappa) {
  if (f.size() != out.size()) throw std::invalid_argument("upsilon: size mismatch");
  active().upsilon(f.data(), out.data(), f.size(), r, kappa);
}

}  // namespace collapse_lab::kernels
