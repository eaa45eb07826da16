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

#include <immintrin.h>

#include <algorithm>
#include <cmath>
#include <limits>

#include "collapse_lab/kernels.hpp"
#include "collapse_lab/warped_metric.hpp"

namespace collapse_lab::kernels {
namespace {

double hmax(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d m = _mm_max_pd(lo, hi);
  return std::max(_mm_cvtsd_f64(m), _mm_cvtsd_f64(_mm_unpackhi_pd(m, m)));
}

double hmin(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d m = _mm_min_pd(lo, hi);
  return std::min(_mm_cvtsd_f64(m), _mm_cvtsd_f64(_mm_unpackhi_pd(m, m)));
}

double max_abs_diff_avx2(const double* a, const double* b, std::size_t n) {
  const __m256d sign = _mm256_set1_pd(-0.0);
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
    acc = _mm256_max_pd(acc, _mm256_andnot_pd(sign, d));
  }
  double worst = hmax(acc);
  for (; i < n; ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

double min_sum_squares_avx2(const double* x, const double* y, std::size_t n) {
  __m256d acc = _mm256_set1_pd(std::numeric_limits<double>::infinity());
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d xv = _mm256_loadu_pd(x + i);
    const __m256d yv = _mm256_loadu_pd(y + i);
    acc = _mm256_min_pd(acc, _mm256_add_pd(_mm256_mul_pd(xv, xv), _mm256_mul_pd(yv, yv)));
  }
  double best = hmin(acc);
  for (; i < n; ++i) best = std::min(best, x[i] * x[i] + y[i] * y[i]);
  return best;
}

void upsilon_avx2(const double* f, double* out, std::size_t n, double r, double kappa) {
  const double k2 = kappa * kappa;
  const double r2 = r * r;
  const __m256d rv = _mm256_set1_pd(r);
  const __m256d k2v = _mm256_set1_pd(k2);
  const __m256d r2v = _mm256_set1_pd(r2);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d fv = _mm256_loadu_pd(f + i);
    const __m256d num = _mm256_mul_pd(rv, fv);
    const __m256d den = _mm256_sqrt_pd(_mm256_add_pd(_mm256_mul_pd(_mm256_mul_pd(k2v, fv), fv), r2v));
    _mm256_storeu_pd(out + i, _mm256_div_pd(num, den));
  }
  for (; i < n; ++i) out[i] = upsilon_value(f[i], r, kappa);
}

}  // namespace

namespace detail {

const KernelTable* avx2_table_if_built() {
  static const KernelTable table{Isa::kAvx2, &max_abs_diff_avx2, &min_sum_squares_avx2,
                                 &upsilon_avx2};
  return &table;
}

}  // namespace detail
}  // namespace collapse_lab::kernels
