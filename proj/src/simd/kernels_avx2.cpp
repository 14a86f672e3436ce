// Copyright 2026 The SKD Authors
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

#include <cmath>
#include <cstddef>

#include "skd/simd/kernels.hpp"

namespace skd::simd {
namespace {

void distances_to_point_avx2(const double* xs, const double* ys, double px, double py,
                             double* out, std::size_t n) {
  const __m256d vpx = _mm256_set1_pd(px);
  const __m256d vpy = _mm256_set1_pd(py);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d dx = _mm256_sub_pd(_mm256_loadu_pd(xs + i), vpx);
    const __m256d dy = _mm256_sub_pd(_mm256_loadu_pd(ys + i), vpy);
    const __m256d sq = _mm256_add_pd(_mm256_mul_pd(dx, dx), _mm256_mul_pd(dy, dy));
    _mm256_storeu_pd(out + i, _mm256_sqrt_pd(sq));
  }
  for (; i < n; ++i) {
    const double dx = xs[i] - px;
    const double dy = ys[i] - py;
    out[i] = std::sqrt(dx * dx + dy * dy);
  }
}

void elementwise_min_avx2(const double* a, const double* b, double* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    // minpd(x, y) returns y unless x < y, i.e. (b < a ? b : a) with x=b, y=a.
    _mm256_storeu_pd(out + i, _mm256_min_pd(_mm256_loadu_pd(b + i), _mm256_loadu_pd(a + i)));
  }
  for (; i < n; ++i) out[i] = b[i] < a[i] ? b[i] : a[i];
}

void gaussian_log_kernel_avx2(const double* d, double obs, double inv_sigma, double* out,
                              std::size_t n) {
  const __m256d vobs = _mm256_set1_pd(obs);
  const __m256d vinv = _mm256_set1_pd(inv_sigma);
  const __m256d half = _mm256_set1_pd(-0.5);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d z = _mm256_mul_pd(_mm256_sub_pd(vobs, _mm256_loadu_pd(d + i)), vinv);
    _mm256_storeu_pd(out + i, _mm256_mul_pd(half, _mm256_mul_pd(z, z)));
  }
  for (; i < n; ++i) {
    const double z = (obs - d[i]) * inv_sigma;
    out[i] = -0.5 * (z * z);
  }
}

}  // namespace

namespace detail {

const KernelTable* avx2_kernels() {
  static const KernelTable table{Isa::Avx2, distances_to_point_avx2, elementwise_min_avx2,
                                 gaussian_log_kernel_avx2};
  return &table;
}

}  // namespace detail
}  // namespace skd::simd
