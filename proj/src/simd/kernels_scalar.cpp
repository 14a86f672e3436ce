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

#include <algorithm>
#include <cmath>
#include <cstddef>

#include "skd/simd/kernels.hpp"

namespace skd::simd {
namespace {

void distances_to_point_scalar(const double* xs, const double* ys, double px, double py,
                               double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = xs[i] - px;
    const double dy = ys[i] - py;
    out[i] = std::sqrt(dx * dx + dy * dy);
  }
}

void elementwise_min_scalar(const double* a, const double* b, double* out, std::size_t n) {
  // Written as (b < a ? b : a) to match minpd operand semantics.
  for (std::size_t i = 0; i < n; ++i) out[i] = b[i] < a[i] ? b[i] : a[i];
}

void gaussian_log_kernel_scalar(const double* d, double obs, double inv_sigma, double* out,
                                std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double z = (obs - d[i]) * inv_sigma;
    out[i] = -0.5 * (z * z);
  }
}

}  // namespace

const KernelTable& scalar_kernels() {
  static const KernelTable table{Isa::Scalar, distances_to_point_scalar, elementwise_min_scalar,
                                 gaussian_log_kernel_scalar};
  return table;
}

}  // namespace skd::simd
