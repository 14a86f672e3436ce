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

#pragma once

#include <cstddef>
#include <span>
#include <string_view>

namespace skd::simd {

enum class Isa { Scalar, Avx2 };

std::string_view isa_name(Isa isa);

// Data-parallel inner loops shared by the Frechet DP and the particle filter.
// Every variant produces bit-identical results to the scalar reference.
struct KernelTable {
  Isa isa;
  // out[i] = sqrt((xs[i]-px)^2 + (ys[i]-py)^2)
  void (*distances_to_point)(const double* xs, const double* ys, double px, double py,
                             double* out, std::size_t n);
  // out[i] = min(a[i], b[i])
  void (*elementwise_min)(const double* a, const double* b, double* out, std::size_t n);
  // out[i] = -0.5 * ((obs - d[i]) * inv_sigma)^2
  void (*gaussian_log_kernel)(const double* d, double obs, double inv_sigma, double* out,
                              std::size_t n);
};

const KernelTable& scalar_kernels();
bool isa_supported(Isa isa);
/// Table for a specific ISA; throws std::invalid_argument if unsupported.
const KernelTable& kernels_for(Isa isa);

/// Best supported variant, chosen once at first use. SKD_SIMD=scalar in the
/// environment forces the scalar path.
const KernelTable& active_kernels();

inline void distances_to_point(std::span<const double> xs, std::span<const double> ys,
                               double px, double py, std::span<double> out) {
  active_kernels().distances_to_point(xs.data(), ys.data(), px, py, out.data(), out.size());
}

inline void elementwise_min(std::span<const double> a, std::span<const double> b,
                            std::span<double> out) {
  active_kernels().elementwise_min(a.data(), b.data(), out.data(), out.size());
}

inline void gaussian_log_kernel(std::span<const double> d, double obs, double inv_sigma,
                                std::span<double> out) {
  active_kernels().gaussian_log_kernel(d.data(), obs, inv_sigma, out.data(), out.size());
}

namespace detail {
const KernelTable* avx2_kernels();  // nullptr when not compiled in
}

}  // namespace skd::simd
