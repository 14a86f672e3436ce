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

#include "skd/frechet.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <vector>

#include "skd/simd/kernels.hpp"

namespace skd {

double discrete_frechet(std::span<const Point2> p, std::span<const Point2> q) {
  if (p.empty() || q.empty()) throw std::invalid_argument("empty chain");

  const std::size_t n = q.size();
  std::vector<double> qx(n), qy(n);
  for (std::size_t j = 0; j < n; ++j) {
    qx[j] = q[j].x;
    qy[j] = q[j].y;
  }

  std::vector<double> d(n), prev(n), cur(n), lower(n);

  simd::distances_to_point(qx, qy, p[0].x, p[0].y, d);
  cur[0] = d[0];
  for (std::size_t j = 1; j < n; ++j) cur[j] = std::max(d[j], cur[j - 1]);

  for (std::size_t i = 1; i < p.size(); ++i) {
    std::swap(prev, cur);
    simd::distances_to_point(qx, qy, p[i].x, p[i].y, d);
    // lower[j] = min(prev[j], prev[j-1]) covers the vertical and diagonal
    // predecessors; the horizontal one is only known after cur[j-1].
    if (n > 1) {
      simd::elementwise_min(std::span<const double>(prev).subspan(1),
                            std::span<const double>(prev).first(n - 1),
                            std::span<double>(lower).subspan(1));
    }
    cur[0] = std::max(d[0], prev[0]);
    for (std::size_t j = 1; j < n; ++j) {
      cur[j] = std::max(d[j], std::min(lower[j], cur[j - 1]));
    }
  }
  return cur[n - 1];
}

double discrete_frechet(const Trajectory& p, const Trajectory& q) {
  return discrete_frechet(p.points(), q.points());
}

double brute_force_frechet(std::span<const Point2> p, std::span<const Point2> q) {
  if (p.empty() || q.empty()) throw std::invalid_argument("empty chain");
  if (p.size() + q.size() > kBruteForceFrechetLimit) {
    throw std::invalid_argument("oracle size limit");
  }
  const std::size_t m = p.size();
  const std::size_t mp = q.size();
  double best = std::numeric_limits<double>::infinity();

  // Depth-first walk over couplings; each step advances exactly one index.
  std::function<void(std::size_t, std::size_t, double)> walk =
      [&](std::size_t k, std::size_t l, double worst) {
        worst = std::max(worst, std::hypot(p[k].x - q[l].x, p[k].y - q[l].y));
        if (k + 1 == m && l + 1 == mp) {
          best = std::min(best, worst);
          return;
        }
        if (k + 1 < m) walk(k + 1, l, worst);
        if (l + 1 < mp) walk(k, l + 1, worst);
      };
  walk(0, 0, 0.0);
  return best;
}

double brute_force_frechet(const Trajectory& p, const Trajectory& q) {
  return brute_force_frechet(p.points(), q.points());
}

double brute_force_frechet_diagonal(std::span<const Point2> p, std::span<const Point2> q) {
  if (p.empty() || q.empty()) throw std::invalid_argument("empty chain");
  if (p.size() + q.size() > kBruteForceFrechetLimit) {
    throw std::invalid_argument("oracle size limit");
  }
  const std::size_t m = p.size();
  const std::size_t mp = q.size();
  double best = std::numeric_limits<double>::infinity();

  std::function<void(std::size_t, std::size_t, double)> walk =
      [&](std::size_t k, std::size_t l, double worst) {
        worst = std::max(worst, std::hypot(p[k].x - q[l].x, p[k].y - q[l].y));
        if (k + 1 == m && l + 1 == mp) {
          best = std::min(best, worst);
          return;
        }
        if (k + 1 < m) walk(k + 1, l, worst);
        if (l + 1 < mp) walk(k, l + 1, worst);
        if (k + 1 < m && l + 1 < mp) walk(k + 1, l + 1, worst);
      };
  walk(0, 0, 0.0);
  return best;
}

}  // namespace skd
