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

#include "skd/scenario.hpp"

namespace skd {

/// Discrete Frechet distance between two polygonal chains, by dynamic
/// programming over the m x m' coupling grid. A coupling step advances
/// either index or both (diagonal).
/// Throws std::invalid_argument("empty chain") on an empty input.
double discrete_frechet(std::span<const Point2> p, std::span<const Point2> q);
double discrete_frechet(const Trajectory& p, const Trajectory& q);

inline constexpr std::size_t kBruteForceFrechetLimit = 14;

/// Reference value by enumerating every monotone coupling built only from
/// single-index steps. Exponential; requires m + m' <= 14.
double brute_force_frechet(std::span<const Point2> p, std::span<const Point2> q);
double brute_force_frechet(const Trajectory& p, const Trajectory& q);

/// Same enumeration with the diagonal step admitted as well; the exact
/// reference for discrete_frechet. Requires m + m' <= 14.
double brute_force_frechet_diagonal(std::span<const Point2> p, std::span<const Point2> q);

}  // namespace skd
