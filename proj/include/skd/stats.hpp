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
#include <vector>

#include "skd/scenario.hpp"

namespace skd {

/// One Frechet distance per (safe, kamikaze) pair.
struct DistanceSample {
  std::vector<double> values;

  std::size_t n() const { return values.size(); }
};

struct SkdReport {
  double skd = 0.0;       // mean distance
  double variance = 0.0;  // sample variance, n-1 divisor; 0 when n == 1
  double ci95_half_width = 0.0;
  std::size_t n = 0;
  bool variance_defined = false;  // false when n == 1

  friend bool operator==(const SkdReport&, const SkdReport&) = default;
};

/// All pairwise distances d(phi, psi) for psi in the kamikaze set of phi.
DistanceSample pair_distances(const TrajectorySets& sets);

SkdReport summarize(const DistanceSample& sample);

/// Mean Frechet distance over every (phi, psi) pair, plus spread statistics.
/// Throws std::invalid_argument("no kamikaze trajectories") when empty.
SkdReport skd(const TrajectorySets& sets);

/// (Var + 2 eta delta) / (Var + delta^2), unclamped. Requires 0 < eta < delta.
double exceedance_bound(double delta, double variance, double eta);

/// 2 (eta / delta^2 + eta / delta); valid whenever Var <= 2 eta.
double corollary_bound(double delta, double eta);

/// Fraction of sampled distances <= eta.
double empirical_exceedance(const DistanceSample& sample, double eta);

/// 3-sigma binomial slack 3 sqrt(p (1 - p) / n) for comparing an empirical
/// fraction against probability p.
double binomial_slack(double p, std::size_t n);

/// Spearman rank correlation with average ranks for ties.
double spearman(std::span<const double> x, std::span<const double> y);

/// Welch two-sample statistic (mean_a - mean_b) / sqrt(var_a/n_a + var_b/n_b).
double welch_statistic(const DistanceSample& a, const DistanceSample& b);

}  // namespace skd
