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

#include "skd/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "skd/frechet.hpp"

namespace skd {

DistanceSample pair_distances(const TrajectorySets& sets) {
  DistanceSample out;
  for (const auto& [index, psis] : sets.kamikaze) {
    if (index >= sets.safe.size()) {
      throw std::invalid_argument("kamikaze set keyed to a missing safe trajectory");
    }
    for (const Trajectory& psi : psis) {
      out.values.push_back(discrete_frechet(sets.safe[index], psi));
    }
  }
  return out;
}

SkdReport summarize(const DistanceSample& sample) {
  if (sample.values.empty()) throw std::invalid_argument("no kamikaze trajectories");
  const double n = static_cast<double>(sample.n());
  const double mean = std::accumulate(sample.values.begin(), sample.values.end(), 0.0) / n;
  SkdReport r;
  r.skd = mean;
  r.n = sample.n();
  r.variance_defined = sample.n() > 1;
  if (r.variance_defined) {
    double ss = 0.0;
    for (double v : sample.values) ss += (v - mean) * (v - mean);
    r.variance = ss / (n - 1.0);
    r.ci95_half_width = 1.96 * std::sqrt(r.variance / n);
  }
  return r;
}

SkdReport skd(const TrajectorySets& sets) { return summarize(pair_distances(sets)); }

double exceedance_bound(double delta, double variance, double eta) {
  if (!(delta > 0.0)) throw std::invalid_argument("delta must be positive");
  if (!(variance >= 0.0)) throw std::invalid_argument("variance must be non-negative");
  if (!(eta > 0.0 && eta < delta)) throw std::invalid_argument("eta out of bound range");
  return (variance + 2.0 * eta * delta) / (variance + delta * delta);
}

double corollary_bound(double delta, double eta) {
  if (!(delta > 0.0)) throw std::invalid_argument("delta must be positive");
  if (!(eta > 0.0 && eta < delta)) throw std::invalid_argument("eta out of bound range");
  return 2.0 * (eta / (delta * delta) + eta / delta);
}

double empirical_exceedance(const DistanceSample& sample, double eta) {
  if (sample.values.empty()) throw std::invalid_argument("empty distance sample");
  const auto hits = std::count_if(sample.values.begin(), sample.values.end(),
                                  [eta](double v) { return v <= eta; });
  return static_cast<double>(hits) / static_cast<double>(sample.n());
}

double binomial_slack(double p, std::size_t n) {
  const double q = std::clamp(p, 0.0, 1.0);
  return 3.0 * std::sqrt(q * (1.0 - q) / static_cast<double>(n));
}

namespace {

std::vector<double> average_ranks(std::span<const double> v) {
  std::vector<std::size_t> order(v.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
  std::vector<double> ranks(v.size());
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j + 1 < order.size() && v[order[j + 1]] == v[order[i]]) ++j;
    const double r = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = r;
    i = j + 1;
  }
  return ranks;
}

}  // namespace

double spearman(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw std::invalid_argument("spearman needs two equal-length samples of size >= 2");
  }
  const std::vector<double> rx = average_ranks(x);
  const std::vector<double> ry = average_ranks(y);
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(rx.begin(), rx.end(), 0.0) / n;
  const double my = std::accumulate(ry.begin(), ry.end(), 0.0) / n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < rx.size(); ++i) {
    sxy += (rx[i] - mx) * (ry[i] - my);
    sxx += (rx[i] - mx) * (rx[i] - mx);
    syy += (ry[i] - my) * (ry[i] - my);
  }
  if (sxx == 0.0 || syy == 0.0) return 0.0;
  return sxy / std::sqrt(sxx * syy);
}

double welch_statistic(const DistanceSample& a, const DistanceSample& b) {
  const SkdReport ra = summarize(a);
  const SkdReport rb = summarize(b);
  const double se = std::sqrt(ra.variance / static_cast<double>(ra.n) +
                              rb.variance / static_cast<double>(rb.n));
  if (se == 0.0) throw std::invalid_argument("welch statistic undefined for constant samples");
  return (ra.skd - rb.skd) / se;
}

}  // namespace skd
