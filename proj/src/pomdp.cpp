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

#include "skd/pomdp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <utility>

#include "skd/simd/kernels.hpp"

namespace skd {

double kamikaze_reward(const JointState& s, bool collided, const Trajectory& phi, int t,
                       const RewardWeights& w) {
  if (collided) return w.collision;
  const Point2 target = phi.at_clamped(static_cast<std::size_t>(std::max(t, 0)));
  return -w.deviation * distance(s.ped.position(), target) - w.step;
}

double safe_reward(const JointState&, bool collided, bool reached_goal, const RewardWeights& w) {
  if (reached_goal) return w.goal;
  if (collided) return -w.collision;
  return -w.step;
}

PomdpModel::PomdpModel(Settings settings, RewardFn reward, LeafValueFn leaf_value)
    : settings_(std::move(settings)), reward_(std::move(reward)), leaf_value_(std::move(leaf_value)) {
  if (!(settings_.gamma > 0.0 && settings_.gamma < 1.0)) {
    throw std::invalid_argument("discount must lie in (0, 1)");
  }
  if (!reward_) throw std::invalid_argument("reward function required");
}

JointState PomdpModel::transition(const JointState& s, AdvAction a, Rng& rng) const {
  const ScenarioConfig& cfg = settings_.scenario;
  JointState next = s;
  next.t = s.t + 1;

  const double threshold = s.policy.multiplier * settings_.kappa;
  const bool triggered = braking_triggered(longitudinal_gap(s.car, s.ped, cfg), threshold, cfg);
  next.trigger_steps = triggered ? s.trigger_steps + 1 : 0;
  double acc = 0.0;
  if (triggered && next.trigger_steps > s.policy.reaction_delay) {
    acc = -cfg.a_brake * s.policy.brake_scale;
    if (settings_.acc_noise_frac > 0.0) {
      const double half = settings_.acc_noise_frac * cfg.a_brake;
      acc += std::uniform_real_distribution<double>(-half, half)(rng);
    }
  }
  next.car = step_car(s.car, acc, cfg, settings_.vel_noise_frac, rng);
  next.ped = step_pedestrian(s.ped, a, cfg);
  next.collided = check_collision(next.car, next.ped, cfg);
  next.reached_goal = !next.collided && next.ped.y >= next.ped.goal_y;
  return next;
}

double PomdpModel::sample_observation(const JointState& next, Rng& rng) const {
  return observe(next.car, next.ped, settings_.obs_sigma, rng);
}

double PomdpModel::observation_log_likelihood(double o, const JointState& next) const {
  const double d = distance(next.car.position(), next.ped.position());
  const double sigma = settings_.obs_sigma;
  if (sigma <= 0.0) return o == d ? 0.0 : -std::numeric_limits<double>::infinity();
  const double z = (o - d) / sigma;
  return -0.5 * z * z;
}

Belief::Belief(std::vector<Particle> particles) : particles_(std::move(particles)) {
  if (particles_.empty()) throw std::invalid_argument("belief needs at least one particle");
  double total = 0.0;
  for (const Particle& p : particles_) {
    if (!(p.weight >= 0.0)) throw std::invalid_argument("negative particle weight");
    total += p.weight;
  }
  if (!(total > 0.0)) throw BeliefCollapse();
  cumulative_.resize(particles_.size());
  double run = 0.0;
  for (std::size_t i = 0; i < particles_.size(); ++i) {
    particles_[i].weight /= total;
    run += particles_[i].weight;
    cumulative_[i] = run;
  }
}

Belief Belief::uniform(std::vector<JointState> states) {
  std::vector<Particle> ps;
  ps.reserve(states.size());
  for (JointState& s : states) ps.push_back({std::move(s), 1.0});
  return Belief(std::move(ps));
}

double Belief::effective_sample_size() const {
  double sq = 0.0;
  for (const Particle& p : particles_) sq += p.weight * p.weight;
  return 1.0 / sq;
}

std::size_t Belief::sample_index(Rng& rng) const {
  const double u = std::uniform_real_distribution<double>(0.0, cumulative_.back())(rng);
  const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
  return std::min<std::size_t>(static_cast<std::size_t>(it - cumulative_.begin()),
                               particles_.size() - 1);
}

Belief update_belief(const Belief& b, AdvAction a, double o, const PomdpModel& model, Rng& rng) {
  const std::size_t n = b.size();
  if (n == 0) throw BeliefCollapse();

  std::vector<Particle> next(n);
  std::vector<double> d(n), loglik(n);
  for (std::size_t i = 0; i < n; ++i) {
    next[i].state = model.transition(b.particles()[i].state, a, rng);
    d[i] = distance(next[i].state.car.position(), next[i].state.ped.position());
  }

  const double sigma = model.settings().obs_sigma;
  if (sigma > 0.0) {
    simd::gaussian_log_kernel(d, o, 1.0 / sigma, loglik);
  } else {
    for (std::size_t i = 0; i < n; ++i) loglik[i] = model.observation_log_likelihood(o, next[i].state);
  }

  // Log-domain weights, shifted by the max so the best particle keeps 1.
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    const double w = b.particles()[i].weight;
    loglik[i] = w > 0.0 ? loglik[i] + std::log(w) : -std::numeric_limits<double>::infinity();
    best = std::max(best, loglik[i]);
  }
  if (!std::isfinite(best)) throw BeliefCollapse();
  for (std::size_t i = 0; i < n; ++i) next[i].weight = std::exp(loglik[i] - best);

  Belief updated(std::move(next));
  if (updated.effective_sample_size() >= 0.5 * static_cast<double>(n)) return updated;

  // Systematic resampling back to equal weights.
  std::vector<Particle> resampled;
  resampled.reserve(n);
  const double step = 1.0 / static_cast<double>(n);
  double u = std::uniform_real_distribution<double>(0.0, step)(rng);
  double cum = 0.0;
  std::size_t j = 0;
  const auto& src = updated.particles();
  for (std::size_t i = 0; i < n; ++i) {
    while (j + 1 < n && cum + src[j].weight < u) {
      cum += src[j].weight;
      ++j;
    }
    resampled.push_back({src[j].state, step});
    u += step;
  }
  return Belief(std::move(resampled));
}

Belief initial_belief(const ScenarioConfig& cfg, double multiplier, std::size_t count, Rng& rng,
                      const PolicyPrior& prior) {
  if (count == 0) throw std::invalid_argument("belief needs at least one particle");
  if (prior.max_reaction_delay < 0 || !(prior.brake_scale_lo <= prior.brake_scale_hi)) {
    throw std::invalid_argument("invalid policy prior");
  }
  std::uniform_real_distribution<double> jitter(0.0, cfg.car_start_jitter);
  std::uniform_int_distribution<int> delay(0, prior.max_reaction_delay);
  std::uniform_real_distribution<double> scale(prior.brake_scale_lo, prior.brake_scale_hi);
  std::vector<JointState> states;
  states.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    JointState s;
    s.ped = initial_pedestrian(cfg);
    s.car = initial_car(cfg, cfg.car_start_jitter > 0.0 ? jitter(rng) : 0.0);
    s.policy = {multiplier, delay(rng), scale(rng)};
    states.push_back(s);
  }
  return Belief::uniform(std::move(states));
}

}  // namespace skd
