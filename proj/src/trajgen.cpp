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

#include "skd/trajgen.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <utility>

#include "skd/frechet.hpp"
#include "skd/seeding.hpp"

namespace skd {
namespace {

enum class Goal { Safe, Kamikaze };

PomdpModel make_model(const ScenarioConfig& scenario, const BasicControllerParams& car,
                      const TrajgenConfig& cfg, Goal goal, const Trajectory* phi) {
  PomdpModel::Settings s;
  s.scenario = scenario;
  s.kappa = car.kappa;
  s.vel_noise_frac = scenario.vel_noise_frac;
  s.acc_noise_frac = 0.0;  // the adversary models velocity noise only
  s.obs_sigma = scenario.obs_noise_sigma;
  s.terminal_on_goal = goal == Goal::Safe;

  const RewardWeights w = cfg.weights;
  if (goal == Goal::Safe) {
    // Optimistic: walk straight to the far edge, ignoring the car.
    const double stride = scenario.ped_speed * scenario.dt;
    const double gamma = s.gamma;
    auto leaf = [w, stride, gamma](const JointState& st) {
      const int k = std::max(1, static_cast<int>(std::ceil((st.ped.goal_y - st.ped.y) / stride)));
      const double g = std::pow(gamma, k - 1);
      return g * w.goal - w.step * (1.0 - g) / (1.0 - gamma);
    };
    return PomdpModel(s, [w](const JointState& next, AdvAction) {
      return safe_reward(next, next.collided, next.reached_goal, w);
    }, leaf);
  }
  return PomdpModel(s, [w, phi](const JointState& next, AdvAction) {
    return kamikaze_reward(next, next.collided, *phi, next.t, w);
  });
}

// Widened copy used to recover from a collapsed particle filter.
PomdpModel inflated(const PomdpModel& model) {
  PomdpModel::Settings s = model.settings();
  s.vel_noise_frac = std::min(0.5, 3.0 * s.vel_noise_frac + 0.05);
  s.obs_sigma = 3.0 * s.obs_sigma + 1.0;
  return PomdpModel(
      s, [&model](const JointState& next, AdvAction a) { return model.reward(next, a); },
      model.leaf_value_fn());
}

EpisodeLog run_episode(const ScenarioConfig& cfg, const BasicControllerParams& car_params,
                       const PomdpModel& model, const PlannerConfig& planner, Goal goal,
                       std::uint64_t seed) {
  const auto start = std::chrono::steady_clock::now();
  Rng env_rng(derive_seed(seed, {1}));
  Rng plan_rng(derive_seed(seed, {2}));

  double jitter = 0.0;
  if (cfg.car_start_jitter > 0.0) {
    jitter = std::uniform_real_distribution<double>(0.0, cfg.car_start_jitter)(env_rng);
  }
  CarState car = initial_car(cfg, jitter);
  AdvState ped = initial_pedestrian(cfg);
  // The safe pedestrian plans against a point-estimate car model.
  const PolicyPrior prior = goal == Goal::Safe ? PolicyPrior::exact() : PolicyPrior{};
  Belief belief = initial_belief(cfg, car_params.multiplier, planner.particles, plan_rng, prior);

  std::vector<Point2> ped_points{ped.position()};
  std::vector<Point2> car_points{cfg.world.clamp(car.position())};
  bool collided = check_collision(car, ped, cfg);
  bool reached = false;
  int steps = 0;

  while (!collided && steps < cfg.horizon_steps) {
    const AdvAction a = plan_action(belief, model, planner, plan_rng);
    const double acc =
        controller_decide(car, ped, car_params, cfg, cfg.acc_noise_frac, env_rng);
    car = step_car(car, acc, cfg, cfg.vel_noise_frac, env_rng);
    ped = step_pedestrian(ped, a, cfg);
    ++steps;
    ped_points.push_back(ped.position());
    car_points.push_back(cfg.world.clamp(car.position()));

    collided = check_collision(car, ped, cfg);
    reached = !collided && ped.y >= ped.goal_y;
    if (collided || (goal == Goal::Safe && reached)) break;
    if (goal == Goal::Kamikaze && !collision_still_possible(car, ped, cfg)) break;

    const double o = observe(car, ped, cfg.obs_noise_sigma, env_rng);
    try {
      belief = update_belief(belief, a, o, model, plan_rng);
    } catch (const BeliefCollapse&) {
      belief = update_belief(belief, a, o, inflated(model), plan_rng);
    }
  }

  EpisodeLog log{Trajectory(cfg.dt, std::move(ped_points)),
                 Trajectory(cfg.dt, std::move(car_points)),
                 collided,
                 reached,
                 steps,
                 seed,
                 0.0};
  log.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return log;
}

}  // namespace

EpisodeLog generate_safe(const ScenarioConfig& scenario, const BasicControllerParams& car,
                         const TrajgenConfig& cfg, std::uint64_t seed) {
  require_valid(scenario);
  const PomdpModel model = make_model(scenario, car, cfg, Goal::Safe, nullptr);
  for (int attempt = 0; attempt < cfg.safe_retry_budget; ++attempt) {
    const std::uint64_t sub = attempt == 0 ? seed : derive_seed(seed, {0x5afeULL, std::uint64_t(attempt)});
    EpisodeLog log = run_episode(scenario, car, model, cfg.safe_planner, Goal::Safe, sub);
    if (!log.collided && log.reached_goal) return log;
  }
  throw NoSafeTrajectory();
}

KamikazeBatch generate_kamikaze(const Trajectory& phi, const ScenarioConfig& scenario,
                                const BasicControllerParams& car, const TrajgenConfig& cfg,
                                double d_max, int n, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("kamikaze count must be at least 1");
  if (!(d_max >= 0.0)) throw std::invalid_argument("d_max must be non-negative");
  require_valid(scenario);

  const PomdpModel model = make_model(scenario, car, cfg, Goal::Kamikaze, &phi);
  KamikazeBatch batch;
  batch.requested = n;
  const int budget = cfg.kamikaze_attempt_factor * n;
  while (static_cast<int>(batch.accepted.size()) < n && batch.attempts < budget) {
    const std::uint64_t sub = derive_seed(seed, {0xca3eULL, std::uint64_t(batch.attempts)});
    ++batch.attempts;
    EpisodeLog log = run_episode(scenario, car, model, cfg.planner, Goal::Kamikaze, sub);
    batch.max_episode_seconds = std::max(batch.max_episode_seconds, log.wall_seconds);
    if (!log.collided) continue;

    const auto t0 = std::chrono::steady_clock::now();
    const double d = discrete_frechet(log.trajectory, phi);
    batch.frechet_seconds +=
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (d <= d_max) {
      batch.accepted.push_back(std::move(log));
      batch.distances.push_back(d);
    }
  }
  return batch;
}

nlohmann::json episode_sidecar(const EpisodeLog& log) {
  return {{"collided", log.collided},
          {"reached_goal", log.reached_goal},
          {"steps", log.steps},
          {"seed", log.seed}};
}

}  // namespace skd
