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

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "json.hpp"
#include "skd/dynamics.hpp"
#include "skd/planner.hpp"
#include "skd/pomdp.hpp"
#include "skd/scenario.hpp"

namespace skd {

/// One closed-loop run: pedestrian positions and car centres per step.
struct EpisodeLog {
  Trajectory trajectory;
  Trajectory car_trace;  // clipped to the world frame
  bool collided = false;
  bool reached_goal = false;
  int steps = 0;
  std::uint64_t seed = 0;
  double wall_seconds = 0.0;
};

struct TrajgenConfig {
  PlannerConfig planner{.budget = 3000};  // kamikaze search
  // Safe-crossing search; new nodes are scored by the straight-walk estimate.
  PlannerConfig safe_planner{.budget = 1000, .rollout_depth = 0};
  RewardWeights weights;
  int safe_retry_budget = 10;
  int kamikaze_attempt_factor = 20;  // attempts allowed per requested episode
};

class NoSafeTrajectory : public std::runtime_error {
 public:
  NoSafeTrajectory() : std::runtime_error("no safe trajectory found") {}
};

/// Pedestrian crosses towards goal_y as fast as it can without hitting the
/// car; retries with fresh sub-seeds until an episode reaches the goal.
EpisodeLog generate_safe(const ScenarioConfig& scenario, const BasicControllerParams& car,
                         const TrajgenConfig& cfg, std::uint64_t seed);

struct KamikazeBatch {
  std::vector<EpisodeLog> accepted;
  std::vector<double> distances;  // Frechet distance of each accepted episode to phi
  int requested = 0;
  int attempts = 0;
  double max_episode_seconds = 0.0;
  double frechet_seconds = 0.0;

  bool shortfall() const { return static_cast<int>(accepted.size()) < requested; }
};

/// Runs kamikaze episodes against phi until n collide within d_max of it
/// (Frechet), or the attempt budget runs out.
KamikazeBatch generate_kamikaze(const Trajectory& phi, const ScenarioConfig& scenario,
                                const BasicControllerParams& car, const TrajgenConfig& cfg,
                                double d_max, int n, std::uint64_t seed);

/// {collided, reached_goal, steps, seed}
nlohmann::json episode_sidecar(const EpisodeLog& log);

}  // namespace skd
