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

#include <array>
#include <cstddef>

#include "skd/dynamics.hpp"
#include "skd/pomdp.hpp"

namespace skd {

struct PlannerConfig {
  int budget = 300;             // simulations per decision
  int horizon = 12;             // planning depth in steps
  double exploration = 100.0;   // UCB constant, in reward units
  double obs_bin_width = 2.0;   // meters per observation branch
  std::size_t particles = 200;
  int rollout_depth = -1;       // random steps below a new node; < 0 runs to the horizon
};

struct PlanResult {
  AdvAction action = AdvAction::Stay;
  std::array<double, kNumActions> q{};  // mean discounted return per root action
  std::array<int, kNumActions> visits{};
};

/// Particle-rooted Monte-Carlo tree search over action/observation
/// histories: UCB1 selection, one node expanded per simulation, uniform
/// random rollouts below it, scored by the model's leaf value where cut off. Returns the root action with the best mean
/// return. Deterministic for a fixed rng state.
PlanResult plan(const Belief& belief, const PomdpModel& model, const PlannerConfig& cfg, Rng& rng);

inline AdvAction plan_action(const Belief& belief, const PomdpModel& model,
                             const PlannerConfig& cfg, Rng& rng) {
  return plan(belief, model, cfg, rng).action;
}

}  // namespace skd
