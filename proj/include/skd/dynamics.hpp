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
#include <cstdint>
#include <random>
#include <string_view>

#include "skd/scenario.hpp"

namespace skd {

using Rng = std::mt19937_64;

enum class AdvAction : std::uint8_t { North, South, East, NorthEast, SouthEast, Stay };

inline constexpr std::array<AdvAction, 6> kAllActions{
    AdvAction::North,     AdvAction::South,     AdvAction::East,
    AdvAction::NorthEast, AdvAction::SouthEast, AdvAction::Stay};
inline constexpr std::size_t kNumActions = kAllActions.size();

std::string_view action_name(AdvAction a);

/// Deterministic stopping distance from v_max under constant deceleration.
double kappa(double v_max, double a_brake);

/// Braking policy "full brake once the along-lane gap is within C * kappa".
struct BasicControllerParams {
  double multiplier = 1.0;
  double kappa = 0.0;
};

BasicControllerParams make_controller(double multiplier, const ScenarioConfig& cfg);

struct CarNoiseModel {
  double vel_noise_frac = 0.05;
  double acc_noise_frac = 0.1;

  static CarNoiseModel from(const ScenarioConfig& cfg) {
    return {cfg.vel_noise_frac, cfg.acc_noise_frac};
  }
  static CarNoiseModel none() { return {0.0, 0.0}; }
};

/// Signed along-heading distance from the car's front bumper to the
/// pedestrian's x. Negative once the bumper has passed the pedestrian.
double longitudinal_gap(const CarState& car, const AdvState& ped, const ScenarioConfig& cfg);

/// The basic controller's trigger: gap within the threshold while the
/// pedestrian is not yet behind the rear bumper.
bool braking_triggered(double gap, double threshold, const ScenarioConfig& cfg);

/// Commanded acceleration. Braking returns -a_brake plus a uniform jitter of
/// +/- acc_noise_frac * a_brake, resampled on each call.
double controller_decide(const CarState& car, const AdvState& ped,
                         const BasicControllerParams& params, const ScenarioConfig& cfg,
                         double acc_noise_frac, Rng& rng);

/// v' = max(0, v + U[-f v, f v] + dt * acc); the car then covers v' * dt
/// along its heading. y is unchanged.
CarState step_car(const CarState& car, double acc, const ScenarioConfig& cfg,
                  double vel_noise_frac, Rng& rng);

/// Deterministic pedestrian move of ped_speed * dt along the action's unit
/// direction, clamped to the world frame.
AdvState step_pedestrian(const AdvState& ped, AdvAction action, const ScenarioConfig& cfg);

/// Centre-to-centre distance plus N(0, sigma^2) noise.
double observe(const CarState& car, const AdvState& ped, double sigma, Rng& rng);

/// Disc/rectangle contact test; touching counts as a collision.
bool check_collision(const CarState& car, const AdvState& ped, const ScenarioConfig& cfg);

inline CarState initial_car(const ScenarioConfig& cfg, double jitter_offset) {
  return {cfg.car_start.x - cfg.car_heading * jitter_offset, cfg.car_start.y, cfg.v_max};
}

inline AdvState initial_pedestrian(const ScenarioConfig& cfg) {
  return {cfg.ped_start.x, cfg.ped_start.y, cfg.ped_goal_y};
}

/// False once contact can no longer happen: the car (heading -1) has fully
/// passed the pedestrian, who has no westward move to follow it.
bool collision_still_possible(const CarState& car, const AdvState& ped, const ScenarioConfig& cfg);

}  // namespace skd
