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

#include "skd/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace skd {

std::string_view action_name(AdvAction a) {
  switch (a) {
    case AdvAction::North: return "North";
    case AdvAction::South: return "South";
    case AdvAction::East: return "East";
    case AdvAction::NorthEast: return "NorthEast";
    case AdvAction::SouthEast: return "SouthEast";
    case AdvAction::Stay: return "Stay";
  }
  return "?";
}

double kappa(double v_max, double a_brake) {
  if (!(v_max > 0.0) || !(a_brake > 0.0)) {
    throw std::invalid_argument("kappa requires positive v_max and a_brake");
  }
  return v_max * v_max / (2.0 * a_brake);
}

BasicControllerParams make_controller(double multiplier, const ScenarioConfig& cfg) {
  if (!(multiplier > 0.0)) throw std::invalid_argument("controller multiplier must be positive");
  return {multiplier, kappa(cfg.v_max, cfg.a_brake)};
}

double longitudinal_gap(const CarState& car, const AdvState& ped, const ScenarioConfig& cfg) {
  const double front = car.x + cfg.car_heading * 0.5 * cfg.car_length;
  return cfg.car_heading * (ped.x - front);
}

bool braking_triggered(double gap, double threshold, const ScenarioConfig& cfg) {
  return gap <= threshold && gap >= -cfg.car_length;
}

double controller_decide(const CarState& car, const AdvState& ped,
                         const BasicControllerParams& params, const ScenarioConfig& cfg,
                         double acc_noise_frac, Rng& rng) {
  const double gap = longitudinal_gap(car, ped, cfg);
  if (!braking_triggered(gap, params.multiplier * params.kappa, cfg)) return 0.0;
  double acc = -cfg.a_brake;
  if (acc_noise_frac > 0.0) {
    const double half = acc_noise_frac * cfg.a_brake;
    acc += std::uniform_real_distribution<double>(-half, half)(rng);
  }
  return acc;
}

CarState step_car(const CarState& car, double acc, const ScenarioConfig& cfg,
                  double vel_noise_frac, Rng& rng) {
  double v = car.v + cfg.dt * acc;
  if (vel_noise_frac > 0.0 && car.v > 0.0) {
    const double half = vel_noise_frac * car.v;
    v += std::uniform_real_distribution<double>(-half, half)(rng);
  }
  v = std::max(0.0, v);
  return {car.x + cfg.car_heading * v * cfg.dt, car.y, v};
}

AdvState step_pedestrian(const AdvState& ped, AdvAction action, const ScenarioConfig& cfg) {
  constexpr double kDiag = 0.70710678118654752440;
  double ux = 0.0;
  double uy = 0.0;
  switch (action) {
    case AdvAction::North: uy = 1.0; break;
    case AdvAction::South: uy = -1.0; break;
    case AdvAction::East: ux = 1.0; break;
    case AdvAction::NorthEast: ux = kDiag; uy = kDiag; break;
    case AdvAction::SouthEast: ux = kDiag; uy = -kDiag; break;
    case AdvAction::Stay: return ped;
    default: throw std::invalid_argument("unknown pedestrian action");
  }
  const double step = cfg.ped_speed * cfg.dt;
  const Point2 p = cfg.world.clamp({ped.x + step * ux, ped.y + step * uy});
  return {p.x, p.y, ped.goal_y};
}

double observe(const CarState& car, const AdvState& ped, double sigma, Rng& rng) {
  const double d = distance(car.position(), ped.position());
  if (sigma <= 0.0) return d;
  return d + std::normal_distribution<double>(0.0, sigma)(rng);
}

bool check_collision(const CarState& car, const AdvState& ped, const ScenarioConfig& cfg) {
  const double dx = std::max(std::abs(ped.x - car.x) - 0.5 * cfg.car_length, 0.0);
  const double dy = std::max(std::abs(ped.y - car.y) - 0.5 * cfg.car_width, 0.0);
  return dx * dx + dy * dy <= cfg.ped_radius * cfg.ped_radius;
}

bool collision_still_possible(const CarState& car, const AdvState& ped,
                              const ScenarioConfig& cfg) {
  if (cfg.car_heading > 0) return true;
  const double rear = car.x + 0.5 * cfg.car_length;
  return rear >= ped.x - cfg.ped_radius;
}

}  // namespace skd
