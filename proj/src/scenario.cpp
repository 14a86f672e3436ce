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

#include "skd/scenario.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace skd {

Point2 WorldFrame::clamp(Point2 p) const {
  return {std::clamp(p.x, x_min, x_max), std::clamp(p.y, y_min, y_max)};
}

Trajectory::Trajectory(double dt, std::vector<Point2> points)
    : dt_(dt), points_(std::move(points)) {
  if (!(dt_ > 0.0)) throw std::invalid_argument("trajectory dt must be positive");
  if (points_.empty()) throw std::invalid_argument("trajectory must have at least one point");
}

bool Trajectory::inside(const WorldFrame& world) const {
  return std::all_of(points_.begin(), points_.end(),
                     [&](const Point2& p) { return world.contains(p); });
}

ScenarioConfig default_scenario() { return ScenarioConfig{}; }

std::optional<std::string> validate(const ScenarioConfig& c) {
  const WorldFrame& w = c.world;
  if (!(w.x_min < w.x_max)) return "world x_min must be below x_max";
  if (!(w.y_min < w.y_max)) return "world y_min must be below y_max";
  if (!(c.dt > 0.0)) return "dt must be positive";
  if (!(c.v_max > 0.0)) return "v_max must be positive";
  if (!(c.a_brake > 0.0)) return "a_brake must be positive";
  if (!(c.ped_speed > 0.0)) return "ped_speed must be positive";
  if (!(c.car_length > 0.0) || !(c.car_width > 0.0)) return "car_geom must be positive";
  if (!(c.ped_radius >= 0.0)) return "ped_radius must be non-negative";
  if (!(c.lane_width > 0.0)) return "lane_width must be positive";
  if (c.car_heading != 1 && c.car_heading != -1) return "car_heading must be +1 or -1";
  if (!(c.car_start_jitter >= 0.0)) return "car_start_jitter must be non-negative";
  if (!(c.obs_noise_sigma >= 0.0)) return "obs_noise_sigma must be non-negative";
  if (!(c.vel_noise_frac >= 0.0 && c.vel_noise_frac < 1.0)) return "vel_noise_frac must lie in [0, 1)";
  if (!(c.acc_noise_frac >= 0.0 && c.acc_noise_frac < 1.0)) return "acc_noise_frac must lie in [0, 1)";
  if (c.horizon_steps < 1) return "horizon_steps must be at least 1";
  if (!w.contains(c.ped_start)) return "ped_start outside world frame";
  if (!(c.ped_goal_y > c.ped_start.y)) return "ped_goal_y must lie beyond ped_start";
  if (!(c.ped_goal_y <= w.y_max)) return "ped_goal_y outside world frame";
  if (!(c.car_start.y >= w.y_min && c.car_start.y <= w.y_max)) return "car_start outside world frame";

  // The straight crossing at x = ped_start.x must sweep through the lane the
  // car occupies, ahead of the car.
  const double car_lo = c.car_start.y - 0.5 * c.car_width;
  const double car_hi = c.car_start.y + 0.5 * c.car_width;
  if (car_lo < c.lane_center_y - 0.5 * c.lane_width - 1e-9 ||
      car_hi > c.lane_center_y + 0.5 * c.lane_width + 1e-9) {
    return "car_start outside lane";
  }
  if (!(c.ped_start.y < car_lo - c.ped_radius && c.ped_goal_y > car_hi + c.ped_radius)) {
    return "pedestrian crossing does not intersect the car lane";
  }
  const double ahead = c.car_heading * (c.ped_start.x - c.car_start.x);
  if (!(ahead > 0.5 * c.car_length)) return "pedestrian crossing is not ahead of the car";
  return std::nullopt;
}

void require_valid(const ScenarioConfig& config) {
  if (auto err = validate(config)) throw std::invalid_argument(*err);
}

void to_json(nlohmann::json& j, const Point2& p) { j = nlohmann::json::array({p.x, p.y}); }

void from_json(const nlohmann::json& j, Point2& p) {
  if (!j.is_array() || j.size() != 2) throw std::invalid_argument("expected [x, y] pair");
  p.x = j.at(0).get<double>();
  p.y = j.at(1).get<double>();
}

void to_json(nlohmann::json& j, const ScenarioConfig& c) {
  j = nlohmann::json{
      {"x_min", c.world.x_min},
      {"x_max", c.world.x_max},
      {"y_min", c.world.y_min},
      {"y_max", c.world.y_max},
      {"lane_center_y", c.lane_center_y},
      {"lane_width", c.lane_width},
      {"car_length", c.car_length},
      {"car_width", c.car_width},
      {"ped_radius", c.ped_radius},
      {"dt", c.dt},
      {"v_max", c.v_max},
      {"a_brake", c.a_brake},
      {"ped_speed", c.ped_speed},
      {"car_heading", c.car_heading},
      {"car_start", c.car_start},
      {"car_start_jitter", c.car_start_jitter},
      {"ped_start", c.ped_start},
      {"ped_goal_y", c.ped_goal_y},
      {"obs_noise_sigma", c.obs_noise_sigma},
      {"vel_noise_frac", c.vel_noise_frac},
      {"acc_noise_frac", c.acc_noise_frac},
      {"horizon_steps", c.horizon_steps},
  };
}

namespace {

template <typename T>
void read_if(const nlohmann::json& j, const char* key, T& out) {
  if (auto it = j.find(key); it != j.end()) out = it->template get<T>();
}

}  // namespace

void from_json(const nlohmann::json& j, ScenarioConfig& c) {
  if (!j.is_object()) throw std::invalid_argument("scenario config must be an object");
  c = default_scenario();
  read_if(j, "x_min", c.world.x_min);
  read_if(j, "x_max", c.world.x_max);
  read_if(j, "y_min", c.world.y_min);
  read_if(j, "y_max", c.world.y_max);
  read_if(j, "lane_center_y", c.lane_center_y);
  read_if(j, "lane_width", c.lane_width);
  read_if(j, "car_length", c.car_length);
  read_if(j, "car_width", c.car_width);
  read_if(j, "ped_radius", c.ped_radius);
  read_if(j, "dt", c.dt);
  read_if(j, "v_max", c.v_max);
  read_if(j, "a_brake", c.a_brake);
  read_if(j, "ped_speed", c.ped_speed);
  read_if(j, "car_heading", c.car_heading);
  read_if(j, "car_start", c.car_start);
  read_if(j, "car_start_jitter", c.car_start_jitter);
  read_if(j, "ped_start", c.ped_start);
  read_if(j, "ped_goal_y", c.ped_goal_y);
  read_if(j, "obs_noise_sigma", c.obs_noise_sigma);
  read_if(j, "vel_noise_frac", c.vel_noise_frac);
  read_if(j, "acc_noise_frac", c.acc_noise_frac);
  read_if(j, "horizon_steps", c.horizon_steps);
}

}  // namespace skd
