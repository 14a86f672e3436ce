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

#include <cmath>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

namespace skd {

struct Point2 {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point2&, const Point2&) = default;
};

inline double distance(Point2 a, Point2 b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return std::sqrt(dx * dx + dy * dy);
}

/// Axis-aligned bounded region every position in a scenario lives in.
struct WorldFrame {
  double x_min = 0.0;
  double x_max = 60.0;
  double y_min = 0.0;
  double y_max = 20.0;

  bool contains(Point2 p) const {
    return p.x >= x_min && p.x <= x_max && p.y >= y_min && p.y <= y_max;
  }
  Point2 clamp(Point2 p) const;
  double diagonal() const { return std::hypot(x_max - x_min, y_max - y_min); }

  friend bool operator==(const WorldFrame&, const WorldFrame&) = default;
};

/// Uniformly time-sampled 2D polyline. Point i is the position at time i*dt.
class Trajectory {
 public:
  Trajectory(double dt, std::vector<Point2> points);

  double dt() const { return dt_; }
  std::size_t size() const { return points_.size(); }
  std::span<const Point2> points() const { return points_; }
  const Point2& operator[](std::size_t i) const { return points_[i]; }
  const Point2& front() const { return points_.front(); }
  const Point2& back() const { return points_.back(); }
  /// Point at index min(i, size()-1).
  const Point2& at_clamped(std::size_t i) const {
    return points_[i < points_.size() ? i : points_.size() - 1];
  }
  bool inside(const WorldFrame& world) const;

  friend bool operator==(const Trajectory&, const Trajectory&) = default;

 private:
  double dt_;
  std::vector<Point2> points_;
};

struct CarState {
  double x = 0.0;
  double y = 0.0;
  double v = 0.0;

  Point2 position() const { return {x, y}; }
};

struct AdvState {
  double x = 0.0;
  double y = 0.0;
  double goal_y = 0.0;

  Point2 position() const { return {x, y}; }
};

/// Scenario geometry and physical parameters, SI units throughout.
///
/// The car drives along the lane axis (parallel to x) in the direction given
/// by `car_heading` (+1 or -1). The pedestrian crosses the lane towards
/// increasing y, from `ped_start` to `ped_goal_y`.
struct ScenarioConfig {
  WorldFrame world;
  double lane_center_y = 10.0;
  double lane_width = 4.0;
  double car_length = 4.5;
  double car_width = 2.0;
  double ped_radius = 0.3;
  double dt = 0.3;
  double v_max = 25.0 / 3.0;
  double a_brake = 3.5;
  double ped_speed = 2.5;
  int car_heading = -1;
  Point2 car_start{46.25, 10.0};
  // Extra along-heading start distance drawn uniformly from [0, jitter]
  // per rollout; decorrelates the braking onset from the 2.5 m cruise step.
  double car_start_jitter = 2.5;
  Point2 ped_start{30.0, 6.0};
  double ped_goal_y = 14.0;
  double obs_noise_sigma = 1.0;
  double vel_noise_frac = 0.05;
  double acc_noise_frac = 0.1;
  int horizon_steps = 60;

  friend bool operator==(const ScenarioConfig&, const ScenarioConfig&) = default;
};

/// Safe trajectories and the kamikaze trajectories generated against each.
struct TrajectorySets {
  std::vector<Trajectory> safe;
  std::map<std::size_t, std::vector<Trajectory>> kamikaze;  // keyed by safe index
};

ScenarioConfig default_scenario();

/// nullopt when the config is valid, otherwise the first violated invariant.
std::optional<std::string> validate(const ScenarioConfig& config);

/// Throws std::invalid_argument carrying the message from validate().
void require_valid(const ScenarioConfig& config);

void to_json(nlohmann::json& j, const Point2& p);
void from_json(const nlohmann::json& j, Point2& p);
void to_json(nlohmann::json& j, const ScenarioConfig& config);
/// Missing keys keep their default_scenario() values.
void from_json(const nlohmann::json& j, ScenarioConfig& config);

}  // namespace skd
