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

#include <gtest/gtest.h>

#include <stdexcept>

#include "skd/scenario.hpp"

namespace skd {
namespace {

TEST(DefaultScenario, PhysicalConstants) {
  const ScenarioConfig c = default_scenario();
  EXPECT_NEAR(c.v_max, 8.333, 1e-3);
  EXPECT_EQ(c.a_brake, 3.5);
  EXPECT_EQ(c.dt, 0.3);
  EXPECT_EQ(c.ped_speed, 2.5);
  EXPECT_EQ(c.obs_noise_sigma, 1.0);
  EXPECT_EQ(c.vel_noise_frac, 0.05);
  EXPECT_EQ(c.acc_noise_frac, 0.1);
  EXPECT_EQ(c.horizon_steps, 60);
}

TEST(DefaultScenario, Geometry) {
  const ScenarioConfig c = default_scenario();
  EXPECT_EQ(c.car_length, 4.5);
  EXPECT_EQ(c.car_width, 2.0);
  EXPECT_EQ(c.ped_radius, 0.3);
  // Pedestrian 2 m outside the near lane edge, goal 2 m beyond the far edge.
  EXPECT_EQ(c.lane_center_y - 0.5 * c.lane_width - c.ped_start.y, 2.0);
  EXPECT_EQ(c.ped_goal_y - (c.lane_center_y + 0.5 * c.lane_width), 2.0);
  EXPECT_EQ(c.world.x_max - c.world.x_min, 60.0);
  EXPECT_EQ(c.world.y_max - c.world.y_min, 20.0);
}

TEST(Validate, DefaultIsValid) { EXPECT_EQ(validate(default_scenario()), std::nullopt); }

TEST(Validate, ZeroDt) {
  ScenarioConfig c = default_scenario();
  c.dt = 0.0;
  EXPECT_EQ(validate(c), "dt must be positive");
  EXPECT_THROW(require_valid(c), std::invalid_argument);
}

TEST(Validate, PedestrianOutsideWorld) {
  ScenarioConfig c = default_scenario();
  c.ped_start = {-1.0, 6.0};
  EXPECT_EQ(validate(c), "ped_start outside world frame");
}

TEST(Validate, CrossingMustIntersectLane) {
  ScenarioConfig c = default_scenario();
  c.ped_goal_y = 9.0;
  EXPECT_EQ(validate(c), "pedestrian crossing does not intersect the car lane");
}

TEST(Validate, CrossingMustBeAheadOfCar) {
  ScenarioConfig c = default_scenario();
  c.ped_start.x = c.car_start.x + 5.0;  // behind a car heading towards -x
  EXPECT_EQ(validate(c), "pedestrian crossing is not ahead of the car");
}

TEST(Validate, CarOutsideLane) {
  ScenarioConfig c = default_scenario();
  c.car_start.y = c.lane_center_y + 1.5;
  EXPECT_EQ(validate(c), "car_start outside lane");
}

TEST(Validate, NoiseFractionsBounded) {
  ScenarioConfig c = default_scenario();
  c.vel_noise_frac = 1.0;
  EXPECT_EQ(validate(c), "vel_noise_frac must lie in [0, 1)");
}

TEST(Trajectory, RejectsEmptyAndBadDt) {
  EXPECT_THROW(Trajectory(0.3, {}), std::invalid_argument);
  EXPECT_THROW(Trajectory(0.0, {{0, 0}}), std::invalid_argument);
  EXPECT_THROW(Trajectory(-1.0, {{0, 0}}), std::invalid_argument);
}

TEST(Trajectory, AccessorsAndContainment) {
  const Trajectory t(0.3, {{1, 1}, {2, 2}, {3, 3}});
  EXPECT_EQ(t.size(), 3u);
  EXPECT_EQ(t.front(), (Point2{1, 1}));
  EXPECT_EQ(t.back(), (Point2{3, 3}));
  EXPECT_EQ(t.at_clamped(10), (Point2{3, 3}));
  EXPECT_TRUE(t.inside(WorldFrame{}));
  EXPECT_FALSE(t.inside(WorldFrame{0, 2, 0, 2}));
}

TEST(WorldFrame, Clamp) {
  const WorldFrame w;
  EXPECT_EQ(w.clamp({-3, 25}), (Point2{0, 20}));
  EXPECT_EQ(w.clamp({5, 5}), (Point2{5, 5}));
}

TEST(ScenarioJson, RoundTrip) {
  ScenarioConfig c = default_scenario();
  c.car_start = {50.125, 10.0};
  c.vel_noise_frac = 0.1;
  c.world.x_max = 80.0;
  const nlohmann::json j = c;
  EXPECT_EQ(j.get<ScenarioConfig>(), c);
}

TEST(ScenarioJson, MissingKeysKeepDefaults) {
  const auto c = nlohmann::json::parse(R"({"dt": 0.25})").get<ScenarioConfig>();
  ScenarioConfig expected = default_scenario();
  expected.dt = 0.25;
  EXPECT_EQ(c, expected);
}

TEST(ScenarioJson, MalformedPointRejected) {
  EXPECT_ANY_THROW(nlohmann::json::parse(R"({"car_start": [1]})").get<ScenarioConfig>());
}

}  // namespace
}  // namespace skd
