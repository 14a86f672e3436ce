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

#include <cmath>
#include <stdexcept>
#include <vector>

#include "skd/frechet.hpp"
#include "skd/trajgen.hpp"

namespace skd {
namespace {

TrajgenConfig small_config() {
  TrajgenConfig cfg;
  cfg.planner.budget = 400;
  cfg.planner.particles = 100;
  return cfg;
}

// Rebuilds the car state from a trace point; the car's y never changes and
// the trace is only clipped once it has left the world.
bool any_contact_before_last(const EpisodeLog& log, const ScenarioConfig& sc) {
  for (std::size_t i = 0; i + 1 < log.trajectory.size(); ++i) {
    const Point2 c = log.car_trace.points()[i];
    const Point2 p = log.trajectory.points()[i];
    if (check_collision({c.x, c.y, 0.0}, {p.x, p.y, sc.ped_goal_y}, sc)) return true;
  }
  return false;
}

std::vector<Point2> pts(const Trajectory& t) { return {t.points().begin(), t.points().end()}; }

bool last_step_contact(const EpisodeLog& log, const ScenarioConfig& sc) {
  const Point2 c = log.car_trace.points().back();
  const Point2 p = log.trajectory.points().back();
  return check_collision({c.x, c.y, 0.0}, {p.x, p.y, sc.ped_goal_y}, sc);
}

TEST(GenerateSafe, CrossesInFrontOfACautiousCar) {
  const ScenarioConfig sc = default_scenario();
  const EpisodeLog log = generate_safe(sc, make_controller(1.15, sc), small_config(), 11);
  EXPECT_FALSE(log.collided);
  EXPECT_TRUE(log.reached_goal);
  EXPECT_LE(log.steps, sc.horizon_steps);
  EXPECT_GE(log.trajectory.points().back().y, sc.ped_goal_y);
  EXPECT_FALSE(any_contact_before_last(log, sc));
  EXPECT_FALSE(last_step_contact(log, sc));
  EXPECT_EQ(log.trajectory.size(), log.car_trace.size());
  EXPECT_EQ(log.trajectory.dt(), sc.dt);
  EXPECT_EQ(log.car_trace.dt(), sc.dt);
  EXPECT_EQ(static_cast<int>(log.trajectory.size()), log.steps + 1);
}

TEST(GenerateSafe, WalksStraightWithoutACar) {
  ScenarioConfig sc = default_scenario();
  sc.car_start.x = 1000.0;
  const EpisodeLog log = generate_safe(sc, make_controller(1.0, sc), small_config(), 5);
  const int expected = static_cast<int>(std::ceil((sc.ped_goal_y - sc.ped_start.y) / (sc.ped_speed * sc.dt)));
  EXPECT_EQ(log.steps, expected);
  for (const Point2& p : log.trajectory.points()) EXPECT_EQ(p.x, sc.ped_start.x);
}

TEST(GenerateSafe, SameSeedSameEpisode) {
  const ScenarioConfig sc = default_scenario();
  const auto car = make_controller(1.0, sc);
  const EpisodeLog a = generate_safe(sc, car, small_config(), 21);
  const EpisodeLog b = generate_safe(sc, car, small_config(), 21);
  EXPECT_EQ(pts(a.trajectory), pts(b.trajectory));
  EXPECT_EQ(pts(a.car_trace), pts(b.car_trace));
  EXPECT_EQ(a.steps, b.steps);
  EXPECT_EQ(a.seed, b.seed);
}

TEST(GenerateSafe, GivesUpWhenTheGoalIsOutOfReach) {
  ScenarioConfig sc = default_scenario();
  sc.horizon_steps = 3;
  TrajgenConfig cfg = small_config();
  cfg.safe_retry_budget = 2;
  EXPECT_THROW(generate_safe(sc, make_controller(1.0, sc), cfg, 1), NoSafeTrajectory);
}

TEST(GenerateSafe, RejectsInvalidScenario) {
  ScenarioConfig sc = default_scenario();
  sc.dt = 0.0;
  EXPECT_THROW(generate_safe(sc, {1.0, 9.92}, small_config(), 1), std::invalid_argument);
}

class KamikazeBatchTest : public ::testing::Test {
 protected:
  void SetUp() override {
    sc = default_scenario();
    phi = generate_safe(sc, make_controller(2.0, sc), small_config(), 3).trajectory;
  }
  ScenarioConfig sc;
  Trajectory phi{0.3, {{0, 0}}};
};

TEST_F(KamikazeBatchTest, AggressiveCarIsEasyToHit) {
  const KamikazeBatch b = generate_kamikaze(phi, sc, make_controller(0.5, sc), small_config(), 8.0, 10, 4);
  EXPECT_EQ(b.requested, 10);
  EXPECT_FALSE(b.shortfall());
  EXPECT_LE(b.attempts, 20);
  ASSERT_EQ(b.accepted.size(), b.distances.size());
  for (std::size_t i = 0; i < b.accepted.size(); ++i) {
    const EpisodeLog& log = b.accepted[i];
    EXPECT_TRUE(log.collided);
    EXPECT_FALSE(log.reached_goal);
    EXPECT_TRUE(last_step_contact(log, sc));
    EXPECT_FALSE(any_contact_before_last(log, sc));
    EXPECT_LE(b.distances[i], 8.0);
    EXPECT_EQ(b.distances[i], discrete_frechet(log.trajectory, phi));
    EXPECT_EQ(log.trajectory.dt(), sc.dt);
  }
}

TEST_F(KamikazeBatchTest, ZeroToleranceAcceptsNothing) {
  TrajgenConfig cfg = small_config();
  cfg.kamikaze_attempt_factor = 3;
  const KamikazeBatch b = generate_kamikaze(phi, sc, make_controller(0.5, sc), cfg, 0.0, 2, 4);
  EXPECT_TRUE(b.shortfall());
  EXPECT_TRUE(b.accepted.empty());
  EXPECT_EQ(b.attempts, 6);
}

TEST_F(KamikazeBatchTest, Deterministic) {
  const auto car = make_controller(0.875, sc);
  const KamikazeBatch a = generate_kamikaze(phi, sc, car, small_config(), 8.0, 3, 17);
  const KamikazeBatch b = generate_kamikaze(phi, sc, car, small_config(), 8.0, 3, 17);
  ASSERT_EQ(a.accepted.size(), b.accepted.size());
  EXPECT_EQ(a.attempts, b.attempts);
  EXPECT_EQ(a.distances, b.distances);
  for (std::size_t i = 0; i < a.accepted.size(); ++i) {
    EXPECT_EQ(pts(a.accepted[i].trajectory), pts(b.accepted[i].trajectory));
  }
}

TEST_F(KamikazeBatchTest, RejectsBadArguments) {
  const auto car = make_controller(1.0, sc);
  EXPECT_THROW(generate_kamikaze(phi, sc, car, small_config(), 5.0, 0, 1), std::invalid_argument);
  EXPECT_THROW(generate_kamikaze(phi, sc, car, small_config(), -1.0, 1, 1), std::invalid_argument);
}

TEST(EpisodeSidecar, Fields) {
  EpisodeLog log{Trajectory(0.3, {{0, 0}}), Trajectory(0.3, {{5, 0}})};
  log.collided = true;
  log.steps = 7;
  log.seed = 99;
  const auto j = episode_sidecar(log);
  EXPECT_EQ(j.at("collided"), true);
  EXPECT_EQ(j.at("reached_goal"), false);
  EXPECT_EQ(j.at("steps"), 7);
  EXPECT_EQ(j.at("seed"), 99);
}

}  // namespace
}  // namespace skd
