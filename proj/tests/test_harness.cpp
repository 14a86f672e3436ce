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

#include <atomic>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "skd/harness.hpp"
#include "skd/ingest.hpp"

namespace skd {
namespace {

AssessmentConfig tiny_config() {
  AssessmentConfig c;
  c.c_grid = {0.5, 1.15};
  c.n_safe = 2;
  c.n_kamikaze_per_safe = 3;
  c.n_collision_sims = 20;
  c.trajgen.planner.budget = 200;
  c.trajgen.planner.particles = 60;
  c.trajgen.safe_planner.budget = 200;
  c.trajgen.safe_planner.particles = 60;
  return c;
}

std::filesystem::path scratch(const std::string& name) {
  const auto p = std::filesystem::temp_directory_path() / ("skd_harness_" + name);
  std::filesystem::remove_all(p);
  return p;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream f(p);
  std::stringstream s;
  s << f.rdbuf();
  return s.str();
}

TEST(AssessmentConfig, DefaultsMatchTheExperimentDesign) {
  const AssessmentConfig c;
  EXPECT_EQ(c.c_grid, (std::vector<double>{0.5, 0.625, 0.75, 0.875, 1.0, 1.05, 1.1, 1.125, 1.15}));
  EXPECT_EQ(c.n_safe, 5);
  EXPECT_EQ(c.n_kamikaze_per_safe, 100);
  EXPECT_EQ(c.n_collision_sims, 500);
  EXPECT_FALSE(validate(c).has_value());
}

TEST(AssessmentConfig, ValidationMessages) {
  auto bad = [](auto edit) {
    AssessmentConfig c;
    edit(c);
    return validate(c).value_or("");
  };
  EXPECT_EQ(bad([](auto& c) { c.c_grid.clear(); }), "c_grid must not be empty");
  EXPECT_EQ(bad([](auto& c) { c.n_safe = 0; }), "n_safe must be at least 1");
  EXPECT_EQ(bad([](auto& c) { c.n_kamikaze_per_safe = 0; }), "n_kamikaze_per_safe must be at least 1");
  EXPECT_EQ(bad([](auto& c) { c.n_collision_sims = 0; }), "n_collision_sims must be at least 1");
  EXPECT_EQ(bad([](auto& c) { c.eta_fractions = {0.5, 1.0}; }), "eta_fractions must lie in (0, 1)");
  EXPECT_EQ(bad([](auto& c) { c.worker_count = 0; }), "worker_count must be at least 1");
  EXPECT_EQ(bad([](auto& c) { c.trajgen.planner.budget = 2; }),
            "planner budget must cover every action");
  EXPECT_EQ(bad([](auto& c) { c.scenario.dt = -1; }), "dt must be positive");
  EXPECT_THROW(run_assessment([] {
                 AssessmentConfig c;
                 c.c_grid.clear();
                 return c;
               }()),
               std::invalid_argument);
}

TEST(AssessmentConfig, JsonRoundTrip) {
  AssessmentConfig c = tiny_config();
  c.master_seed = 77;
  c.safe_csv = "/data/walks.csv";
  c.safe_csv_alignment = {1.5, -2, 0.25};
  c.trajgen.planner.rollout_depth = 3;
  c.scenario.vel_noise_frac = 0.1;
  nlohmann::json j = c;
  EXPECT_EQ(j.at("safe_source"), "/data/walks.csv");
  const AssessmentConfig back = j.get<AssessmentConfig>();
  EXPECT_EQ(nlohmann::json(back), j);
}

TEST(AssessmentConfig, MissingKeysKeepDefaultsAndFilesLoad) {
  const auto dir = scratch("cfg");
  std::filesystem::create_directories(dir);
  {
    std::ofstream f(dir / "c.json");
    f << R"({"c_grid": [1.0], "master_seed": 9, "planner": {"budget": 50}, "safe_source": "synthetic"})";
  }
  const AssessmentConfig c = load_assessment_config(dir / "c.json");
  EXPECT_EQ(c.c_grid, std::vector<double>{1.0});
  EXPECT_EQ(c.master_seed, 9u);
  EXPECT_EQ(c.trajgen.planner.budget, 50);
  EXPECT_EQ(c.trajgen.planner.horizon, PlannerConfig{}.horizon);
  EXPECT_TRUE(c.safe_csv.empty());
  EXPECT_EQ(c.n_safe, 5);
  {
    std::ofstream f(dir / "broken.json");
    f << "{ not json";
  }
  EXPECT_THROW(load_assessment_config(dir / "broken.json"), std::invalid_argument);
  EXPECT_THROW(load_assessment_config(dir / "absent.json"), std::invalid_argument);
  std::filesystem::remove_all(dir);
}

TEST(ParallelFor, VisitsEveryIndexOnceAndRethrows) {
  for (int workers : {1, 3, 8}) {
    std::vector<std::atomic<int>> hits(101);
    parallel_for(hits.size(), workers, [&](std::size_t i) { ++hits[i]; });
    for (auto& h : hits) ASSERT_EQ(h.load(), 1);
  }
  EXPECT_THROW(parallel_for(10, 4,
                            [](std::size_t i) {
                              if (i == 7) throw std::runtime_error("item 7");
                            }),
               std::runtime_error);
}

TEST(CollisionRate, TrajectoryOutsideTheLaneNeverCollides) {
  const ScenarioConfig sc = default_scenario();
  std::vector<Point2> pts;
  for (int i = 0; i < 40; ++i) pts.push_back({30.0 - 0.5 * i, 4.0});
  EXPECT_EQ(run_collision_rate(Trajectory(sc.dt, pts), sc, make_controller(0.5, sc), 100, 1), 0.0);
}

TEST(CollisionRate, CrossingBehindThePassedCarIsSafe) {
  ScenarioConfig sc = default_scenario();
  sc.vel_noise_frac = 0.0;
  sc.acc_noise_frac = 0.0;
  sc.car_start_jitter = 0.0;
  // The car's rear bumper starts at x = 48.5 and only moves west.
  std::vector<Point2> pts(3, {52.0, 6.0});
  for (double y = 6.75; y < 14.5; y += 0.75) pts.push_back({52.0, y});
  const Trajectory phi(sc.dt, pts);
  EXPECT_EQ(run_collision_rate(phi, sc, make_controller(1.15, sc), 50, 2), 0.0);
}

TEST(CollisionRate, StraightWalkInFrontOfAnAggressiveCar) {
  ScenarioConfig sc = default_scenario();
  std::vector<Point2> pts;
  for (double y = 6.0; y < 14.5; y += 0.75) pts.push_back({30.0, y});
  const Trajectory phi(sc.dt, pts);
  const double fast = run_collision_rate(phi, sc, make_controller(0.5, sc), 200, 3);
  const double slow = run_collision_rate(phi, sc, make_controller(1.15, sc), 200, 3);
  EXPECT_GT(fast, 0.5);
  EXPECT_LT(slow, fast);
  EXPECT_EQ(run_collision_rate(phi, sc, make_controller(0.5, sc), 200, 3), fast);
  EXPECT_THROW(run_collision_rate(phi, sc, make_controller(0.5, sc), 0, 3), std::invalid_argument);
}

class TinyAssessment : public ::testing::Test {
 protected:
  static void SetUpTestSuite() { outcome_ = new AssessmentOutcome(run_assessment(tiny_config())); }
  static void TearDownTestSuite() {
    delete outcome_;
    outcome_ = nullptr;
  }
  static AssessmentOutcome* outcome_;
};
AssessmentOutcome* TinyAssessment::outcome_ = nullptr;

TEST_F(TinyAssessment, OneEntryPerControllerWithAllPairs) {
  const AssessmentReport& r = outcome_->report;
  ASSERT_EQ(r.entries.size(), 2u);
  EXPECT_EQ(r.provenance.master_seed, 1u);
  EXPECT_EQ(r.provenance.code_version, kCodeVersion);
  EXPECT_FALSE(r.provenance.config.contains("worker_count"));
  ASSERT_EQ(outcome_->safe.size(), 2u);
  for (const ControllerEntry& e : r.entries) {
    EXPECT_EQ(e.samples.size(), 6u);
    EXPECT_EQ(e.requested, 6);
    EXPECT_EQ(static_cast<std::size_t>(e.achieved), e.skd.n);
    EXPECT_GE(e.collision_rate, 0.0);
    EXPECT_LE(e.collision_rate, 1.0);
    EXPECT_EQ(e.collision_runs, 20);
    if (e.skd.n > 1) {
      EXPECT_EQ(e.bounds.size(), 3u);
    }
    for (const BoundRow& b : e.bounds) EXPECT_TRUE(b.holds);
  }
}

TEST_F(TinyAssessment, EveryPairIsReproducibleInIsolation) {
  const AssessmentConfig cfg = tiny_config();
  for (std::size_t ci = 0; ci < cfg.c_grid.size(); ++ci) {
    const auto car = make_controller(cfg.c_grid[ci], cfg.scenario);
    for (const PairSample& s : outcome_->report.entries[ci].samples) {
      const KamikazeBatch b = generate_kamikaze(outcome_->safe[s.safe_index], cfg.scenario, car,
                                                cfg.trajgen, cfg.d_max, 1, s.seed);
      ASSERT_EQ(b.accepted.empty(), !s.accepted);
      EXPECT_EQ(b.attempts, s.attempts);
      if (s.accepted) {
        EXPECT_EQ(b.distances[0], s.distance);
      }
    }
  }
}

TEST_F(TinyAssessment, ReportJsonRoundTrips) {
  const nlohmann::json j = outcome_->report;
  const AssessmentReport back = j.get<AssessmentReport>();
  EXPECT_EQ(back, outcome_->report);
  EXPECT_FALSE(without_wall_times(j).at("entries")[0].contains("wall_times"));
}

TEST_F(TinyAssessment, EmitWritesEveryArtefact) {
  const auto dir = scratch("emit");
  emit_report(*outcome_, dir);
  const AssessmentReport parsed = nlohmann::json::parse(slurp(dir / "report.json")).get<AssessmentReport>();
  EXPECT_EQ(parsed, outcome_->report);

  std::istringstream csv(slurp(dir / "skd_vs_c.csv"));
  std::string line;
  std::getline(csv, line);
  EXPECT_EQ(line, "C,skd,ci95,collision_rate");
  int rows = 0;
  while (std::getline(csv, line)) rows += !line.empty();
  EXPECT_EQ(rows, 2);

  EXPECT_EQ(load_csv(dir / "episodes" / "safe.csv").size(), 2u);
  EXPECT_TRUE(std::filesystem::exists(dir / "episodes" / "safe.json"));
  const auto k0 = load_csv(dir / "episodes" / "kamikaze_c0.csv");
  EXPECT_EQ(k0.size(), static_cast<std::size_t>(outcome_->report.entries[0].achieved));
  EXPECT_TRUE(std::filesystem::exists(dir / "episodes" / "kamikaze_c1.json"));
  std::filesystem::remove_all(dir);
}

TEST(Assessment, IndependentOfWorkerCount) {
  AssessmentConfig c = tiny_config();
  c.worker_count = 1;
  const std::string one = without_wall_times(run_assessment(c).report).dump();
  c.worker_count = 4;
  const std::string four = without_wall_times(run_assessment(c).report).dump();
  EXPECT_EQ(one, four);
}

TEST(Assessment, SinglePairFlagsUndefinedVariance) {
  AssessmentConfig c = tiny_config();
  c.c_grid = {0.5};
  c.n_safe = 1;
  c.n_kamikaze_per_safe = 1;
  const AssessmentReport r = run_assessment(c).report;
  ASSERT_EQ(r.entries.size(), 1u);
  const ControllerEntry& e = r.entries[0];
  ASSERT_EQ(e.skd.n, 1u);
  EXPECT_FALSE(e.skd.variance_defined);
  EXPECT_EQ(e.skd.variance, 0.0);
  for (const BoundRow& b : e.bounds) EXPECT_TRUE(b.holds);
}

TEST(Assessment, ShortfallBecomesAWarning) {
  AssessmentConfig c = tiny_config();
  c.c_grid = {1.15};
  c.n_safe = 1;
  c.n_kamikaze_per_safe = 2;
  c.d_max = 1e-3;
  c.trajgen.kamikaze_attempt_factor = 1;
  const AssessmentReport r = run_assessment(c).report;
  EXPECT_TRUE(r.shortfall());
  EXPECT_EQ(r.entries[0].achieved, 0);
  EXPECT_EQ(r.entries[0].warning, "kamikaze shortfall: achieved 0 of 2");
}

TEST(SafeTrajectories, LoadedFromCsvWithAlignment) {
  const auto dir = scratch("csv");
  std::filesystem::create_directories(dir);
  {
    std::ofstream f(dir / "walks.csv");
    f << "id,t,x,y\n";
    for (int w = 0; w < 2; ++w) {
      for (int i = 0; i <= 12; ++i) f << "w" << w << "," << 0.4 * i << "," << w << "," << 0.75 * i << "\n";
    }
  }
  AssessmentConfig c = tiny_config();
  c.safe_csv = (dir / "walks.csv").string();
  c.safe_csv_alignment = {30.0, 6.0, 0.0};
  const auto safe = load_safe_trajectories(c);
  ASSERT_EQ(safe.size(), 2u);
  EXPECT_EQ(safe[0].dt(), c.scenario.dt);
  EXPECT_EQ(safe[1][0], (Point2{31.0, 6.0}));
  EXPECT_NEAR(safe[0].points().back().y, 6.0 + 0.75 * 12, 1e-9);

  c.n_safe = 3;
  EXPECT_THROW(load_safe_trajectories(c), std::invalid_argument);
  c.n_safe = 2;
  c.safe_csv_alignment = {100.0, 0.0, 0.0};
  EXPECT_THROW(load_safe_trajectories(c), std::invalid_argument);
  std::filesystem::remove_all(dir);
}

}  // namespace
}  // namespace skd
