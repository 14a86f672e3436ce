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
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "skd/dynamics.hpp"
#include "skd/ingest.hpp"
#include "skd/scenario.hpp"
#include "skd/stats.hpp"
#include "skd/trajgen.hpp"

namespace skd {

inline constexpr const char* kCodeVersion = "skd 0.3.0";

/// Multipliers of the basic-controller sweep, most aggressive first.
inline const std::vector<double> kDefaultControllerGrid{0.5,  0.625, 0.75,  0.875, 1.0,
                                                        1.05, 1.1,   1.125, 1.15};

struct AssessmentConfig {
  ScenarioConfig scenario = default_scenario();
  std::vector<double> c_grid = kDefaultControllerGrid;
  int n_safe = 5;
  int n_kamikaze_per_safe = 100;
  int n_collision_sims = 500;  // per controller, spread round-robin over safe trajectories
  double d_max = 8.0;
  std::vector<double> eta_fractions{0.1, 0.25, 0.5};
  std::uint64_t master_seed = 1;
  std::string safe_csv;  // empty: synthetic safe trajectories
  FrameAlignment safe_csv_alignment;
  // Controller the synthetic safe pedestrians cross in front of.
  double safe_reference_c = 2.0;
  int worker_count = 1;
  TrajgenConfig trajgen;
};

/// nullopt when valid, otherwise the first problem found.
std::optional<std::string> validate(const AssessmentConfig& cfg);

void to_json(nlohmann::json& j, const AssessmentConfig& cfg);
/// Missing keys keep their defaults.
void from_json(const nlohmann::json& j, AssessmentConfig& cfg);
AssessmentConfig load_assessment_config(const std::filesystem::path& path);

/// One (safe, kamikaze) work item and what it produced.
struct PairSample {
  int safe_index = 0;
  int kamikaze_index = 0;
  std::uint64_t seed = 0;
  int attempts = 0;
  bool accepted = false;
  double distance = 0.0;

  friend bool operator==(const PairSample&, const PairSample&) = default;
};

struct BoundRow {
  double eta_fraction = 0.0;
  double eta = 0.0;
  double bound_raw = 0.0;
  double bound = 0.0;  // clamped to [0, 1]
  double corollary = 0.0;
  bool corollary_applies = false;  // Var <= 2 eta
  double empirical = 0.0;
  double slack = 0.0;
  bool holds = false;  // empirical <= bound_raw + slack

  friend bool operator==(const BoundRow&, const BoundRow&) = default;
};

struct WallTimes {
  double safe_gen = 0.0;
  double kamikaze_gen = 0.0;  // summed over work items
  double frechet = 0.0;
  double collision_sims = 0.0;
  double total = 0.0;  // wall clock for this controller, safe generation included
  double max_kamikaze_episode = 0.0;

  friend bool operator==(const WallTimes&, const WallTimes&) = default;
};

struct ControllerEntry {
  double multiplier = 0.0;
  SkdReport skd;
  double collision_rate = 0.0;
  int collision_runs = 0;
  std::vector<BoundRow> bounds;
  int requested = 0;
  int achieved = 0;
  std::string warning;  // empty unless the kamikaze generator fell short
  std::vector<PairSample> samples;
  WallTimes wall;

  DistanceSample distance_sample() const;

  friend bool operator==(const ControllerEntry&, const ControllerEntry&) = default;
};

struct Provenance {
  nlohmann::json config;
  std::uint64_t master_seed = 0;
  std::string code_version;

  friend bool operator==(const Provenance&, const Provenance&) = default;
};

struct AssessmentReport {
  std::vector<ControllerEntry> entries;
  Provenance provenance;

  bool shortfall() const;

  friend bool operator==(const AssessmentReport&, const AssessmentReport&) = default;
};

void to_json(nlohmann::json& j, const AssessmentReport& r);
void from_json(const nlohmann::json& j, AssessmentReport& r);

/// Everything a run produced: the report plus the trajectories behind it.
struct AssessmentOutcome {
  AssessmentReport report;
  std::vector<EpisodeLog> safe_episodes;  // synthetic source only
  std::vector<Trajectory> safe;
  // kamikaze[c][pair index] for accepted work items, in work-item order.
  std::vector<std::vector<EpisodeLog>> kamikaze;
};

/// Safe trajectories from the configured source, in index order.
std::vector<Trajectory> load_safe_trajectories(const AssessmentConfig& cfg);

/// Sweeps the controller grid. Work items are seeded from their indices, so
/// the report does not depend on worker_count.
AssessmentOutcome run_assessment(const AssessmentConfig& cfg);

/// Replays phi open-loop as the pedestrian against one noisy car rollout.
bool replay_collides(const Trajectory& phi, const ScenarioConfig& scenario,
                     const BasicControllerParams& car, std::uint64_t seed);

/// Fraction of n_runs independent car rollouts that hit the replayed phi.
double run_collision_rate(const Trajectory& phi, const ScenarioConfig& scenario,
                          const BasicControllerParams& car, int n_runs, std::uint64_t seed);

/// Writes report.json, skd_vs_c.csv and episodes/ under out_dir.
void emit_report(const AssessmentOutcome& outcome, const std::filesystem::path& out_dir);

/// Report JSON with every wall_times block removed.
nlohmann::json without_wall_times(nlohmann::json report);

/// Runs fn(i) for i in [0, n) on `workers` threads.
void parallel_for(std::size_t n, int workers, const std::function<void(std::size_t)>& fn);

}  // namespace skd
