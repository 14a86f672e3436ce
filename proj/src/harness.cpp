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

#include "skd/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <fstream>
#include <mutex>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "fmt_double.hpp"
#include "skd/frechet.hpp"
#include "skd/seeding.hpp"

namespace skd {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// Seed-stream tags, keeping work-item families disjoint.
constexpr std::uint64_t kSafeTag = 0x5afe;
constexpr std::uint64_t kKamikazeTag = 0xca3e;
constexpr std::uint64_t kCollisionTag = 0xc011;

template <typename T>
void read_if(const nlohmann::json& j, const char* key, T& out) {
  if (auto it = j.find(key); it != j.end()) out = it->template get<T>();
}

}  // namespace

void parallel_for(std::size_t n, int workers, const std::function<void(std::size_t)>& fn) {
  const std::size_t threads = std::min<std::size_t>(std::max(workers, 1), n);
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (std::size_t t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
          next = n;
        }
      }
    });
  }
  for (std::thread& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

// --- configuration --------------------------------------------------------

std::optional<std::string> validate(const AssessmentConfig& cfg) {
  if (auto err = validate(cfg.scenario)) return err;
  if (cfg.c_grid.empty()) return "c_grid must not be empty";
  for (double c : cfg.c_grid) {
    if (!(c > 0.0)) return "c_grid entries must be positive";
  }
  if (cfg.n_safe < 1) return "n_safe must be at least 1";
  if (cfg.n_kamikaze_per_safe < 1) return "n_kamikaze_per_safe must be at least 1";
  if (cfg.n_collision_sims < 1) return "n_collision_sims must be at least 1";
  if (!(cfg.d_max > 0.0)) return "d_max must be positive";
  for (double f : cfg.eta_fractions) {
    if (!(f > 0.0 && f < 1.0)) return "eta_fractions must lie in (0, 1)";
  }
  if (!(cfg.safe_reference_c > 0.0)) return "safe_reference_c must be positive";
  if (cfg.worker_count < 1) return "worker_count must be at least 1";
  for (const PlannerConfig* p : {&cfg.trajgen.planner, &cfg.trajgen.safe_planner}) {
    if (p->budget < static_cast<int>(kNumActions)) return "planner budget must cover every action";
    if (p->horizon < 1) return "planner horizon must be at least 1";
    if (p->particles < 1) return "planner particles must be at least 1";
    if (!(p->obs_bin_width > 0.0)) return "planner obs_bin_width must be positive";
  }
  if (cfg.trajgen.safe_retry_budget < 1) return "safe_retry_budget must be at least 1";
  if (cfg.trajgen.kamikaze_attempt_factor < 1) return "kamikaze_attempt_factor must be at least 1";
  return std::nullopt;
}

namespace {

nlohmann::json planner_json(const PlannerConfig& p) {
  return {{"budget", p.budget},
          {"horizon", p.horizon},
          {"exploration", p.exploration},
          {"obs_bin_width", p.obs_bin_width},
          {"particles", p.particles},
          {"rollout_depth", p.rollout_depth}};
}

void read_planner(const nlohmann::json& j, const char* key, PlannerConfig& p) {
  if (auto it = j.find(key); it != j.end()) {
    read_if(*it, "budget", p.budget);
    read_if(*it, "horizon", p.horizon);
    read_if(*it, "exploration", p.exploration);
    read_if(*it, "obs_bin_width", p.obs_bin_width);
    read_if(*it, "particles", p.particles);
    read_if(*it, "rollout_depth", p.rollout_depth);
  }
}

}  // namespace

void to_json(nlohmann::json& j, const AssessmentConfig& c) {
  const RewardWeights& w = c.trajgen.weights;
  j = nlohmann::json{
      {"scenario", c.scenario},
      {"c_grid", c.c_grid},
      {"n_safe", c.n_safe},
      {"n_kamikaze_per_safe", c.n_kamikaze_per_safe},
      {"n_collision_sims", c.n_collision_sims},
      {"d_max", c.d_max},
      {"eta_fractions", c.eta_fractions},
      {"master_seed", c.master_seed},
      {"safe_source", c.safe_csv.empty() ? std::string("synthetic") : c.safe_csv},
      {"safe_csv_alignment",
       {{"offset_x", c.safe_csv_alignment.offset_x},
        {"offset_y", c.safe_csv_alignment.offset_y},
        {"rotation", c.safe_csv_alignment.rotation}}},
      {"safe_reference_c", c.safe_reference_c},
      {"worker_count", c.worker_count},
      {"planner", planner_json(c.trajgen.planner)},
      {"safe_planner", planner_json(c.trajgen.safe_planner)},
      {"rewards",
       {{"collision", w.collision},
        {"goal", w.goal},
        {"deviation", w.deviation},
        {"step", w.step}}},
      {"safe_retry_budget", c.trajgen.safe_retry_budget},
      {"kamikaze_attempt_factor", c.trajgen.kamikaze_attempt_factor},
  };
}

void from_json(const nlohmann::json& j, AssessmentConfig& c) {
  if (!j.is_object()) throw std::invalid_argument("assessment config must be an object");
  c = AssessmentConfig{};
  read_if(j, "scenario", c.scenario);
  read_if(j, "c_grid", c.c_grid);
  read_if(j, "n_safe", c.n_safe);
  read_if(j, "n_kamikaze_per_safe", c.n_kamikaze_per_safe);
  read_if(j, "n_collision_sims", c.n_collision_sims);
  read_if(j, "d_max", c.d_max);
  read_if(j, "eta_fractions", c.eta_fractions);
  read_if(j, "master_seed", c.master_seed);
  if (auto it = j.find("safe_source"); it != j.end()) {
    const auto src = it->get<std::string>();
    c.safe_csv = src == "synthetic" ? std::string() : src;
  }
  if (auto it = j.find("safe_csv_alignment"); it != j.end()) {
    read_if(*it, "offset_x", c.safe_csv_alignment.offset_x);
    read_if(*it, "offset_y", c.safe_csv_alignment.offset_y);
    read_if(*it, "rotation", c.safe_csv_alignment.rotation);
  }
  read_if(j, "safe_reference_c", c.safe_reference_c);
  read_if(j, "worker_count", c.worker_count);
  read_planner(j, "planner", c.trajgen.planner);
  read_planner(j, "safe_planner", c.trajgen.safe_planner);
  if (auto it = j.find("rewards"); it != j.end()) {
    RewardWeights& w = c.trajgen.weights;
    read_if(*it, "collision", w.collision);
    read_if(*it, "goal", w.goal);
    read_if(*it, "deviation", w.deviation);
    read_if(*it, "step", w.step);
  }
  read_if(j, "safe_retry_budget", c.trajgen.safe_retry_budget);
  read_if(j, "kamikaze_attempt_factor", c.trajgen.kamikaze_attempt_factor);
}

AssessmentConfig load_assessment_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(path.string() + ": " + e.what());
  }
  return j.get<AssessmentConfig>();
}

// --- report serialization -------------------------------------------------

DistanceSample ControllerEntry::distance_sample() const {
  DistanceSample s;
  for (const PairSample& p : samples) {
    if (p.accepted) s.values.push_back(p.distance);
  }
  return s;
}

bool AssessmentReport::shortfall() const {
  return std::any_of(entries.begin(), entries.end(),
                     [](const ControllerEntry& e) { return e.achieved < e.requested; });
}

void to_json(nlohmann::json& j, const AssessmentReport& r) {
  nlohmann::json entries = nlohmann::json::array();
  for (const ControllerEntry& e : r.entries) {
    nlohmann::json bounds = nlohmann::json::array();
    for (const BoundRow& b : e.bounds) {
      bounds.push_back({{"eta_fraction", b.eta_fraction},
                        {"eta", b.eta},
                        {"bound_raw", b.bound_raw},
                        {"bound", b.bound},
                        {"corollary", b.corollary},
                        {"corollary_applies", b.corollary_applies},
                        {"empirical_exceedance", b.empirical},
                        {"slack", b.slack},
                        {"holds", b.holds}});
    }
    nlohmann::json samples = nlohmann::json::array();
    for (const PairSample& p : e.samples) {
      samples.push_back({{"safe_index", p.safe_index},
                         {"kamikaze_index", p.kamikaze_index},
                         {"seed", p.seed},
                         {"attempts", p.attempts},
                         {"accepted", p.accepted},
                         {"distance", p.distance}});
    }
    entries.push_back({
        {"C", e.multiplier},
        {"skd",
         {{"skd", e.skd.skd},
          {"variance", e.skd.variance},
          {"ci95_half_width", e.skd.ci95_half_width},
          {"n", e.skd.n},
          {"variance_defined", e.skd.variance_defined}}},
        {"collision_rate", e.collision_rate},
        {"collision_runs", e.collision_runs},
        {"bound_table", bounds},
        {"requested", e.requested},
        {"achieved", e.achieved},
        {"warning", e.warning},
        {"samples", samples},
        {"wall_times",
         {{"safe_gen", e.wall.safe_gen},
          {"kamikaze_gen", e.wall.kamikaze_gen},
          {"frechet", e.wall.frechet},
          {"collision_sims", e.wall.collision_sims},
          {"total", e.wall.total},
          {"max_kamikaze_episode", e.wall.max_kamikaze_episode}}},
    });
  }
  j = nlohmann::json{{"entries", entries},
                     {"provenance",
                      {{"config", r.provenance.config},
                       {"master_seed", r.provenance.master_seed},
                       {"code_version", r.provenance.code_version}}}};
}

void from_json(const nlohmann::json& j, AssessmentReport& r) {
  r = AssessmentReport{};
  for (const nlohmann::json& je : j.at("entries")) {
    ControllerEntry e;
    e.multiplier = je.at("C").get<double>();
    const nlohmann::json& js = je.at("skd");
    e.skd.skd = js.at("skd").get<double>();
    e.skd.variance = js.at("variance").get<double>();
    e.skd.ci95_half_width = js.at("ci95_half_width").get<double>();
    e.skd.n = js.at("n").get<std::size_t>();
    e.skd.variance_defined = js.at("variance_defined").get<bool>();
    e.collision_rate = je.at("collision_rate").get<double>();
    e.collision_runs = je.at("collision_runs").get<int>();
    for (const nlohmann::json& jb : je.at("bound_table")) {
      BoundRow b;
      b.eta_fraction = jb.at("eta_fraction").get<double>();
      b.eta = jb.at("eta").get<double>();
      b.bound_raw = jb.at("bound_raw").get<double>();
      b.bound = jb.at("bound").get<double>();
      b.corollary = jb.at("corollary").get<double>();
      b.corollary_applies = jb.at("corollary_applies").get<bool>();
      b.empirical = jb.at("empirical_exceedance").get<double>();
      b.slack = jb.at("slack").get<double>();
      b.holds = jb.at("holds").get<bool>();
      e.bounds.push_back(b);
    }
    e.requested = je.at("requested").get<int>();
    e.achieved = je.at("achieved").get<int>();
    e.warning = je.at("warning").get<std::string>();
    for (const nlohmann::json& jp : je.at("samples")) {
      PairSample p;
      p.safe_index = jp.at("safe_index").get<int>();
      p.kamikaze_index = jp.at("kamikaze_index").get<int>();
      p.seed = jp.at("seed").get<std::uint64_t>();
      p.attempts = jp.at("attempts").get<int>();
      p.accepted = jp.at("accepted").get<bool>();
      p.distance = jp.at("distance").get<double>();
      e.samples.push_back(p);
    }
    const nlohmann::json& jw = je.at("wall_times");
    e.wall.safe_gen = jw.at("safe_gen").get<double>();
    e.wall.kamikaze_gen = jw.at("kamikaze_gen").get<double>();
    e.wall.frechet = jw.at("frechet").get<double>();
    e.wall.collision_sims = jw.at("collision_sims").get<double>();
    e.wall.total = jw.at("total").get<double>();
    e.wall.max_kamikaze_episode = jw.at("max_kamikaze_episode").get<double>();
    r.entries.push_back(std::move(e));
  }
  const nlohmann::json& jp = j.at("provenance");
  r.provenance.config = jp.at("config");
  r.provenance.master_seed = jp.at("master_seed").get<std::uint64_t>();
  r.provenance.code_version = jp.at("code_version").get<std::string>();
}

nlohmann::json without_wall_times(nlohmann::json report) {
  for (nlohmann::json& e : report.at("entries")) e.erase("wall_times");
  return report;
}

// --- simulation -----------------------------------------------------------

bool replay_collides(const Trajectory& phi, const ScenarioConfig& cfg,
                     const BasicControllerParams& car_params, std::uint64_t seed) {
  Rng rng(seed);
  double jitter = 0.0;
  if (cfg.car_start_jitter > 0.0) {
    jitter = std::uniform_real_distribution<double>(0.0, cfg.car_start_jitter)(rng);
  }
  CarState car = initial_car(cfg, jitter);
  AdvState ped{phi[0].x, phi[0].y, cfg.ped_goal_y};
  if (check_collision(car, ped, cfg)) return true;

  // After phi ends the pedestrian holds its final position.
  const int steps = std::max<int>(cfg.horizon_steps, static_cast<int>(phi.size()) - 1);
  for (int t = 1; t <= steps; ++t) {
    const double acc = controller_decide(car, ped, car_params, cfg, cfg.acc_noise_frac, rng);
    car = step_car(car, acc, cfg, cfg.vel_noise_frac, rng);
    const Point2 p = phi.at_clamped(static_cast<std::size_t>(t));
    ped.x = p.x;
    ped.y = p.y;
    if (check_collision(car, ped, cfg)) return true;
    if (!collision_still_possible(car, ped, cfg)) return false;
    if (static_cast<std::size_t>(t) >= phi.size() && car.v == 0.0) return false;
  }
  return false;
}

double run_collision_rate(const Trajectory& phi, const ScenarioConfig& scenario,
                          const BasicControllerParams& car, int n_runs, std::uint64_t seed) {
  if (n_runs < 1) throw std::invalid_argument("n_runs must be at least 1");
  int hits = 0;
  for (int r = 0; r < n_runs; ++r) {
    hits += replay_collides(phi, scenario, car, derive_seed(seed, {std::uint64_t(r)})) ? 1 : 0;
  }
  return static_cast<double>(hits) / n_runs;
}

std::vector<Trajectory> load_safe_trajectories(const AssessmentConfig& cfg) {
  std::vector<Trajectory> out;
  const auto raws = load_csv(cfg.safe_csv);
  for (const RawTrajectory& raw : raws) {
    if (static_cast<int>(out.size()) == cfg.n_safe) break;
    Trajectory t = resample_uniform(cfg.safe_csv_alignment.apply(raw), cfg.scenario.dt);
    if (!t.inside(cfg.scenario.world)) {
      throw std::invalid_argument("safe trajectory '" + raw.id + "' leaves the world frame");
    }
    out.push_back(std::move(t));
  }
  if (static_cast<int>(out.size()) < cfg.n_safe) {
    throw std::invalid_argument(cfg.safe_csv + ": expected " + std::to_string(cfg.n_safe) +
                                " trajectories, found " + std::to_string(out.size()));
  }
  return out;
}

AssessmentOutcome run_assessment(const AssessmentConfig& cfg) {
  if (auto err = validate(cfg)) throw std::invalid_argument(*err);
  const ScenarioConfig& scenario = cfg.scenario;
  AssessmentOutcome out;

  nlohmann::json echo = cfg;
  echo.erase("worker_count");
  out.report.provenance = {echo, cfg.master_seed, kCodeVersion};

  const auto safe_t0 = Clock::now();
  if (cfg.safe_csv.empty()) {
    const BasicControllerParams reference = make_controller(cfg.safe_reference_c, scenario);
    std::vector<std::optional<EpisodeLog>> logs(cfg.n_safe);
    parallel_for(logs.size(), cfg.worker_count, [&](std::size_t i) {
      logs[i] = generate_safe(scenario, reference, cfg.trajgen,
                              derive_seed(cfg.master_seed, {kSafeTag, std::uint64_t(i)}));
    });
    for (auto& log : logs) {
      out.safe.push_back(log->trajectory);
      out.safe_episodes.push_back(std::move(*log));
    }
  } else {
    out.safe = load_safe_trajectories(cfg);
  }
  const double safe_seconds = seconds_since(safe_t0);

  const std::size_t n_pairs =
      static_cast<std::size_t>(cfg.n_safe) * static_cast<std::size_t>(cfg.n_kamikaze_per_safe);

  for (std::size_t ci = 0; ci < cfg.c_grid.size(); ++ci) {
    const auto c_t0 = Clock::now();
    const BasicControllerParams car = make_controller(cfg.c_grid[ci], scenario);
    ControllerEntry entry;
    entry.multiplier = cfg.c_grid[ci];
    entry.requested = static_cast<int>(n_pairs);
    entry.wall.safe_gen = safe_seconds;

    std::vector<KamikazeBatch> batches(n_pairs);
    std::vector<std::uint64_t> seeds(n_pairs);
    for (std::size_t k = 0; k < n_pairs; ++k) {
      seeds[k] = derive_seed(cfg.master_seed,
                             {kKamikazeTag, std::uint64_t(ci),
                              std::uint64_t(k / cfg.n_kamikaze_per_safe),
                              std::uint64_t(k % cfg.n_kamikaze_per_safe)});
    }
    std::vector<double> item_seconds(n_pairs);
    parallel_for(n_pairs, cfg.worker_count, [&](std::size_t k) {
      const auto t0 = Clock::now();
      const std::size_t s = k / cfg.n_kamikaze_per_safe;
      batches[k] = generate_kamikaze(out.safe[s], scenario, car, cfg.trajgen, cfg.d_max, 1, seeds[k]);
      item_seconds[k] = seconds_since(t0);
    });

    std::vector<EpisodeLog> accepted;
    for (std::size_t k = 0; k < n_pairs; ++k) {
      KamikazeBatch& b = batches[k];
      PairSample p;
      p.safe_index = static_cast<int>(k / cfg.n_kamikaze_per_safe);
      p.kamikaze_index = static_cast<int>(k % cfg.n_kamikaze_per_safe);
      p.seed = seeds[k];
      p.attempts = b.attempts;
      p.accepted = !b.accepted.empty();
      if (p.accepted) {
        p.distance = b.distances.front();
        accepted.push_back(std::move(b.accepted.front()));
      }
      entry.samples.push_back(p);
      entry.wall.kamikaze_gen += item_seconds[k];
      entry.wall.frechet += b.frechet_seconds;
      entry.wall.max_kamikaze_episode = std::max(entry.wall.max_kamikaze_episode, b.max_episode_seconds);
    }
    out.kamikaze.push_back(std::move(accepted));

    const DistanceSample sample = entry.distance_sample();
    entry.achieved = static_cast<int>(sample.n());
    if (entry.achieved < entry.requested) {
      std::ostringstream msg;
      msg << "kamikaze shortfall: achieved " << entry.achieved << " of " << entry.requested;
      entry.warning = msg.str();
    }
    if (entry.achieved > 0) {
      entry.skd = summarize(sample);
      const double delta = entry.skd.skd;
      for (double f : cfg.eta_fractions) {
        if (!(delta > 0.0)) break;
        BoundRow row;
        row.eta_fraction = f;
        row.eta = f * delta;
        row.bound_raw = exceedance_bound(delta, entry.skd.variance, row.eta);
        row.bound = std::clamp(row.bound_raw, 0.0, 1.0);
        row.corollary = corollary_bound(delta, row.eta);
        row.corollary_applies = entry.skd.variance <= 2.0 * row.eta;
        row.empirical = empirical_exceedance(sample, row.eta);
        row.slack = binomial_slack(row.bound, sample.n());
        row.holds = row.empirical <= row.bound_raw + row.slack;
        entry.bounds.push_back(row);
      }
    }

    const auto col_t0 = Clock::now();
    std::vector<char> hits(cfg.n_collision_sims);
    parallel_for(hits.size(), cfg.worker_count, [&](std::size_t r) {
      const Trajectory& phi = out.safe[r % out.safe.size()];
      hits[r] = replay_collides(phi, scenario, car,
                                derive_seed(cfg.master_seed, {kCollisionTag, std::uint64_t(ci),
                                                              std::uint64_t(r)}));
    });
    entry.collision_runs = cfg.n_collision_sims;
    entry.collision_rate =
        static_cast<double>(std::count(hits.begin(), hits.end(), 1)) / cfg.n_collision_sims;
    entry.wall.collision_sims = seconds_since(col_t0);
    entry.wall.total = seconds_since(c_t0) + safe_seconds;

    out.report.entries.push_back(std::move(entry));
  }
  return out;
}

// --- output ---------------------------------------------------------------

namespace {

void write_file(const std::filesystem::path& path, const std::string& contents) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path.string());
  f << contents;
  if (!f) throw std::runtime_error("write failed: " + path.string());
}

}  // namespace

void emit_report(const AssessmentOutcome& outcome, const std::filesystem::path& out_dir) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir / "episodes", ec);
  if (ec) throw std::runtime_error("cannot create " + (out_dir / "episodes").string() + ": " + ec.message());

  const nlohmann::json report = outcome.report;
  write_file(out_dir / "report.json", report.dump(2) + "\n");

  std::ostringstream csv;
  csv << "C,skd,ci95,collision_rate\n";
  for (const ControllerEntry& e : outcome.report.entries) {
    csv << format_double(e.multiplier) << ',' << format_double(e.skd.skd) << ','
        << format_double(e.skd.ci95_half_width) << ',' << format_double(e.collision_rate) << '\n';
  }
  write_file(out_dir / "skd_vs_c.csv", csv.str());

  {
    std::vector<std::pair<std::string, const Trajectory*>> rows;
    nlohmann::json sidecar = nlohmann::json::array();
    for (std::size_t i = 0; i < outcome.safe.size(); ++i) {
      const std::string id = "safe" + std::to_string(i);
      rows.emplace_back(id, &outcome.safe[i]);
      nlohmann::json meta = i < outcome.safe_episodes.size()
                                ? episode_sidecar(outcome.safe_episodes[i])
                                : nlohmann::json{{"source", "csv"}};
      meta["id"] = id;
      sidecar.push_back(meta);
    }
    std::ostringstream s;
    write_csv(s, rows);
    write_file(out_dir / "episodes" / "safe.csv", s.str());
    write_file(out_dir / "episodes" / "safe.json", sidecar.dump(2) + "\n");
  }

  for (std::size_t ci = 0; ci < outcome.kamikaze.size(); ++ci) {
    const ControllerEntry& entry = outcome.report.entries[ci];
    std::vector<std::pair<std::string, const Trajectory*>> rows;
    nlohmann::json sidecar = nlohmann::json::array();
    std::size_t a = 0;
    for (const PairSample& p : entry.samples) {
      if (!p.accepted) continue;
      const EpisodeLog& log = outcome.kamikaze[ci][a++];
      const std::string id = "s" + std::to_string(p.safe_index) + "_k" + std::to_string(p.kamikaze_index);
      rows.emplace_back(id, &log.trajectory);
      nlohmann::json meta = episode_sidecar(log);
      meta["id"] = id;
      meta["distance"] = p.distance;
      sidecar.push_back(meta);
    }
    std::ostringstream s;
    write_csv(s, rows);
    const std::string stem = "kamikaze_c" + std::to_string(ci);
    write_file(out_dir / "episodes" / (stem + ".csv"), s.str());
    write_file(out_dir / "episodes" / (stem + ".json"), sidecar.dump(2) + "\n");
  }
}

}  // namespace skd
