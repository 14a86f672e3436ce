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

#include <cstdlib>
#include <exception>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "skd/harness.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitShortfall = 2;

std::optional<int> env_workers() {
  const char* v = std::getenv("SKD_WORKERS");
  if (v == nullptr || *v == '\0') return std::nullopt;
  try {
    std::size_t used = 0;
    const int n = std::stoi(v, &used);
    if (used != std::string(v).size()) throw std::invalid_argument(v);
    return n;
  } catch (const std::exception&) {
    throw std::invalid_argument(std::string("SKD_WORKERS is not an integer: ") + v);
  }
}

void print_summary(const skd::AssessmentReport& report) {
  std::cout << "C        SKD      ci95     n    collision_rate\n";
  for (const skd::ControllerEntry& e : report.entries) {
    std::printf("%-8.4g %-8.4f %-8.4f %-4zu %.3f\n", e.multiplier, e.skd.skd,
                e.skd.ci95_half_width, e.skd.n, e.collision_rate);
    if (!e.warning.empty()) std::cerr << "warning (C=" << e.multiplier << "): " << e.warning << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Safe-Kamikaze Distance assessment of braking controllers"};
  app.require_subcommand(1);

  auto* assess = app.add_subcommand("assess", "Run a controller sweep and write the report");
  std::string config_path;
  std::string out_dir;
  std::optional<std::uint64_t> seed;
  std::optional<int> workers;
  std::optional<std::string> safe_csv;
  assess->add_option("--config", config_path, "Assessment config (JSON)")->required();
  assess->add_option("--out", out_dir, "Output directory")->required();
  assess->add_option("--seed", seed, "Override master_seed");
  assess->add_option("--workers", workers, "Worker threads (overrides SKD_WORKERS)");
  assess->add_option("--safe-csv", safe_csv, "Load safe trajectories from CSV");

  auto* defaults = app.add_subcommand("default-config", "Print the default config");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitConfig;
  }

  if (defaults->parsed()) {
    const nlohmann::json j = skd::AssessmentConfig{};
    std::cout << j.dump(2) << "\n";
    return kExitOk;
  }

  skd::AssessmentConfig cfg;
  try {
    cfg = skd::load_assessment_config(config_path);
    if (auto n = env_workers()) cfg.worker_count = *n;
    if (workers) cfg.worker_count = *workers;
    if (seed) cfg.master_seed = *seed;
    if (safe_csv) cfg.safe_csv = *safe_csv;
    if (auto err = skd::validate(cfg)) throw std::invalid_argument(*err);
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  }

  try {
    const skd::AssessmentOutcome outcome = skd::run_assessment(cfg);
    skd::emit_report(outcome, out_dir);
    print_summary(outcome.report);
    return outcome.report.shortfall() ? kExitShortfall : kExitOk;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }
}
