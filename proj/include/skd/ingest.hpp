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

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "skd/scenario.hpp"

namespace skd {

struct RawSample {
  double t = 0.0;
  double x = 0.0;
  double y = 0.0;
};

/// Irregularly timed samples of one externally recorded trajectory.
struct RawTrajectory {
  std::string id;
  std::vector<RawSample> samples;
};

class CsvError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parses `id,t,x,y` rows (header required). Rows for an id need not be
/// contiguous; ids are returned in order of first appearance and samples keep
/// file order. `source` names the input in error messages.
std::vector<RawTrajectory> parse_csv(std::istream& in, std::string_view source = "<stream>");
std::vector<RawTrajectory> load_csv(const std::filesystem::path& path);

/// Linear interpolation onto t0, t0 + dt, ... up to the last timestamp.
Trajectory resample_uniform(const RawTrajectory& raw, double dt);

/// Planar rigid transform applied to externally recorded coordinates:
/// rotate by `rotation` radians about the origin, then translate.
struct FrameAlignment {
  double offset_x = 0.0;
  double offset_y = 0.0;
  double rotation = 0.0;

  RawTrajectory apply(const RawTrajectory& raw) const;
};

/// Writes trajectories as `id,t,x,y` rows with t = i * dt, in
/// round-trippable precision.
void write_csv(std::ostream& out,
               const std::vector<std::pair<std::string, const Trajectory*>>& trajectories);

}  // namespace skd
