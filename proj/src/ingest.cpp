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

#include "skd/ingest.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include "fmt_double.hpp"

namespace skd {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    fields.push_back(trim(line.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return fields;
}

bool parse_double(std::string_view s, double& out) {
  if (s.empty()) return false;
  const char* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, out);
  return ec == std::errc() && ptr == end && std::isfinite(out);
}

[[noreturn]] void fail(std::string_view source, std::size_t line, const std::string& what) {
  std::ostringstream msg;
  msg << source << ":" << line << ": " << what;
  throw CsvError(msg.str());
}

}  // namespace

std::vector<RawTrajectory> parse_csv(std::istream& in, std::string_view source) {
  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;
  std::vector<RawTrajectory> out;
  std::map<std::string, std::size_t, std::less<>> index;

  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view view = trim(line);
    if (view.empty()) continue;
    const auto fields = split(view);
    if (!header_seen) {
      if (fields.size() != 4 || fields[0] != "id" || fields[1] != "t" || fields[2] != "x" ||
          fields[3] != "y") {
        fail(source, line_no, "expected header id,t,x,y");
      }
      header_seen = true;
      continue;
    }
    if (fields.size() != 4) fail(source, line_no, "expected 4 fields, got " + std::to_string(fields.size()));
    if (fields[0].empty()) fail(source, line_no, "missing id");
    RawSample s;
    if (!parse_double(fields[1], s.t)) fail(source, line_no, "bad t value");
    if (!parse_double(fields[2], s.x)) fail(source, line_no, "bad x value");
    if (!parse_double(fields[3], s.y)) fail(source, line_no, "bad y value");

    auto it = index.find(fields[0]);
    if (it == index.end()) {
      it = index.emplace(std::string(fields[0]), out.size()).first;
      out.push_back({std::string(fields[0]), {}});
    }
    RawTrajectory& traj = out[it->second];
    if (!traj.samples.empty() && !(s.t > traj.samples.back().t)) {
      fail(source, line_no, "time not increasing");
    }
    traj.samples.push_back(s);
  }
  if (!header_seen) fail(source, line_no, "expected header id,t,x,y");
  return out;
}

std::vector<RawTrajectory> load_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw CsvError("cannot open " + path.string());
  return parse_csv(in, path.string());
}

Trajectory resample_uniform(const RawTrajectory& raw, double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("dt must be positive");
  const auto& s = raw.samples;
  if (s.size() < 2) throw std::invalid_argument("trajectory shorter than one step");
  const double t0 = s.front().t;
  const double t_end = s.back().t;
  // Grid times within a hair of the last sample still count as on-grid.
  const double slack = 1e-9 * dt;
  if (t_end - t0 + slack < dt) throw std::invalid_argument("trajectory shorter than one step");

  std::vector<Point2> pts;
  std::size_t seg = 0;
  for (std::size_t k = 0;; ++k) {
    const double t = t0 + static_cast<double>(k) * dt;
    if (t > t_end + slack) break;
    while (seg + 2 < s.size() && s[seg + 1].t <= t) ++seg;
    const RawSample& a = s[seg];
    const RawSample& b = s[seg + 1];
    if (t == a.t) {
      pts.push_back({a.x, a.y});
    } else if (t >= b.t) {
      pts.push_back({b.x, b.y});
    } else {
      const double u = (t - a.t) / (b.t - a.t);
      pts.push_back({a.x + u * (b.x - a.x), a.y + u * (b.y - a.y)});
    }
  }
  return Trajectory(dt, std::move(pts));
}

RawTrajectory FrameAlignment::apply(const RawTrajectory& raw) const {
  const double c = std::cos(rotation);
  const double s = std::sin(rotation);
  RawTrajectory out{raw.id, {}};
  out.samples.reserve(raw.samples.size());
  for (const RawSample& r : raw.samples) {
    out.samples.push_back({r.t, c * r.x - s * r.y + offset_x, s * r.x + c * r.y + offset_y});
  }
  return out;
}

void write_csv(std::ostream& out,
               const std::vector<std::pair<std::string, const Trajectory*>>& trajectories) {
  out << "id,t,x,y\n";
  for (const auto& [id, traj] : trajectories) {
    for (std::size_t i = 0; i < traj->size(); ++i) {
      out << id << ',' << format_double(static_cast<double>(i) * traj->dt()) << ','
          << format_double((*traj)[i].x) << ',' << format_double((*traj)[i].y) << '\n';
    }
  }
}

}  // namespace skd
