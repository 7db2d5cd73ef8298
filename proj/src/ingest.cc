// Copyright 2026 The mdist Authors
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

#include "mdist/ingest.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "mdist/csv.h"
#include "mdist/error.h"
#include "pose_twist.h"

namespace mdist {
namespace {

void RequireIncreasing(double prev, double t, std::size_t line) {
  if (!(t > prev)) {
    throw ParseError("timestamp " + FormatNumber(t) +
                         " does not increase past " + FormatNumber(prev),
                     line);
  }
}

template <typename Row>
std::vector<Row> ParseRows(std::istream& in,
                           std::initializer_list<const char*> columns,
                           Row (*make)(const double*)) {
  const CsvTable table = ReadCsv(in);
  std::vector<std::size_t> index;
  for (const char* c : columns) index.push_back(table.Column(c));

  std::vector<Row> out;
  out.reserve(table.rows.size());
  double values[4] = {};
  double prev_t = -INFINITY;
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const std::size_t line = table.row_lines[r];
    for (std::size_t c = 0; c < index.size(); ++c) {
      values[c] = ParseNumber(table.rows[r][index[c]], line);
    }
    if (r > 0) RequireIncreasing(prev_t, values[0], line);
    prev_t = values[0];
    out.push_back(make(values));
  }
  return out;
}

std::string Unquote(std::string_view v) {
  if (v.size() >= 2 && (v.front() == '"' || v.front() == '\'') &&
      v.back() == v.front()) {
    return std::string(v.substr(1, v.size() - 2));
  }
  return std::string(v);
}

std::string_view TrimView(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

double WrapAngle(double angle) {
  constexpr double kTwoPi = 2.0 * std::numbers::pi;
  double a = std::remainder(angle, kTwoPi);  // [-pi, pi]
  if (a <= -std::numbers::pi) a += kTwoPi;
  return a;
}

PoseSample::PoseSample(double t, double x, double y, double yaw)
    : t(t), x(x), y(y), yaw(WrapAngle(yaw)) {}

std::vector<WheelCommand> ParseCommandCsv(std::istream& in) {
  return ParseRows<WheelCommand>(in, {"t", "omega_l", "omega_r"},
                                 [](const double* v) {
                                   return WheelCommand{v[0], v[1], v[2]};
                                 });
}

std::vector<PoseSample> ParsePoseCsv(std::istream& in) {
  return ParseRows<PoseSample>(in, {"t", "x", "y", "yaw"}, [](const double* v) {
    return PoseSample(v[0], v[1], v[2], v[3]);
  });
}

std::vector<TimedVelocity> ParseVelocityCsv(std::istream& in) {
  return ParseRows<TimedVelocity>(in, {"t", "vx", "vy", "omega"},
                                  [](const double* v) {
                                    return TimedVelocity{v[0], {v[1], v[2], v[3]}};
                                  });
}

RawStream ParseLog(const std::filesystem::path& path, LogFormat format) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  try {
    switch (format) {
      case LogFormat::kCommandCsv:
        return ParseCommandCsv(in);
      case LogFormat::kPoseCsv:
        return ParsePoseCsv(in);
      case LogFormat::kVelocityCsv:
        return ParseVelocityCsv(in);
    }
  } catch (const ParseError& e) {
    throw e.InSource(path.string());
  }
  throw ParameterError("unknown log format");
}

std::string WriteCommandCsv(std::span<const WheelCommand> commands) {
  std::string out = "t,omega_l,omega_r\n";
  for (const auto& c : commands) {
    out += FormatNumber(c.t) + ',' + FormatNumber(c.omega_l) + ',' +
           FormatNumber(c.omega_r) + '\n';
  }
  return out;
}

std::string WritePoseCsv(std::span<const PoseSample> poses) {
  std::string out = "t,x,y,yaw\n";
  for (const auto& p : poses) {
    out += FormatNumber(p.t) + ',' + FormatNumber(p.x) + ',' +
           FormatNumber(p.y) + ',' + FormatNumber(p.yaw) + '\n';
  }
  return out;
}

std::string WriteVelocityCsv(std::span<const TimedVelocity> velocities) {
  std::string out = "t,vx,vy,omega\n";
  for (const auto& s : velocities) {
    out += FormatNumber(s.t) + ',' + FormatNumber(s.v.vx()) + ',' +
           FormatNumber(s.v.vy()) + ',' + FormatNumber(s.v.omega()) + '\n';
  }
  return out;
}

std::vector<TimedVelocity> BodyVelocityFromPoses(std::span<const PoseSample> poses) {
  const std::vector<double> yaw = internal::UnwrapPoses(poses);
  const std::size_t n = poses.size();
  std::vector<TimedVelocity> out(n);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n); ++i) {
    const auto [a, b] = internal::Stencil(static_cast<std::size_t>(i), n);
    out[i] = {poses[i].t, internal::PairTwist(poses[a], yaw[a], poses[b], yaw[b])};
  }
  return out;
}

double InterpolateLinear(std::span<const double> times,
                         std::span<const double> values, double t) {
  if (times.empty() || times.size() != values.size()) {
    throw ParameterError("interpolation needs equally sized, non-empty inputs");
  }
  if (t < times.front() || t > times.back()) {
    throw ParameterError("interpolation point " + FormatNumber(t) +
                         " outside sampled span");
  }
  auto it = std::upper_bound(times.begin(), times.end(), t);
  if (it == times.end()) return values.back();
  const std::size_t hi = static_cast<std::size_t>(it - times.begin());
  const std::size_t lo = hi - 1;
  if (t == times[lo]) return values[lo];
  const double w = (t - times[lo]) / (times[hi] - times[lo]);
  return values[lo] + w * (values[hi] - values[lo]);
}

void AlignedDataset::Validate() const {
  if (!(grid_dt > 0.0)) throw ParameterError("grid_dt must be positive");
  if (commands.size() != velocities.size()) {
    throw ValidationError("aligned commands and velocities differ in length");
  }
}

namespace {

double NearestDistance(std::span<const double> times, double t) {
  auto it = std::lower_bound(times.begin(), times.end(), t);
  double best = INFINITY;
  if (it != times.end()) best = *it - t;
  if (it != times.begin()) best = std::min(best, t - *(it - 1));
  return best;
}

void RequireSorted(std::span<const double> times, const char* what) {
  for (std::size_t i = 1; i < times.size(); ++i) {
    if (!(times[i] > times[i - 1])) {
      throw ParseError(std::string(what) + " timestamps must strictly increase");
    }
  }
}

}  // namespace

AlignedDataset Align(std::span<const WheelCommand> commands,
                     std::span<const TimedVelocity> velocities,
                     const AlignOptions& options) {
  if (!(options.grid_dt > 0.0) || !std::isfinite(options.grid_dt)) {
    throw ParameterError("grid_dt must be positive");
  }
  if (!(options.max_gap >= options.grid_dt) || !std::isfinite(options.max_gap)) {
    throw ParameterError("max_gap must be at least grid_dt");
  }
  if (commands.empty() || velocities.empty()) {
    throw InsufficientDataError("cannot align an empty stream");
  }

  const std::size_t nc = commands.size();
  const std::size_t nv = velocities.size();
  std::vector<double> ct(nc), cl(nc), cr(nc);
  for (std::size_t i = 0; i < nc; ++i) {
    ct[i] = commands[i].t;
    cl[i] = commands[i].omega_l;
    cr[i] = commands[i].omega_r;
  }
  std::vector<double> vt(nv), vx(nv), vy(nv), vw(nv);
  for (std::size_t i = 0; i < nv; ++i) {
    vt[i] = velocities[i].t;
    vx[i] = velocities[i].v.vx();
    vy[i] = velocities[i].v.vy();
    vw[i] = velocities[i].v.omega();
  }
  RequireSorted(ct, "command");
  RequireSorted(vt, "velocity");

  const double start = std::max(ct.front(), vt.front());
  const double end = std::min(ct.back(), vt.back());
  if (start > end) {
    throw AlignmentError("command span [" + FormatNumber(ct.front()) + ", " +
                         FormatNumber(ct.back()) + "] and velocity span [" +
                         FormatNumber(vt.front()) + ", " + FormatNumber(vt.back()) +
                         "] do not overlap");
  }

  AlignedDataset out;
  out.grid_dt = options.grid_dt;
  const auto steps =
      static_cast<std::size_t>(std::floor((end - start) / options.grid_dt + 1e-9));
  // Rounding slack when comparing against max_gap.
  const double slack = 1e-9 * options.grid_dt;
  for (std::size_t k = 0; k <= steps; ++k) {
    const double t = std::min(start + static_cast<double>(k) * options.grid_dt, end);
    if (NearestDistance(ct, t) > options.max_gap + slack ||
        NearestDistance(vt, t) > options.max_gap + slack) {
      continue;
    }
    out.commands.push_back(
        {t, InterpolateLinear(ct, cl, t), InterpolateLinear(ct, cr, t)});
    out.velocities.emplace_back(InterpolateLinear(vt, vx, t),
                                InterpolateLinear(vt, vy, t),
                                InterpolateLinear(vt, vw, t));
  }
  if (out.commands.empty()) {
    throw AlignmentError("no grid point lies within max_gap of both streams");
  }
  return out;
}

DatasetSidecar ParseSidecar(std::istream& in) {
  DatasetSidecar sc;
  bool have[6] = {};
  std::string raw;
  std::size_t lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string_view line = raw;
    // Strip a trailing comment that is not inside quotes.
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
      if (line[i] == '"') quoted = !quoted;
      if (line[i] == '#' && !quoted) {
        line = line.substr(0, i);
        break;
      }
    }
    line = TrimView(line);
    if (line.empty() || line.front() == '[') continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ParseError("expected 'key = value'", lineno);
    }
    const std::string key(TrimView(line.substr(0, eq)));
    const std::string_view value = TrimView(line.substr(eq + 1));
    if (key == "name") {
      sc.name = Unquote(value);
      have[0] = true;
    } else if (key == "vehicle") {
      sc.vehicle.name = Unquote(value);
    } else if (key == "wheel_radius") {
      sc.vehicle.wheel_radius = ParseNumber(value, lineno);
      have[1] = true;
    } else if (key == "track_width") {
      sc.vehicle.track_width = ParseNumber(value, lineno);
      have[2] = true;
    } else if (key == "mass") {
      sc.vehicle.mass = ParseNumber(value, lineno);
      have[3] = true;
    } else if (key == "v_max") {
      sc.vehicle.v_max = ParseNumber(value, lineno);
      have[4] = true;
    } else if (key == "terrain") {
      sc.terrain = Unquote(value);
      have[5] = true;
    } else if (key == "wheelbase") {
      sc.vehicle.wheelbase = ParseNumber(value, lineno);
    } else if (key == "commands") {
      sc.commands_file = Unquote(value);
    } else if (key == "poses") {
      sc.poses_file = Unquote(value);
    } else if (key == "velocities") {
      sc.velocities_file = Unquote(value);
    } else {
      throw ParseError("unknown key '" + key + "'", lineno);
    }
  }
  static constexpr const char* kRequired[] = {"name", "wheel_radius", "track_width",
                                              "mass", "v_max", "terrain"};
  for (std::size_t i = 0; i < 6; ++i) {
    if (!have[i]) throw ParseError(std::string("missing key '") + kRequired[i] + "'");
  }
  if (sc.vehicle.name.empty()) sc.vehicle.name = sc.name;
  try {
    sc.vehicle.Validate();
  } catch (const ParameterError& e) {
    throw ParseError(std::string("invalid vehicle: ") + e.what());
  }
  return sc;
}

std::string WriteSidecar(const DatasetSidecar& sc) {
  std::ostringstream out;
  out << "name = \"" << sc.name << "\"\n"
      << "vehicle = \"" << sc.vehicle.name << "\"\n"
      << "wheel_radius = " << FormatNumber(sc.vehicle.wheel_radius) << '\n'
      << "track_width = " << FormatNumber(sc.vehicle.track_width) << '\n'
      << "mass = " << FormatNumber(sc.vehicle.mass) << '\n'
      << "v_max = " << FormatNumber(sc.vehicle.v_max) << '\n';
  if (sc.vehicle.wheelbase) {
    out << "wheelbase = " << FormatNumber(*sc.vehicle.wheelbase) << '\n';
  }
  out << "terrain = \"" << sc.terrain << "\"\n"
      << "commands = \"" << sc.commands_file << "\"\n"
      << "poses = \"" << sc.poses_file << "\"\n"
      << "velocities = \"" << sc.velocities_file << "\"\n";
  return out.str();
}

AlignedDataset LoadDataset(const std::filesystem::path& dir,
                           const TerrainScale& scale, const LoadOptions& options) {
  namespace fs = std::filesystem;
  const fs::path sidecar_path = dir / kSidecarFileName;
  if (!fs::is_regular_file(sidecar_path)) {
    throw IoError("missing sidecar '" + sidecar_path.string() + "'");
  }
  DatasetSidecar sc;
  {
    std::ifstream in(sidecar_path, std::ios::binary);
    try {
      sc = ParseSidecar(in);
    } catch (const ParseError& e) {
      throw e.InSource(sidecar_path.string());
    }
  }
  const TerrainClass terrain = scale.Lookup(sc.terrain);

  const fs::path cmd_path = dir / sc.commands_file;
  if (!fs::is_regular_file(cmd_path)) {
    throw IoError("missing command log '" + cmd_path.string() + "'");
  }
  const auto commands =
      std::get<std::vector<WheelCommand>>(ParseLog(cmd_path, LogFormat::kCommandCsv));

  const fs::path vel_path = dir / sc.velocities_file;
  const fs::path pose_path = dir / sc.poses_file;
  std::vector<TimedVelocity> velocities;
  std::string source = "velocities";
  if (!options.from_poses && fs::is_regular_file(vel_path)) {
    velocities = std::get<std::vector<TimedVelocity>>(
        ParseLog(vel_path, LogFormat::kVelocityCsv));
  } else if (fs::is_regular_file(pose_path)) {
    const auto poses =
        std::get<std::vector<PoseSample>>(ParseLog(pose_path, LogFormat::kPoseCsv));
    velocities = BodyVelocityFromPoses(poses);
    source = "poses";
  } else {
    throw IoError("missing observed-motion log: neither '" + vel_path.string() +
                  "' nor '" + pose_path.string() + "' exists");
  }

  AlignedDataset ds = Align(commands, velocities, options.align);
  ds.name = sc.name;
  ds.vehicle = sc.vehicle;
  ds.terrain = terrain;
  ds.velocity_source = source;
  return ds;
}

}  // namespace mdist
