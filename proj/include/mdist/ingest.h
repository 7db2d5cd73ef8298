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

#ifndef MDIST_INGEST_H_
#define MDIST_INGEST_H_

#include <filesystem>
#include <istream>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "mdist/kinematics.h"
#include "mdist/mapping.h"

namespace mdist {

// World-frame planar pose. Yaw is wrapped to (-pi, pi] on construction.
struct PoseSample {
  PoseSample() = default;
  PoseSample(double t, double x, double y, double yaw);

  double t = 0.0;
  double x = 0.0;
  double y = 0.0;
  double yaw = 0.0;
};

struct TimedVelocity {
  double t = 0.0;
  BodyVelocity v;
};

// Wraps an angle to (-pi, pi].
double WrapAngle(double angle);

enum class LogFormat { kCommandCsv, kPoseCsv, kVelocityCsv };

using RawStream = std::variant<std::vector<WheelCommand>, std::vector<PoseSample>,
                               std::vector<TimedVelocity>>;

// Column sets:
//   command_csv   t,omega_l,omega_r
//   pose_csv      t,x,y,yaw
//   velocity_csv  t,vx,vy,omega
// Extra columns are ignored. A header-only file yields an empty stream.
// ParseError (with line number) on missing columns, unparseable or
// non-finite numbers, and timestamps that do not strictly increase.
std::vector<WheelCommand> ParseCommandCsv(std::istream& in);
std::vector<PoseSample> ParsePoseCsv(std::istream& in);
std::vector<TimedVelocity> ParseVelocityCsv(std::istream& in);
RawStream ParseLog(const std::filesystem::path& path, LogFormat format);

std::string WriteCommandCsv(std::span<const WheelCommand> commands);
std::string WritePoseCsv(std::span<const PoseSample> poses);
std::string WriteVelocityCsv(std::span<const TimedVelocity> velocities);

// Body-frame twist from a pose sequence. Interior samples use the two
// neighbours, the ends use one-sided pairs. For each pair the world
// displacement is rotated by minus the mean (unwrapped) heading and divided
// by dt * sinc(dyaw / 2), which makes the estimate exact for any constant
// twist. InsufficientDataError below 3 poses, ParseError on repeated or
// decreasing timestamps. Runs in parallel.
std::vector<TimedVelocity> BodyVelocityFromPoses(std::span<const PoseSample> poses);

// Piecewise-linear interpolation of a sampled channel. `times` strictly
// increasing, `t` inside [times.front(), times.back()].
double InterpolateLinear(std::span<const double> times,
                         std::span<const double> values, double t);

struct AlignedDataset {
  std::string name;
  VehicleSpec vehicle;
  TerrainClass terrain;
  double grid_dt = 0.05;
  std::vector<WheelCommand> commands;  // timestamps are the grid
  std::vector<BodyVelocity> velocities;
  // "velocities" or "poses" when loaded from a directory.
  std::string velocity_source;

  std::size_t size() const { return commands.size(); }
  // Equal lengths and grid_dt > 0.
  void Validate() const;
};

struct AlignOptions {
  double grid_dt = 0.05;  // [s]
  double max_gap = 0.2;   // [s], >= grid_dt
};

// Resamples both streams on a uniform grid over their overlap. Grid points
// whose nearest raw sample in either stream is further than max_gap are
// dropped; nothing is extrapolated. AlignmentError on an empty overlap,
// InsufficientDataError on an empty stream. Only the commands and velocities
// of the result are filled in.
AlignedDataset Align(std::span<const WheelCommand> commands,
                     std::span<const TimedVelocity> velocities,
                     const AlignOptions& options = {});

// Key/value sidecar describing a dataset directory (`dataset.toml`):
//
//   name = "husky_tile"
//   vehicle = "husky"
//   wheel_radius = 0.165
//   track_width = 0.555
//   mass = 75
//   v_max = 1.0
//   terrain = "tile"
//   wheelbase = 0.5          # optional
//   commands = "commands.csv"      # optional, default shown
//   poses = "poses.csv"            # optional, default shown
//   velocities = "velocities.csv"  # optional, default shown
struct DatasetSidecar {
  std::string name;
  VehicleSpec vehicle;
  std::string terrain;
  std::string commands_file = "commands.csv";
  std::string poses_file = "poses.csv";
  std::string velocities_file = "velocities.csv";
};

inline constexpr const char* kSidecarFileName = "dataset.toml";

DatasetSidecar ParseSidecar(std::istream& in);
std::string WriteSidecar(const DatasetSidecar& sidecar);

struct LoadOptions {
  AlignOptions align;
  // Use poses even when a velocity file exists.
  bool from_poses = false;
};

// Reads the sidecar and streams of `dir` and aligns them. IoError naming the
// missing file when the sidecar or command log is absent, or when neither a
// velocity nor a pose log exists.
AlignedDataset LoadDataset(const std::filesystem::path& dir,
                           const TerrainScale& scale,
                           const LoadOptions& options = {});

}  // namespace mdist

#endif  // MDIST_INGEST_H_
