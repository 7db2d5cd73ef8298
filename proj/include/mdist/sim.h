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

#ifndef MDIST_SIM_H_
#define MDIST_SIM_H_

#include <cstdint>
#include <filesystem>
#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mdist/ingest.h"
#include "mdist/kinematics.h"

namespace mdist::sim {

// Generative slip model used to synthesize "observed" motion.
//   target = ((1 - s) f_x,  c b f_w,  a f_w)
// followed by a first-order lag of time constant tau and additive Gaussian
// noise on each channel. The lateral term is scaled by the track width b so
// that c stays dimensionless.
struct SlipModel {
  double lon_slip = 0.0;      // s in [0, 1)
  double lat_coupling = 0.0;  // c
  double ang_scale = 1.0;     // a in (0, 1]
  double tau = 0.0;           // [s], 0 = instantaneous
  double noise_sigma = 0.0;   // per-channel std

  void Validate() const;
  // Observed velocity equals the ideal one.
  static SlipModel Identity() { return {}; }
};

enum class Profile { kRamp, kStep, kSine, kRandomWalk, kMixed };

Profile ParseProfile(std::string_view name);
std::string_view ProfileName(Profile profile);

struct ProfileParams {
  // Peak forward speed [m/s]; defaults to v_max and is clamped to it.
  std::optional<double> amplitude;
  // Lower level of the step profile [m/s].
  double low_level = 0.0;
  // Time of the (first) step [s]; defaults to half the duration.
  std::optional<double> step_time;
  // When > 0 the step toggles between low and high every half period.
  double step_period = 0.0;
  // Yaw rate held during ramp and step profiles [rad/s].
  double yaw_rate = 0.0;
  double sine_period = 10.0;          // [s]
  double sine_yaw_amplitude = 0.3;    // [rad/s]
  double walk_sigma = 0.5;            // forward-speed walk intensity [m/s/sqrt(s)]
  double walk_yaw_sigma = 0.3;        // yaw-rate walk intensity [rad/s/sqrt(s)]
};

// floor(duration / dt + 1e-9) samples at t_k = k dt. Ramp rises linearly
// from 0 to the amplitude over the run. Step holds `low_level` before
// `step_time` and the amplitude after. Sine oscillates forward speed in
// [0, amplitude] and yaw rate in +-sine_yaw_amplitude. Random walk drifts
// both inside the same bounds. Mixed runs ramp, step, sine and random walk
// in four equal consecutive segments. Deterministic for a given seed; the
// ideal forward speed never exceeds v_max.
std::vector<WheelCommand> GenerateCommands(Profile profile, double duration, double dt,
                                           const VehicleSpec& spec, std::uint64_t seed,
                                           const ProfileParams& params = {});

struct SimulatedRun {
  std::vector<TimedVelocity> velocities;  // observed body twist per command
  std::vector<PoseSample> poses;          // integrated from the observed twist
};

// Observed motion for a command stream. With tau > 0 the vehicle starts at
// rest and relaxes towards the target with the exact discrete response of
// a first-order system under a held target. Poses start at the origin; each
// interval is integrated with the mean of its endpoint twists at the
// mid-interval heading.
SimulatedRun ApplySlip(const std::vector<WheelCommand>& commands, const VehicleSpec& spec,
                       const SlipModel& model, std::uint64_t seed);

// Scenario file, `key = value` per line:
//
//   name = "husky_s02"
//   vehicle = "husky"        # preset: husky | warthog
//   wheel_radius = 0.165     # explicit values override the preset
//   track_width = 0.555
//   mass = 75
//   v_max = 1
//   terrain = "tile"
//   profile = "step"         # ramp | step | sine | random_walk | mixed
//   duration = 60
//   dt = 0.05
//   seed = 7
//   lon_slip = 0.2
//   lat_coupling = 0
//   ang_scale = 1
//   tau = 0
//   noise_sigma = 0
//   amplitude, low_level, step_time, step_period, yaw_rate, sine_period,
//   sine_yaw_amplitude, walk_sigma, walk_yaw_sigma   # optional
struct Scenario {
  std::string name = "simulated";
  VehicleSpec vehicle;
  std::string terrain = "asphalt";
  Profile profile = Profile::kStep;
  double duration = 60.0;
  double dt = 0.05;
  std::uint64_t seed = 0;
  ProfileParams params;
  SlipModel slip;
};

Scenario ParseScenario(std::istream& in);
Scenario ReadScenarioFile(const std::filesystem::path& path);

// Writes commands.csv, poses.csv, velocities.csv and dataset.toml into `dir`
// (created if needed).
void WriteSimulatedDataset(const Scenario& scenario, const std::filesystem::path& dir);

}  // namespace mdist::sim

#endif  // MDIST_SIM_H_
