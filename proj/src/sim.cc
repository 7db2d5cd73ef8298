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

#include "mdist/sim.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <random>

#include "mdist/case_study.h"
#include "mdist/csv.h"
#include "mdist/error.h"

namespace mdist::sim {
namespace {

struct Twist2 {
  double forward = 0.0;
  double yaw_rate = 0.0;
};

WheelCommand ToWheels(double t, const Twist2& tw, const VehicleSpec& spec) {
  const double half_track = 0.5 * spec.track_width * tw.yaw_rate;
  return {t, (tw.forward - half_track) / spec.wheel_radius,
          (tw.forward + half_track) / spec.wheel_radius};
}

double Reflect(double v, double lo, double hi) {
  if (hi <= lo) return lo;
  const double span = hi - lo;
  double u = std::fmod(v - lo, 2.0 * span);
  if (u < 0) u += 2.0 * span;
  return lo + (u <= span ? u : 2.0 * span - u);
}

std::size_t SampleCount(double duration, double dt) {
  return static_cast<std::size_t>(std::floor(duration / dt + 1e-9));
}

std::vector<Twist2> SingleProfile(Profile profile, std::size_t n, double duration,
                                  double dt, double amplitude, const ProfileParams& p,
                                  std::mt19937_64& rng) {
  std::vector<Twist2> out(n);
  const double two_pi = 2.0 * std::numbers::pi;
  switch (profile) {
    case Profile::kRamp:
      for (std::size_t k = 0; k < n; ++k) {
        const double t = static_cast<double>(k) * dt;
        out[k] = {amplitude * std::min(1.0, t / duration), p.yaw_rate};
      }
      break;
    case Profile::kStep: {
      const double step_time = p.step_time.value_or(0.5 * duration);
      for (std::size_t k = 0; k < n; ++k) {
        const double t = static_cast<double>(k) * dt;
        bool high = t >= step_time;
        if (high && p.step_period > 0.0) {
          // Toggle every half period after the first step.
          const auto half = static_cast<long long>(
              std::floor((t - step_time) / (0.5 * p.step_period) + 1e-9));
          high = half % 2 == 0;
        }
        out[k] = {high ? amplitude : p.low_level, p.yaw_rate};
      }
      break;
    }
    case Profile::kSine:
      for (std::size_t k = 0; k < n; ++k) {
        const double phase = two_pi * static_cast<double>(k) * dt / p.sine_period;
        out[k] = {amplitude * 0.5 * (1.0 - std::cos(phase)),
                  p.sine_yaw_amplitude * std::sin(phase)};
      }
      break;
    case Profile::kRandomWalk: {
      std::normal_distribution<double> normal(0.0, 1.0);
      const double sq = std::sqrt(dt);
      Twist2 state{0.5 * amplitude, 0.0};
      for (std::size_t k = 0; k < n; ++k) {
        out[k] = state;
        state.forward = Reflect(state.forward + p.walk_sigma * sq * normal(rng), 0.0,
                                amplitude);
        state.yaw_rate =
            Reflect(state.yaw_rate + p.walk_yaw_sigma * sq * normal(rng),
                    -p.sine_yaw_amplitude, p.sine_yaw_amplitude);
      }
      break;
    }
    case Profile::kMixed:
      throw ParameterError("mixed profile cannot be nested");
  }
  return out;
}

void ValidateParams(const ProfileParams& p) {
  auto finite = [](double v) { return std::isfinite(v); };
  if (p.amplitude && !(*p.amplitude >= 0.0 && finite(*p.amplitude))) {
    throw ParameterError("amplitude must be non-negative");
  }
  if (p.step_time && !finite(*p.step_time)) throw ParameterError("step_time must be finite");
  if (!(p.step_period >= 0.0) || !finite(p.step_period)) {
    throw ParameterError("step_period must be non-negative");
  }
  if (!(p.sine_period > 0.0) || !finite(p.sine_period)) {
    throw ParameterError("sine_period must be positive");
  }
  if (!finite(p.low_level) || !finite(p.yaw_rate) || !finite(p.sine_yaw_amplitude) ||
      !(p.walk_sigma >= 0.0) || !(p.walk_yaw_sigma >= 0.0) || !finite(p.walk_sigma) ||
      !finite(p.walk_yaw_sigma) || p.sine_yaw_amplitude < 0.0) {
    throw ParameterError("invalid profile parameters");
  }
}

}  // namespace

void SlipModel::Validate() const {
  if (!(lon_slip >= 0.0 && lon_slip < 1.0)) throw ParameterError("lon_slip must be in [0, 1)");
  if (!std::isfinite(lat_coupling)) throw ParameterError("lat_coupling must be finite");
  if (!(ang_scale > 0.0 && ang_scale <= 1.0)) {
    throw ParameterError("ang_scale must be in (0, 1]");
  }
  if (!(tau >= 0.0) || !std::isfinite(tau)) throw ParameterError("tau must be non-negative");
  if (!(noise_sigma >= 0.0) || !std::isfinite(noise_sigma)) {
    throw ParameterError("noise_sigma must be non-negative");
  }
}

Profile ParseProfile(std::string_view name) {
  if (name == "ramp") return Profile::kRamp;
  if (name == "step") return Profile::kStep;
  if (name == "sine") return Profile::kSine;
  if (name == "random_walk") return Profile::kRandomWalk;
  if (name == "mixed") return Profile::kMixed;
  throw ParameterError("unknown profile '" + std::string(name) + "'");
}

std::string_view ProfileName(Profile profile) {
  switch (profile) {
    case Profile::kRamp: return "ramp";
    case Profile::kStep: return "step";
    case Profile::kSine: return "sine";
    case Profile::kRandomWalk: return "random_walk";
    case Profile::kMixed: return "mixed";
  }
  return "unknown";
}

std::vector<WheelCommand> GenerateCommands(Profile profile, double duration, double dt,
                                           const VehicleSpec& spec, std::uint64_t seed,
                                           const ProfileParams& params) {
  if (!(duration > 0.0) || !std::isfinite(duration)) {
    throw ParameterError("duration must be positive");
  }
  if (!(dt > 0.0) || !std::isfinite(dt)) throw ParameterError("dt must be positive");
  spec.Validate();
  ValidateParams(params);
  const double amplitude = std::min(params.amplitude.value_or(spec.v_max), spec.v_max);
  if (std::abs(params.low_level) > spec.v_max) {
    throw ParameterError("low_level exceeds v_max");
  }
  const std::size_t n = SampleCount(duration, dt);
  if (n == 0) throw ParameterError("duration shorter than one time step");

  std::mt19937_64 rng(seed);
  std::vector<Twist2> twists;
  if (profile == Profile::kMixed) {
    const Profile parts[] = {Profile::kRamp, Profile::kStep, Profile::kSine,
                             Profile::kRandomWalk};
    const double segment = duration / 4.0;
    ProfileParams seg_params = params;
    seg_params.step_time.reset();
    for (std::size_t i = 0; i < 4; ++i) {
      const std::size_t begin = n * i / 4;
      const std::size_t end = n * (i + 1) / 4;
      auto part = SingleProfile(parts[i], end - begin, segment, dt, amplitude, seg_params, rng);
      twists.insert(twists.end(), part.begin(), part.end());
    }
  } else {
    twists = SingleProfile(profile, n, duration, dt, amplitude, params, rng);
  }

  std::vector<WheelCommand> out;
  out.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    out.push_back(ToWheels(static_cast<double>(k) * dt, twists[k], spec));
  }
  return out;
}

SimulatedRun ApplySlip(const std::vector<WheelCommand>& commands, const VehicleSpec& spec,
                       const SlipModel& model, std::uint64_t seed) {
  model.Validate();
  spec.ValidateGeometry();
  SimulatedRun run;
  run.velocities.reserve(commands.size());
  run.poses.reserve(commands.size());

  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  std::normal_distribution<double> noise(0.0, 1.0);
  const double b = spec.track_width;

  double state[3] = {0.0, 0.0, 0.0};
  for (std::size_t k = 0; k < commands.size(); ++k) {
    const BodyVelocity f = IdealDiffDrive(commands[k], spec);
    const double target[3] = {(1.0 - model.lon_slip) * f.vx(),
                              model.lat_coupling * b * f.omega(),
                              model.ang_scale * f.omega()};
    const bool last = k + 1 == commands.size();
    const double dt = last ? 0.0 : commands[k + 1].t - commands[k].t;
    if (!last && !(dt > 0.0)) throw ParameterError("command timestamps must strictly increase");

    double observed[3];
    if (model.tau > 0.0) {
      const double decay = std::exp(-dt / model.tau);
      for (int c = 0; c < 3; ++c) {
        observed[c] = state[c];
        state[c] = target[c] + (state[c] - target[c]) * decay;
      }
    } else {
      for (int c = 0; c < 3; ++c) observed[c] = target[c];
    }
    if (model.noise_sigma > 0.0) {
      for (double& o : observed) o += model.noise_sigma * noise(rng);
    }
    run.velocities.push_back({commands[k].t, {observed[0], observed[1], observed[2]}});
  }

  // Each interval is driven by the mean of its endpoint twists, applied at
  // the mid-interval heading.
  double x = 0.0, y = 0.0, yaw = 0.0;
  for (std::size_t k = 0; k < run.velocities.size(); ++k) {
    run.poses.emplace_back(run.velocities[k].t, x, y, yaw);
    if (k + 1 == run.velocities.size()) break;
    const double dt = run.velocities[k + 1].t - run.velocities[k].t;
    const BodyVelocity mid = 0.5 * (run.velocities[k].v + run.velocities[k + 1].v);
    const double heading = yaw + 0.5 * mid.omega() * dt;
    const double c = std::cos(heading), s = std::sin(heading);
    x += (c * mid.vx() - s * mid.vy()) * dt;
    y += (s * mid.vx() + c * mid.vy()) * dt;
    yaw += mid.omega() * dt;
  }
  return run;
}

namespace {

std::string_view Trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string Unquote(std::string_view v) {
  if (v.size() >= 2 && (v.front() == '"' || v.front() == '\'') && v.back() == v.front()) {
    return std::string(v.substr(1, v.size() - 2));
  }
  return std::string(v);
}

}  // namespace

Scenario ParseScenario(std::istream& in) {
  Scenario sc;
  std::optional<std::string> preset;
  std::optional<double> r, b, mass, v_max, wheelbase;
  std::string raw;
  std::size_t lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string_view line = raw;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
      if (line[i] == '"') quoted = !quoted;
      if (line[i] == '#' && !quoted) {
        line = line.substr(0, i);
        break;
      }
    }
    line = Trim(line);
    if (line.empty() || line.front() == '[') continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ParseError("expected 'key = value'", lineno);
    const std::string key(Trim(line.substr(0, eq)));
    const std::string_view value = Trim(line.substr(eq + 1));
    auto num = [&] { return ParseNumber(value, lineno); };
    try {
      if (key == "name") sc.name = Unquote(value);
      else if (key == "vehicle") preset = Unquote(value);
      else if (key == "wheel_radius") r = num();
      else if (key == "track_width") b = num();
      else if (key == "mass") mass = num();
      else if (key == "v_max") v_max = num();
      else if (key == "wheelbase") wheelbase = num();
      else if (key == "terrain") sc.terrain = Unquote(value);
      else if (key == "profile") sc.profile = ParseProfile(Unquote(value));
      else if (key == "duration") sc.duration = num();
      else if (key == "dt") sc.dt = num();
      else if (key == "seed") {
        const double s = num();
        if (s < 0 || s != std::floor(s) || s > 9.0e15) {
          throw ParseError("seed must be a non-negative integer", lineno);
        }
        sc.seed = static_cast<std::uint64_t>(s);
      } else if (key == "lon_slip") sc.slip.lon_slip = num();
      else if (key == "lat_coupling") sc.slip.lat_coupling = num();
      else if (key == "ang_scale") sc.slip.ang_scale = num();
      else if (key == "tau") sc.slip.tau = num();
      else if (key == "noise_sigma") sc.slip.noise_sigma = num();
      else if (key == "amplitude") sc.params.amplitude = num();
      else if (key == "low_level") sc.params.low_level = num();
      else if (key == "step_time") sc.params.step_time = num();
      else if (key == "step_period") sc.params.step_period = num();
      else if (key == "yaw_rate") sc.params.yaw_rate = num();
      else if (key == "sine_period") sc.params.sine_period = num();
      else if (key == "sine_yaw_amplitude") sc.params.sine_yaw_amplitude = num();
      else if (key == "walk_sigma") sc.params.walk_sigma = num();
      else if (key == "walk_yaw_sigma") sc.params.walk_yaw_sigma = num();
      else throw ParseError("unknown key '" + key + "'", lineno);
    } catch (const ParameterError& e) {
      throw ParseError(e.what(), lineno);
    }
  }

  if (preset) {
    if (*preset == "husky") sc.vehicle = case_study::Husky();
    else if (*preset == "warthog") sc.vehicle = case_study::Warthog();
    else sc.vehicle.name = *preset;
  }
  if (r) sc.vehicle.wheel_radius = *r;
  if (b) sc.vehicle.track_width = *b;
  if (mass) sc.vehicle.mass = *mass;
  if (v_max) sc.vehicle.v_max = *v_max;
  if (wheelbase) sc.vehicle.wheelbase = *wheelbase;
  if (sc.vehicle.name.empty()) sc.vehicle.name = "vehicle";
  try {
    sc.vehicle.Validate();
    sc.slip.Validate();
    ValidateParams(sc.params);
    if (!(sc.duration > 0.0) || !(sc.dt > 0.0) || SampleCount(sc.duration, sc.dt) < 3) {
      throw ParameterError("duration and dt must give at least 3 samples");
    }
  } catch (const ParameterError& e) {
    throw ParseError(std::string("invalid scenario: ") + e.what());
  }
  return sc;
}

Scenario ReadScenarioFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open scenario '" + path.string() + "'");
  try {
    return ParseScenario(in);
  } catch (const ParseError& e) {
    throw e.InSource(path.string());
  }
}

void WriteSimulatedDataset(const Scenario& scenario, const std::filesystem::path& dir) {
  const auto commands = GenerateCommands(scenario.profile, scenario.duration, scenario.dt,
                                         scenario.vehicle, scenario.seed, scenario.params);
  const SimulatedRun run = ApplySlip(commands, scenario.vehicle, scenario.slip, scenario.seed);

  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create '" + dir.string() + "'");

  DatasetSidecar sidecar;
  sidecar.name = scenario.name;
  sidecar.vehicle = scenario.vehicle;
  sidecar.terrain = scenario.terrain;
  WriteFileAtomic(dir / sidecar.commands_file, WriteCommandCsv(commands));
  WriteFileAtomic(dir / sidecar.poses_file, WritePoseCsv(run.poses));
  WriteFileAtomic(dir / sidecar.velocities_file, WriteVelocityCsv(run.velocities));
  WriteFileAtomic(dir / kSidecarFileName, WriteSidecar(sidecar));
}

}  // namespace mdist::sim
