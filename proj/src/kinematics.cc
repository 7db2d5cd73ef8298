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

#include "mdist/kinematics.h"

#include <cmath>
#include <numbers>

#include "mdist/error.h"

namespace mdist {
namespace {

void RequireFinite(double v, const char* what) {
  if (!std::isfinite(v)) {
    throw ParameterError(std::string(what) + " must be finite");
  }
}

void RequirePositive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw ParameterError(std::string(what) + " must be positive and finite");
  }
}

}  // namespace

BodyVelocity::BodyVelocity(double vx, double vy, double omega)
    : vx_(vx), vy_(vy), omega_(omega) {
  RequireFinite(vx, "vx");
  RequireFinite(vy, "vy");
  RequireFinite(omega, "omega");
}

void WheelCommand::Validate() const {
  RequireFinite(t, "command timestamp");
  RequireFinite(omega_l, "omega_l");
  RequireFinite(omega_r, "omega_r");
}

void AckermannCommand::Validate() const {
  RequireFinite(t, "command timestamp");
  RequireFinite(v_cmd, "v_cmd");
  RequireFinite(delta, "delta");
  if (!(std::abs(delta) < std::numbers::pi / 2)) {
    throw ParameterError("steering angle must satisfy |delta| < pi/2");
  }
}

void VehicleSpec::ValidateGeometry() const {
  RequirePositive(wheel_radius, "wheel_radius");
  RequirePositive(track_width, "track_width");
  if (wheelbase) RequirePositive(*wheelbase, "wheelbase");
}

void VehicleSpec::ValidateInertial() const {
  RequirePositive(mass, "mass");
  RequirePositive(v_max, "v_max");
}

BodyVelocity IdealDiffDrive(const WheelCommand& cmd, const VehicleSpec& spec) {
  spec.ValidateGeometry();
  cmd.Validate();
  const double r = spec.wheel_radius;
  return {r * 0.5 * (cmd.omega_l + cmd.omega_r), 0.0,
          r * (cmd.omega_r - cmd.omega_l) / spec.track_width};
}

BodyVelocity IdealBicycle(const AckermannCommand& cmd, const VehicleSpec& spec) {
  if (!spec.wheelbase) {
    throw ParameterError("bicycle model needs a wheelbase");
  }
  RequirePositive(*spec.wheelbase, "wheelbase");
  cmd.Validate();
  return {cmd.v_cmd, 0.0, cmd.v_cmd * std::tan(cmd.delta) / *spec.wheelbase};
}

double SlipModulus(const BodyVelocity& g, double angular_weight) {
  if (!(angular_weight >= 0.0) || !std::isfinite(angular_weight)) {
    throw ParameterError("angular_weight must be a finite non-negative length");
  }
  const double w = angular_weight * g.omega();
  return std::sqrt(g.vx() * g.vx() + g.vy() * g.vy() + w * w);
}

}  // namespace mdist
