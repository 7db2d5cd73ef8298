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

#ifndef MDIST_KINEMATICS_H_
#define MDIST_KINEMATICS_H_

#include <optional>
#include <string>

namespace mdist {

// Planar twist expressed in the vehicle body frame: origin at the centre of
// rotation, x along the longitudinal axis. Components are always finite.
class BodyVelocity {
 public:
  constexpr BodyVelocity() = default;
  // Throws ParameterError on a non-finite component.
  BodyVelocity(double vx, double vy, double omega);

  double vx() const { return vx_; }
  double vy() const { return vy_; }
  double omega() const { return omega_; }

  friend BodyVelocity operator+(const BodyVelocity& a, const BodyVelocity& b) {
    return {a.vx_ + b.vx_, a.vy_ + b.vy_, a.omega_ + b.omega_};
  }
  friend BodyVelocity operator-(const BodyVelocity& a, const BodyVelocity& b) {
    return {a.vx_ - b.vx_, a.vy_ - b.vy_, a.omega_ - b.omega_};
  }
  friend BodyVelocity operator*(double s, const BodyVelocity& a) {
    return {s * a.vx_, s * a.vy_, s * a.omega_};
  }
  friend bool operator==(const BodyVelocity&, const BodyVelocity&) = default;

 private:
  double vx_ = 0.0;     // [m/s]
  double vy_ = 0.0;     // [m/s]
  double omega_ = 0.0;  // [rad/s]
};

// Left/right wheel angular velocities of a skid-steer vehicle at time t.
struct WheelCommand {
  double t = 0.0;        // [s]
  double omega_l = 0.0;  // [rad/s]
  double omega_r = 0.0;  // [rad/s]

  // Throws ParameterError when any field is non-finite.
  void Validate() const;
};

// Forward speed and front steering angle of an Ackermann vehicle.
struct AckermannCommand {
  double t = 0.0;      // [s]
  double v_cmd = 0.0;  // [m/s]
  double delta = 0.0;  // [rad], |delta| < pi/2

  void Validate() const;
};

// Vehicle parameters. Geometry (wheel radius, track width, optional
// wheelbase) parameterizes the ideal models; mass and top speed give the
// kinetic-energy proxy. Records that only place a vehicle on the deployment
// map may leave the geometry at zero.
struct VehicleSpec {
  std::string name;
  double wheel_radius = 0.0;  // r [m]
  double track_width = 0.0;   // b [m]
  double mass = 0.0;          // [kg]
  double v_max = 0.0;         // [m/s]
  std::optional<double> wheelbase;  // L [m], bicycle model only

  // r > 0, b > 0 and L > 0 when present.
  void ValidateGeometry() const;
  // mass > 0, v_max > 0.
  void ValidateInertial() const;
  void Validate() const {
    ValidateGeometry();
    ValidateInertial();
  }
};

// Slip-less skid-steer model:
//   f = ( r (w_l + w_r) / 2,  0,  r (w_r - w_l) / b ).
BodyVelocity IdealDiffDrive(const WheelCommand& cmd, const VehicleSpec& spec);

// Slip-less kinematic bicycle referenced at the rear axle:
//   f = ( v,  0,  v tan(delta) / L ).
// ParameterError when the spec has no wheelbase.
BodyVelocity IdealBicycle(const AckermannCommand& cmd, const VehicleSpec& spec);

// Slip body velocity g = f - v_obs.
inline BodyVelocity Slip(const BodyVelocity& ideal, const BodyVelocity& observed) {
  return ideal - observed;
}

// sqrt(gx^2 + gy^2 + (angular_weight * gw)^2). `angular_weight` is a length
// [m]; the default of 1 gives the plain norm of the mixed-unit triple.
double SlipModulus(const BodyVelocity& g, double angular_weight = 1.0);

}  // namespace mdist

#endif  // MDIST_KINEMATICS_H_
