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
#include <limits>
#include <numbers>
#include <random>

#include "gtest/gtest.h"
#include "mdist/error.h"

namespace mdist {
namespace {

VehicleSpec Spec(double r = 0.3, double b = 1.2) {
  return {"test", r, b, 100.0, 2.0, std::nullopt};
}

// Explicit 3x2 matrix times wheel vector, written out independently of
// IdealDiffDrive.
std::array<double, 3> MatrixOracle(double wl, double wr, double r, double b) {
  const double m[3][2] = {{0.5, 0.5}, {0.0, 0.0}, {-1.0 / b, 1.0 / b}};
  std::array<double, 3> out{};
  for (int i = 0; i < 3; ++i) out[i] = r * (m[i][0] * wl + m[i][1] * wr);
  return out;
}

TEST(BodyVelocityTest, RejectsNonFinite) {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  const double inf = std::numeric_limits<double>::infinity();
  EXPECT_THROW(BodyVelocity(nan, 0, 0), ParameterError);
  EXPECT_THROW(BodyVelocity(0, inf, 0), ParameterError);
  EXPECT_THROW(BodyVelocity(0, 0, -inf), ParameterError);
  EXPECT_NO_THROW(BodyVelocity(1, 2, 3));
}

TEST(IdealDiffDriveTest, SymmetricWheelsGoStraight) {
  const BodyVelocity f = IdealDiffDrive({0.0, 2.0, 2.0}, Spec());
  EXPECT_DOUBLE_EQ(f.vx(), 0.6);
  EXPECT_EQ(f.vy(), 0.0);
  EXPECT_DOUBLE_EQ(f.omega(), 0.0);
}

TEST(IdealDiffDriveTest, AntisymmetricWheelsRotateInPlace) {
  const BodyVelocity f = IdealDiffDrive({0.0, -2.0, 2.0}, Spec());
  EXPECT_DOUBLE_EQ(f.vx(), 0.0);
  EXPECT_EQ(f.vy(), 0.0);
  EXPECT_DOUBLE_EQ(f.omega(), 1.0);
}

TEST(IdealDiffDriveTest, MixedCommandMatchesHandProduct) {
  const BodyVelocity f = IdealDiffDrive({0.0, 1.0, 3.0}, Spec());
  EXPECT_NEAR(f.vx(), 0.6, 1e-15);
  EXPECT_EQ(f.vy(), 0.0);
  EXPECT_NEAR(f.omega(), 0.5, 1e-15);
}

TEST(IdealDiffDriveTest, RejectsInvalidGeometry) {
  EXPECT_THROW(IdealDiffDrive({0, 1, 1}, Spec(0.0, 1.0)), ParameterError);
  EXPECT_THROW(IdealDiffDrive({0, 1, 1}, Spec(0.3, -1.0)), ParameterError);
  EXPECT_THROW(IdealDiffDrive({0, std::nan(""), 1}, Spec()), ParameterError);
}

TEST(IdealDiffDriveTest, MatchesMatrixOracleOnRandomCommands) {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> wheel(-20.0, 20.0);
  std::uniform_real_distribution<double> geom(0.05, 2.0);
  for (int i = 0; i < 1000; ++i) {
    const double wl = wheel(rng), wr = wheel(rng), r = geom(rng), b = geom(rng);
    const BodyVelocity f = IdealDiffDrive({0.0, wl, wr}, Spec(r, b));
    const auto expected = MatrixOracle(wl, wr, r, b);
    EXPECT_NEAR(f.vx(), expected[0], 1e-12);
    EXPECT_EQ(f.vy(), 0.0);
    EXPECT_NEAR(f.omega(), expected[2], 1e-12);
  }
}

TEST(IdealDiffDriveTest, IsLinearInWheelSpeeds) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  const VehicleSpec spec = Spec(0.25, 0.8);
  for (int i = 0; i < 500; ++i) {
    const WheelCommand a{0, u(rng), u(rng)}, c{0, u(rng), u(rng)};
    const double s = u(rng);
    const BodyVelocity lhs =
        IdealDiffDrive({0, s * a.omega_l + c.omega_l, s * a.omega_r + c.omega_r}, spec);
    const BodyVelocity rhs = s * IdealDiffDrive(a, spec) + IdealDiffDrive(c, spec);
    EXPECT_NEAR(lhs.vx(), rhs.vx(), 1e-12);
    EXPECT_EQ(lhs.vy(), 0.0);
    EXPECT_NEAR(lhs.omega(), rhs.omega(), 1e-12);
  }
}

TEST(IdealDiffDriveTest, SwappingWheelsNegatesYawRate) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  for (int i = 0; i < 200; ++i) {
    const double l = u(rng), r = u(rng);
    const BodyVelocity f = IdealDiffDrive({0, l, r}, Spec());
    const BodyVelocity g = IdealDiffDrive({0, r, l}, Spec());
    EXPECT_EQ(f.vx(), g.vx());
    EXPECT_EQ(f.omega(), -g.omega());
  }
}

TEST(IdealBicycleTest, Examples) {
  VehicleSpec spec = Spec();
  spec.wheelbase = 1.0;
  BodyVelocity f = IdealBicycle({0, 1.0, 0.0}, spec);
  EXPECT_EQ(f.vx(), 1.0);
  EXPECT_EQ(f.omega(), 0.0);

  f = IdealBicycle({0, 0.0, 0.3}, spec);
  EXPECT_EQ(f.vx(), 0.0);
  EXPECT_EQ(f.vy(), 0.0);
  EXPECT_EQ(f.omega(), 0.0);

  spec.wheelbase = 2.0;
  f = IdealBicycle({0, 2.0, std::numbers::pi / 4}, spec);
  EXPECT_EQ(f.vx(), 2.0);
  EXPECT_EQ(f.vy(), 0.0);
  EXPECT_NEAR(f.omega(), 1.0, 1e-15);
}

TEST(IdealBicycleTest, Errors) {
  VehicleSpec spec = Spec();
  EXPECT_THROW(IdealBicycle({0, 1.0, 0.1}, spec), ParameterError);
  spec.wheelbase = 1.0;
  EXPECT_THROW(IdealBicycle({0, 1.0, std::numbers::pi / 2}, spec), ParameterError);
  EXPECT_THROW(IdealBicycle({0, 1.0, -2.0}, spec), ParameterError);
  spec.wheelbase = 0.0;
  EXPECT_THROW(IdealBicycle({0, 1.0, 0.1}, spec), ParameterError);
}

TEST(SlipTest, Examples) {
  const BodyVelocity f(0.6, 0, 0.5);
  EXPECT_EQ(Slip(f, f), BodyVelocity(0, 0, 0));

  const BodyVelocity g = Slip({1, 0, 0}, {0.8, 0.1, -0.05});
  EXPECT_NEAR(g.vx(), 0.2, 1e-15);
  EXPECT_NEAR(g.vy(), -0.1, 1e-15);
  EXPECT_NEAR(g.omega(), 0.05, 1e-15);

  EXPECT_EQ(Slip({}, {}), BodyVelocity(0, 0, 0));
}

TEST(SlipTest, AntisymmetricAndZeroOnDiagonal) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  for (int i = 0; i < 200; ++i) {
    const BodyVelocity a(u(rng), u(rng), u(rng)), b(u(rng), u(rng), u(rng));
    EXPECT_EQ(Slip(a, a), BodyVelocity());
    EXPECT_EQ(Slip(a, b), -1.0 * Slip(b, a));
  }
}

TEST(SlipModulusTest, Examples) {
  EXPECT_EQ(SlipModulus({0, 0, 0}), 0.0);
  EXPECT_EQ(SlipModulus({0, 0, 0}, 3.0), 0.0);
  EXPECT_DOUBLE_EQ(SlipModulus({3, 4, 0}), 5.0);
  EXPECT_NEAR(SlipModulus({1, 0, 2}, 0.5), std::sqrt(2.0), 1e-15);
  EXPECT_THROW(SlipModulus({1, 0, 0}, -0.1), ParameterError);
}

TEST(SlipModulusTest, NormAxioms) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  std::uniform_real_distribution<double> w(0.01, 3.0);
  for (int i = 0; i < 1000; ++i) {
    const BodyVelocity a(u(rng), u(rng), u(rng)), b(u(rng), u(rng), u(rng));
    const double weight = w(rng);
    EXPECT_GE(SlipModulus(a, weight), 0.0);
    EXPECT_GT(SlipModulus(a, weight), 0.0);
    EXPECT_LE(SlipModulus(a + b, weight),
              SlipModulus(a, weight) + SlipModulus(b, weight) + 1e-12);
  }
}

}  // namespace
}  // namespace mdist
