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

#ifndef MDIST_SRC_POSE_TWIST_H_
#define MDIST_SRC_POSE_TWIST_H_

#include <cmath>
#include <span>
#include <vector>

#include "mdist/error.h"
#include "mdist/ingest.h"

namespace mdist::internal {

inline double Sinc(double x) {
  if (std::abs(x) < 1e-4) return 1.0 - x * x / 6.0;
  return std::sin(x) / x;
}

// Twist that carries pose a to pose b under constant body velocity.
// `yaw_a`/`yaw_b` are the unwrapped headings of the two poses.
inline BodyVelocity PairTwist(const PoseSample& a, double yaw_a,
                              const PoseSample& b, double yaw_b) {
  const double dt = b.t - a.t;
  const double dyaw = yaw_b - yaw_a;
  const double heading = 0.5 * (yaw_a + yaw_b);
  const double c = std::cos(heading);
  const double s = std::sin(heading);
  const double dx = b.x - a.x;
  const double dy = b.y - a.y;
  const double scale = 1.0 / (dt * Sinc(0.5 * dyaw));
  return {(c * dx + s * dy) * scale, (-s * dx + c * dy) * scale, dyaw / dt};
}

// Unwrapped headings; throws on fewer than 3 poses or non-increasing time.
inline std::vector<double> UnwrapPoses(std::span<const PoseSample> poses) {
  if (poses.size() < 3) {
    throw InsufficientDataError("need at least 3 poses to estimate velocity, got " +
                                std::to_string(poses.size()));
  }
  std::vector<double> yaw(poses.size());
  yaw[0] = poses[0].yaw;
  for (std::size_t i = 1; i < poses.size(); ++i) {
    if (!(poses[i].t > poses[i - 1].t)) {
      throw ParseError("pose timestamps must strictly increase (sample " +
                       std::to_string(i) + ")");
    }
    yaw[i] = yaw[i - 1] + WrapAngle(poses[i].yaw - poses[i - 1].yaw);
  }
  return yaw;
}

// Neighbour pair used for sample i: (i-1, i+1) inside, one-sided at ends.
inline std::pair<std::size_t, std::size_t> Stencil(std::size_t i, std::size_t n) {
  if (i == 0) return {0, 1};
  if (i + 1 == n) return {n - 2, n - 1};
  return {i - 1, i + 1};
}

}  // namespace mdist::internal

#endif  // MDIST_SRC_POSE_TWIST_H_
