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

#include "mdist/reference.h"

#include "mdist/error.h"
#include "pose_twist.h"

namespace mdist::reference {

std::vector<TimedVelocity> BodyVelocityFromPoses(std::span<const PoseSample> poses) {
  const std::vector<double> yaw = internal::UnwrapPoses(poses);
  const std::size_t n = poses.size();
  std::vector<TimedVelocity> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto [a, b] = internal::Stencil(i, n);
    out.push_back({poses[i].t, internal::PairTwist(poses[a], yaw[a], poses[b], yaw[b])});
  }
  return out;
}

DistortionSeries ComputeDistortion(const AlignedDataset& ds, double angular_weight) {
  ds.Validate();
  if (ds.size() == 0) throw InsufficientDataError("dataset '" + ds.name + "' is empty");
  DistortionSeries series;
  series.dataset_name = ds.name;
  series.angular_weight = angular_weight;
  for (std::size_t i = 0; i < ds.size(); ++i) {
    const BodyVelocity g = Slip(IdealDiffDrive(ds.commands[i], ds.vehicle), ds.velocities[i]);
    series.t.push_back(ds.commands[i].t);
    series.g.push_back(g);
    series.modulus.push_back(SlipModulus(g, angular_weight));
  }
  return series;
}

}  // namespace mdist::reference
