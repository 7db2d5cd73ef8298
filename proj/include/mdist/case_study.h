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

#ifndef MDIST_CASE_STUDY_H_
#define MDIST_CASE_STUDY_H_

// Reference vehicles and reported distortion medians of the four-dataset
// case study (skid-steer Husky A200 on tile and snow, Warthog on gravel and
// ice). Mass and top speed are the published values; wheel radius and track
// width are nominal manufacturer figures used only by the simulator. The
// medians are reported constants: the raw logs are not distributed, so they
// serve as consistency fixtures rather than reproducible outputs.

#include "mdist/kinematics.h"

namespace mdist::case_study {

inline VehicleSpec Husky() {
  return {"husky", 0.165, 0.555, 75.0, 1.0, std::nullopt};
}

inline VehicleSpec Warthog() {
  return {"warthog", 0.3, 1.1, 470.0, 5.0, std::nullopt};
}

// Median distortion modulus, Husky on tile.
inline constexpr double kHuskyTileMedian = 1.716;
// Median distortion modulus, Husky on snow.
inline constexpr double kHuskySnowMedian = 2.76;
// Warthog-on-ice median over Husky-on-snow median ("approximately 3.6").
inline constexpr double kWarthogIceOverHuskySnow = 3.6;
// Warthog-on-ice median over Warthog-on-gravel median (5% lower).
inline constexpr double kWarthogIceOverGravel = 0.95;

inline constexpr double kWarthogIceMedian = kWarthogIceOverHuskySnow * kHuskySnowMedian;
inline constexpr double kWarthogGravelMedian = kWarthogIceMedian / kWarthogIceOverGravel;

// Reported vehicle ratios: "6.2 times heavier", "5 times faster".
inline constexpr double kReportedMassRatio = 6.2;
inline constexpr double kReportedSpeedRatio = 5.0;

}  // namespace mdist::case_study

#endif  // MDIST_CASE_STUDY_H_
