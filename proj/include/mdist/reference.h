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

#ifndef MDIST_REFERENCE_H_
#define MDIST_REFERENCE_H_

// Single-threaded versions of the parallel kernels. They run the same
// per-sample arithmetic in a plain loop and exist for tests and benchmarks.

#include <span>
#include <vector>

#include "mdist/ingest.h"
#include "mdist/metrics.h"

namespace mdist::reference {

std::vector<TimedVelocity> BodyVelocityFromPoses(std::span<const PoseSample> poses);

DistortionSeries ComputeDistortion(const AlignedDataset& ds,
                                   double angular_weight = 1.0);

}  // namespace mdist::reference

#endif  // MDIST_REFERENCE_H_
