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

// Parallel kernels against their serial references.

#include <benchmark/benchmark.h>

#include "mdist/case_study.h"
#include "mdist/reference.h"
#include "mdist/sim.h"

namespace {

using namespace mdist;

struct Fixture {
  std::vector<PoseSample> poses;
  AlignedDataset dataset;
};

Fixture Make(std::int64_t samples) {
  const VehicleSpec w = case_study::Warthog();
  const double dt = 0.01;
  const auto cmds = sim::GenerateCommands(sim::Profile::kMixed, static_cast<double>(samples) * dt,
                                          dt, w, 1);
  const auto run = sim::ApplySlip(cmds, w, {0.2, 0.1, 0.8, 0.5, 0.01}, 1);
  Fixture f{run.poses, Align(cmds, run.velocities, {dt, 4 * dt})};
  f.dataset.vehicle = w;
  return f;
}

void BM_PosesParallel(benchmark::State& state) {
  const Fixture f = Make(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(BodyVelocityFromPoses(f.poses));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_PosesSerial(benchmark::State& state) {
  const Fixture f = Make(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(reference::BodyVelocityFromPoses(f.poses));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_DistortionParallel(benchmark::State& state) {
  const Fixture f = Make(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(ComputeDistortion(f.dataset));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_DistortionSerial(benchmark::State& state) {
  const Fixture f = Make(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(reference::ComputeDistortion(f.dataset));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

BENCHMARK(BM_PosesParallel)->Range(1 << 12, 1 << 20);
BENCHMARK(BM_PosesSerial)->Range(1 << 12, 1 << 20);
BENCHMARK(BM_DistortionParallel)->Range(1 << 12, 1 << 20);
BENCHMARK(BM_DistortionSerial)->Range(1 << 12, 1 << 20);

}  // namespace

BENCHMARK_MAIN();
