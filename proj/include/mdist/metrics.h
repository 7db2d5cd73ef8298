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

#ifndef MDIST_METRICS_H_
#define MDIST_METRICS_H_

#include <cstddef>
#include <filesystem>
#include <istream>
#include <span>
#include <string>
#include <vector>

#include "mdist/ingest.h"
#include "mdist/kinematics.h"
#include "mdist/mann_whitney.h"

namespace mdist {

// Per-step slip vectors of one dataset and their moduli.
struct DistortionSeries {
  std::string dataset_name;
  std::vector<double> t;
  std::vector<BodyVelocity> g;
  std::vector<double> modulus;
  double angular_weight = 1.0;

  std::size_t size() const { return t.size(); }
  // Equal lengths and modulus[i] == SlipModulus(g[i], angular_weight).
  void Validate() const;
};

// g_t = IdealDiffDrive(u_t) - v_t at every grid step, in parallel.
// InsufficientDataError on an empty dataset.
DistortionSeries ComputeDistortion(const AlignedDataset& ds,
                                   double angular_weight = 1.0);

// Keeps every `stride`-th sample starting at the first.
DistortionSeries Decimate(const DistortionSeries& series, std::size_t stride);

// Type-7 (linear interpolation) quantile of an ascending-sorted sample.
double QuantileSorted(std::span<const double> sorted, double p);

struct SummaryStats {
  std::size_t n = 0;
  double median = 0.0;
  double q25 = 0.0;
  double q75 = 0.0;
  double mean = 0.0;
  double max = 0.0;
};

SummaryStats Summarize(std::span<const double> moduli);
SummaryStats Summarize(const DistortionSeries& series);

struct ComparisonResult {
  double u_statistic = 0.0;  // U of sample a
  double p_value = 1.0;
  PValueMethod method = PValueMethod::kExact;
  double median_a = 0.0;
  double median_b = 0.0;
  // median(b) / median(a); +inf when only a's median is zero, NaN when both
  // are, with `median_ratio_degenerate` set in either case.
  double median_ratio = 1.0;
  bool median_ratio_degenerate = false;
  double alpha = 0.05;
  bool significant = false;  // p_value < alpha
};

double MedianRatio(double median_a, double median_b, bool* degenerate);

// Two-sided Mann-Whitney U on the moduli. ParameterError unless
// 0 < alpha < 1, InsufficientDataError on an empty series.
ComparisonResult Compare(const DistortionSeries& a, const DistortionSeries& b,
                         double alpha = 0.05);
ComparisonResult Compare(std::span<const double> a, std::span<const double> b,
                         double alpha = 0.05);

// 1/2 m v^2 [J]. mass > 0, v_max >= 0.
double KineticEnergy(double mass, double v_max);
// 1/2 m v_max^2 for a vehicle with valid inertial parameters.
double KineticEnergy(const VehicleSpec& spec);

// Series CSV: `t,gx,gy,gomega,modulus`.
std::string WriteSeriesCsv(const DistortionSeries& series);
// Reads a series CSV. The modulus column is taken as written; the series
// name is left empty.
DistortionSeries ReadSeriesCsv(std::istream& in, double angular_weight = 1.0);

}  // namespace mdist

#endif  // MDIST_METRICS_H_
