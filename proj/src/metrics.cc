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

#include "mdist/metrics.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "mdist/csv.h"
#include "mdist/error.h"

namespace mdist {

void DistortionSeries::Validate() const {
  if (g.size() != t.size() || modulus.size() != t.size()) {
    throw ValidationError("distortion series columns differ in length");
  }
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (modulus[i] != SlipModulus(g[i], angular_weight)) {
      throw ValidationError("modulus at step " + std::to_string(i) +
                            " does not match its slip vector");
    }
  }
}

DistortionSeries ComputeDistortion(const AlignedDataset& ds, double angular_weight) {
  ds.Validate();
  if (ds.size() == 0) throw InsufficientDataError("dataset '" + ds.name + "' is empty");
  ds.vehicle.ValidateGeometry();
  // Surfaces a bad weight before entering the parallel region.
  SlipModulus(BodyVelocity{}, angular_weight);
  for (const auto& c : ds.commands) c.Validate();

  const std::size_t n = ds.size();
  DistortionSeries series;
  series.dataset_name = ds.name;
  series.angular_weight = angular_weight;
  series.t.resize(n);
  series.g.resize(n);
  series.modulus.resize(n);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n); ++i) {
    const BodyVelocity g = Slip(IdealDiffDrive(ds.commands[i], ds.vehicle), ds.velocities[i]);
    series.t[i] = ds.commands[i].t;
    series.g[i] = g;
    series.modulus[i] = SlipModulus(g, angular_weight);
  }
  return series;
}

DistortionSeries Decimate(const DistortionSeries& series, std::size_t stride) {
  if (stride == 0) throw ParameterError("decimation stride must be at least 1");
  if (stride == 1) return series;
  DistortionSeries out;
  out.dataset_name = series.dataset_name;
  out.angular_weight = series.angular_weight;
  for (std::size_t i = 0; i < series.size(); i += stride) {
    out.t.push_back(series.t[i]);
    out.g.push_back(series.g[i]);
    out.modulus.push_back(series.modulus[i]);
  }
  return out;
}

double QuantileSorted(std::span<const double> sorted, double p) {
  if (sorted.empty()) throw InsufficientDataError("quantile of an empty sample");
  if (!(p >= 0.0 && p <= 1.0)) throw ParameterError("quantile level must be in [0, 1]");
  const double h = static_cast<double>(sorted.size() - 1) * p;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

SummaryStats Summarize(std::span<const double> moduli) {
  if (moduli.empty()) throw InsufficientDataError("cannot summarize an empty series");
  std::vector<double> sorted(moduli.begin(), moduli.end());
  std::sort(sorted.begin(), sorted.end());
  SummaryStats s;
  s.n = sorted.size();
  s.median = QuantileSorted(sorted, 0.5);
  s.q25 = QuantileSorted(sorted, 0.25);
  s.q75 = QuantileSorted(sorted, 0.75);
  s.mean = std::accumulate(sorted.begin(), sorted.end(), 0.0) / static_cast<double>(s.n);
  s.max = sorted.back();
  return s;
}

SummaryStats Summarize(const DistortionSeries& series) {
  return Summarize(std::span<const double>(series.modulus));
}

double MedianRatio(double median_a, double median_b, bool* degenerate) {
  bool flag = false;
  double ratio;
  if (median_a != 0.0) {
    ratio = median_b / median_a;
  } else {
    flag = true;
    ratio = median_b != 0.0 ? std::numeric_limits<double>::infinity()
                            : std::numeric_limits<double>::quiet_NaN();
  }
  if (degenerate) *degenerate = flag;
  return ratio;
}

ComparisonResult Compare(std::span<const double> a, std::span<const double> b,
                         double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw ParameterError("alpha must lie strictly between 0 and 1");
  }
  if (a.empty() || b.empty()) {
    throw InsufficientDataError("comparison needs two non-empty series");
  }
  const RankSumResult test = MannWhitneyU(a, b);
  ComparisonResult res;
  res.u_statistic = test.u_statistic;
  res.p_value = test.p_value;
  res.method = test.method;
  res.median_a = Summarize(a).median;
  res.median_b = Summarize(b).median;
  res.median_ratio = MedianRatio(res.median_a, res.median_b, &res.median_ratio_degenerate);
  res.alpha = alpha;
  res.significant = res.p_value < alpha;
  return res;
}

ComparisonResult Compare(const DistortionSeries& a, const DistortionSeries& b,
                         double alpha) {
  return Compare(std::span<const double>(a.modulus), std::span<const double>(b.modulus),
                 alpha);
}

double KineticEnergy(double mass, double v_max) {
  if (!(mass > 0.0) || !std::isfinite(mass)) throw ParameterError("mass must be positive");
  if (!(v_max >= 0.0) || !std::isfinite(v_max)) {
    throw ParameterError("speed must be non-negative");
  }
  return 0.5 * mass * v_max * v_max;
}

double KineticEnergy(const VehicleSpec& spec) {
  spec.ValidateInertial();
  return KineticEnergy(spec.mass, spec.v_max);
}

std::string WriteSeriesCsv(const DistortionSeries& series) {
  std::string out = "t,gx,gy,gomega,modulus\n";
  for (std::size_t i = 0; i < series.size(); ++i) {
    const auto& g = series.g[i];
    out += FormatNumber(series.t[i]) + ',' + FormatNumber(g.vx()) + ',' +
           FormatNumber(g.vy()) + ',' + FormatNumber(g.omega()) + ',' +
           FormatNumber(series.modulus[i]) + '\n';
  }
  return out;
}

DistortionSeries ReadSeriesCsv(std::istream& in, double angular_weight) {
  const CsvTable table = ReadCsv(in);
  const std::size_t ct = table.Column("t");
  const std::size_t cx = table.Column("gx");
  const std::size_t cy = table.Column("gy");
  const std::size_t cw = table.Column("gomega");
  const std::size_t cm = table.Column("modulus");
  DistortionSeries s;
  s.angular_weight = angular_weight;
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const auto& row = table.rows[r];
    const std::size_t line = table.row_lines[r];
    const double m = ParseNumber(row[cm], line);
    if (m < 0.0) throw ParseError("negative modulus", line);
    s.t.push_back(ParseNumber(row[ct], line));
    s.g.emplace_back(ParseNumber(row[cx], line), ParseNumber(row[cy], line),
                     ParseNumber(row[cw], line));
    s.modulus.push_back(m);
  }
  return s;
}

}  // namespace mdist
