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

#include <cmath>
#include <random>
#include <sstream>

#include "gtest/gtest.h"
#include "mdist/case_study.h"
#include "mdist/error.h"

namespace mdist {
namespace {

AlignedDataset ConstantDataset(double wl, double wr, BodyVelocity v, std::size_t n = 40) {
  AlignedDataset ds;
  ds.name = "const";
  ds.vehicle = {"test", 0.3, 1.2, 50.0, 1.0, std::nullopt};
  for (std::size_t i = 0; i < n; ++i) {
    ds.commands.push_back({0.05 * static_cast<double>(i), wl, wr});
    ds.velocities.push_back(v);
  }
  return ds;
}

DistortionSeries SeriesOf(std::vector<double> moduli) {
  DistortionSeries s;
  for (std::size_t i = 0; i < moduli.size(); ++i) {
    s.t.push_back(static_cast<double>(i));
    s.g.emplace_back(moduli[i], 0.0, 0.0);
  }
  s.modulus = std::move(moduli);
  return s;
}

TEST(DistortionSeriesTest, PerfectTrackingIsZero) {
  const DistortionSeries s = ComputeDistortion(ConstantDataset(1.0, 3.0, {0.6, 0.0, 0.5}));
  for (double m : s.modulus) EXPECT_NEAR(m, 0.0, 1e-15);
  EXPECT_NO_THROW(s.Validate());
}

TEST(DistortionSeriesTest, ConstantOffset) {
  const DistortionSeries s = ComputeDistortion(ConstantDataset(2.0, 2.0, {0.5, 0.0, 0.0}));
  ASSERT_EQ(s.size(), 40u);
  for (std::size_t i = 0; i < s.size(); ++i) {
    EXPECT_NEAR(s.modulus[i], 0.1, 1e-15);
    EXPECT_NEAR(s.g[i].vx(), 0.1, 1e-15);
  }
}

TEST(DistortionSeriesTest, StationaryIsZero) {
  const DistortionSeries s = ComputeDistortion(ConstantDataset(0.0, 0.0, {}));
  for (double m : s.modulus) EXPECT_EQ(m, 0.0);
}

TEST(DistortionSeriesTest, AngularWeightApplied) {
  // f = (0.6, 0, 0.5); v = 0 -> sqrt(0.36 + (w * 0.5)^2)
  const DistortionSeries s = ComputeDistortion(ConstantDataset(1.0, 3.0, {}), 2.0);
  EXPECT_NEAR(s.modulus[0], std::sqrt(0.36 + 1.0), 1e-15);
  EXPECT_EQ(s.angular_weight, 2.0);
}

TEST(DistortionSeriesTest, Errors) {
  AlignedDataset empty = ConstantDataset(1, 1, {}, 0);
  EXPECT_THROW(ComputeDistortion(empty), InsufficientDataError);
  AlignedDataset ragged = ConstantDataset(1, 1, {}, 3);
  ragged.velocities.pop_back();
  EXPECT_THROW(ComputeDistortion(ragged), ValidationError);
  EXPECT_THROW(ComputeDistortion(ConstantDataset(1, 1, {}), -1.0), ParameterError);
}

TEST(DistortionSeriesTest, ScalingSlipScalesStatistics) {
  std::mt19937_64 rng(2);
  std::normal_distribution<double> n(0.0, 1.0);
  DistortionSeries s;
  for (int i = 0; i < 101; ++i) {
    s.t.push_back(i);
    s.g.emplace_back(n(rng), n(rng), n(rng));
    s.modulus.push_back(SlipModulus(s.g.back()));
  }
  const double k = 4.0;  // power of two keeps the products exact
  DistortionSeries scaled = s;
  for (std::size_t i = 0; i < s.size(); ++i) {
    scaled.g[i] = k * s.g[i];
    scaled.modulus[i] = SlipModulus(scaled.g[i]);
    EXPECT_EQ(scaled.modulus[i], k * s.modulus[i]);
  }
  const SummaryStats a = Summarize(s), b = Summarize(scaled);
  EXPECT_EQ(b.median, k * a.median);
  EXPECT_EQ(b.q25, k * a.q25);
  EXPECT_EQ(b.q75, k * a.q75);
  EXPECT_EQ(b.mean, k * a.mean);
  EXPECT_EQ(b.max, k * a.max);
}

TEST(SummarizeTest, Examples) {
  SummaryStats s = Summarize(std::vector<double>{1, 2, 3, 4, 5});
  EXPECT_EQ(s.median, 3.0);
  EXPECT_EQ(s.q25, 2.0);
  EXPECT_EQ(s.q75, 4.0);
  EXPECT_EQ(s.n, 5u);

  s = Summarize(std::vector<double>(7, 0.25));
  EXPECT_EQ(s.median, 0.25);
  EXPECT_EQ(s.mean, 0.25);
  EXPECT_EQ(s.max, 0.25);

  EXPECT_EQ(Summarize(std::vector<double>{0, 10}).median, 5.0);
  EXPECT_THROW(Summarize(std::vector<double>{}), InsufficientDataError);
}

TEST(SummarizeTest, MatchesNumpyLinearPercentiles) {
  const SummaryStats s = Summarize(std::vector<double>{3.1, 0.2, 7.5, 1.9, 4.4, 9.0});
  EXPECT_NEAR(s.q25, 2.2, 1e-12);
  EXPECT_NEAR(s.median, 3.75, 1e-12);
  EXPECT_NEAR(s.q75, 6.725, 1e-12);
  EXPECT_NEAR(s.mean, 4.35, 1e-12);
  EXPECT_EQ(s.max, 9.0);
}

TEST(SummarizeTest, OrderInvariants) {
  std::mt19937_64 rng(4);
  std::lognormal_distribution<double> d(0.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> x(1 + trial);
    for (auto& v : x) v = d(rng);
    const SummaryStats s = Summarize(x);
    EXPECT_LE(s.q25, s.median);
    EXPECT_LE(s.median, s.q75);
    EXPECT_LE(s.q75, s.max);
  }
}

TEST(DecimateTest, KeepsEveryKth) {
  const DistortionSeries s = SeriesOf({0, 1, 2, 3, 4, 5, 6});
  const DistortionSeries d = Decimate(s, 3);
  EXPECT_EQ(d.modulus, (std::vector<double>{0, 3, 6}));
  EXPECT_EQ(Decimate(s, 1).size(), 7u);
  EXPECT_THROW(Decimate(s, 0), ParameterError);
}

TEST(CompareTest, IdenticalSeriesIndistinguishable) {
  const DistortionSeries a = SeriesOf({0.3, 1.2, 0.7, 2.2, 0.1, 0.9, 1.5});
  const ComparisonResult r = Compare(a, a);
  EXPECT_GE(r.p_value, 0.95);
  EXPECT_FALSE(r.significant);
  EXPECT_EQ(r.median_ratio, 1.0);
}

TEST(CompareTest, SeparatedSmallSamples) {
  const ComparisonResult r = Compare(SeriesOf({1, 2, 3}), SeriesOf({10, 11, 12}));
  EXPECT_EQ(r.u_statistic, 0.0);
  EXPECT_DOUBLE_EQ(r.p_value, 0.1);
  EXPECT_FALSE(r.significant);  // 0.1 > 0.05
  EXPECT_EQ(r.median_ratio, 11.0 / 2.0);
  EXPECT_TRUE(Compare(SeriesOf({1, 2, 3}), SeriesOf({10, 11, 12}), 0.2).significant);
}

TEST(CompareTest, CaseStudyTileVersusSnowRatio) {
  const ComparisonResult r =
      Compare(SeriesOf({case_study::kHuskyTileMedian}), SeriesOf({case_study::kHuskySnowMedian}));
  EXPECT_NEAR(r.median_ratio, 1.608, 0.01);
}

TEST(CompareTest, DegenerateMedianRatios) {
  ComparisonResult r = Compare(SeriesOf({0, 0, 0}), SeriesOf({1, 2, 3}));
  EXPECT_TRUE(std::isinf(r.median_ratio));
  EXPECT_TRUE(r.median_ratio_degenerate);
  r = Compare(SeriesOf({0, 0}), SeriesOf({0, 0}));
  EXPECT_TRUE(std::isnan(r.median_ratio));
  EXPECT_TRUE(r.median_ratio_degenerate);
}

TEST(CompareTest, Errors) {
  EXPECT_THROW(Compare(SeriesOf({}), SeriesOf({1})), InsufficientDataError);
  EXPECT_THROW(Compare(SeriesOf({1}), SeriesOf({1}), 0.0), ParameterError);
  EXPECT_THROW(Compare(SeriesOf({1}), SeriesOf({1}), 1.0), ParameterError);
}

TEST(CompareTest, LargeSamplesUseNormalPath) {
  std::vector<double> a(30), b(30);
  for (int i = 0; i < 30; ++i) {
    a[i] = i;
    b[i] = i + 15.5;
  }
  const ComparisonResult r = Compare(a, b);
  EXPECT_EQ(r.method, PValueMethod::kNormal);
  EXPECT_TRUE(r.significant);
}

TEST(KineticEnergyTest, CaseStudyVehicles) {
  EXPECT_EQ(KineticEnergy(case_study::Husky()), 37.5);
  EXPECT_EQ(KineticEnergy(case_study::Warthog()), 5875.0);
  EXPECT_EQ(KineticEnergy(80.0, 0.0), 0.0);
  EXPECT_THROW(KineticEnergy(0.0, 1.0), ParameterError);
  EXPECT_THROW(KineticEnergy(10.0, -1.0), ParameterError);
  VehicleSpec parked = case_study::Husky();
  parked.v_max = 0.0;
  EXPECT_THROW(KineticEnergy(parked), ParameterError);
}

TEST(CaseStudyTest, ReportedVehicleRatiosConsistent) {
  const double mass_ratio = case_study::Warthog().mass / case_study::Husky().mass;
  EXPECT_NEAR(mass_ratio, 6.27, 0.005);
  EXPECT_NEAR(mass_ratio, case_study::kReportedMassRatio, 0.1);
  EXPECT_EQ(case_study::Warthog().v_max / case_study::Husky().v_max,
            case_study::kReportedSpeedRatio);
}

TEST(SeriesCsvTest, RoundTripIsByteStable) {
  const DistortionSeries s = ComputeDistortion(ConstantDataset(1.3, 2.9, {0.51, -0.02, 0.3}));
  const std::string first = WriteSeriesCsv(s);
  EXPECT_EQ(first.substr(0, first.find('\n')), "t,gx,gy,gomega,modulus");
  std::istringstream in(first);
  const DistortionSeries back = ReadSeriesCsv(in);
  EXPECT_EQ(WriteSeriesCsv(back), first);
  EXPECT_EQ(back.modulus, s.modulus);
}

TEST(SeriesCsvTest, RejectsNegativeModulus) {
  std::istringstream in("t,gx,gy,gomega,modulus\n0,0,0,0,-1\n");
  EXPECT_THROW(ReadSeriesCsv(in), ParseError);
}

}  // namespace
}  // namespace mdist
