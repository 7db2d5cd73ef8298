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

#include "cli.h"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "mdist/csv.h"
#include "mdist/error.h"
#include "mdist/ingest.h"
#include "mdist/mapping.h"
#include "mdist/metrics.h"
#include "mdist/sim.h"

namespace mdist::cli {
namespace {

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

struct CommonOptions {
  double grid_dt = 0.05;
  double max_gap = 0.2;
  double angular_weight = 1.0;
  double alpha = 0.05;
  std::size_t stride = 1;
  std::uint64_t seed = 0;
  bool seed_given = false;
  std::string out = ".";
  std::string terrain_scale;
  bool from_poses = false;
};

Json NumberOrString(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

std::string Short(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4g", v);
  return buf;
}

TerrainScale LoadScale(const CommonOptions& opt) {
  return opt.terrain_scale.empty() ? DefaultTerrainScale()
                                   : ReadTerrainScaleFile(opt.terrain_scale);
}

fs::path EnsureOutDir(const std::string& out) {
  std::error_code ec;
  fs::create_directories(out, ec);
  if (ec) throw IoError("cannot create output directory '" + out + "'");
  return fs::path(out);
}

Json SummaryJson(const AlignedDataset& ds, const SummaryStats& s, const CommonOptions& opt,
                 const std::string& source) {
  Json j;
  j["dataset"] = ds.name;
  j["vehicle"] = {{"name", ds.vehicle.name},
                  {"wheel_radius", ds.vehicle.wheel_radius},
                  {"track_width", ds.vehicle.track_width},
                  {"mass", ds.vehicle.mass},
                  {"v_max", ds.vehicle.v_max}};
  j["terrain"] = {{"name", ds.terrain.name}, {"ordinal", ds.terrain.ordinal}};
  j["kinetic_energy"] = KineticEnergy(ds.vehicle);
  j["n"] = s.n;
  j["median"] = s.median;
  j["q25"] = s.q25;
  j["q75"] = s.q75;
  j["mean"] = s.mean;
  j["max"] = s.max;
  j["parameters"] = {{"grid_dt", opt.grid_dt},
                     {"max_gap", opt.max_gap},
                     {"angular_weight", opt.angular_weight},
                     {"stride", opt.stride},
                     {"velocity_source", source}};
  return j;
}

int Compute(const std::vector<std::string>& dirs, const CommonOptions& opt) {
  const TerrainScale scale = LoadScale(opt);
  const fs::path out = EnsureOutDir(opt.out);
  LoadOptions load;
  load.align = {opt.grid_dt, opt.max_gap};
  load.from_poses = opt.from_poses;
  for (const auto& dir : dirs) {
    const AlignedDataset ds = LoadDataset(dir, scale, load);
    const DistortionSeries series = ComputeDistortion(ds, opt.angular_weight);
    const SummaryStats stats = Summarize(Decimate(series, opt.stride));
    WriteFileAtomic(out / (ds.name + ".distortion.csv"), WriteSeriesCsv(series));
    WriteFileAtomic(out / (ds.name + ".summary.json"),
                    SummaryJson(ds, stats, opt, ds.velocity_source).dump(2) + "\n");
    std::cout << ds.name << ": n=" << stats.n << " median=" << Short(stats.median)
              << " q25=" << Short(stats.q25) << " q75=" << Short(stats.q75) << '\n';
  }
  return kExitOk;
}

// A comparison operand: a full series, or only a summary median.
struct Operand {
  std::string name;
  std::optional<DistortionSeries> series;
  double median = 0.0;
  std::size_t n = 0;
};

Operand LoadOperand(const std::string& path, const CommonOptions& opt) {
  Operand op;
  const fs::path p(path);
  if (p.extension() == ".json") {
    Json j;
    try {
      j = Json::parse(ReadTextFile(p));
      op.name = j.value("dataset", p.stem().string());
      op.median = j.at("median").get<double>();
      op.n = j.at("n").get<std::size_t>();
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(path + ": not a summary JSON (" + e.what() + ")");
    }
    if (op.n == 0) throw InsufficientDataError(path + ": summary reports no samples");
    return op;
  }
  std::ifstream in(p, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  DistortionSeries s;
  try {
    s = ReadSeriesCsv(in, opt.angular_weight);
  } catch (const ParseError& e) {
    throw e.InSource(path);
  }
  if (s.size() == 0) throw InsufficientDataError(path + ": series holds no samples");
  op.name = p.stem().string();
  if (op.name.ends_with(".distortion")) op.name.resize(op.name.size() - 11);
  s.dataset_name = op.name;
  s = Decimate(s, opt.stride);
  op.n = s.size();
  op.median = Summarize(s).median;
  op.series = std::move(s);
  return op;
}

int Compare(const std::string& path_a, const std::string& path_b, const CommonOptions& opt) {
  if (!(opt.alpha > 0.0 && opt.alpha < 1.0)) {
    throw ParameterError("--alpha must lie strictly between 0 and 1");
  }
  const Operand a = LoadOperand(path_a, opt);
  const Operand b = LoadOperand(path_b, opt);

  Json j;
  j["a"] = {{"dataset", a.name}, {"n", a.n}, {"median", a.median}};
  j["b"] = {{"dataset", b.name}, {"n", b.n}, {"median", b.median}};
  std::string verdict;
  if (a.series && b.series) {
    const ComparisonResult r = mdist::Compare(*a.series, *b.series, opt.alpha);
    j["u_statistic"] = r.u_statistic;
    j["p_value"] = r.p_value;
    j["method"] = r.method == PValueMethod::kExact ? "exact" : "normal";
    j["median_ratio"] = NumberOrString(r.median_ratio);
    j["median_ratio_degenerate"] = r.median_ratio_degenerate;
    j["alpha"] = opt.alpha;
    j["significant"] = r.significant;
    const std::string stats =
        "(p=" + Short(r.p_value) + ", median ratio=" + Short(r.median_ratio) +
        ", alpha=" + Short(opt.alpha) + ")";
    if (!r.significant) {
      verdict = a.name + " and " + b.name + " are indistinguishable " + stats;
    } else if (r.median_b > r.median_a) {
      verdict = b.name + " is harder than " + a.name + " " + stats;
    } else {
      verdict = b.name + " is easier than " + a.name + " " + stats;
    }
  } else {
    bool degenerate = false;
    const double ratio = MedianRatio(a.median, b.median, &degenerate);
    j["u_statistic"] = nullptr;
    j["p_value"] = nullptr;
    j["method"] = "median_ratio_only";
    j["median_ratio"] = NumberOrString(ratio);
    j["median_ratio_degenerate"] = degenerate;
    j["alpha"] = opt.alpha;
    j["significant"] = false;
    verdict = b.name + " vs " + a.name + ": median ratio=" + Short(ratio) +
              " (summary input, no rank test)";
  }
  j["stride"] = opt.stride;
  j["verdict"] = verdict;

  const fs::path out = EnsureOutDir(opt.out);
  WriteFileAtomic(out / (a.name + "_vs_" + b.name + ".comparison.json"), j.dump(2) + "\n");
  std::cout << verdict << '\n';
  return kExitOk;
}

int Map(const std::string& catalog_path, const CommonOptions& opt) {
  const TerrainScale scale = LoadScale(opt);
  const Catalog catalog = ReadCatalogFile(catalog_path, scale);
  if (catalog.empty()) throw ValidationError("catalog '" + catalog_path + "' is empty");
  const fs::path out = EnsureOutDir(opt.out);
  const RiskZoning zoning = RiskZoning::Default();
  RenderMap(catalog, zoning, out / "map.svg", &scale);
  for (const auto& r : catalog.records()) {
    std::cerr << r.label << ": KE=" << FormatNumber(r.max_kinetic_energy)
              << " J terrain=" << r.terrain.name << " (" << r.terrain.ordinal << ") risk="
              << RiskLevelName(zoning.Classify(r.max_kinetic_energy, r.terrain.ordinal))
              << '\n';
  }
  return kExitOk;
}

int Simulate(const std::string& scenario_path, const CommonOptions& opt) {
  sim::Scenario sc = sim::ReadScenarioFile(scenario_path);
  if (opt.seed_given) sc.seed = opt.seed;
  DefaultTerrainScale().Lookup(sc.terrain);
  sim::WriteSimulatedDataset(sc, opt.out);
  return kExitOk;
}

}  // namespace

int Run(int argc, char** argv) {
  CLI::App app{"Motion-distortion metric for ground-vehicle datasets", "mdist"};
  app.require_subcommand(1);
  CommonOptions opt;

  auto add_out = [&](CLI::App* sub, const std::string& help) {
    sub->add_option("--out", opt.out, help)->capture_default_str();
  };
  auto add_stats = [&](CLI::App* sub) {
    sub->add_option("--angular-weight", opt.angular_weight,
                    "Length [m] weighting the yaw-rate slip in the modulus")
        ->capture_default_str()
        ->check(CLI::NonNegativeNumber);
    sub->add_option("--stride", opt.stride, "Keep every k-th sample for statistics")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
  };

  std::vector<std::string> dataset_dirs;
  auto* compute = app.add_subcommand("compute", "Distortion series and summary per dataset");
  compute->add_option("datasets", dataset_dirs, "Dataset directories")->required();
  compute->add_option("--grid-dt", opt.grid_dt, "Alignment grid step [s]")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  compute->add_option("--max-gap", opt.max_gap, "Largest tolerated gap to a raw sample [s]")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  compute->add_option("--terrain-scale", opt.terrain_scale, "Terrain ladder override CSV");
  compute->add_flag("--from-poses", opt.from_poses,
                    "Differentiate poses even when velocities.csv exists");
  add_stats(compute);
  add_out(compute, "Output directory");

  std::string cmp_a, cmp_b;
  auto* compare = app.add_subcommand("compare", "Rank-sum comparison of two datasets");
  compare->add_option("a", cmp_a, "Series CSV or summary JSON of dataset A")->required();
  compare->add_option("b", cmp_b, "Series CSV or summary JSON of dataset B")->required();
  compare->add_option("--alpha", opt.alpha, "Significance level")->capture_default_str();
  add_stats(compare);
  add_out(compare, "Output directory");

  std::string catalog_path;
  auto* map = app.add_subcommand("map", "Kinetic-energy vs terrain-complexity map");
  map->add_option("catalog", catalog_path, "Catalog CSV")->required();
  map->add_option("--terrain-scale", opt.terrain_scale, "Terrain ladder override CSV");
  add_out(map, "Output directory for map.svg and map.csv");

  std::string scenario_path;
  auto* simulate = app.add_subcommand("simulate", "Synthesize a dataset directory");
  simulate->add_option("scenario", scenario_path, "Scenario file")->required();
  simulate->add_option("--seed", opt.seed, "Override the scenario seed")
      ->each([&](const std::string&) { opt.seed_given = true; });
  add_out(simulate, "Dataset directory to write");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInputError;
  }

  try {
    if (*compute) return Compute(dataset_dirs, opt);
    if (*compare) return Compare(cmp_a, cmp_b, opt);
    if (*map) return Map(catalog_path, opt);
    if (*simulate) return Simulate(scenario_path, opt);
  } catch (const InsufficientDataError& e) {
    std::cerr << "mdist: insufficient data: " << e.what() << '\n';
    return kExitInsufficientData;
  } catch (const std::exception& e) {
    std::cerr << "mdist: " << e.what() << '\n';
    return kExitInputError;
  }
  return kExitInputError;
}

}  // namespace mdist::cli
