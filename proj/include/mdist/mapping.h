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

#ifndef MDIST_MAPPING_H_
#define MDIST_MAPPING_H_

#include <filesystem>
#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mdist/kinematics.h"

namespace mdist {

// A rung on the qualitative terrain-complexity ladder. Higher ordinal means
// harder terrain (steeper, rougher, softer, lower friction).
struct TerrainClass {
  std::string name;
  int ordinal = 0;  // >= 1
  std::vector<std::string> aliases;
  std::vector<std::string> descriptors;

  bool Matches(std::string_view query) const;
};

// Ordered terrain ladder with lookup by name or alias (case-insensitive).
class TerrainScale {
 public:
  // ValidationError on ordinal < 1, duplicate ordinals or duplicate names.
  explicit TerrainScale(std::vector<TerrainClass> classes);

  // NotFoundError for an unknown name.
  const TerrainClass& Lookup(std::string_view name) const;
  // NotFoundError when no class carries the ordinal.
  const TerrainClass& ByOrdinal(int ordinal) const;
  const std::vector<TerrainClass>& classes() const { return classes_; }
  int max_ordinal() const;

 private:
  std::vector<TerrainClass> classes_;  // sorted by ordinal
};

// asphalt/tile(1) < grass(2) < gravel(3) < dirt(4) < sand(5) < snow(6)
//   < ice(7) < deep snow with slopes(8)
TerrainScale DefaultTerrainScale();

// Override file with header `name,ordinal`.
TerrainScale ReadTerrainScaleCsv(std::istream& in);
TerrainScale ReadTerrainScaleFile(const std::filesystem::path& path);

struct DeploymentRecord {
  std::string label;
  VehicleSpec vehicle;
  TerrainClass terrain;
  double max_kinetic_energy = 0.0;  // [J]
  std::optional<double> metric_median;
  std::string model_type;
};

// Validated, label-unique deployments kept in input order.
class Catalog {
 public:
  const std::vector<DeploymentRecord>& records() const { return records_; }
  std::size_t size() const { return records_.size(); }
  bool empty() const { return records_.empty(); }

 private:
  friend Catalog BuildCatalog(std::vector<DeploymentRecord> records);
  std::vector<DeploymentRecord> records_;
};

// Rejects duplicate labels, non-positive mass/speed, and stored kinetic
// energies more than 0.1% away from 1/2 m v_max^2. A stored energy of 0 is
// treated as "not given" and filled in.
Catalog BuildCatalog(std::vector<DeploymentRecord> records);

// Catalog CSV: `label,vehicle,mass,v_max,terrain,model_type`, with optional
// trailing `max_kinetic_energy` and `metric_median` columns.
Catalog ReadCatalogCsv(std::istream& in, const TerrainScale& scale);
Catalog ReadCatalogFile(const std::filesystem::path& path,
                        const TerrainScale& scale);
std::string WriteCatalogCsv(const Catalog& catalog);

enum class RiskLevel { kLow = 0, kMedium = 1, kHigh = 2 };
std::string_view RiskLevelName(RiskLevel level);

// One corner of a staircase zone boundary. A deployment lies beyond the
// boundary when it dominates a corner: KE >= ke_bound and ordinal >=
// ordinal_bound.
struct RiskCorner {
  double ke_bound = 0.0;
  int ordinal_bound = 1;
};

// Two staircase boundaries, low|medium and medium|high. Within a boundary,
// corners have strictly increasing ke_bound and strictly decreasing
// ordinal_bound; every high corner must lie inside the medium zone.
class RiskZoning {
 public:
  RiskZoning(std::vector<RiskCorner> medium, std::vector<RiskCorner> high);

  // medium: ordinal >= 3 or KE >= 100 J
  // high:   ordinal >= 6 or (KE >= 1000 J and ordinal >= 3)
  static RiskZoning Default();

  RiskLevel Classify(double kinetic_energy, int ordinal) const;
  const std::vector<RiskCorner>& medium() const { return medium_; }
  const std::vector<RiskCorner>& high() const { return high_; }

 private:
  std::vector<RiskCorner> medium_;
  std::vector<RiskCorner> high_;
};

// One plotted deployment.
struct MapPoint {
  std::string label;
  int terrain_ordinal = 0;
  double kinetic_energy = 0.0;
  std::string model_type;
};

// Map CSV: `label,terrain_ordinal,kinetic_energy,model_type`.
std::vector<MapPoint> MapPoints(const Catalog& catalog);
std::string WriteMapCsv(const std::vector<MapPoint>& points);
std::vector<MapPoint> ReadMapCsv(std::istream& in);

// Marker placement in SVG user units; y grows downward, so larger kinetic
// energy gives a smaller y.
struct PlacedMarker {
  MapPoint point;
  double x = 0.0;
  double y = 0.0;
  RiskLevel risk = RiskLevel::kLow;
};

struct MapLayout {
  double width = 720.0;
  double height = 480.0;
  double left = 80.0, right = 170.0, top = 30.0, bottom = 60.0;
  int x_max = 0;  // highest ordinal on the axis
  int decade_lo = 0, decade_hi = 0;  // y range is [10^lo, 10^hi]
  std::vector<PlacedMarker> markers;

  double XOf(double ordinal) const;
  double YOf(double kinetic_energy) const;
};

// Ordinal x-axis, log10 kinetic-energy y-axis. ValidationError when the
// catalog is empty or holds a non-positive energy.
// When `scale` is given the x-axis spans all of its ordinals and ticks are
// labelled with terrain names.
MapLayout LayoutMap(const Catalog& catalog, const RiskZoning& zoning,
                    const TerrainScale* scale = nullptr);
std::string RenderMapSvg(const MapLayout& layout, const RiskZoning& zoning,
                         const TerrainScale* scale = nullptr);

// Writes `<svg_path>` and the scatter CSV next to it (extension .csv).
void RenderMap(const Catalog& catalog, const RiskZoning& zoning,
               const std::filesystem::path& svg_path,
               const TerrainScale* scale = nullptr);

}  // namespace mdist

#endif  // MDIST_MAPPING_H_
