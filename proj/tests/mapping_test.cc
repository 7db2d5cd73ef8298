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

#include "mdist/mapping.h"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <random>
#include <regex>
#include <sstream>

#include "gtest/gtest.h"
#include "mdist/case_study.h"
#include "mdist/csv.h"
#include "mdist/error.h"

namespace mdist {
namespace {

DeploymentRecord Record(std::string label, const VehicleSpec& v, const TerrainClass& terrain,
                        std::string model = "physics-based") {
  DeploymentRecord r;
  r.label = std::move(label);
  r.vehicle = v;
  r.terrain = terrain;
  r.model_type = std::move(model);
  return r;
}

Catalog CaseStudyCatalog() {
  const TerrainScale scale = DefaultTerrainScale();
  return BuildCatalog({Record("husky_tile", case_study::Husky(), scale.Lookup("tile")),
                       Record("husky_snow", case_study::Husky(), scale.Lookup("snow")),
                       Record("warthog_gravel", case_study::Warthog(), scale.Lookup("gravel")),
                       Record("warthog_ice", case_study::Warthog(), scale.Lookup("ice"))});
}

// translate(x,y) of every marker group, in document order.
std::vector<std::pair<double, double>> MarkerPositions(const std::string& svg) {
  std::vector<std::pair<double, double>> out;
  const std::regex re(R"re(class="marker" transform="translate\(([-0-9.]+),([-0-9.]+)\))re");
  for (auto it = std::sregex_iterator(svg.begin(), svg.end(), re); it != std::sregex_iterator();
       ++it) {
    out.emplace_back(std::stod((*it)[1]), std::stod((*it)[2]));
  }
  return out;
}

TEST(TerrainScaleTest, DefaultLookups) {
  const TerrainScale scale = DefaultTerrainScale();
  EXPECT_EQ(scale.Lookup("gravel").ordinal, 3);
  EXPECT_EQ(scale.Lookup("asphalt").ordinal, 1);
  EXPECT_EQ(scale.Lookup("Tile").ordinal, 1);
  EXPECT_EQ(scale.Lookup("deep snow with slopes").ordinal, 8);
  EXPECT_THROW(scale.Lookup("lava"), NotFoundError);
  EXPECT_EQ(scale.max_ordinal(), 8);
  EXPECT_LT(scale.Lookup("asphalt").ordinal, scale.Lookup("sand").ordinal);
  EXPECT_LT(scale.Lookup("sand").ordinal, scale.Lookup("deep_snow_slopes").ordinal);
}

TEST(TerrainScaleTest, OverrideFile) {
  std::istringstream in("name,ordinal\nice,2\nsnow,1\nmud,5\n");
  const TerrainScale scale = ReadTerrainScaleCsv(in);
  EXPECT_EQ(scale.Lookup("ice").ordinal, 2);
  EXPECT_EQ(scale.Lookup("mud").ordinal, 5);
  EXPECT_THROW(scale.Lookup("gravel"), NotFoundError);
  EXPECT_EQ(scale.classes().front().name, "snow");
}

TEST(TerrainScaleTest, RejectsInvalidScales) {
  std::istringstream dup("name,ordinal\nice,2\nsnow,2\n");
  EXPECT_THROW(ReadTerrainScaleCsv(dup), ValidationError);
  std::istringstream zero("name,ordinal\nice,0\n");
  EXPECT_THROW(ReadTerrainScaleCsv(zero), ValidationError);
  std::istringstream frac("name,ordinal\nice,1.5\n");
  EXPECT_THROW(ReadTerrainScaleCsv(frac), ParseError);
  std::istringstream name_twice("name,ordinal\nice,1\nICE,2\n");
  EXPECT_THROW(ReadTerrainScaleCsv(name_twice), ValidationError);
}

TEST(BuildCatalogTest, AcceptsDistinctLabels) {
  const Catalog c = CaseStudyCatalog();
  ASSERT_EQ(c.size(), 4u);
  EXPECT_EQ(c.records()[0].max_kinetic_energy, 37.5);
  EXPECT_EQ(c.records()[3].max_kinetic_energy, 5875.0);
}

TEST(BuildCatalogTest, DuplicateLabelNamed) {
  const TerrainScale scale = DefaultTerrainScale();
  try {
    BuildCatalog({Record("a", case_study::Husky(), scale.Lookup("tile")),
                  Record("a", case_study::Warthog(), scale.Lookup("ice"))});
    FAIL();
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("'a'"), std::string::npos);
  }
}

TEST(BuildCatalogTest, KineticEnergyMismatch) {
  const TerrainScale scale = DefaultTerrainScale();
  auto r = Record("w", case_study::Warthog(), scale.Lookup("ice"));
  r.max_kinetic_energy = 6000.0;
  EXPECT_THROW(BuildCatalog({r}), ValidationError);
  r.max_kinetic_energy = 5875.0 * 1.0009;
  EXPECT_NO_THROW(BuildCatalog({r}));
  r.max_kinetic_energy = 5875.0 * 1.0011;
  EXPECT_THROW(BuildCatalog({r}), ValidationError);
}

TEST(BuildCatalogTest, RejectsNonPositiveEnergy) {
  const TerrainScale scale = DefaultTerrainScale();
  VehicleSpec parked = case_study::Husky();
  parked.v_max = 0.0;
  EXPECT_THROW(BuildCatalog({Record("p", parked, scale.Lookup("tile"))}), ValidationError);
}

TEST(CatalogCsvTest, ReadsFixtureAndRoundTrips) {
  const TerrainScale scale = DefaultTerrainScale();
  const Catalog c = ReadCatalogFile(std::string(MDIST_DATA_DIR) + "/case_study/catalog.csv", scale);
  ASSERT_EQ(c.size(), 4u);
  EXPECT_EQ(c.records()[1].terrain.name, "snow");
  ASSERT_TRUE(c.records()[1].metric_median);
  EXPECT_EQ(*c.records()[1].metric_median, 2.76);

  const std::string first = WriteCatalogCsv(c);
  std::istringstream in(first);
  EXPECT_EQ(WriteCatalogCsv(ReadCatalogCsv(in, scale)), first);
}

TEST(CatalogCsvTest, QuotedFieldsRoundTrip) {
  const TerrainScale scale = DefaultTerrainScale();
  std::istringstream in(
      "label,vehicle,mass,v_max,terrain,model_type\n"
      "\"rover, \"\"big\"\"\",atv,730,6,dirt,\"learned, NN\"\n");
  const Catalog c = ReadCatalogCsv(in, scale);
  EXPECT_EQ(c.records()[0].label, "rover, \"big\"");
  const std::string first = WriteCatalogCsv(c);
  std::istringstream again(first);
  EXPECT_EQ(WriteCatalogCsv(ReadCatalogCsv(again, scale)), first);
}

TEST(CatalogCsvTest, UnknownTerrainIsParseError) {
  std::istringstream in("label,vehicle,mass,v_max,terrain,model_type\nx,y,1,1,lava,m\n");
  EXPECT_THROW(ReadCatalogCsv(in, DefaultTerrainScale()), ParseError);
}

TEST(MapCsvTest, ExactCaseStudyValuesAndRoundTrip) {
  const std::string csv = WriteMapCsv(MapPoints(CaseStudyCatalog()));
  EXPECT_NE(csv.find("husky_tile,1,37.5,physics-based\n"), std::string::npos);
  EXPECT_NE(csv.find("warthog_ice,7,5875,physics-based\n"), std::string::npos);
  std::istringstream in(csv);
  EXPECT_EQ(WriteMapCsv(ReadMapCsv(in)), csv);
}

TEST(RiskZoningTest, DefaultClassification) {
  const RiskZoning z = RiskZoning::Default();
  EXPECT_EQ(z.Classify(37.5, 1), RiskLevel::kLow);
  EXPECT_EQ(z.Classify(37.5, 6), RiskLevel::kHigh);
  EXPECT_EQ(z.Classify(5875, 3), RiskLevel::kHigh);
  EXPECT_EQ(z.Classify(5875, 2), RiskLevel::kMedium);
  EXPECT_EQ(z.Classify(999, 5), RiskLevel::kMedium);
  EXPECT_EQ(z.Classify(150, 1), RiskLevel::kMedium);
  EXPECT_EQ(z.Classify(1.0e6, 1), RiskLevel::kMedium);
}

TEST(RiskZoningTest, RejectsMalformedBoundaries) {
  EXPECT_THROW(RiskZoning({}, {{0, 6}}), ValidationError);
  EXPECT_THROW(RiskZoning({{0, 3}, {100, 3}}, {{0, 6}}), ValidationError);
  EXPECT_THROW(RiskZoning({{100, 3}, {0, 1}}, {{200, 6}}), ValidationError);
  // High corner outside the medium zone.
  EXPECT_THROW(RiskZoning({{0, 5}}, {{0, 4}}), ValidationError);
}

TEST(RiskZoningTest, IndependentOfCatalogOrder) {
  const TerrainScale scale = DefaultTerrainScale();
  std::vector<DeploymentRecord> recs;
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> mass(5, 2000), speed(0.2, 15);
  std::uniform_int_distribution<int> ord(1, 8);
  for (int i = 0; i < 30; ++i) {
    recs.push_back(Record("r" + std::to_string(i), {"v", 0, 0, mass(rng), speed(rng), {}},
                          scale.ByOrdinal(ord(rng))));
  }
  const RiskZoning z = RiskZoning::Default();
  const MapLayout a = LayoutMap(BuildCatalog(recs), z);
  std::shuffle(recs.begin(), recs.end(), rng);
  const MapLayout b = LayoutMap(BuildCatalog(recs), z);
  for (const auto& m : a.markers) {
    const auto it = std::find_if(b.markers.begin(), b.markers.end(), [&](const PlacedMarker& o) {
      return o.point.label == m.point.label;
    });
    ASSERT_NE(it, b.markers.end());
    EXPECT_EQ(it->risk, m.risk);
    EXPECT_EQ(it->y, m.y);
  }
}

TEST(LayoutMapTest, HigherEnergyPlotsHigher) {
  const TerrainScale scale = DefaultTerrainScale();
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> mass(1, 3000), speed(0.1, 20);
  std::vector<DeploymentRecord> recs;
  for (int i = 0; i < 40; ++i) {
    recs.push_back(Record("r" + std::to_string(i), {"v", 0, 0, mass(rng), speed(rng), {}},
                          scale.ByOrdinal(1 + i % 8)));
  }
  const MapLayout layout = LayoutMap(BuildCatalog(recs), RiskZoning::Default());
  for (const auto& p : layout.markers) {
    for (const auto& q : layout.markers) {
      if (p.point.kinetic_energy > q.point.kinetic_energy) EXPECT_LT(p.y, q.y);
    }
    EXPECT_GE(p.y, layout.top - 1e-9);
    EXPECT_LE(p.y, layout.height - layout.bottom + 1e-9);
  }
}

TEST(RenderMapSvgTest, CaseStudyOrdering) {
  const TerrainScale scale = DefaultTerrainScale();
  const RiskZoning zoning = RiskZoning::Default();
  const std::string svg = RenderMapSvg(LayoutMap(CaseStudyCatalog(), zoning, &scale), zoning, &scale);
  EXPECT_EQ(svg.find("<script"), std::string::npos);
  EXPECT_NE(svg.find("version=\"1.1\""), std::string::npos);
  const auto pos = MarkerPositions(svg);
  ASSERT_EQ(pos.size(), 4u);
  // Document order follows the catalog: husky tile, husky snow, warthog gravel, ice.
  EXPECT_LT(pos[2].second, pos[0].second);
  EXPECT_LT(pos[3].second, pos[1].second);
  EXPECT_EQ(pos[0].second, pos[1].second);
  EXPECT_LT(pos[0].first, pos[1].first);  // tile left of snow
}

TEST(RenderMapSvgTest, SingleRecord) {
  const TerrainScale scale = DefaultTerrainScale();
  const Catalog c = BuildCatalog({Record("only", case_study::Husky(), scale.Lookup("sand"))});
  const std::string svg = RenderMapSvg(LayoutMap(c, RiskZoning::Default()), RiskZoning::Default());
  EXPECT_EQ(MarkerPositions(svg).size(), 1u);
  EXPECT_TRUE(svg.starts_with("<?xml"));
  EXPECT_TRUE(svg.ends_with("</svg>\n"));
}

TEST(RenderMapSvgTest, DistinctShapesPerModelType) {
  const TerrainScale scale = DefaultTerrainScale();
  const Catalog c = BuildCatalog({Record("a", case_study::Husky(), scale.Lookup("sand"), "learned"),
                                  Record("b", case_study::Warthog(), scale.Lookup("ice"),
                                         "physics-based")});
  const std::string svg = RenderMapSvg(LayoutMap(c, RiskZoning::Default()), RiskZoning::Default());
  EXPECT_NE(svg.find("<circle"), std::string::npos);
  EXPECT_NE(svg.find("<rect x=\"-5.5\""), std::string::npos);
}

TEST(RenderMapTest, EmptyCatalogRejected) {
  EXPECT_THROW(LayoutMap(BuildCatalog({}), RiskZoning::Default()), ValidationError);
}

TEST(RenderMapTest, WritesSvgAndCsv) {
  const auto dir = std::filesystem::temp_directory_path() / "mdist_render_map";
  std::filesystem::create_directories(dir);
  RenderMap(CaseStudyCatalog(), RiskZoning::Default(), dir / "m.svg");
  EXPECT_TRUE(std::filesystem::exists(dir / "m.svg"));
  EXPECT_EQ(ReadTextFile(dir / "m.csv"), WriteMapCsv(MapPoints(CaseStudyCatalog())));
  EXPECT_THROW(RenderMap(CaseStudyCatalog(), RiskZoning::Default(), dir / "no/such/dir/m.svg"),
               IoError);
  std::filesystem::remove_all(dir);
}

}  // namespace
}  // namespace mdist
