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
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>

#include "mdist/csv.h"
#include "mdist/error.h"
#include "mdist/metrics.h"

namespace mdist {
namespace {

// Case-insensitive, with ' ', '-' and '_' treated alike.
std::string NormalizeName(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    if (c == ' ' || c == '-') c = '_';
    out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  return out;
}

std::string Fixed(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

std::string XmlEscape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

void ValidateStaircase(const std::vector<RiskCorner>& corners, const char* which) {
  if (corners.empty()) {
    throw ValidationError(std::string(which) + " risk boundary has no corners");
  }
  for (std::size_t i = 0; i < corners.size(); ++i) {
    const auto& c = corners[i];
    if (!(c.ke_bound >= 0.0) || !std::isfinite(c.ke_bound) || c.ordinal_bound < 1) {
      throw ValidationError(std::string(which) +
                            " risk corner needs ke_bound >= 0 and ordinal_bound >= 1");
    }
    if (i > 0 && !(c.ke_bound > corners[i - 1].ke_bound &&
                   c.ordinal_bound < corners[i - 1].ordinal_bound)) {
      throw ValidationError(std::string(which) +
                            " risk corners must increase in energy and decrease in "
                            "terrain ordinal");
    }
  }
}

bool Dominates(const std::vector<RiskCorner>& corners, double ke, int ordinal) {
  return std::any_of(corners.begin(), corners.end(), [&](const RiskCorner& c) {
    return ke >= c.ke_bound && ordinal >= c.ordinal_bound;
  });
}

}  // namespace

bool TerrainClass::Matches(std::string_view query) const {
  const std::string q = NormalizeName(query);
  if (NormalizeName(name) == q) return true;
  return std::any_of(aliases.begin(), aliases.end(),
                     [&](const std::string& a) { return NormalizeName(a) == q; });
}

TerrainScale::TerrainScale(std::vector<TerrainClass> classes) : classes_(std::move(classes)) {
  std::sort(classes_.begin(), classes_.end(),
            [](const TerrainClass& a, const TerrainClass& b) { return a.ordinal < b.ordinal; });
  std::set<std::string> names;
  for (std::size_t i = 0; i < classes_.size(); ++i) {
    const auto& c = classes_[i];
    if (c.ordinal < 1) {
      throw ValidationError("terrain '" + c.name + "' has ordinal < 1");
    }
    if (i > 0 && c.ordinal == classes_[i - 1].ordinal) {
      throw ValidationError("terrain ordinal " + std::to_string(c.ordinal) +
                            " is used twice");
    }
    if (c.name.empty()) throw ValidationError("terrain class without a name");
    if (!names.insert(NormalizeName(c.name)).second) {
      throw ValidationError("terrain '" + c.name + "' is listed twice");
    }
    for (const auto& a : c.aliases) {
      if (!names.insert(NormalizeName(a)).second) {
        throw ValidationError("terrain alias '" + a + "' is listed twice");
      }
    }
  }
}

const TerrainClass& TerrainScale::Lookup(std::string_view name) const {
  for (const auto& c : classes_) {
    if (c.Matches(name)) return c;
  }
  throw NotFoundError("unknown terrain '" + std::string(name) + "'");
}

const TerrainClass& TerrainScale::ByOrdinal(int ordinal) const {
  for (const auto& c : classes_) {
    if (c.ordinal == ordinal) return c;
  }
  throw NotFoundError("no terrain with ordinal " + std::to_string(ordinal));
}

int TerrainScale::max_ordinal() const {
  return classes_.empty() ? 0 : classes_.back().ordinal;
}

TerrainScale DefaultTerrainScale() {
  return TerrainScale({
      {"asphalt", 1, {"tile", "concrete"}, {"flat", "hard", "high friction"}},
      {"grass", 2, {}, {"flat to rolling", "firm"}},
      {"gravel", 3, {}, {"loose surface", "moderate roughness"}},
      {"dirt", 4, {"mud"}, {"uneven", "deformable"}},
      {"sand", 5, {}, {"soft", "non-cohesive"}},
      {"snow", 6, {}, {"soft", "sinkage", "variable friction"}},
      {"ice", 7, {}, {"hard", "very low friction"}},
      {"deep_snow_slopes", 8, {"deep snow with slopes", "deep_snow"},
       {"deep sinkage", "steep"}},
  });
}

TerrainScale ReadTerrainScaleCsv(std::istream& in) {
  const CsvTable table = ReadCsv(in);
  const std::size_t cn = table.Column("name");
  const std::size_t co = table.Column("ordinal");
  std::vector<TerrainClass> classes;
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const std::size_t line = table.row_lines[r];
    const double ord = ParseNumber(table.rows[r][co], line);
    if (ord != std::floor(ord) || std::abs(ord) > 1e6) {
      throw ParseError("terrain ordinal must be an integer", line);
    }
    classes.push_back({table.rows[r][cn], static_cast<int>(ord), {}, {}});
  }
  if (classes.empty()) throw ValidationError("terrain scale file lists no terrain");
  return TerrainScale(std::move(classes));
}

TerrainScale ReadTerrainScaleFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  return ReadTerrainScaleCsv(in);
}

Catalog BuildCatalog(std::vector<DeploymentRecord> records) {
  std::set<std::string> labels;
  for (auto& r : records) {
    if (r.label.empty()) throw ValidationError("deployment record without a label");
    if (!labels.insert(r.label).second) {
      throw ValidationError("duplicate deployment label '" + r.label + "'");
    }
    if (r.terrain.ordinal < 1) {
      throw ValidationError("record '" + r.label + "' has no terrain ordinal");
    }
    double ke = 0.0;
    try {
      ke = KineticEnergy(r.vehicle);
    } catch (const ParameterError& e) {
      throw ValidationError("record '" + r.label + "': " + e.what());
    }
    if (r.max_kinetic_energy != 0.0 &&
        std::abs(r.max_kinetic_energy - ke) > 1e-3 * ke) {
      throw ValidationError("record '" + r.label + "': stored kinetic energy " +
                            FormatNumber(r.max_kinetic_energy) + " J differs from " +
                            FormatNumber(ke) + " J computed from mass and top speed");
    }
    r.max_kinetic_energy = ke;
    if (r.metric_median && !(*r.metric_median >= 0.0)) {
      throw ValidationError("record '" + r.label + "' has a negative metric median");
    }
  }
  Catalog c;
  c.records_ = std::move(records);
  return c;
}

Catalog ReadCatalogCsv(std::istream& in, const TerrainScale& scale) {
  const CsvTable table = ReadCsv(in);
  const std::size_t c_label = table.Column("label");
  const std::size_t c_vehicle = table.Column("vehicle");
  const std::size_t c_mass = table.Column("mass");
  const std::size_t c_vmax = table.Column("v_max");
  const std::size_t c_terrain = table.Column("terrain");
  const std::size_t c_model = table.Column("model_type");
  const bool has_ke = table.HasColumn("max_kinetic_energy");
  const bool has_median = table.HasColumn("metric_median");

  std::vector<DeploymentRecord> records;
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const auto& row = table.rows[r];
    const std::size_t line = table.row_lines[r];
    DeploymentRecord rec;
    rec.label = row[c_label];
    rec.vehicle.name = row[c_vehicle];
    rec.vehicle.mass = ParseNumber(row[c_mass], line);
    rec.vehicle.v_max = ParseNumber(row[c_vmax], line);
    try {
      rec.terrain = scale.Lookup(row[c_terrain]);
    } catch (const NotFoundError& e) {
      throw ParseError(e.what(), line);
    }
    rec.model_type = row[c_model];
    if (has_ke) {
      const auto& cell = row[table.Column("max_kinetic_energy")];
      if (!cell.empty()) rec.max_kinetic_energy = ParseNumber(cell, line);
    }
    if (has_median) {
      const auto& cell = row[table.Column("metric_median")];
      if (!cell.empty()) rec.metric_median = ParseNumber(cell, line);
    }
    records.push_back(std::move(rec));
  }
  return BuildCatalog(std::move(records));
}

Catalog ReadCatalogFile(const std::filesystem::path& path, const TerrainScale& scale) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  return ReadCatalogCsv(in, scale);
}

std::string WriteCatalogCsv(const Catalog& catalog) {
  const bool with_median =
      std::any_of(catalog.records().begin(), catalog.records().end(),
                  [](const DeploymentRecord& r) { return r.metric_median.has_value(); });
  std::string out = "label,vehicle,mass,v_max,terrain,model_type";
  out += with_median ? ",metric_median\n" : "\n";
  for (const auto& r : catalog.records()) {
    out += CsvEscape(r.label) + ',' + CsvEscape(r.vehicle.name) + ',' +
           FormatNumber(r.vehicle.mass) + ',' + FormatNumber(r.vehicle.v_max) + ',' +
           CsvEscape(r.terrain.name) + ',' + CsvEscape(r.model_type);
    if (with_median) {
      out += ',';
      if (r.metric_median) out += FormatNumber(*r.metric_median);
    }
    out += '\n';
  }
  return out;
}

std::string_view RiskLevelName(RiskLevel level) {
  switch (level) {
    case RiskLevel::kLow: return "low";
    case RiskLevel::kMedium: return "medium";
    case RiskLevel::kHigh: return "high";
  }
  return "unknown";
}

RiskZoning::RiskZoning(std::vector<RiskCorner> medium, std::vector<RiskCorner> high)
    : medium_(std::move(medium)), high_(std::move(high)) {
  ValidateStaircase(medium_, "medium");
  ValidateStaircase(high_, "high");
  for (const auto& c : high_) {
    if (!Dominates(medium_, c.ke_bound, c.ordinal_bound)) {
      throw ValidationError("high-risk zone must lie inside the medium-risk zone");
    }
  }
}

RiskZoning RiskZoning::Default() {
  return RiskZoning({{0.0, 3}, {100.0, 1}}, {{0.0, 6}, {1000.0, 3}});
}

RiskLevel RiskZoning::Classify(double kinetic_energy, int ordinal) const {
  if (Dominates(high_, kinetic_energy, ordinal)) return RiskLevel::kHigh;
  if (Dominates(medium_, kinetic_energy, ordinal)) return RiskLevel::kMedium;
  return RiskLevel::kLow;
}

std::vector<MapPoint> MapPoints(const Catalog& catalog) {
  std::vector<MapPoint> points;
  for (const auto& r : catalog.records()) {
    points.push_back({r.label, r.terrain.ordinal, r.max_kinetic_energy, r.model_type});
  }
  return points;
}

std::string WriteMapCsv(const std::vector<MapPoint>& points) {
  std::string out = "label,terrain_ordinal,kinetic_energy,model_type\n";
  for (const auto& p : points) {
    out += CsvEscape(p.label) + ',' + std::to_string(p.terrain_ordinal) + ',' +
           FormatNumber(p.kinetic_energy) + ',' + CsvEscape(p.model_type) + '\n';
  }
  return out;
}

std::vector<MapPoint> ReadMapCsv(std::istream& in) {
  const CsvTable table = ReadCsv(in);
  const std::size_t cl = table.Column("label");
  const std::size_t co = table.Column("terrain_ordinal");
  const std::size_t ck = table.Column("kinetic_energy");
  const std::size_t cm = table.Column("model_type");
  std::vector<MapPoint> points;
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const auto& row = table.rows[r];
    const std::size_t line = table.row_lines[r];
    const double ord = ParseNumber(row[co], line);
    if (ord != std::floor(ord) || ord < 1 || ord > 1e6) {
      throw ParseError("terrain ordinal must be a positive integer", line);
    }
    points.push_back({row[cl], static_cast<int>(ord), ParseNumber(row[ck], line), row[cm]});
  }
  return points;
}

double MapLayout::XOf(double ordinal) const {
  const double plot_w = width - left - right;
  return left + (ordinal - 0.5) / static_cast<double>(x_max) * plot_w;
}

double MapLayout::YOf(double kinetic_energy) const {
  const double plot_h = height - top - bottom;
  const double span = static_cast<double>(decade_hi - decade_lo);
  return top + (static_cast<double>(decade_hi) - std::log10(kinetic_energy)) / span * plot_h;
}

MapLayout LayoutMap(const Catalog& catalog, const RiskZoning& zoning,
                    const TerrainScale* scale) {
  if (catalog.empty()) throw ValidationError("cannot map an empty catalog");
  MapLayout layout;
  double ke_min = INFINITY, ke_max = 0.0;
  int ord_max = scale ? scale->max_ordinal() : 0;
  for (const auto& r : catalog.records()) {
    if (!(r.max_kinetic_energy > 0.0) || !std::isfinite(r.max_kinetic_energy)) {
      throw ValidationError("record '" + r.label +
                            "' has non-positive kinetic energy; log axis undefined");
    }
    ke_min = std::min(ke_min, r.max_kinetic_energy);
    ke_max = std::max(ke_max, r.max_kinetic_energy);
    ord_max = std::max(ord_max, r.terrain.ordinal);
  }
  layout.x_max = ord_max;
  layout.decade_lo = static_cast<int>(std::floor(std::log10(ke_min)));
  layout.decade_hi = static_cast<int>(std::ceil(std::log10(ke_max)));
  if (layout.decade_hi <= layout.decade_lo) layout.decade_hi = layout.decade_lo + 1;
  for (const auto& p : MapPoints(catalog)) {
    layout.markers.push_back({p, layout.XOf(p.terrain_ordinal), layout.YOf(p.kinetic_energy),
                              zoning.Classify(p.kinetic_energy, p.terrain_ordinal)});
  }
  return layout;
}

namespace {

// Marker outline centred on the origin.
std::string MarkerShape(std::size_t kind) {
  switch (kind % 6) {
    case 0: return R"(<circle cx="0" cy="0" r="6"/>)";
    case 1: return R"(<rect x="-5.5" y="-5.5" width="11" height="11"/>)";
    case 2: return R"(<path d="M0,-7 L6.5,5 L-6.5,5 Z"/>)";
    case 3: return R"(<path d="M0,-7 L7,0 L0,7 L-7,0 Z"/>)";
    case 4: return R"(<path d="M0,7 L6.5,-5 L-6.5,-5 Z"/>)";
    default: return R"(<path d="M-6,-2 L-2,-2 L-2,-6 L2,-6 L2,-2 L6,-2 L6,2 L2,2 L2,6 L-2,6 L-2,2 L-6,2 Z"/>)";
  }
}

void ZoneRects(std::string& svg, const MapLayout& L, const std::vector<RiskCorner>& corners,
               const char* fill) {
  const double x_right = L.XOf(L.x_max + 0.5);
  const double y_bottom = L.height - L.bottom;
  const double ke_floor = std::pow(10.0, L.decade_lo);
  for (const auto& c : corners) {
    if (c.ordinal_bound > L.x_max) continue;
    const double x0 = L.XOf(c.ordinal_bound - 0.5);
    const double y0 = c.ke_bound <= ke_floor ? y_bottom : L.YOf(c.ke_bound);
    if (y0 <= L.top) continue;
    svg += "<rect class=\"zone\" x=\"" + Fixed(x0) + "\" y=\"" + Fixed(L.top) +
           "\" width=\"" + Fixed(x_right - x0) + "\" height=\"" + Fixed(y0 - L.top) +
           "\" fill=\"" + fill + "\"/>\n";
  }
}

}  // namespace

std::string RenderMapSvg(const MapLayout& L, const RiskZoning& zoning,
                         const TerrainScale* scale) {
  constexpr const char* kLowFill = "#e3f2e1";
  constexpr const char* kMediumFill = "#fdf0c4";
  constexpr const char* kHighFill = "#f6d0d0";
  const double x_left = L.left;
  const double x_right = L.width - L.right;
  const double y_top = L.top;
  const double y_bottom = L.height - L.bottom;

  std::string svg;
  svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" +
         Fixed(L.width) + "\" height=\"" + Fixed(L.height) + "\" viewBox=\"0 0 " +
         Fixed(L.width) + " " + Fixed(L.height) + "\" font-family=\"sans-serif\" "
         "font-size=\"11\">\n";
  svg += "<rect x=\"0\" y=\"0\" width=\"" + Fixed(L.width) + "\" height=\"" +
         Fixed(L.height) + "\" fill=\"#ffffff\"/>\n";

  // Risk zones: low background, then medium and high staircases on top.
  svg += "<rect class=\"zone\" x=\"" + Fixed(x_left) + "\" y=\"" + Fixed(y_top) +
         "\" width=\"" + Fixed(x_right - x_left) + "\" height=\"" +
         Fixed(y_bottom - y_top) + "\" fill=\"" + kLowFill + "\"/>\n";
  ZoneRects(svg, L, zoning.medium(), kMediumFill);
  ZoneRects(svg, L, zoning.high(), kHighFill);

  // Axes and ticks.
  svg += "<g stroke=\"#333333\" stroke-width=\"1\">\n";
  svg += "<line x1=\"" + Fixed(x_left) + "\" y1=\"" + Fixed(y_bottom) + "\" x2=\"" +
         Fixed(x_right) + "\" y2=\"" + Fixed(y_bottom) + "\"/>\n";
  svg += "<line x1=\"" + Fixed(x_left) + "\" y1=\"" + Fixed(y_top) + "\" x2=\"" +
         Fixed(x_left) + "\" y2=\"" + Fixed(y_bottom) + "\"/>\n";
  svg += "</g>\n";
  for (int o = 1; o <= L.x_max; ++o) {
    const double x = L.XOf(o);
    std::string tick = std::to_string(o);
    if (scale) {
      for (const auto& c : scale->classes()) {
        if (c.ordinal == o) tick = c.name;
      }
    }
    svg += "<line x1=\"" + Fixed(x) + "\" y1=\"" + Fixed(y_bottom) + "\" x2=\"" +
           Fixed(x) + "\" y2=\"" + Fixed(y_bottom + 4) + "\" stroke=\"#333333\"/>\n";
    svg += "<text x=\"" + Fixed(x) + "\" y=\"" + Fixed(y_bottom + 16) +
           "\" text-anchor=\"middle\">" + XmlEscape(tick) + "</text>\n";
  }
  for (int d = L.decade_lo; d <= L.decade_hi; ++d) {
    const double y = L.YOf(std::pow(10.0, d));
    svg += "<line x1=\"" + Fixed(x_left - 4) + "\" y1=\"" + Fixed(y) + "\" x2=\"" +
           Fixed(x_left) + "\" y2=\"" + Fixed(y) + "\" stroke=\"#333333\"/>\n";
    svg += "<text x=\"" + Fixed(x_left - 8) + "\" y=\"" + Fixed(y + 4) +
           "\" text-anchor=\"end\">10<tspan baseline-shift=\"super\" font-size=\"8\">" +
           std::to_string(d) + "</tspan></text>\n";
  }
  svg += "<text x=\"" + Fixed(0.5 * (x_left + x_right)) + "\" y=\"" +
         Fixed(L.height - 18) + "\" text-anchor=\"middle\">Terrain complexity</text>\n";
  svg += "<text x=\"18\" y=\"" + Fixed(0.5 * (y_top + y_bottom)) +
         "\" text-anchor=\"middle\" transform=\"rotate(-90 18 " +
         Fixed(0.5 * (y_top + y_bottom)) + ")\">Max kinetic energy [J] (log scale)</text>\n";

  // One marker shape per model type, assigned in sorted order.
  std::map<std::string, std::size_t> kinds;
  for (const auto& m : L.markers) kinds.emplace(m.point.model_type, 0);
  std::size_t next = 0;
  for (auto& [name, kind] : kinds) kind = next++;

  for (const auto& m : L.markers) {
    svg += "<g class=\"marker\" transform=\"translate(" + Fixed(m.x) + "," + Fixed(m.y) +
           ")\" fill=\"#1f3b73\" stroke=\"#ffffff\" stroke-width=\"1\"><title>" +
           XmlEscape(m.point.label) + " (" + FormatNumber(m.point.kinetic_energy) +
           " J, " + std::string(RiskLevelName(m.risk)) + " risk)</title>" +
           MarkerShape(kinds[m.point.model_type]) + "</g>\n";
    svg += "<text class=\"label\" x=\"" + Fixed(m.x + 9) + "\" y=\"" + Fixed(m.y - 8) +
           "\">" + XmlEscape(m.point.label) + "</text>\n";
  }

  // Legend.
  double ly = y_top + 10;
  const double lx = x_right + 20;
  for (const auto& [name, kind] : kinds) {
    svg += "<g transform=\"translate(" + Fixed(lx) + "," + Fixed(ly) +
           ")\" fill=\"#1f3b73\">" + MarkerShape(kind) + "</g>\n";
    svg += "<text x=\"" + Fixed(lx + 12) + "\" y=\"" + Fixed(ly + 4) + "\">" +
           XmlEscape(name.empty() ? "unspecified" : name) + "</text>\n";
    ly += 20;
  }
  ly += 10;
  const std::pair<const char*, const char*> zones[] = {
      {kLowFill, "low risk"}, {kMediumFill, "medium risk"}, {kHighFill, "high risk"}};
  for (const auto& [fill, text] : zones) {
    svg += "<rect x=\"" + Fixed(lx - 6) + "\" y=\"" + Fixed(ly - 6) +
           "\" width=\"12\" height=\"12\" fill=\"" + fill + "\" stroke=\"#999999\"/>\n";
    svg += "<text x=\"" + Fixed(lx + 12) + "\" y=\"" + Fixed(ly + 4) + "\">" + text +
           "</text>\n";
    ly += 20;
  }
  svg += "</svg>\n";
  return svg;
}

void RenderMap(const Catalog& catalog, const RiskZoning& zoning,
               const std::filesystem::path& svg_path, const TerrainScale* scale) {
  const MapLayout layout = LayoutMap(catalog, zoning, scale);
  const std::string svg = RenderMapSvg(layout, zoning, scale);
  auto csv_path = svg_path;
  csv_path.replace_extension(".csv");
  WriteFileAtomic(csv_path, WriteMapCsv(MapPoints(catalog)));
  WriteFileAtomic(svg_path, svg);
}

}  // namespace mdist
