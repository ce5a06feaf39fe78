/*
 * Copyright 2026 The Aquaspec Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "aquaspec/sensor.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "aquaspec/csv.hpp"

namespace aquaspec {

SRFTable::SRFTable(WavelengthGrid g, std::vector<double> w)
    : grid(std::move(g)), weights(std::move(w)) {
  if (weights.size() != grid.size())
    throw ConfigError("SRF table weight count does not match its grid");
  bool any_positive = false;
  for (double x : weights) {
    if (!std::isfinite(x) || x < 0.0)
      throw ConfigError("SRF weights must be finite and non-negative");
    if (x > 0.0) any_positive = true;
  }
  if (!any_positive) throw ConfigError("SRF table has no positive weight");
}

bool SRFTable::operator==(const SRFTable& o) const {
  if (!(grid == o.grid) || weights.size() != o.weights.size()) return false;
  for (std::size_t i = 0; i < weights.size(); ++i)
    if (std::fabs(weights[i] - o.weights[i]) >= 1e-12) return false;
  return true;
}

std::string_view approach_name(Approach a) {
  switch (a) {
    case Approach::gaussian: return "gaussian";
    case Approach::equal: return "equal";
    case Approach::srf: return "srf";
  }
  return "gaussian";
}

Approach approach_from_name(std::string_view name) {
  if (name == "gaussian") return Approach::gaussian;
  if (name == "equal") return Approach::equal;
  if (name == "srf") return Approach::srf;
  throw ConfigError("unknown weighting approach: '" + std::string(name) +
                    "' (expected gaussian, equal or srf)");
}

BandDefinition::BandDefinition(std::string band_id, double center, double fwhm,
                               std::optional<SRFTable> table)
    : id(std::move(band_id)), center_nm(center), fwhm_nm(fwhm), srf(std::move(table)) {
  if (id.empty()) throw ConfigError("band id must not be empty");
  if (!(center_nm >= 400.0 && center_nm <= 900.0))
    throw ConfigError("band '" + id + "' center " + std::to_string(center_nm) +
                      " nm outside [400, 900]");
  if (!(fwhm_nm > 0.0))
    throw ConfigError("band '" + id + "' fwhm must be > 0");
}

bool BandDefinition::operator==(const BandDefinition& o) const {
  return id == o.id && std::fabs(center_nm - o.center_nm) < 1e-9 &&
         std::fabs(fwhm_nm - o.fwhm_nm) < 1e-9 && srf == o.srf;
}

std::vector<double> SensorModel::band_centers() const {
  std::vector<double> c;
  c.reserve(bands.size());
  for (const auto& b : bands) c.push_back(b.center_nm);
  return c;
}

std::vector<std::string> SensorModel::band_ids() const {
  std::vector<std::string> ids;
  ids.reserve(bands.size());
  for (const auto& b : bands) ids.push_back(b.id);
  return ids;
}

bool SensorModel::operator==(const SensorModel& o) const {
  return name == o.name && approach == o.approach && bands == o.bands;
}

void validate_sensor(const SensorModel& m) {
  if (m.name.empty()) throw ConfigError("sensor name must not be empty");
  if (m.bands.empty()) throw ConfigError("sensor '" + m.name + "' has no bands");
  std::set<std::string> ids;
  for (std::size_t i = 0; i < m.bands.size(); ++i) {
    if (!ids.insert(m.bands[i].id).second)
      throw ConfigError("sensor '" + m.name + "' has duplicate band id '" +
                        m.bands[i].id + "'");
    if (i > 0 && m.bands[i].center_nm < m.bands[i - 1].center_nm)
      throw ConfigError("sensor '" + m.name + "' bands are not sorted by center");
  }
}

std::vector<BandDefinition> uniform_band_grid(double lo_nm, double hi_nm,
                                              std::size_t n, double fwhm_nm) {
  if (n < 2) throw ArgumentError("uniform_band_grid needs n >= 2");
  if (!(lo_nm < hi_nm)) throw ArgumentError("uniform_band_grid needs lo < hi");
  if (!(fwhm_nm > 0.0)) throw ArgumentError("uniform_band_grid needs fwhm > 0");
  const double spacing = (hi_nm - lo_nm) / static_cast<double>(n - 1);
  const int width = n > 99 ? 3 : 2;
  std::vector<BandDefinition> bands;
  bands.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    char id[16];
    std::snprintf(id, sizeof(id), "b%0*zu", width, i + 1);
    bands.emplace_back(id, lo_nm + static_cast<double>(i) * spacing, fwhm_nm);
  }
  return bands;
}

SRFTable trapezoid_srf(double center_nm, double fwhm_nm) {
  if (!(fwhm_nm > 0.0)) throw ArgumentError("trapezoid_srf needs fwhm > 0");
  const double half = fwhm_nm / 2.0;
  const double shoulder = fwhm_nm / 4.0;
  return SRFTable(WavelengthGrid({center_nm - half - shoulder, center_nm - half,
                                  center_nm + half, center_nm + half + shoulder}),
                  {0.0, 1.0, 1.0, 0.0});
}

namespace {

SensorModel make_sensor(std::string name, std::vector<BandDefinition> bands,
                        Approach approach, double sp_min, double sp_max,
                        std::string source) {
  SensorModel m;
  m.name = std::move(name);
  m.bands = std::move(bands);
  m.approach = approach;
  m.spatial_resolution_m_min = sp_min;
  m.spatial_resolution_m_max = sp_max;
  m.source = std::move(source);
  validate_sensor(m);
  return m;
}

}  // namespace

std::vector<SensorModel> builtin_catalog() {
  std::vector<SensorModel> catalog;

  // Sentinel-2 MSI: the 9 visible/NIR bands with centers in 443-865 nm
  // (B1-B8, B8a).  Centers/widths from the S2A instrument tables; the true
  // response tables are not redistributable, so the srf approach falls back
  // to a trapezoid unless the user supplies tables.
  catalog.push_back(make_sensor(
      "Sentinel-2",
      {
          {"B1", 443.0, 20.0},
          {"B2", 490.0, 65.0},
          {"B3", 560.0, 35.0},
          {"B4", 665.0, 30.0},
          {"B5", 705.0, 15.0},
          {"B6", 740.0, 15.0},
          {"B7", 783.0, 20.0},
          {"B8", 842.0, 115.0},
          {"B8a", 865.0, 20.0},
      },
      Approach::srf, 10.0, 60.0,
      "S2A MSI band table (VNIR bands with centers in 443-865 nm); trapezoid "
      "fallback response"));

  // Sentinel-3 OLCI: the 19 bands with centers <= 900 nm from the mission
  // user guide (Oa1..Oa19).
  catalog.push_back(make_sensor(
      "Sentinel-3",
      {
          {"Oa1", 400.0, 15.0},
          {"Oa2", 412.5, 10.0},
          {"Oa3", 442.5, 10.0},
          {"Oa4", 490.0, 10.0},
          {"Oa5", 510.0, 10.0},
          {"Oa6", 560.0, 10.0},
          {"Oa7", 620.0, 10.0},
          {"Oa8", 665.0, 10.0},
          {"Oa9", 673.75, 7.5},
          {"Oa10", 681.25, 7.5},
          {"Oa11", 708.75, 10.0},
          {"Oa12", 753.75, 7.5},
          {"Oa13", 761.25, 2.5},
          {"Oa14", 764.375, 3.75},
          {"Oa15", 767.5, 2.5},
          {"Oa16", 778.75, 15.0},
          {"Oa17", 865.0, 20.0},
          {"Oa18", 885.0, 10.0},
          {"Oa19", 900.0, 10.0},
      },
      Approach::gaussian, 300.0, 1000.0,
      "OLCI band table, bands Oa1-Oa19 (centers <= 900 nm), gaussian from "
      "center/FWHM"));

  // Landsat-8 OLI: the 5 bands with centers in 443-865 nm (coastal, blue,
  // green, red, NIR).
  catalog.push_back(make_sensor(
      "Landsat-8",
      {
          {"B1", 443.0, 16.0},
          {"B2", 482.0, 60.0},
          {"B3", 561.5, 57.5},
          {"B4", 654.5, 37.5},
          {"B5", 865.0, 28.0},
      },
      Approach::srf, 30.0, 30.0,
      "OLI band table (VNIR bands with centers in 443-865 nm); trapezoid "
      "fallback response"));

  // Landsat-5 TM: bands 1-4 (blue, green, red, NIR).
  catalog.push_back(make_sensor(
      "Landsat-5",
      {
          {"B1", 485.0, 70.0},
          {"B2", 560.0, 80.0},
          {"B3", 660.0, 60.0},
          {"B4", 840.0, 140.0},
      },
      Approach::srf, 30.0, 30.0,
      "TM band table (bands 1-4); trapezoid fallback response"));

  // Hyperion: 54 evenly spaced 10 nm bands over 406-895 nm.
  catalog.push_back(make_sensor(
      "Hyperion", uniform_band_grid(406.0, 895.0, 54, 10.0), Approach::gaussian,
      30.0, 30.0, "uniform band grid over 406-895 nm, FWHM 10 nm"));

  // EnMAP: 77 evenly spaced 6.5 nm bands over 423-895 nm.
  catalog.push_back(make_sensor(
      "EnMAP", uniform_band_grid(423.0, 895.0, 77, 6.5), Approach::gaussian,
      30.0, 30.0, "uniform band grid over 423-895 nm, FWHM 6.5 nm"));

  return catalog;
}

const SensorModel& find_sensor(const std::vector<SensorModel>& catalog,
                               const std::string& name) {
  for (const auto& m : catalog)
    if (m.name == name) return m;
  std::string known;
  for (const auto& m : catalog) {
    if (!known.empty()) known += ", ";
    known += m.name;
  }
  throw ConfigError("unknown sensor '" + name + "' (catalog: " + known + ")");
}

namespace {

std::vector<std::string> tokenize(std::string_view line) {
  std::vector<std::string> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
    if (i > start) tokens.emplace_back(line.substr(start, i - start));
  }
  return tokens;
}

// "key=value" -> value, or throw.
std::string expect_kv(const std::string& token, std::string_view key,
                      const std::string& path, std::size_t line) {
  const auto pos = token.find('=');
  if (pos == std::string::npos || token.substr(0, pos) != key)
    throw ParseError(path, line, "expected " + std::string(key) + "=<value>, got '" + token + "'");
  return token.substr(pos + 1);
}

}  // namespace

SensorFileResult load_sensor_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open sensor file: " + path);

  std::optional<std::string> name;
  std::optional<Approach> approach;
  std::vector<BandDefinition> bands;
  std::vector<std::string> warnings;

  std::string raw;
  std::size_t lineno = 0;

  // SRF block state
  bool in_srf = false;
  std::string srf_band_id;
  std::size_t srf_line = 0;
  std::vector<double> srf_grid, srf_weights;

  auto finish_srf = [&]() {
    auto it = std::find_if(bands.begin(), bands.end(),
                           [&](const BandDefinition& b) { return b.id == srf_band_id; });
    if (it == bands.end())
      throw ParseError(path, srf_line, "srf block for unknown band '" + srf_band_id + "'");
    if (it->srf.has_value())
      throw ParseError(path, srf_line, "duplicate srf block for band '" + srf_band_id + "'");
    try {
      it->srf = SRFTable(WavelengthGrid(std::move(srf_grid)), std::move(srf_weights));
    } catch (const Error& e) {
      throw ParseError(path, srf_line, std::string("invalid srf table: ") + e.what());
    }
    srf_grid.clear();
    srf_weights.clear();
    in_srf = false;
  };

  while (std::getline(in, raw)) {
    ++lineno;
    const auto hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    const auto tokens = tokenize(raw);
    if (tokens.empty()) continue;

    if (in_srf) {
      if (tokens[0] == "end") {
        finish_srf();
        continue;
      }
      if (tokens.size() != 2)
        throw ParseError(path, lineno, "srf entry must be '<nm> <weight>'");
      srf_grid.push_back(parse_double(tokens[0], path, lineno));
      srf_weights.push_back(parse_double(tokens[1], path, lineno));
      continue;
    }

    if (tokens[0] == "sensor") {
      if (name.has_value()) throw ParseError(path, lineno, "duplicate sensor line");
      if (tokens.size() != 3)
        throw ParseError(path, lineno, "expected: sensor <name> approach=<...>");
      name = tokens[1];
      try {
        approach = approach_from_name(expect_kv(tokens[2], "approach", path, lineno));
      } catch (const ConfigError& e) {
        throw ParseError(path, lineno, e.what());
      }
    } else if (tokens[0] == "band") {
      if (!name.has_value())
        throw ParseError(path, lineno, "band line before sensor line");
      if (tokens.size() != 4)
        throw ParseError(path, lineno, "expected: band <id> center=<nm> fwhm=<nm>");
      const double center = parse_double(expect_kv(tokens[2], "center", path, lineno), path, lineno);
      const double fwhm = parse_double(expect_kv(tokens[3], "fwhm", path, lineno), path, lineno);
      try {
        bands.emplace_back(tokens[1], center, fwhm);
      } catch (const ConfigError& e) {
        throw ParseError(path, lineno, e.what());
      }
    } else if (tokens[0] == "srf") {
      if (tokens.size() != 2)
        throw ParseError(path, lineno, "expected: srf <band-id>");
      in_srf = true;
      srf_band_id = tokens[1];
      srf_line = lineno;
    } else {
      throw ParseError(path, lineno, "unknown directive '" + tokens[0] + "'");
    }
  }
  if (in_srf) throw ParseError(path, srf_line, "srf block not terminated by 'end'");
  if (!name.has_value()) throw ParseError(path, lineno, "missing sensor line");
  if (bands.empty()) throw ParseError(path, lineno, "sensor has no bands");

  if (!std::is_sorted(bands.begin(), bands.end(),
                      [](const BandDefinition& a, const BandDefinition& b) {
                        return a.center_nm < b.center_nm;
                      })) {
    warnings.push_back("band centers were not sorted; sorted on load");
    std::stable_sort(bands.begin(), bands.end(),
                     [](const BandDefinition& a, const BandDefinition& b) {
                       return a.center_nm < b.center_nm;
                     });
  }

  SensorModel m;
  m.name = *name;
  m.approach = *approach;
  m.bands = std::move(bands);
  m.source = "loaded from " + path;
  validate_sensor(m);
  return SensorFileResult{std::move(m), std::move(warnings)};
}

std::string sensor_to_string(const SensorModel& m) {
  std::ostringstream out;
  out << "# spatial resolution (m): " << format_double(m.spatial_resolution_m_min)
      << "-" << format_double(m.spatial_resolution_m_max) << "\n";
  if (!m.source.empty()) out << "# source: " << m.source << "\n";
  out << "sensor " << m.name << " approach=" << approach_name(m.approach) << "\n";
  for (const auto& b : m.bands)
    out << "band " << b.id << " center=" << format_double_exact(b.center_nm)
        << " fwhm=" << format_double_exact(b.fwhm_nm) << "\n";
  for (const auto& b : m.bands) {
    if (!b.srf.has_value()) continue;
    out << "srf " << b.id << "\n";
    for (std::size_t i = 0; i < b.srf->grid.size(); ++i)
      out << format_double_exact(b.srf->grid[i]) << " "
          << format_double_exact(b.srf->weights[i]) << "\n";
    out << "end\n";
  }
  return out.str();
}

void save_sensor_file(const SensorModel& m, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write sensor file: " + path);
  out << sensor_to_string(m);
}

}  // namespace aquaspec
