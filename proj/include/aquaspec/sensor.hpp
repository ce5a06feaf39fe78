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

// Band definitions for the six built-in satellite missions plus a loader
// for user-supplied sensor definition files (including tabulated spectral
// response functions).

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "aquaspec/spectral.hpp"

namespace aquaspec {

// Tabulated spectral response: non-negative weights on a wavelength grid,
// at least one positive.
struct SRFTable {
  WavelengthGrid grid;
  std::vector<double> weights;

  SRFTable(WavelengthGrid g, std::vector<double> w);

  bool operator==(const SRFTable& o) const;
};

enum class Approach { gaussian, equal, srf };

std::string_view approach_name(Approach a);
Approach approach_from_name(std::string_view name);

struct BandDefinition {
  std::string id;
  double center_nm = 0.0;  // within [400, 900]
  double fwhm_nm = 0.0;    // > 0
  // When present the table is used instead of center/fwhm weighting.
  std::optional<SRFTable> srf;

  BandDefinition(std::string band_id, double center, double fwhm,
                 std::optional<SRFTable> table = std::nullopt);

  bool operator==(const BandDefinition& o) const;
};

struct SensorModel {
  std::string name;
  std::vector<BandDefinition> bands;  // sorted by center, unique ids
  Approach approach = Approach::gaussian;
  // Descriptive metadata only; never used in computation.
  double spatial_resolution_m_min = 0.0;
  double spatial_resolution_m_max = 0.0;
  std::string source;

  std::size_t band_count() const { return bands.size(); }
  std::vector<double> band_centers() const;
  std::vector<std::string> band_ids() const;

  // Equality of the simulation-relevant fields (name, approach, bands);
  // descriptive metadata is not compared and not round-tripped by the
  // file format.
  bool operator==(const SensorModel& o) const;
};

// Validates band ordering/id invariants; throws ConfigError.
void validate_sensor(const SensorModel& m);

// The six missions simulated by the study: Sentinel-2, Sentinel-3,
// Landsat-8, Landsat-5, Hyperion, EnMAP (in that order).
std::vector<SensorModel> builtin_catalog();

// Catalog lookup by case-sensitive name; throws ConfigError listing the
// catalog when the name is unknown.
const SensorModel& find_sensor(const std::vector<SensorModel>& catalog,
                               const std::string& name);

// n evenly spaced band centers over [lo, hi], all with the same FWHM.
// Ids are "b01".."bNN".
std::vector<BandDefinition> uniform_band_grid(double lo_nm, double hi_nm,
                                              std::size_t n, double fwhm_nm);

// Piecewise-linear fallback response for missions whose true response
// tables are not redistributable: flat top of width fwhm with linear
// shoulders of width fwhm/4 on each side.
SRFTable trapezoid_srf(double center_nm, double fwhm_nm);

struct SensorFileResult {
  SensorModel sensor;
  std::vector<std::string> warnings;
};

// Sensor definition file format (line oriented, whitespace-delimited,
// '#' starts a comment):
//   sensor <name> approach=<gaussian|equal|srf>
//   band <id> center=<nm> fwhm=<nm>
//   srf <band-id>
//   <nm> <weight>
//   ...
//   end
SensorFileResult load_sensor_file(const std::string& path);

std::string sensor_to_string(const SensorModel& m);
void save_sensor_file(const SensorModel& m, const std::string& path);

}  // namespace aquaspec
