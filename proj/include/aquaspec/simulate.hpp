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

// Collapses high-resolution spectra into sensor bands.  Three weighting
// approaches: gaussian (from center/FWHM), equal-weighted window, and
// tabulated spectral response.  Band values are normalized weighted means
// over the spectrometer grid points inside the band support, so a constant
// spectrum maps to the constant for every approach.

#pragma once

#include <string>
#include <vector>

#include "aquaspec/matrix.hpp"
#include "aquaspec/sensor.hpp"
#include "aquaspec/spectral.hpp"

namespace aquaspec {

struct SimulatedSpectrum {
  std::string sensor_name;
  std::vector<std::string> band_ids;
  std::vector<double> values;  // one per band, finite
};

// One feature row per sample, chl-a targets carried through unchanged.
struct SimulatedDataset {
  std::string sensor_name;
  std::vector<std::string> band_ids;
  std::vector<double> band_centers_nm;
  Matrix features;              // rows = samples, columns = bands
  std::vector<double> chl_a;    // targets, ug/L
  std::vector<std::string> notes;
};

// sigma = fwhm / (2 sqrt(2 ln 2)).
double sigma_from_fwhm(double fwhm_nm);

// Precomputed weights of one band over one grid: a contiguous window
// [first, first+weights.size()) of grid indices plus the weight total.
struct BandWeights {
  std::size_t first = 0;
  std::vector<double> weights;
  double weight_sum = 0.0;

  double apply(const std::vector<double>& spectrum_values) const;
};

// Weight construction.  Throws CoverageError when no grid point falls in
// the band support (or the support weight total is zero); appends a note
// when the nominal support extends past the grid and the band is computed
// over the available points only.
BandWeights gaussian_band_weights(const WavelengthGrid& grid, const BandDefinition& b,
                                  std::vector<std::string>* notes = nullptr);
BandWeights equal_band_weights(const WavelengthGrid& grid, const BandDefinition& b,
                               std::vector<std::string>* notes = nullptr);
BandWeights srf_band_weights(const WavelengthGrid& grid, const BandDefinition& b,
                             std::vector<std::string>* notes = nullptr);

// Single-band values (weighted means).
double gaussian_band_value(const Spectrum& s, const BandDefinition& b);
double equal_weight_band_value(const Spectrum& s, const BandDefinition& b);
// Requires b.srf; throws ConfigError when missing.
double srf_band_value(const Spectrum& s, const BandDefinition& b);

// All weights of a sensor on a grid, band order preserved.  Bands without a
// response table under the srf approach fall back to a trapezoid built from
// center/FWHM (noted).
std::vector<BandWeights> sensor_band_weights(const WavelengthGrid& grid,
                                             const SensorModel& m,
                                             std::vector<std::string>* notes = nullptr);

SimulatedSpectrum simulate_sensor_spectrum(const Spectrum& s, const SensorModel& m,
                                           std::vector<std::string>* notes = nullptr);

// Samples may be processed in parallel; output ordering is by sample index.
SimulatedDataset simulate_dataset(const SpectralDataset& d, const SensorModel& m);

// CSV with header "chl_a,<band-id-1>,..." and >= 9 significant digits.
void write_simulated_csv(const SimulatedDataset& d, const std::string& path);

}  // namespace aquaspec
