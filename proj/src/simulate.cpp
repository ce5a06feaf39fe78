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

#include "aquaspec/simulate.hpp"

#include <cmath>
#include <fstream>

#include "aquaspec/csv.hpp"
#include "aquaspec/kernels.hpp"
#include "aquaspec/parallel.hpp"

namespace aquaspec {

namespace {

// Gaussian support is truncated at +-4 sigma; beyond that the weight is
// below 3.4e-4 of the peak and the truncation error is under test
// tolerances.
constexpr double kGaussianSupportSigmas = 4.0;

struct Window {
  std::size_t first = 0;
  std::size_t count = 0;
};

// Grid indices with lo <= lambda <= hi (inclusive within tolerance).
Window grid_window(const WavelengthGrid& grid, double lo, double hi) {
  Window w;
  w.first = grid.lower_bound(lo);
  std::size_t end = w.first;
  const auto& values = grid.values();
  while (end < values.size() && values[end] <= hi + kWavelengthTolerance) ++end;
  w.count = end - w.first;
  return w;
}

void note_partial_support(const WavelengthGrid& grid, const BandDefinition& b,
                          double lo, double hi, std::vector<std::string>* notes) {
  if (!notes) return;
  if (lo < grid.min() - kWavelengthTolerance || hi > grid.max() + kWavelengthTolerance)
    notes->push_back("band " + b.id + ": nominal support [" + format_double(lo, 6) +
                     ", " + format_double(hi, 6) +
                     "] nm extends past the grid span [" + format_double(grid.min(), 6) +
                     ", " + format_double(grid.max(), 6) +
                     "]; computed over the available grid points only");
}

[[noreturn]] void throw_empty_support(const BandDefinition& b, double lo, double hi) {
  throw CoverageError("band " + b.id + ": no grid point inside its support [" +
                      format_double(lo, 6) + ", " + format_double(hi, 6) + "] nm");
}

}  // namespace

double sigma_from_fwhm(double fwhm_nm) {
  if (!(fwhm_nm > 0.0)) throw ArgumentError("fwhm must be > 0");
  // 2 sqrt(2 ln 2)
  constexpr double kFwhmPerSigma = 2.3548200450309493;
  return fwhm_nm / kFwhmPerSigma;
}

double BandWeights::apply(const std::vector<double>& spectrum_values) const {
  const double num =
      kernels::dot(weights.data(), spectrum_values.data() + first, weights.size());
  return num / weight_sum;
}

BandWeights gaussian_band_weights(const WavelengthGrid& grid, const BandDefinition& b,
                                  std::vector<std::string>* notes) {
  const double sigma = sigma_from_fwhm(b.fwhm_nm);
  const double lo = b.center_nm - kGaussianSupportSigmas * sigma;
  const double hi = b.center_nm + kGaussianSupportSigmas * sigma;
  const Window w = grid_window(grid, lo, hi);
  if (w.count == 0) throw_empty_support(b, lo, hi);
  note_partial_support(grid, b, lo, hi, notes);

  BandWeights out;
  out.first = w.first;
  out.weights.resize(w.count);
  const double inv_two_sigma_sq = 1.0 / (2.0 * sigma * sigma);
  for (std::size_t i = 0; i < w.count; ++i) {
    const double d = grid[w.first + i] - b.center_nm;
    out.weights[i] = std::exp(-d * d * inv_two_sigma_sq);
  }
  out.weight_sum = kernels::sum(out.weights.data(), out.weights.size());
  return out;
}

BandWeights equal_band_weights(const WavelengthGrid& grid, const BandDefinition& b,
                               std::vector<std::string>* notes) {
  const double lo = b.center_nm - b.fwhm_nm / 2.0;
  const double hi = b.center_nm + b.fwhm_nm / 2.0;
  const Window w = grid_window(grid, lo, hi);
  if (w.count == 0) throw_empty_support(b, lo, hi);
  note_partial_support(grid, b, lo, hi, notes);

  BandWeights out;
  out.first = w.first;
  out.weights.assign(w.count, 1.0);
  out.weight_sum = static_cast<double>(w.count);
  return out;
}

BandWeights srf_band_weights(const WavelengthGrid& grid, const BandDefinition& b,
                             std::vector<std::string>* notes) {
  if (!b.srf.has_value())
    throw ConfigError("band " + b.id + " has no spectral response table");
  const SRFTable& srf = *b.srf;
  const double lo = srf.grid.min();
  const double hi = srf.grid.max();
  const Window w = grid_window(grid, lo, hi);
  if (w.count == 0) throw_empty_support(b, lo, hi);
  note_partial_support(grid, b, lo, hi, notes);

  // Response weight at each spectrometer grid point, linearly interpolated
  // from the table.
  const Spectrum response(std::make_shared<const WavelengthGrid>(srf.grid), srf.weights);
  BandWeights out;
  out.first = w.first;
  out.weights.resize(w.count);
  for (std::size_t i = 0; i < w.count; ++i)
    out.weights[i] = interpolate_at(response, grid[w.first + i]);
  out.weight_sum = kernels::sum(out.weights.data(), out.weights.size());
  if (out.weight_sum <= 0.0)
    throw CoverageError("band " + b.id + ": response weights sum to zero over the grid");
  return out;
}

double gaussian_band_value(const Spectrum& s, const BandDefinition& b) {
  return gaussian_band_weights(s.grid(), b).apply(s.values());
}

double equal_weight_band_value(const Spectrum& s, const BandDefinition& b) {
  return equal_band_weights(s.grid(), b).apply(s.values());
}

double srf_band_value(const Spectrum& s, const BandDefinition& b) {
  return srf_band_weights(s.grid(), b).apply(s.values());
}

std::vector<BandWeights> sensor_band_weights(const WavelengthGrid& grid,
                                             const SensorModel& m,
                                             std::vector<std::string>* notes) {
  std::vector<BandWeights> all;
  all.reserve(m.bands.size());
  bool fallback_noted = false;
  for (const auto& b : m.bands) {
    // A tabulated response always wins over center/FWHM weighting.
    if (b.srf.has_value()) {
      all.push_back(srf_band_weights(grid, b, notes));
      continue;
    }
    switch (m.approach) {
      case Approach::gaussian:
        all.push_back(gaussian_band_weights(grid, b, notes));
        break;
      case Approach::equal:
        all.push_back(equal_band_weights(grid, b, notes));
        break;
      case Approach::srf: {
        if (notes && !fallback_noted) {
          notes->push_back("sensor " + m.name +
                           ": no response tables supplied; using the trapezoid "
                           "fallback response (flat top fwhm, shoulders fwhm/4)");
          fallback_noted = true;
        }
        BandDefinition with_fallback = b;
        with_fallback.srf = trapezoid_srf(b.center_nm, b.fwhm_nm);
        all.push_back(srf_band_weights(grid, with_fallback, notes));
        break;
      }
    }
  }
  return all;
}

SimulatedSpectrum simulate_sensor_spectrum(const Spectrum& s, const SensorModel& m,
                                           std::vector<std::string>* notes) {
  validate_sensor(m);
  const auto weights = sensor_band_weights(s.grid(), m, notes);
  SimulatedSpectrum out;
  out.sensor_name = m.name;
  out.band_ids = m.band_ids();
  out.values.reserve(weights.size());
  for (const auto& w : weights) out.values.push_back(w.apply(s.values()));
  return out;
}

SimulatedDataset simulate_dataset(const SpectralDataset& d, const SensorModel& m) {
  validate_sensor(m);
  SimulatedDataset out;
  const auto weights = sensor_band_weights(d.grid(), m, &out.notes);
  out.sensor_name = m.name;
  out.band_ids = m.band_ids();
  out.band_centers_nm = m.band_centers();
  out.chl_a = d.targets();
  out.features = Matrix(d.size(), m.bands.size());

  parallel_for(d.size(), [&](std::size_t i) {
    const auto& values = d.samples()[i].spectrum.values();
    double* row = out.features.row(i);
    for (std::size_t bi = 0; bi < weights.size(); ++bi) row[bi] = weights[bi].apply(values);
  });
  return out;
}

void write_simulated_csv(const SimulatedDataset& d, const std::string& path) {
  std::ofstream outfile(path);
  if (!outfile) throw ValidationError("cannot write: " + path);
  outfile << "chl_a";
  for (const auto& id : d.band_ids) outfile << "," << id;
  outfile << "\n";
  for (std::size_t r = 0; r < d.features.rows(); ++r) {
    outfile << format_double(d.chl_a[r]);
    const double* row = d.features.row(r);
    for (std::size_t c = 0; c < d.features.cols(); ++c)
      outfile << "," << format_double(row[c]);
    outfile << "\n";
  }
}

}  // namespace aquaspec
