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

#include "aquaspec/synth.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "aquaspec/csv.hpp"
#include "aquaspec/parallel.hpp"
#include "aquaspec/rng.hpp"

namespace aquaspec {

void SynthConfig::validate() const {
  if (n_samples == 0) throw ArgumentError("synthetic dataset needs n_samples > 0");
  if (!(chl_lo_ug_l >= 0.0)) throw ArgumentError("chl range must start at >= 0");
  if (!(chl_lo_ug_l < chl_hi_ug_l)) throw ArgumentError("chl range must have lo < hi");
  if (!(noise_sd >= 0.0)) throw ArgumentError("noise sd must be >= 0");
}

namespace {

double gauss_shape(double lambda, double center, double sigma) {
  const double d = lambda - center;
  return std::exp(-d * d / (2.0 * sigma * sigma));
}

}  // namespace

double synth_baseline(double lambda_nm) {
  // piecewise-linear through (400, 0.02), (560, 0.05), (700, 0.03), (900, 0.01)
  struct Knot {
    double lambda, value;
  };
  static constexpr Knot knots[] = {{400.0, 0.02}, {560.0, 0.05}, {700.0, 0.03}, {900.0, 0.01}};
  if (lambda_nm <= knots[0].lambda) return knots[0].value;
  for (std::size_t i = 1; i < std::size(knots); ++i) {
    if (lambda_nm <= knots[i].lambda) {
      const double t =
          (lambda_nm - knots[i - 1].lambda) / (knots[i].lambda - knots[i - 1].lambda);
      return knots[i - 1].value + t * (knots[i].value - knots[i - 1].value);
    }
  }
  return knots[std::size(knots) - 1].value;
}

double synth_reflectance(double lambda_nm, double chl_ug_l) {
  const double absorption =
      std::exp(-kSynthAbsorptionRate * chl_ug_l *
               gauss_shape(lambda_nm, kSynthAbsorptionCenter, kSynthAbsorptionSigma));
  const double peak = kSynthPeakGain * chl_ug_l *
                      gauss_shape(lambda_nm, kSynthPeakCenter, kSynthPeakSigma);
  return synth_baseline(lambda_nm) * absorption + peak;
}

SpectralDataset generate(const SynthConfig& config) {
  config.validate();
  GridPtr grid = config.grid;
  if (!grid)
    grid = std::make_shared<const WavelengthGrid>(
        WavelengthGrid::regular(400.0, 900.0, 0.66));

  const std::size_t n_points = grid->size();
  std::vector<std::vector<double>> values(config.n_samples);
  std::vector<double> chl(config.n_samples);

  // per-sample derived streams make the values independent of generation order
  parallel_for(config.n_samples, [&](std::size_t i) {
    Rng rng(derive_seed(config.seed, "synth-sample", i));
    const double c = rng.uniform(config.chl_lo_ug_l, config.chl_hi_ug_l);
    chl[i] = c;
    auto& row = values[i];
    row.resize(n_points);
    for (std::size_t j = 0; j < n_points; ++j) {
      double r = synth_reflectance((*grid)[j], c);
      if (config.noise_sd > 0.0) r += rng.normal(0.0, config.noise_sd);
      row[j] = r;
    }
  });

  std::vector<LabeledSample> samples;
  samples.reserve(config.n_samples);
  for (std::size_t i = 0; i < config.n_samples; ++i)
    samples.emplace_back(Spectrum(grid, std::move(values[i])), chl[i]);
  return SpectralDataset(std::move(samples), grid);
}

std::vector<double> band_ratio_oracle(const SpectralDataset& d) {
  std::vector<double> out;
  out.reserve(d.size());
  for (const auto& s : d.samples()) {
    const double numerator = interpolate_at(s.spectrum, 705.0);
    const double denominator = interpolate_at(s.spectrum, 665.0);
    if (denominator == 0.0)
      throw MetricError("band ratio undefined: zero reflectance at 665 nm");
    out.push_back(numerator / denominator);
  }
  return out;
}

void write_synth_csv(const SpectralDataset& d, const std::string& spectra_path,
                     const std::string& labels_path) {
  std::ofstream spectra(spectra_path);
  if (!spectra) throw ValidationError("cannot write: " + spectra_path);

  auto sample_id = [&](std::size_t i) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "s%04zu", i + 1);
    return std::string(buf);
  };

  spectra << "wavelength_nm";
  for (std::size_t i = 0; i < d.size(); ++i) spectra << "," << sample_id(i);
  spectra << "\n";
  const auto& grid = d.grid().values();
  for (std::size_t j = 0; j < grid.size(); ++j) {
    spectra << format_double_exact(grid[j]);
    for (const auto& s : d.samples()) spectra << "," << format_double_exact(s.spectrum.values()[j]);
    spectra << "\n";
  }

  std::ofstream labels(labels_path);
  if (!labels) throw ValidationError("cannot write: " + labels_path);
  labels << "id,chl_a_ug_l\n";
  for (std::size_t i = 0; i < d.size(); ++i)
    labels << sample_id(i) << "," << format_double_exact(d.samples()[i].chl_a_ug_l) << "\n";
}

}  // namespace aquaspec
