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

// Deterministic synthetic spectra with a known chlorophyll-a signal.  The
// generator places an absorption dip at 675 nm and an emission-like bump at
// 705 nm on a smooth baseline, confining the signal to the red/NIR window
// where the real pigment features live.  The constants are synthetic, not
// field-calibrated.

#pragma once

#include <cstdint>

#include "aquaspec/spectral.hpp"

namespace aquaspec {

struct SynthConfig {
  std::size_t n_samples = 400;
  double chl_lo_ug_l = 0.0;
  double chl_hi_ug_l = 100.0;
  double noise_sd = 0.0;        // reflectance units, per grid point
  std::uint64_t seed = 0;
  GridPtr grid;                 // default: 400-900 nm at 0.66 nm

  void validate() const;
};

// Generator constants, exposed for the closed-form oracle in tests.
inline constexpr double kSynthAbsorptionCenter = 675.0;  // nm
inline constexpr double kSynthAbsorptionSigma = 15.0;    // nm
inline constexpr double kSynthPeakCenter = 705.0;        // nm
inline constexpr double kSynthPeakSigma = 12.0;          // nm
inline constexpr double kSynthAbsorptionRate = 0.015;    // L/ug
inline constexpr double kSynthPeakGain = 4e-4;           // L/ug

// Fixed smooth baseline: piecewise linear through
// (400, 0.02), (560, 0.05), (700, 0.03), (900, 0.01).
double synth_baseline(double lambda_nm);

// Noise-free reflectance at one wavelength for one concentration.
double synth_reflectance(double lambda_nm, double chl_ug_l);

// Per-sample: C ~ uniform(chl range) from a per-sample derived stream, then
// r(lambda) = B * exp(-k C g675) + p C g705 + gaussian noise.
SpectralDataset generate(const SynthConfig& config);

// r(705)/r(665) per sample (linear interpolation); a model-free predictor
// of the chl-a signal.  Throws MetricError on a zero denominator.
std::vector<double> band_ratio_oracle(const SpectralDataset& d);

// Writes the dataset in the pipeline's spectra/labels CSV formats
// (columns s0001... keyed by id).
void write_synth_csv(const SpectralDataset& d, const std::string& spectra_path,
                     const std::string& labels_path);

}  // namespace aquaspec
