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

// Core spectral data types.  All types are immutable after construction and
// operations are pure functions, so everything here is safe to share across
// worker threads.

#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "aquaspec/errors.hpp"

namespace aquaspec {

// Two wavelength values closer than this (nm) are considered equal.
inline constexpr double kWavelengthTolerance = 1e-9;

// Strictly increasing, finite, positive wavelengths in nanometers.
// At least two points.
class WavelengthGrid {
 public:
  explicit WavelengthGrid(std::vector<double> wavelengths_nm);

  const std::vector<double>& values() const { return wavelengths_; }
  std::size_t size() const { return wavelengths_.size(); }
  double operator[](std::size_t i) const { return wavelengths_[i]; }
  double min() const { return wavelengths_.front(); }
  double max() const { return wavelengths_.back(); }

  // Index of the first grid point >= lambda - tolerance.
  std::size_t lower_bound(double lambda_nm) const;

  bool operator==(const WavelengthGrid& o) const;

  // Evenly spaced grid over [lo, hi] with the given step; the last point is
  // the largest lo + k*step <= hi + tolerance.
  static WavelengthGrid regular(double lo_nm, double hi_nm, double step_nm);

 private:
  std::vector<double> wavelengths_;
};

using GridPtr = std::shared_ptr<const WavelengthGrid>;

// Reflectance (dimensionless radiance ratio) sampled on a wavelength grid.
// Values must be finite; negative values are legal — noisy spectrometer
// ratios can dip below zero and clipping them would bias band values.
class Spectrum {
 public:
  Spectrum(GridPtr grid, std::vector<double> values);
  Spectrum(std::vector<double> wavelengths_nm, std::vector<double> values);

  const WavelengthGrid& grid() const { return *grid_; }
  const GridPtr& grid_ptr() const { return grid_; }
  const std::vector<double>& values() const { return values_; }
  std::size_t size() const { return values_.size(); }

 private:
  GridPtr grid_;
  std::vector<double> values_;
};

struct LabeledSample {
  Spectrum spectrum;
  double chl_a_ug_l = 0.0;                     // >= 0, finite
  std::optional<std::int64_t> timestamp;       // Unix seconds

  LabeledSample(Spectrum s, double chl_a,
                std::optional<std::int64_t> ts = std::nullopt);
};

// Non-empty set of samples on one shared grid.
class SpectralDataset {
 public:
  SpectralDataset(std::vector<LabeledSample> samples, GridPtr shared_grid);

  const std::vector<LabeledSample>& samples() const { return samples_; }
  const WavelengthGrid& grid() const { return *grid_; }
  const GridPtr& grid_ptr() const { return grid_; }
  std::size_t size() const { return samples_.size(); }

  std::vector<double> targets() const;

 private:
  std::vector<LabeledSample> samples_;
  GridPtr grid_;
};

// Sub-spectrum with lo <= lambda <= hi (inclusive, within the wavelength
// tolerance).  Throws RangeError when fewer than two grid points survive.
Spectrum restrict_range(const Spectrum& s, double lo_nm, double hi_nm);

// Linear interpolation between bracketing grid points; exact at grid points.
// Throws RangeError outside the grid span.
double interpolate_at(const Spectrum& s, double lambda_nm);

}  // namespace aquaspec
