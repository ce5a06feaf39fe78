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

#include "aquaspec/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace aquaspec {

WavelengthGrid::WavelengthGrid(std::vector<double> wavelengths_nm)
    : wavelengths_(std::move(wavelengths_nm)) {
  if (wavelengths_.size() < 2)
    throw ArgumentError("wavelength grid needs at least 2 points, got " +
                        std::to_string(wavelengths_.size()));
  for (std::size_t i = 0; i < wavelengths_.size(); ++i) {
    const double w = wavelengths_[i];
    if (!std::isfinite(w) || w <= 0.0)
      throw ArgumentError("wavelength grid values must be finite and > 0");
    if (i > 0 && w <= wavelengths_[i - 1])
      throw ArgumentError("wavelength grid must be strictly increasing (at index " +
                          std::to_string(i) + ")");
  }
}

std::size_t WavelengthGrid::lower_bound(double lambda_nm) const {
  const auto it = std::lower_bound(wavelengths_.begin(), wavelengths_.end(),
                                   lambda_nm - kWavelengthTolerance);
  return static_cast<std::size_t>(it - wavelengths_.begin());
}

bool WavelengthGrid::operator==(const WavelengthGrid& o) const {
  if (wavelengths_.size() != o.wavelengths_.size()) return false;
  for (std::size_t i = 0; i < wavelengths_.size(); ++i)
    if (std::fabs(wavelengths_[i] - o.wavelengths_[i]) >= kWavelengthTolerance)
      return false;
  return true;
}

WavelengthGrid WavelengthGrid::regular(double lo_nm, double hi_nm, double step_nm) {
  if (step_nm <= 0.0 || lo_nm >= hi_nm)
    throw ArgumentError("regular grid needs step > 0 and lo < hi");
  std::vector<double> w;
  w.reserve(static_cast<std::size_t>((hi_nm - lo_nm) / step_nm) + 2);
  for (std::size_t k = 0;; ++k) {
    const double lambda = lo_nm + static_cast<double>(k) * step_nm;
    if (lambda > hi_nm + kWavelengthTolerance) break;
    w.push_back(lambda);
  }
  return WavelengthGrid(std::move(w));
}

Spectrum::Spectrum(GridPtr grid, std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
  if (!grid_) throw ArgumentError("spectrum requires a grid");
  if (values_.size() != grid_->size())
    throw ArgumentError("spectrum has " + std::to_string(values_.size()) +
                        " values for a grid of " + std::to_string(grid_->size()));
  for (double v : values_)
    if (!std::isfinite(v)) throw ArgumentError("spectrum values must be finite");
}

Spectrum::Spectrum(std::vector<double> wavelengths_nm, std::vector<double> values)
    : Spectrum(std::make_shared<const WavelengthGrid>(std::move(wavelengths_nm)),
               std::move(values)) {}

LabeledSample::LabeledSample(Spectrum s, double chl_a, std::optional<std::int64_t> ts)
    : spectrum(std::move(s)), chl_a_ug_l(chl_a), timestamp(ts) {
  if (!std::isfinite(chl_a_ug_l) || chl_a_ug_l < 0.0)
    throw ArgumentError("chl-a concentration must be finite and >= 0");
}

SpectralDataset::SpectralDataset(std::vector<LabeledSample> samples, GridPtr shared_grid)
    : samples_(std::move(samples)), grid_(std::move(shared_grid)) {
  if (!grid_) throw ArgumentError("dataset requires a grid");
  if (samples_.empty()) throw ArgumentError("dataset must not be empty");
  for (const auto& s : samples_) {
    if (s.spectrum.grid_ptr() != grid_ && !(s.spectrum.grid() == *grid_))
      throw ArgumentError("all dataset samples must share the dataset grid");
  }
}

std::vector<double> SpectralDataset::targets() const {
  std::vector<double> y;
  y.reserve(samples_.size());
  for (const auto& s : samples_) y.push_back(s.chl_a_ug_l);
  return y;
}

Spectrum restrict_range(const Spectrum& s, double lo_nm, double hi_nm) {
  if (lo_nm >= hi_nm) throw ArgumentError("restrict_range needs lo < hi");
  const auto& grid = s.grid().values();
  std::vector<double> w, v;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (grid[i] >= lo_nm - kWavelengthTolerance &&
        grid[i] <= hi_nm + kWavelengthTolerance) {
      w.push_back(grid[i]);
      v.push_back(s.values()[i]);
    }
  }
  if (w.size() < 2)
    throw RangeError("restricting to [" + std::to_string(lo_nm) + ", " +
                     std::to_string(hi_nm) + "] nm leaves " +
                     std::to_string(w.size()) + " grid point(s)");
  return Spectrum(std::move(w), std::move(v));
}

double interpolate_at(const Spectrum& s, double lambda_nm) {
  const auto& grid = s.grid().values();
  if (lambda_nm < grid.front() - kWavelengthTolerance ||
      lambda_nm > grid.back() + kWavelengthTolerance)
    throw RangeError("wavelength " + std::to_string(lambda_nm) +
                     " nm outside grid span [" + std::to_string(grid.front()) +
                     ", " + std::to_string(grid.back()) + "]");
  const std::size_t hi = s.grid().lower_bound(lambda_nm);
  if (hi == 0) return s.values().front();
  if (hi >= grid.size()) return s.values().back();
  if (std::fabs(grid[hi] - lambda_nm) < kWavelengthTolerance) return s.values()[hi];
  const std::size_t lo = hi - 1;
  const double t = (lambda_nm - grid[lo]) / (grid[hi] - grid[lo]);
  return s.values()[lo] + t * (s.values()[hi] - s.values()[lo]);
}

}  // namespace aquaspec
