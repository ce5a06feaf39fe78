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

#include <doctest.h>

#include <cmath>
#include <limits>

#include "aquaspec/rng.hpp"
#include "aquaspec/spectral.hpp"

using namespace aquaspec;

namespace {

Spectrum linear_spectrum(double lo, double hi, double step, double slope, double offset) {
  WavelengthGrid grid = WavelengthGrid::regular(lo, hi, step);
  std::vector<double> values;
  values.reserve(grid.size());
  for (double w : grid.values()) values.push_back(slope * w + offset);
  return Spectrum(std::make_shared<const WavelengthGrid>(std::move(grid)),
                  std::move(values));
}

}  // namespace

TEST_CASE("wavelength grid invariants") {
  CHECK_THROWS_AS(WavelengthGrid({500.0}), ArgumentError);
  CHECK_THROWS_AS(WavelengthGrid({500.0, 500.0}), ArgumentError);
  CHECK_THROWS_AS(WavelengthGrid({500.0, 499.0}), ArgumentError);
  CHECK_THROWS_AS(WavelengthGrid({-1.0, 500.0}), ArgumentError);
  CHECK_THROWS_AS(WavelengthGrid({0.0, 500.0}), ArgumentError);
  CHECK_THROWS_AS(WavelengthGrid({std::numeric_limits<double>::quiet_NaN(), 500.0}),
                  ArgumentError);
  const WavelengthGrid g({400.0, 401.0, 402.0});
  CHECK(g.size() == 3);
  CHECK(g.min() == 400.0);
  CHECK(g.max() == 402.0);
}

TEST_CASE("grid equality uses the wavelength tolerance") {
  const WavelengthGrid a({400.0, 500.0});
  const WavelengthGrid b({400.0 + 1e-10, 500.0 - 1e-10});
  const WavelengthGrid c({400.0 + 1e-6, 500.0});
  CHECK(a == b);
  CHECK_FALSE(a == c);
}

TEST_CASE("spectrum construction enforces matching lengths and finite values") {
  CHECK_THROWS_AS(Spectrum({400.0, 401.0}, {0.1}), ArgumentError);
  CHECK_THROWS_AS(Spectrum({400.0, 401.0}, {0.1, 0.2, 0.3}), ArgumentError);
  CHECK_THROWS_AS(Spectrum({400.0, 401.0},
                           {0.1, std::numeric_limits<double>::infinity()}),
                  ArgumentError);
  // negative reflectance is legal input
  const Spectrum s({400.0, 401.0}, {-0.01, 0.2});
  CHECK(s.values()[0] == -0.01);
}

TEST_CASE("labeled sample rejects bad concentrations") {
  const Spectrum s({400.0, 401.0}, {0.1, 0.2});
  CHECK_THROWS_AS(LabeledSample(s, -1.0), ArgumentError);
  CHECK_THROWS_AS(LabeledSample(s, std::numeric_limits<double>::quiet_NaN()),
                  ArgumentError);
  const LabeledSample ok(s, 0.0);
  CHECK(ok.chl_a_ug_l == 0.0);
}

TEST_CASE("dataset requires a shared grid and at least one sample") {
  auto grid = std::make_shared<const WavelengthGrid>(
      std::vector<double>{400.0, 401.0});
  const Spectrum on_grid(grid, {0.1, 0.2});
  const Spectrum off_grid({400.0, 402.0}, {0.1, 0.2});

  CHECK_THROWS_AS(SpectralDataset({}, grid), ArgumentError);
  CHECK_THROWS_AS(SpectralDataset({LabeledSample(off_grid, 1.0)}, grid), ArgumentError);
  const SpectralDataset ok({LabeledSample(on_grid, 2.5)}, grid);
  CHECK(ok.targets() == std::vector<double>{2.5});
}

TEST_CASE("restrict_range keeps the 400-900 window of a spectrometer grid") {
  // spectrometer-like grid: 341..1015 nm at 0.66 nm steps
  const Spectrum s = linear_spectrum(341.0, 1015.0, 0.66, 0.0, 0.5);
  const Spectrum r = restrict_range(s, 400.0, 900.0);
  CHECK(r.grid().min() >= 400.0 - kWavelengthTolerance);
  CHECK(r.grid().max() <= 900.0 + kWavelengthTolerance);
  CHECK(r.size() > 100);
}

TEST_CASE("restrict_range to the full span is the identity") {
  const Spectrum s({400.0, 450.0, 500.0}, {0.1, 0.2, 0.3});
  const Spectrum r = restrict_range(s, 400.0, 500.0);
  CHECK(r.grid() == s.grid());
  CHECK(r.values() == s.values());
}

TEST_CASE("restrict_range with one surviving point violates the grid invariant") {
  const Spectrum s({410.0, 420.0, 430.0}, {0.1, 0.2, 0.3});
  CHECK_THROWS_AS(restrict_range(s, 415.0, 425.0), RangeError);
  CHECK_THROWS_AS(restrict_range(s, 431.0, 440.0), RangeError);
  CHECK_THROWS_AS(restrict_range(s, 425.0, 415.0), ArgumentError);
}

TEST_CASE("restrict_range is idempotent") {
  const Spectrum s = linear_spectrum(341.0, 1015.0, 0.66, 1e-4, 0.01);
  const Spectrum once = restrict_range(s, 400.0, 900.0);
  const Spectrum twice = restrict_range(once, 400.0, 900.0);
  CHECK(once.grid() == twice.grid());
  CHECK(once.values() == twice.values());
}

TEST_CASE("interpolation is exact at grid points and linear between them") {
  const Spectrum s({400.0, 402.0}, {0.1, 0.3});
  CHECK(interpolate_at(s, 400.0) == 0.1);
  CHECK(interpolate_at(s, 402.0) == 0.3);
  CHECK(interpolate_at(s, 401.0) == doctest::Approx(0.2).epsilon(1e-14));
}

TEST_CASE("interpolation reproduces a closed-form line to 1e-12") {
  const Spectrum s = linear_spectrum(400.0, 900.0, 1.0, 0.001, 0.0);
  Rng rng(7);
  for (int i = 0; i < 200; ++i) {
    const double lambda = rng.uniform(400.0, 900.0);
    CHECK(std::fabs(interpolate_at(s, lambda) - 0.001 * lambda) < 1e-12);
  }
}

TEST_CASE("interpolation is monotone between ordered adjacent grid points") {
  const Spectrum s({400.0, 410.0, 420.0}, {0.1, 0.4, 0.2});
  double prev = interpolate_at(s, 400.0);
  for (double lambda = 400.5; lambda <= 410.0; lambda += 0.5) {
    const double v = interpolate_at(s, lambda);
    CHECK(v >= prev - 1e-15);
    prev = v;
  }
}

TEST_CASE("interpolation outside the span throws") {
  const Spectrum s({400.0, 402.0}, {0.1, 0.3});
  CHECK_THROWS_AS(interpolate_at(s, 399.0), RangeError);
  CHECK_THROWS_AS(interpolate_at(s, 403.0), RangeError);
}
