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

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>

#include "aquaspec/rng.hpp"
#include "aquaspec/simulate.hpp"

using namespace aquaspec;

namespace {

GridPtr spectrometer_grid() {
  static GridPtr grid = std::make_shared<const WavelengthGrid>(
      WavelengthGrid::regular(400.0, 900.0, 0.66));
  return grid;
}

Spectrum constant_spectrum(double value, GridPtr grid = spectrometer_grid()) {
  return Spectrum(grid, std::vector<double>(grid->size(), value));
}

Spectrum linear_spectrum(double slope, double offset, GridPtr grid = spectrometer_grid()) {
  std::vector<double> v;
  v.reserve(grid->size());
  for (double w : grid->values()) v.push_back(slope * w + offset);
  return Spectrum(grid, std::move(v));
}

Spectrum random_spectrum(Rng& rng, GridPtr grid = spectrometer_grid()) {
  std::vector<double> v(grid->size());
  for (auto& x : v) x = rng.uniform(-0.05, 0.6);
  return Spectrum(grid, std::move(v));
}

// spectrum with a gaussian dip centered at `center`
Spectrum dip_spectrum(double center, double depth, double width,
                      GridPtr grid = spectrometer_grid()) {
  std::vector<double> v;
  v.reserve(grid->size());
  for (double w : grid->values()) {
    const double d = w - center;
    v.push_back(0.5 - depth * std::exp(-d * d / (2.0 * width * width)));
  }
  return Spectrum(grid, std::move(v));
}

}  // namespace

TEST_CASE("sigma_from_fwhm closed form") {
  CHECK(sigma_from_fwhm(10.0) == doctest::Approx(4.246609).epsilon(1e-6));
  CHECK(sigma_from_fwhm(2.3548200) == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(sigma_from_fwhm(6.5) == doctest::Approx(2.760296).epsilon(1e-6));
  CHECK_THROWS_AS(sigma_from_fwhm(0.0), ArgumentError);
  CHECK_THROWS_AS(sigma_from_fwhm(-1.0), ArgumentError);
}

TEST_CASE("gaussian weight at half the FWHM distance is half the peak") {
  const double sigma = sigma_from_fwhm(10.0);
  const double w = std::exp(-(5.0 * 5.0) / (2.0 * sigma * sigma));
  CHECK(w == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("gaussian band value of a constant spectrum is the constant") {
  const Spectrum s = constant_spectrum(0.37);
  const BandDefinition band("b", 650.0, 10.0);
  CHECK(std::fabs(gaussian_band_value(s, band) - 0.37) < 1e-12);
}

TEST_CASE("gaussian band value recovers the center of a linear spectrum") {
  // grid symmetric about the band center: center on a grid point
  auto grid = std::make_shared<const WavelengthGrid>(
      WavelengthGrid::regular(600.0, 700.0, 0.5));
  const double a = 2e-3, c = -0.4;
  const Spectrum s = linear_spectrum(a, c, grid);
  const BandDefinition band("b", 650.0, 8.0);
  CHECK(std::fabs(gaussian_band_value(s, band) - (a * 650.0 + c)) < 1e-9);
  CHECK(std::fabs(equal_weight_band_value(s, band) - (a * 650.0 + c)) < 1e-9);
}

TEST_CASE("a spike at the center point dilutes as the band widens") {
  auto grid = std::make_shared<const WavelengthGrid>(
      WavelengthGrid::regular(600.0, 700.0, 1.0));
  std::vector<double> v(grid->size(), 0.0);
  v[50] = 1.0;  // 650 nm
  const Spectrum s(grid, std::move(v));

  double last = 1.1;
  for (double fwhm : {1.0, 3.0, 6.0, 12.0, 24.0}) {
    const double value = gaussian_band_value(s, BandDefinition("b", 650.0, fwhm));
    CHECK(value > 0.0);
    CHECK(value <= 1.0);
    CHECK(value < last);
    last = value;
  }
}

TEST_CASE("equal-weight band value is the window mean") {
  const Spectrum s({664.0, 665.0, 666.0}, {0.2, 0.4, 0.6});
  CHECK(equal_weight_band_value(s, BandDefinition("b", 665.0, 2.0)) ==
        doctest::Approx(0.4).epsilon(1e-12));

  // window smaller than the grid spacing with the center on a grid point
  CHECK(equal_weight_band_value(s, BandDefinition("b", 665.0, 0.5)) == 0.4);

  const Spectrum c = constant_spectrum(0.5);
  CHECK(equal_weight_band_value(c, BandDefinition("b", 700.0, 20.0)) ==
        doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("srf weighting with a flat table reduces to the equal-weight mean") {
  Rng rng(5);
  const Spectrum s = random_spectrum(rng);
  BandDefinition band("b", 650.0, 20.0);
  // flat response exactly over the equal-weight window
  band.srf = SRFTable(WavelengthGrid({640.0, 660.0}), {1.0, 1.0});
  const BandDefinition plain("b", 650.0, 20.0);
  CHECK(std::fabs(srf_band_value(s, band) - equal_weight_band_value(s, plain)) < 1e-12);
}

TEST_CASE("a gaussian-sampled srf matches gaussian weighting") {
  Rng rng(6);
  const Spectrum s = random_spectrum(rng);
  const double span = *std::max_element(s.values().begin(), s.values().end()) -
                      *std::min_element(s.values().begin(), s.values().end());

  const double center = 650.0, fwhm = 15.0;
  const double sigma = sigma_from_fwhm(fwhm);
  std::vector<double> grid, weights;
  for (double w = center - 4.0 * sigma; w <= center + 4.0 * sigma; w += 0.25) {
    grid.push_back(w);
    weights.push_back(std::exp(-(w - center) * (w - center) / (2.0 * sigma * sigma)));
  }
  BandDefinition band("b", center, fwhm);
  band.srf = SRFTable(WavelengthGrid(grid), weights);

  const double via_srf = srf_band_value(s, band);
  const double via_gauss = gaussian_band_value(s, BandDefinition("b", center, fwhm));
  CHECK(std::fabs(via_srf - via_gauss) <= 1e-3 * span);
}

TEST_CASE("gaussian-sampled srf converges to gaussian weighting as the table refines") {
  Rng rng(16);
  const Spectrum s = random_spectrum(rng);
  const double center = 650.0, fwhm = 15.0;
  const double sigma = sigma_from_fwhm(fwhm);
  const double reference = gaussian_band_value(s, BandDefinition("b", center, fwhm));

  double previous_error = 1e9;
  for (double step : {4.0, 1.0, 0.25}) {
    std::vector<double> grid, weights;
    for (double w = center - 4.0 * sigma; w <= center + 4.0 * sigma; w += step) {
      grid.push_back(w);
      weights.push_back(std::exp(-(w - center) * (w - center) / (2.0 * sigma * sigma)));
    }
    BandDefinition band("b", center, fwhm);
    band.srf = SRFTable(WavelengthGrid(grid), weights);
    const double error = std::fabs(srf_band_value(s, band) - reference);
    CHECK(error < previous_error + 1e-15);
    previous_error = error;
  }
  CHECK(previous_error < 1e-5);
}

TEST_CASE("constant spectrum is preserved by every approach and sensor") {
  const Spectrum s = constant_spectrum(0.25);
  for (const auto& sensor : builtin_catalog()) {
    const auto sim = simulate_sensor_spectrum(s, sensor);
    for (double v : sim.values) CHECK(std::fabs(v - 0.25) < 1e-9);
  }
}

TEST_CASE("srf_band_value without a table is a configuration error") {
  const Spectrum s = constant_spectrum(0.25);
  CHECK_THROWS_AS(srf_band_value(s, BandDefinition("b", 650.0, 10.0)), ConfigError);
}

TEST_CASE("empty band support is a coverage error") {
  const Spectrum s({400.0, 900.0}, {0.1, 0.2});  // two far-apart points
  CHECK_THROWS_AS(gaussian_band_value(s, BandDefinition("b", 650.0, 2.0)), CoverageError);
  CHECK_THROWS_AS(equal_weight_band_value(s, BandDefinition("b", 650.0, 2.0)),
                  CoverageError);
}

TEST_CASE("band values stay inside the support's value range") {
  Rng rng(9);
  const Spectrum s = random_spectrum(rng);
  for (const auto& sensor : builtin_catalog()) {
    const auto weights = sensor_band_weights(s.grid(), sensor);
    const auto sim = simulate_sensor_spectrum(s, sensor);
    for (std::size_t b = 0; b < weights.size(); ++b) {
      const auto& w = weights[b];
      double lo = 1e300, hi = -1e300;
      for (std::size_t i = 0; i < w.weights.size(); ++i) {
        lo = std::min(lo, s.values()[w.first + i]);
        hi = std::max(hi, s.values()[w.first + i]);
      }
      CHECK(sim.values[b] >= lo - 1e-12);
      CHECK(sim.values[b] <= hi + 1e-12);
    }
  }
}

TEST_CASE("simulated spectrum has one value per band") {
  const Spectrum s = constant_spectrum(0.2);
  const auto& enmap = find_sensor(builtin_catalog(), "EnMAP");
  const auto sim = simulate_sensor_spectrum(s, enmap);
  CHECK(sim.values.size() == 77);
  CHECK(sim.band_ids.size() == 77);
  CHECK(sim.sensor_name == "EnMAP");
}

TEST_CASE("Sentinel-3 sees a dip at 675 nm in the red bands") {
  const Spectrum s = dip_spectrum(675.0, 0.3, 8.0);
  const auto& s3 = find_sensor(builtin_catalog(), "Sentinel-3");
  const auto sim = simulate_sensor_spectrum(s, s3);
  double oa9 = 0.0, oa6 = 0.0;
  for (std::size_t i = 0; i < sim.band_ids.size(); ++i) {
    if (sim.band_ids[i] == "Oa9") oa9 = sim.values[i];
    if (sim.band_ids[i] == "Oa6") oa6 = sim.values[i];
  }
  CHECK(oa9 < oa6);
}

TEST_CASE("bands reaching past the grid edge are noted, not fatal") {
  // Sentinel-3 Oa19 is centered at 900 nm; its support runs past the grid
  const auto& s3 = find_sensor(builtin_catalog(), "Sentinel-3");
  std::vector<std::string> notes;
  const Spectrum s = constant_spectrum(0.3);
  const auto sim = simulate_sensor_spectrum(s, s3, &notes);
  CHECK(sim.values.size() == 19);
  bool noted = false;
  for (const auto& n : notes)
    if (n.find("Oa19") != std::string::npos) noted = true;
  CHECK(noted);
}

TEST_CASE("simulate_dataset carries targets through and is row-consistent") {
  auto grid = spectrometer_grid();
  Rng rng(12);
  std::vector<LabeledSample> samples;
  for (int i = 0; i < 10; ++i)
    samples.emplace_back(random_spectrum(rng, grid), static_cast<double>(i));
  const SpectralDataset dataset(samples, grid);

  const auto catalog = builtin_catalog();
  const auto& s2 = find_sensor(catalog, "Sentinel-2");
  const auto sim = simulate_dataset(dataset, s2);
  CHECK(sim.features.rows() == 10);
  CHECK(sim.features.cols() == 9);
  CHECK(sim.chl_a == dataset.targets());

  // a single-sample dataset row equals simulate_sensor_spectrum
  const SpectralDataset one({samples[3]}, grid);
  const auto sim_one = simulate_dataset(one, s2);
  const auto direct = simulate_sensor_spectrum(samples[3].spectrum, s2);
  for (std::size_t b = 0; b < 9; ++b)
    CHECK(sim_one.features.at(0, b) == direct.values[b]);

  // two sensors: identical targets, different widths
  const auto sim_l5 = simulate_dataset(dataset, find_sensor(catalog, "Landsat-5"));
  CHECK(sim_l5.features.cols() == 4);
  CHECK(sim_l5.chl_a == sim.chl_a);
}

TEST_CASE("simulated dataset CSV format") {
  auto grid = spectrometer_grid();
  std::vector<LabeledSample> samples;
  samples.emplace_back(constant_spectrum(0.123456789123, grid), 7.5);
  const SpectralDataset dataset(samples, grid);
  const auto sim = simulate_dataset(dataset, find_sensor(builtin_catalog(), "Landsat-5"));

  const auto path =
      (std::filesystem::temp_directory_path() / "aquaspec_sim.csv").string();
  write_simulated_csv(sim, path);
  std::ifstream in(path);
  std::string header, row;
  std::getline(in, header);
  std::getline(in, row);
  CHECK(header == "chl_a,B1,B2,B3,B4");
  CHECK(row.substr(0, 4) == "7.5,");
  // band values are written with >= 9 significant digits
  CHECK(row.find("0.123456789") != std::string::npos);
  std::filesystem::remove(path);
}
