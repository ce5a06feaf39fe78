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

// Data ingestion, timestamp matching, the five-bin stratified train/test
// split, feature scaling and the first spectral derivative.

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "aquaspec/matrix.hpp"
#include "aquaspec/spectral.hpp"

namespace aquaspec {

// --- ingestion ------------------------------------------------------------

// Spectra CSV: header "wavelength_nm,<name>,..."; optionally a second row
// "timestamp,<iso8601>,..." assigning a timestamp per measurement column;
// then one row per wavelength.  Rows outside [400, 900] nm are dropped.
// Samples come back with chl-a 0 until labels are attached.
struct IngestedSpectra {
  SpectralDataset dataset;
  std::vector<std::string> column_names;
};

IngestedSpectra ingest_spectra_csv(const std::string& path);

// Labels CSV: header "timestamp,chl_a_ug_l" or "id,chl_a_ug_l".
struct LabelRecord {
  std::string id;                        // set for id-keyed files
  std::optional<std::int64_t> timestamp; // set for timestamp-keyed files
  double chl_a_ug_l = 0.0;
};

std::vector<LabelRecord> ingest_labels_csv(const std::string& path);

// --- matching ---------------------------------------------------------

struct MatchReport {
  std::size_t matched = 0;
  // indices into the label list that found no spectrum within tolerance
  std::vector<std::size_t> unmatched_labels;
  std::vector<std::string> messages;
};

// Greedy one-to-one matching by smallest time gap: candidate pairs within
// tolerance are taken closest-first, each spectrum and each label used at
// most once.  Unmatched labels are reported, not fatal.
SpectralDataset match_by_timestamp(const IngestedSpectra& spectra,
                                   const std::vector<LabelRecord>& labels,
                                   std::int64_t tolerance_s, MatchReport* report = nullptr);

// Exact match of label id against measurement column name.
SpectralDataset match_by_id(const IngestedSpectra& spectra,
                            const std::vector<LabelRecord>& labels,
                            MatchReport* report = nullptr);

// Dispatches on the label key kind.
SpectralDataset attach_labels(const IngestedSpectra& spectra,
                              const std::vector<LabelRecord>& labels,
                              std::int64_t tolerance_s, MatchReport* report = nullptr);

// --- stratified split -------------------------------------------------

inline constexpr std::size_t kStratificationBins = 5;

struct SplitAssignment {
  std::vector<std::size_t> train_indices;
  std::vector<std::size_t> test_indices;
  std::array<double, kStratificationBins + 1> bin_edges{};
  std::uint64_t seed = 0;
  std::vector<std::size_t> bin_of;  // bin index per dataset row
};

// Samples sorted by target are cut into five contiguous quantile bins whose
// sizes differ by at most one; within each bin a seeded shuffle sends
// round(test_fraction * bin_size) samples to test.  Train and test index
// lists preserve ascending dataset order.
SplitAssignment stratified_split(const std::vector<double>& targets,
                                 double test_fraction, std::uint64_t seed);

void write_split_manifest(const SplitAssignment& split, const std::string& path);
SplitAssignment read_split_manifest(const std::string& path);

// --- feature scaling ----------------------------------------------------

struct ScalerParams {
  std::vector<double> mean;
  std::vector<double> std;           // population (n) denominator; > 0
  std::vector<bool> constant_flags;  // true where std was 0 and replaced by 1
};

// Fit on the training subset only.
ScalerParams fit_scaler(const Matrix& train_features);
Matrix apply_scaler(const ScalerParams& params, const Matrix& features);

// --- spectral derivative --------------------------------------------------

// Column j = (v[j+1] - v[j]) / (c[j+1] - c[j]); output width n-1,
// units reflectance per nm.  Centers must be strictly increasing.
Matrix first_derivative(const Matrix& features, const std::vector<double>& centers_nm);

}  // namespace aquaspec
