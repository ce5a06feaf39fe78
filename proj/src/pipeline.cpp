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

#include "aquaspec/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>

#include "aquaspec/csv.hpp"
#include "aquaspec/rng.hpp"

namespace aquaspec {

IngestedSpectra ingest_spectra_csv(const std::string& path) {
  const auto rows = read_csv(path);
  if (rows.empty()) throw ParseError(path, 1, "empty spectra file");

  const auto& header = rows[0];
  if (header.cells.empty() || header.cells[0] != "wavelength_nm")
    throw ParseError(path, header.line, "first column must be 'wavelength_nm'");
  if (header.cells.size() < 2)
    throw ParseError(path, header.line, "no measurement columns");
  const std::size_t n_cols = header.cells.size() - 1;
  std::vector<std::string> names(header.cells.begin() + 1, header.cells.end());

  std::size_t first_data = 1;
  std::vector<std::optional<std::int64_t>> timestamps(n_cols);
  if (rows.size() > 1 && !rows[1].cells.empty() && rows[1].cells[0] == "timestamp") {
    if (rows[1].cells.size() != n_cols + 1)
      throw ParseError(path, rows[1].line, "timestamp row width does not match header");
    for (std::size_t c = 0; c < n_cols; ++c)
      timestamps[c] = parse_iso8601(rows[1].cells[c + 1], path, rows[1].line);
    first_data = 2;
  }

  std::vector<double> wavelengths;
  std::vector<std::vector<double>> columns(n_cols);
  std::optional<double> last_wl;
  for (std::size_t r = first_data; r < rows.size(); ++r) {
    const auto& row = rows[r];
    if (row.cells.size() != n_cols + 1)
      throw ParseError(path, row.line,
                       "row has " + std::to_string(row.cells.size()) + " cells, expected " +
                           std::to_string(n_cols + 1));
    const double wl = parse_double(row.cells[0], path, row.line);
    if (last_wl.has_value() && wl <= *last_wl + kWavelengthTolerance)
      throw ParseError(path, row.line, "wavelengths must be strictly increasing");
    last_wl = wl;
    // restrict to the 400-900 nm analysis window
    if (wl < 400.0 - kWavelengthTolerance || wl > 900.0 + kWavelengthTolerance) {
      // cells still have to parse so bad rows are caught wherever they are
      for (std::size_t c = 0; c < n_cols; ++c) parse_double(row.cells[c + 1], path, row.line);
      continue;
    }
    wavelengths.push_back(wl);
    for (std::size_t c = 0; c < n_cols; ++c)
      columns[c].push_back(parse_double(row.cells[c + 1], path, row.line));
  }
  if (wavelengths.size() < 2)
    throw ParseError(path, rows.back().line,
                     "fewer than 2 wavelength rows inside [400, 900] nm");

  auto grid = std::make_shared<const WavelengthGrid>(std::move(wavelengths));
  std::vector<LabeledSample> samples;
  samples.reserve(n_cols);
  for (std::size_t c = 0; c < n_cols; ++c)
    samples.emplace_back(Spectrum(grid, std::move(columns[c])), 0.0, timestamps[c]);

  return IngestedSpectra{SpectralDataset(std::move(samples), grid), std::move(names)};
}

std::vector<LabelRecord> ingest_labels_csv(const std::string& path) {
  const auto rows = read_csv(path);
  if (rows.empty()) throw ParseError(path, 1, "empty labels file");
  const auto& header = rows[0];
  if (header.cells.size() != 2 || header.cells[1] != "chl_a_ug_l" ||
      (header.cells[0] != "timestamp" && header.cells[0] != "id"))
    throw ParseError(path, header.line,
                     "labels header must be 'timestamp,chl_a_ug_l' or 'id,chl_a_ug_l'");
  const bool by_timestamp = header.cells[0] == "timestamp";

  std::vector<LabelRecord> labels;
  labels.reserve(rows.size() - 1);
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    if (row.cells.size() != 2)
      throw ParseError(path, row.line, "label rows must have 2 cells");
    LabelRecord rec;
    if (by_timestamp)
      rec.timestamp = parse_iso8601(row.cells[0], path, row.line);
    else
      rec.id = row.cells[0];
    rec.chl_a_ug_l = parse_double(row.cells[1], path, row.line);
    if (!std::isfinite(rec.chl_a_ug_l) || rec.chl_a_ug_l < 0.0)
      throw ParseError(path, row.line, "chl-a must be finite and >= 0");
    labels.push_back(std::move(rec));
  }
  if (labels.empty()) throw ParseError(path, header.line, "labels file has no rows");
  return labels;
}

namespace {

SpectralDataset build_matched_dataset(const IngestedSpectra& spectra,
                                      const std::vector<LabelRecord>& labels,
                                      const std::vector<std::pair<std::size_t, std::size_t>>&
                                          label_to_spectrum) {
  if (label_to_spectrum.empty())
    throw ValidationError("no label matched any spectrum");
  std::vector<LabeledSample> samples;
  samples.reserve(label_to_spectrum.size());
  for (const auto& [li, si] : label_to_spectrum) {
    const auto& src = spectra.dataset.samples()[si];
    samples.emplace_back(src.spectrum, labels[li].chl_a_ug_l, src.timestamp);
  }
  return SpectralDataset(std::move(samples), spectra.dataset.grid_ptr());
}

}  // namespace

SpectralDataset match_by_timestamp(const IngestedSpectra& spectra,
                                   const std::vector<LabelRecord>& labels,
                                   std::int64_t tolerance_s, MatchReport* report) {
  const auto& samples = spectra.dataset.samples();
  struct Candidate {
    std::int64_t gap;
    std::size_t label;
    std::size_t spectrum;
  };
  std::vector<Candidate> candidates;
  for (std::size_t li = 0; li < labels.size(); ++li) {
    if (!labels[li].timestamp.has_value())
      throw ArgumentError("label " + std::to_string(li) + " has no timestamp");
    for (std::size_t si = 0; si < samples.size(); ++si) {
      if (!samples[si].timestamp.has_value()) continue;
      const std::int64_t gap = std::llabs(*labels[li].timestamp - *samples[si].timestamp);
      if (gap <= tolerance_s) candidates.push_back({gap, li, si});
    }
  }
  std::sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
    if (a.gap != b.gap) return a.gap < b.gap;
    if (a.label != b.label) return a.label < b.label;
    return a.spectrum < b.spectrum;
  });

  std::vector<bool> label_used(labels.size(), false), spectrum_used(samples.size(), false);
  std::vector<std::pair<std::size_t, std::size_t>> matches;
  for (const auto& c : candidates) {
    if (label_used[c.label] || spectrum_used[c.spectrum]) continue;
    label_used[c.label] = true;
    spectrum_used[c.spectrum] = true;
    matches.emplace_back(c.label, c.spectrum);
  }
  // keep label file order
  std::sort(matches.begin(), matches.end());

  if (report) {
    report->matched = matches.size();
    for (std::size_t li = 0; li < labels.size(); ++li) {
      if (label_used[li]) continue;
      report->unmatched_labels.push_back(li);
      report->messages.push_back(
          "label " + format_iso8601(*labels[li].timestamp) +
          " unmatched: no free spectrum within " + std::to_string(tolerance_s) + " s");
    }
  }
  return build_matched_dataset(spectra, labels, matches);
}

SpectralDataset match_by_id(const IngestedSpectra& spectra,
                            const std::vector<LabelRecord>& labels, MatchReport* report) {
  std::vector<std::pair<std::size_t, std::size_t>> matches;
  std::vector<bool> spectrum_used(spectra.column_names.size(), false);
  for (std::size_t li = 0; li < labels.size(); ++li) {
    bool found = false;
    for (std::size_t si = 0; si < spectra.column_names.size(); ++si) {
      if (spectrum_used[si] || spectra.column_names[si] != labels[li].id) continue;
      matches.emplace_back(li, si);
      spectrum_used[si] = true;
      found = true;
      break;
    }
    if (!found && report) {
      report->unmatched_labels.push_back(li);
      report->messages.push_back("label id '" + labels[li].id + "' has no matching column");
    }
  }
  if (report) report->matched = matches.size();
  return build_matched_dataset(spectra, labels, matches);
}

SpectralDataset attach_labels(const IngestedSpectra& spectra,
                              const std::vector<LabelRecord>& labels,
                              std::int64_t tolerance_s, MatchReport* report) {
  if (!labels.empty() && labels.front().timestamp.has_value())
    return match_by_timestamp(spectra, labels, tolerance_s, report);
  return match_by_id(spectra, labels, report);
}

SplitAssignment stratified_split(const std::vector<double>& targets,
                                 double test_fraction, std::uint64_t seed) {
  const std::size_t n = targets.size();
  if (n < 10)
    throw ArgumentError("stratified split needs at least 10 samples, got " +
                        std::to_string(n));
  if (!(test_fraction > 0.0 && test_fraction < 1.0))
    throw ArgumentError("test fraction must be in (0, 1)");

  // sort by target, ties broken by original index
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (targets[a] != targets[b]) return targets[a] < targets[b];
    return a < b;
  });

  // five contiguous bins, sizes differing by at most one (larger bins first)
  const std::size_t base = n / kStratificationBins;
  const std::size_t extra = n % kStratificationBins;

  SplitAssignment split;
  split.seed = seed;
  split.bin_of.assign(n, 0);

  std::size_t cursor = 0;
  split.bin_edges[0] = targets[order.front()];
  for (std::size_t bin = 0; bin < kStratificationBins; ++bin) {
    const std::size_t bin_size = base + (bin < extra ? 1 : 0);
    std::vector<std::size_t> members(order.begin() + cursor,
                                     order.begin() + cursor + bin_size);
    cursor += bin_size;
    split.bin_edges[bin + 1] = targets[order[cursor - 1]];
    for (std::size_t idx : members) split.bin_of[idx] = bin;

    Rng rng(derive_seed(seed, "stratified-split", bin));
    rng.shuffle(members);
    const auto n_test = static_cast<std::size_t>(
        std::lround(test_fraction * static_cast<double>(bin_size)));
    for (std::size_t i = 0; i < members.size(); ++i) {
      if (i < n_test)
        split.test_indices.push_back(members[i]);
      else
        split.train_indices.push_back(members[i]);
    }
  }
  std::sort(split.train_indices.begin(), split.train_indices.end());
  std::sort(split.test_indices.begin(), split.test_indices.end());
  return split;
}

void write_split_manifest(const SplitAssignment& split, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write: " + path);
  out << "index,subset,bin\n";
  const std::size_t n = split.bin_of.size();
  std::vector<bool> is_test(n, false);
  for (std::size_t i : split.test_indices) is_test[i] = true;
  for (std::size_t i = 0; i < n; ++i)
    out << i << "," << (is_test[i] ? "test" : "train") << "," << split.bin_of[i] << "\n";
}

SplitAssignment read_split_manifest(const std::string& path) {
  const auto rows = read_csv(path);
  if (rows.empty() || rows[0].cells != std::vector<std::string>{"index", "subset", "bin"})
    throw ParseError(path, rows.empty() ? 1 : rows[0].line,
                     "split manifest header must be 'index,subset,bin'");
  SplitAssignment split;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    if (row.cells.size() != 3)
      throw ParseError(path, row.line, "split manifest rows must have 3 cells");
    const auto idx = static_cast<std::size_t>(parse_uint(row.cells[0], path, row.line));
    const auto bin = static_cast<std::size_t>(parse_uint(row.cells[2], path, row.line));
    if (idx != split.bin_of.size())
      throw ParseError(path, row.line, "split manifest indices must be 0,1,2,...");
    split.bin_of.push_back(bin);
    if (row.cells[1] == "test")
      split.test_indices.push_back(idx);
    else if (row.cells[1] == "train")
      split.train_indices.push_back(idx);
    else
      throw ParseError(path, row.line, "subset must be 'train' or 'test'");
  }
  return split;
}

ScalerParams fit_scaler(const Matrix& train_features) {
  if (train_features.rows() == 0 || train_features.cols() == 0)
    throw ArgumentError("cannot fit a scaler on an empty matrix");
  const std::size_t n = train_features.rows();
  const std::size_t p = train_features.cols();
  ScalerParams params;
  params.mean.assign(p, 0.0);
  params.std.assign(p, 0.0);
  params.constant_flags.assign(p, false);

  for (std::size_t r = 0; r < n; ++r) {
    const double* row = train_features.row(r);
    for (std::size_t c = 0; c < p; ++c) params.mean[c] += row[c];
  }
  for (std::size_t c = 0; c < p; ++c) params.mean[c] /= static_cast<double>(n);
  for (std::size_t r = 0; r < n; ++r) {
    const double* row = train_features.row(r);
    for (std::size_t c = 0; c < p; ++c) {
      const double d = row[c] - params.mean[c];
      params.std[c] += d * d;
    }
  }
  for (std::size_t c = 0; c < p; ++c) {
    params.std[c] = std::sqrt(params.std[c] / static_cast<double>(n));
    if (params.std[c] <= 0.0) {
      params.std[c] = 1.0;
      params.constant_flags[c] = true;
    }
  }
  return params;
}

Matrix apply_scaler(const ScalerParams& params, const Matrix& features) {
  if (features.cols() != params.mean.size())
    throw ArgumentError("scaler width " + std::to_string(params.mean.size()) +
                        " does not match feature width " + std::to_string(features.cols()));
  Matrix out(features.rows(), features.cols());
  for (std::size_t r = 0; r < features.rows(); ++r) {
    const double* src = features.row(r);
    double* dst = out.row(r);
    for (std::size_t c = 0; c < features.cols(); ++c)
      dst[c] = (src[c] - params.mean[c]) / params.std[c];
  }
  return out;
}

Matrix first_derivative(const Matrix& features, const std::vector<double>& centers_nm) {
  if (features.cols() != centers_nm.size())
    throw ArgumentError("feature width does not match the number of band centers");
  if (centers_nm.size() < 2)
    throw ArgumentError("first derivative needs at least 2 bands");
  for (std::size_t j = 1; j < centers_nm.size(); ++j)
    if (centers_nm[j] <= centers_nm[j - 1])
      throw ArgumentError("band centers must be strictly increasing");

  Matrix out(features.rows(), features.cols() - 1);
  for (std::size_t r = 0; r < features.rows(); ++r) {
    const double* src = features.row(r);
    double* dst = out.row(r);
    for (std::size_t j = 0; j + 1 < centers_nm.size(); ++j)
      dst[j] = (src[j + 1] - src[j]) / (centers_nm[j + 1] - centers_nm[j]);
  }
  return out;
}

}  // namespace aquaspec
