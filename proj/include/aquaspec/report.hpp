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

// Experiment report artifacts: the results CSV, an aligned-text MAE matrix
// and a plot-data CSV of R-squared values.

#pragma once

#include <string>
#include <vector>

#include "aquaspec/tuning.hpp"

namespace aquaspec {

// One row per cell in the results CSV.
struct ResultRow {
  std::string sensor;
  std::string model;
  std::string preprocessing;
  double r2 = 0.0;
  double mae = 0.0;
  std::size_t n_test = 0;
  std::string selected_hyperparams;
};

std::vector<ResultRow> result_rows(const ExperimentResult& result);

// "sensor,model,preprocessing,r2,mae,n_test,selected_hyperparams"; cells
// that failed are listed in the manifest, not here.
void write_results_csv(const std::vector<ResultRow>& rows, const std::string& path);
std::vector<ResultRow> read_results_csv(const std::string& path);

// Aligned text table: one sensor per row, one model per column, MAE values;
// derivative-variant cells get their own "<sensor> (deriv)" rows.
std::string render_mae_table(const std::vector<ResultRow>& rows);
void write_mae_table(const std::vector<ResultRow>& rows, const std::string& path);

// Long-format plot data: "sensor,model,preprocessing,r2".
void write_plot_csv(const std::vector<ResultRow>& rows, const std::string& path);

}  // namespace aquaspec
