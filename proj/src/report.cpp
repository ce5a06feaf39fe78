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

#include "aquaspec/report.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "aquaspec/csv.hpp"

namespace aquaspec {

std::vector<ResultRow> result_rows(const ExperimentResult& result) {
  std::vector<ResultRow> rows;
  rows.reserve(result.cells.size());
  for (const auto& cell : result.cells) {
    if (!cell.ok) continue;
    ResultRow row;
    row.sensor = cell.sensor;
    row.model = model_kind_name(cell.model);
    row.preprocessing = cell.preprocessing;
    row.r2 = cell.metrics.r_squared;
    row.mae = cell.metrics.mae;
    row.n_test = cell.metrics.n_test;
    row.selected_hyperparams = cell.selected_params;
    rows.push_back(std::move(row));
  }
  return rows;
}

void write_results_csv(const std::vector<ResultRow>& rows, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write: " + path);
  out << "sensor,model,preprocessing,r2,mae,n_test,selected_hyperparams\n";
  for (const auto& r : rows)
    out << r.sensor << "," << r.model << "," << r.preprocessing << ","
        << format_double(r.r2) << "," << format_double(r.mae) << "," << r.n_test << ","
        << r.selected_hyperparams << "\n";
}

std::vector<ResultRow> read_results_csv(const std::string& path) {
  const auto raw = read_csv(path);
  if (raw.empty() ||
      raw[0].cells != split_csv_line("sensor,model,preprocessing,r2,mae,n_test,selected_hyperparams"))
    throw ParseError(path, raw.empty() ? 1 : raw[0].line, "unexpected results CSV header");
  std::vector<ResultRow> rows;
  for (std::size_t i = 1; i < raw.size(); ++i) {
    const auto& cells = raw[i].cells;
    if (cells.size() != 7)
      throw ParseError(path, raw[i].line, "results rows must have 7 cells");
    ResultRow row;
    row.sensor = cells[0];
    row.model = cells[1];
    row.preprocessing = cells[2];
    row.r2 = parse_double(cells[3], path, raw[i].line);
    row.mae = parse_double(cells[4], path, raw[i].line);
    row.n_test = static_cast<std::size_t>(parse_uint(cells[5], path, raw[i].line));
    row.selected_hyperparams = cells[6];
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string render_mae_table(const std::vector<ResultRow>& rows) {
  // row labels: sensor name, or "<sensor> (deriv)"; column order: first
  // appearance of each model
  std::vector<std::string> row_labels, models;
  for (const auto& r : rows) {
    const std::string label =
        r.preprocessing == "deriv" ? r.sensor + " (deriv)" : r.sensor;
    if (std::find(row_labels.begin(), row_labels.end(), label) == row_labels.end())
      row_labels.push_back(label);
    if (std::find(models.begin(), models.end(), r.model) == models.end())
      models.push_back(r.model);
  }

  auto lookup = [&](const std::string& label, const std::string& model) -> std::string {
    for (const auto& r : rows) {
      const std::string rl = r.preprocessing == "deriv" ? r.sensor + " (deriv)" : r.sensor;
      if (rl == label && r.model == model) {
        std::ostringstream v;
        v << std::fixed << std::setprecision(2) << r.mae;
        return v.str();
      }
    }
    return "-";
  };

  std::size_t label_width = std::string("MAE (ug/L)").size();
  for (const auto& l : row_labels) label_width = std::max(label_width, l.size());

  std::ostringstream out;
  out << std::left << std::setw(static_cast<int>(label_width) + 2) << "MAE (ug/L)";
  for (const auto& m : models) out << std::right << std::setw(10) << m;
  out << "\n";
  for (const auto& label : row_labels) {
    out << std::left << std::setw(static_cast<int>(label_width) + 2) << label;
    for (const auto& m : models) out << std::right << std::setw(10) << lookup(label, m);
    out << "\n";
  }
  return out.str();
}

void write_mae_table(const std::vector<ResultRow>& rows, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write: " + path);
  out << render_mae_table(rows);
}

void write_plot_csv(const std::vector<ResultRow>& rows, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write: " + path);
  out << "sensor,model,preprocessing,r2\n";
  for (const auto& r : rows)
    out << r.sensor << "," << r.model << "," << r.preprocessing << ","
        << format_double(r.r2) << "\n";
}

}  // namespace aquaspec
