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

// Grid-search hyperparameter tuning with cross-validation on the training
// subset, evaluation metrics, and the experiment runner producing the
// model x sensor result matrix.

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "aquaspec/pipeline.hpp"
#include "aquaspec/regressor.hpp"
#include "aquaspec/sensor.hpp"
#include "aquaspec/simulate.hpp"
#include "aquaspec/spectral.hpp"

namespace aquaspec {

// --- metrics ----------------------------------------------------------

// 1 - SS_res/SS_tot.  Throws MetricError when the true values have zero
// variance.
double r_squared(const std::vector<double>& y_true, const std::vector<double>& y_pred);

// Mean absolute error.
double mae(const std::vector<double>& y_true, const std::vector<double>& y_pred);

struct EvaluationMetrics {
  double r_squared = 0.0;
  double mae = 0.0;  // ug/L
  std::size_t n_test = 0;
};

// --- hyperparameter grids ---------------------------------------------

// Named candidate lists in a fixed axis order.  The Cartesian product is
// enumerated row-major (first axis slowest); ties in grid search break to
// the earlier enumeration index.
class HyperparameterGrid {
 public:
  explicit HyperparameterGrid(ModelKind kind) : kind_(kind) {}

  ModelKind kind() const { return kind_; }
  void add_axis(const std::string& name, std::vector<double> values);
  bool has_axis(const std::string& name) const;
  void replace_axis(const std::string& name, std::vector<double> values);

  std::size_t size() const;
  RegressorConfig config_at(std::size_t index, std::uint64_t seed) const;
  std::string describe_point(std::size_t index) const;  // "C=1;gamma=0.1"

  const std::vector<std::pair<std::string, std::vector<double>>>& axes() const {
    return axes_;
  }

 private:
  ModelKind kind_;
  std::vector<std::pair<std::string, std::vector<double>>> axes_;
};

// The default search spaces; mtry candidates depend on the feature count.
HyperparameterGrid default_grid(ModelKind kind, std::size_t n_features);

// --- grid search ---------------------------------------------------------

struct CvRow {
  std::size_t grid_index = 0;
  std::string params;
  double mean_mae = 0.0;
  double mean_r2 = 0.0;   // NaN when undefined on some fold
  bool failed = false;
  std::string error;
};

struct GridSearchResult {
  RegressorConfig best;
  std::size_t best_index = 0;
  std::vector<CvRow> table;  // one row per grid point
};

// k-fold cross-validation on (X, y); folds are stratified by target
// quantiles like the outer split.  Selection minimizes mean CV MAE.
// Models needing scaling get a per-fold scaler fit on the fold-train part.
// Training errors mark the grid point failed and it is skipped; if every
// point fails a TuningError is thrown.
GridSearchResult grid_search(const HyperparameterGrid& grid, const Matrix& X_train,
                             const std::vector<double>& y_train, std::size_t k_folds,
                             std::uint64_t seed, bool scale_features,
                             std::size_t grid_cap = 1024);

// Fold assignment used by grid_search, exposed for tests: sorts by target,
// then assigns fold labels within consecutive blocks of k via a seeded
// shuffle.
std::vector<std::size_t> stratified_fold_of(const std::vector<double>& y,
                                            std::size_t k_folds, std::uint64_t seed);

// --- experiment runner ---------------------------------------------------

struct ExperimentConfig {
  double test_fraction = 0.5;
  std::uint64_t seed = 0;
  std::size_t cv_folds = 5;
  std::size_t grid_cap = 1024;
  bool derivative_variants = true;
  // sensors whose rf/mars cells also get a first-derivative variant
  std::vector<std::string> derivative_sensors = {"Hyperion", "EnMAP"};
  // per-model grid overrides; models without an entry use default_grid
  std::map<ModelKind, std::vector<std::pair<std::string, std::vector<double>>>>
      grid_overrides;
};

struct ExperimentCell {
  std::string sensor;
  ModelKind model = ModelKind::rf;
  std::string preprocessing;  // "bands" or "deriv"
  bool ok = false;
  std::string error;
  EvaluationMetrics metrics;
  std::string selected_params;
  std::vector<CvRow> cv_table;
  std::size_t test_evaluations = 0;  // times the held-out subset was scored
};

struct ExperimentResult {
  std::vector<ExperimentCell> cells;
  SplitAssignment split;
  std::uint64_t seed = 0;
  double test_fraction = 0.5;
  std::size_t cv_folds = 5;
  std::vector<std::string> notes;     // simulation warnings, catalog provenance
  std::vector<std::string> failures;  // summary of failed cells
};

// Per sensor: simulate -> stratified split -> per-model preprocessing ->
// grid search on train -> retrain best on the full training subset ->
// evaluate once on the held-out test subset.  Scaling applies to mars, svr
// and ann; derivative variants to rf and mars on the configured sensors.
ExperimentResult run_experiment(const SpectralDataset& dataset,
                                const std::vector<SensorModel>& sensors,
                                const std::vector<ModelKind>& models,
                                const ExperimentConfig& config);

bool model_needs_scaling(ModelKind kind);

}  // namespace aquaspec
