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

#include "aquaspec/tuning.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "aquaspec/csv.hpp"
#include "aquaspec/parallel.hpp"
#include "aquaspec/rng.hpp"

namespace aquaspec {

double r_squared(const std::vector<double>& y_true, const std::vector<double>& y_pred) {
  if (y_true.empty() || y_true.size() != y_pred.size())
    throw ArgumentError("r_squared needs two equal-length non-empty vectors");
  double mean = 0.0;
  for (double v : y_true) mean += v;
  mean /= static_cast<double>(y_true.size());
  double ss_res = 0.0, ss_tot = 0.0;
  for (std::size_t i = 0; i < y_true.size(); ++i) {
    const double r = y_true[i] - y_pred[i];
    const double d = y_true[i] - mean;
    ss_res += r * r;
    ss_tot += d * d;
  }
  if (ss_tot <= 0.0)
    throw MetricError("r_squared undefined: true values have zero variance");
  return 1.0 - ss_res / ss_tot;
}

double mae(const std::vector<double>& y_true, const std::vector<double>& y_pred) {
  if (y_true.empty() || y_true.size() != y_pred.size())
    throw ArgumentError("mae needs two equal-length non-empty vectors");
  double s = 0.0;
  for (std::size_t i = 0; i < y_true.size(); ++i) s += std::fabs(y_true[i] - y_pred[i]);
  return s / static_cast<double>(y_true.size());
}

// --- grids ---------------------------------------------------------------

void HyperparameterGrid::add_axis(const std::string& name, std::vector<double> values) {
  if (values.empty())
    throw ArgumentError("grid axis '" + name + "' has no candidate values");
  if (has_axis(name)) throw ArgumentError("duplicate grid axis '" + name + "'");
  axes_.emplace_back(name, std::move(values));
}

bool HyperparameterGrid::has_axis(const std::string& name) const {
  for (const auto& [n, v] : axes_)
    if (n == name) return true;
  return false;
}

void HyperparameterGrid::replace_axis(const std::string& name, std::vector<double> values) {
  if (values.empty())
    throw ArgumentError("grid axis '" + name + "' has no candidate values");
  for (auto& [n, v] : axes_) {
    if (n == name) {
      v = std::move(values);
      return;
    }
  }
  axes_.emplace_back(name, std::move(values));
}

std::size_t HyperparameterGrid::size() const {
  std::size_t total = 1;
  for (const auto& [name, values] : axes_) total *= values.size();
  return total;
}

RegressorConfig HyperparameterGrid::config_at(std::size_t index, std::uint64_t seed) const {
  if (index >= size()) throw ArgumentError("grid index out of range");
  RegressorConfig config(kind_, seed);
  // row-major: first axis slowest
  std::size_t stride = size();
  for (const auto& [name, values] : axes_) {
    stride /= values.size();
    config.set(name, values[(index / stride) % values.size()]);
  }
  return config;
}

std::string HyperparameterGrid::describe_point(std::size_t index) const {
  std::string out;
  std::size_t stride = size();
  for (const auto& [name, values] : axes_) {
    stride /= values.size();
    if (!out.empty()) out += ";";
    out += name + "=" + format_double(values[(index / stride) % values.size()]);
  }
  return out;
}

HyperparameterGrid default_grid(ModelKind kind, std::size_t n_features) {
  HyperparameterGrid grid(kind);
  switch (kind) {
    case ModelKind::svr:
      grid.add_axis("C", {0.1, 1.0, 10.0, 100.0, 1000.0});
      grid.add_axis("gamma", {1e-3, 1e-2, 1e-1, 1.0, 10.0});
      grid.add_axis("epsilon", {0.1, 1.0});
      break;
    case ModelKind::rf: {
      grid.add_axis("n_trees", {200});
      const double p = static_cast<double>(n_features);
      std::vector<double> mtry = {std::ceil(p / 3.0), std::ceil(std::sqrt(p)), p};
      std::sort(mtry.begin(), mtry.end());
      mtry.erase(std::unique(mtry.begin(), mtry.end()), mtry.end());
      grid.add_axis("mtry", std::move(mtry));
      grid.add_axis("min_leaf", {1, 5});
      break;
    }
    case ModelKind::mars:
      grid.add_axis("max_terms", {11, 21});
      grid.add_axis("gcv_penalty", {2, 3});
      break;
    case ModelKind::ann:
      grid.add_axis("hidden_units", {3, 5, 10});
      grid.add_axis("weight_decay", {1e-4, 1e-2, 1e-1});
      break;
  }
  return grid;
}

// --- grid search ---------------------------------------------------------

std::vector<std::size_t> stratified_fold_of(const std::vector<double>& y,
                                            std::size_t k_folds, std::uint64_t seed) {
  const std::size_t n = y.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (y[a] != y[b]) return y[a] < y[b];
    return a < b;
  });

  std::vector<std::size_t> fold_of(n, 0);
  Rng rng(derive_seed(seed, "cv-folds"));
  std::vector<std::size_t> labels(k_folds);
  for (std::size_t block = 0; block * k_folds < n; ++block) {
    const std::size_t begin = block * k_folds;
    const std::size_t count = std::min(k_folds, n - begin);
    labels.resize(k_folds);
    std::iota(labels.begin(), labels.end(), 0);
    rng.shuffle(labels);
    for (std::size_t i = 0; i < count; ++i) fold_of[order[begin + i]] = labels[i];
  }
  return fold_of;
}

bool model_needs_scaling(ModelKind kind) {
  return kind == ModelKind::mars || kind == ModelKind::svr || kind == ModelKind::ann;
}

GridSearchResult grid_search(const HyperparameterGrid& grid, const Matrix& X_train,
                             const std::vector<double>& y_train, std::size_t k_folds,
                             std::uint64_t seed, bool scale_features,
                             std::size_t grid_cap) {
  if (k_folds < 2) throw ArgumentError("grid search needs at least 2 folds");
  if (X_train.rows() < 2 * k_folds)
    throw ArgumentError("grid search needs at least 2k rows, got " +
                        std::to_string(X_train.rows()));
  const std::size_t n_points = grid.size();
  if (n_points == 0) throw ArgumentError("empty hyperparameter grid");
  if (n_points > grid_cap)
    throw ArgumentError("grid has " + std::to_string(n_points) +
                        " points, above the cap of " + std::to_string(grid_cap));

  const auto fold_of = stratified_fold_of(y_train, k_folds, seed);

  // per-fold train/test index lists and (optionally) scaled matrices
  struct Fold {
    Matrix X_fit, X_val;
    std::vector<double> y_fit, y_val;
  };
  std::vector<Fold> folds(k_folds);
  for (std::size_t f = 0; f < k_folds; ++f) {
    std::vector<std::size_t> fit_idx, val_idx;
    for (std::size_t i = 0; i < y_train.size(); ++i)
      (fold_of[i] == f ? val_idx : fit_idx).push_back(i);
    if (fit_idx.empty() || val_idx.empty())
      throw ArgumentError("a cross-validation fold is empty");
    Fold& fold = folds[f];
    fold.X_fit = take_rows(X_train, fit_idx);
    fold.X_val = take_rows(X_train, val_idx);
    fold.y_fit = take(y_train, fit_idx);
    fold.y_val = take(y_train, val_idx);
    if (scale_features) {
      const ScalerParams scaler = fit_scaler(fold.X_fit);
      fold.X_fit = apply_scaler(scaler, fold.X_fit);
      fold.X_val = apply_scaler(scaler, fold.X_val);
    }
  }

  std::vector<CvRow> table(n_points);
  parallel_for(n_points, [&](std::size_t gp) {
    CvRow& row = table[gp];
    row.grid_index = gp;
    row.params = grid.describe_point(gp);
    double mae_sum = 0.0, r2_sum = 0.0;
    bool r2_defined = true;
    try {
      for (std::size_t f = 0; f < k_folds; ++f) {
        RegressorConfig config =
            grid.config_at(gp, derive_seed(seed, "cv-fit", gp * k_folds + f));
        const auto model = train(config, folds[f].X_fit, folds[f].y_fit);
        const auto pred = model->predict(folds[f].X_val);
        mae_sum += mae(folds[f].y_val, pred);
        try {
          r2_sum += r_squared(folds[f].y_val, pred);
        } catch (const MetricError&) {
          r2_defined = false;
        }
      }
      row.mean_mae = mae_sum / static_cast<double>(k_folds);
      row.mean_r2 = r2_defined ? r2_sum / static_cast<double>(k_folds)
                               : std::numeric_limits<double>::quiet_NaN();
    } catch (const Error& e) {
      row.failed = true;
      row.error = e.what();
    }
  });

  std::size_t best_index = n_points;
  double best_mae = std::numeric_limits<double>::infinity();
  for (std::size_t gp = 0; gp < n_points; ++gp) {
    if (table[gp].failed) continue;
    if (table[gp].mean_mae < best_mae) {  // ties keep the earlier point
      best_mae = table[gp].mean_mae;
      best_index = gp;
    }
  }
  if (best_index == n_points) {
    std::string detail = table.empty() ? "" : (": first error: " + table[0].error);
    throw TuningError("every grid point failed to train" + detail);
  }

  // the seed of the selected config is set by the caller before the final
  // retrain; use a stable placeholder here
  GridSearchResult result{grid.config_at(best_index, seed), best_index,
                          std::move(table)};
  return result;
}

// --- experiment runner -----------------------------------------------------

namespace {

HyperparameterGrid grid_for(const ExperimentConfig& config, ModelKind kind,
                            std::size_t n_features) {
  HyperparameterGrid grid = default_grid(kind, n_features);
  const auto it = config.grid_overrides.find(kind);
  if (it != config.grid_overrides.end())
    for (const auto& [name, values] : it->second) grid.replace_axis(name, values);
  return grid;
}

struct CellSpec {
  std::size_t sensor_index;
  ModelKind model;
  bool derivative;
};

}  // namespace

ExperimentResult run_experiment(const SpectralDataset& dataset,
                                const std::vector<SensorModel>& sensors,
                                const std::vector<ModelKind>& models,
                                const ExperimentConfig& config) {
  if (sensors.empty()) throw ArgumentError("run_experiment needs at least one sensor");
  if (models.empty()) throw ArgumentError("run_experiment needs at least one model");

  ExperimentResult result;
  result.seed = config.seed;
  result.test_fraction = config.test_fraction;
  result.cv_folds = config.cv_folds;

  // The split depends only on targets and seed, so it is shared across
  // sensors: the same samples are train/test everywhere.
  result.split = stratified_split(dataset.targets(), config.test_fraction,
                                  derive_seed(config.seed, "outer-split"));

  // simulate every sensor once
  std::vector<SimulatedDataset> simulated(sensors.size());
  for (std::size_t s = 0; s < sensors.size(); ++s) {
    simulated[s] = simulate_dataset(dataset, sensors[s]);
    for (const auto& note : simulated[s].notes)
      result.notes.push_back(sensors[s].name + ": " + note);
  }

  std::vector<CellSpec> specs;
  for (std::size_t s = 0; s < sensors.size(); ++s) {
    const bool derivative_sensor =
        config.derivative_variants &&
        std::find(config.derivative_sensors.begin(), config.derivative_sensors.end(),
                  sensors[s].name) != config.derivative_sensors.end();
    for (ModelKind model : models) {
      specs.push_back({s, model, false});
      // the derivative study pairs rf and mars with the hyperspectral sensors
      if (derivative_sensor && (model == ModelKind::rf || model == ModelKind::mars))
        specs.push_back({s, model, true});
    }
  }

  result.cells.resize(specs.size());
  parallel_for(specs.size(), [&](std::size_t ci) {
    const CellSpec& spec = specs[ci];
    const SimulatedDataset& sim = simulated[spec.sensor_index];
    ExperimentCell& cell = result.cells[ci];
    cell.sensor = sim.sensor_name;
    cell.model = spec.model;
    cell.preprocessing = spec.derivative ? "deriv" : "bands";

    try {
      Matrix X = spec.derivative ? first_derivative(sim.features, sim.band_centers_nm)
                                 : sim.features;
      const std::vector<double>& y = sim.chl_a;

      Matrix X_train = take_rows(X, result.split.train_indices);
      Matrix X_test = take_rows(X, result.split.test_indices);
      std::vector<double> y_train = take(y, result.split.train_indices);
      std::vector<double> y_test = take(y, result.split.test_indices);

      const std::string cell_tag = cell.sensor + "/" +
                                   std::string(model_kind_name(spec.model)) + "/" +
                                   cell.preprocessing;
      const std::uint64_t cv_seed =
          derive_seed(config.seed, "cv", fnv1a64(cell_tag));
      const bool scale = model_needs_scaling(spec.model);

      GridSearchResult search =
          grid_search(grid_for(config, spec.model, X_train.cols()), X_train, y_train,
                      config.cv_folds, cv_seed, scale, config.grid_cap);
      cell.cv_table = std::move(search.table);
      cell.selected_params = cell.cv_table[search.best_index].params;

      RegressorConfig best = search.best;
      best.set_seed(derive_seed(config.seed, "final-fit", fnv1a64(cell_tag)));

      if (scale) {
        const ScalerParams scaler = fit_scaler(X_train);
        X_train = apply_scaler(scaler, X_train);
        X_test = apply_scaler(scaler, X_test);
      }
      const auto model = train(best, X_train, y_train);

      // the held-out subset is scored exactly once
      const auto pred = model->predict(X_test);
      cell.test_evaluations += 1;
      cell.metrics.mae = mae(y_test, pred);
      cell.metrics.r_squared = r_squared(y_test, pred);
      cell.metrics.n_test = y_test.size();
      cell.ok = true;
    } catch (const Error& e) {
      cell.ok = false;
      cell.error = e.what();
    }
  });

  for (const auto& cell : result.cells)
    if (!cell.ok)
      result.failures.push_back(cell.sensor + "/" +
                                std::string(model_kind_name(cell.model)) + "/" +
                                cell.preprocessing + ": " + cell.error);
  return result;
}

}  // namespace aquaspec
