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

#include "aquaspec/ann.hpp"
#include "aquaspec/rng.hpp"
#include "aquaspec/tuning.hpp"

using namespace aquaspec;

namespace {

void tiny_instance(std::uint64_t seed, Matrix& X, std::vector<double>& y) {
  Rng rng(seed);
  const std::size_t n = 4 + seed % 16;   // <= 20 rows
  const std::size_t p = 1 + seed % 5;    // <= 5 features
  X = Matrix(n, p);
  y.assign(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < p; ++j) X.at(i, j) = rng.uniform(-1.0, 1.0);
    y[i] = rng.uniform(0.0, 10.0);
  }
}

}  // namespace

TEST_CASE("analytic gradient matches central finite differences") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    Matrix X;
    std::vector<double> y;
    tiny_instance(seed, X, y);
    RegressorConfig config(ModelKind::ann, seed);
    config.set("hidden_units", static_cast<double>(1 + seed % 4));
    config.set("weight_decay", 1e-3);
    CHECK(gradient_check(config, X, y) < 1e-4);
  }
}

TEST_CASE("decay-only objective has gradient 2*decay*w") {
  const Matrix empty(0, 3);
  const std::vector<double> no_targets;
  const double decay = 0.25;

  std::vector<double> w(ann_parameter_count(3, 2));
  Rng rng(5);
  for (auto& v : w) v = rng.uniform(-1.0, 1.0);

  std::vector<double> gradient;
  const double loss = ann_loss(empty, no_targets, 2, decay, w, &gradient);

  double expected_loss = 0.0;
  for (double v : w) expected_loss += v * v;
  expected_loss *= decay;
  CHECK(loss == doctest::Approx(expected_loss).epsilon(1e-15));
  for (std::size_t j = 0; j < w.size(); ++j) CHECK(gradient[j] == 2.0 * decay * w[j]);

  // zero weights: the decay gradient vanishes exactly
  std::vector<double> zeros(w.size(), 0.0);
  ann_loss(empty, no_targets, 2, decay, zeros, &gradient);
  for (double g : gradient) CHECK(g == 0.0);
}

TEST_CASE("a one-unit network learns a constant target") {
  Matrix X(10, 2);
  Rng rng(6);
  for (std::size_t i = 0; i < 10; ++i)
    for (std::size_t j = 0; j < 2; ++j) X.at(i, j) = rng.uniform(-1.0, 1.0);
  const std::vector<double> y(10, 8.5);

  RegressorConfig config(ModelKind::ann, 3);
  config.set("hidden_units", 1);
  config.set("weight_decay", 1e-4);
  const auto model = train_ann(config, X, y);
  for (double pred : model->predict(X)) CHECK(std::fabs(pred - 8.5) < 0.05);
}

TEST_CASE("loss never increases over accepted iterations") {
  Matrix X;
  std::vector<double> y;
  tiny_instance(3, X, y);

  RegressorConfig config(ModelKind::ann, 17);
  config.set("hidden_units", 3);
  const auto model = train_ann(config, X, y);

  // reconstruct the seeded starting point and its loss
  const double ymin = *std::min_element(y.begin(), y.end());
  const double ymax = *std::max_element(y.begin(), y.end());
  std::vector<double> y_scaled(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) y_scaled[i] = (y[i] - ymin) / (ymax - ymin);
  Rng rng(derive_seed(17, "ann-init"));
  std::vector<double> w0(ann_parameter_count(X.cols(), 3));
  for (auto& v : w0) v = rng.uniform(-0.5, 0.5);
  const double initial = ann_loss(X, y_scaled, 3, config.get("weight_decay"), w0, nullptr);

  CHECK(model->final_loss() <= initial);
  CHECK(model->accepted_iterations() > 0);
  const double final_recomputed =
      ann_loss(X, y_scaled, 3, config.get("weight_decay"), model->weights(), nullptr);
  CHECK(model->final_loss() == doctest::Approx(final_recomputed).epsilon(1e-12));
}

TEST_CASE("ann fits a smooth one-dimensional function") {
  Rng rng(8);
  const std::size_t n = 80;
  Matrix X(n, 1);
  std::vector<double> y(n);
  for (std::size_t i = 0; i < n; ++i) {
    X.at(i, 0) = rng.uniform(-1.0, 1.0);
    y[i] = 5.0 + 4.0 * std::tanh(2.0 * X.at(i, 0));
  }
  RegressorConfig config(ModelKind::ann, 4);
  config.set("hidden_units", 5);
  config.set("weight_decay", 1e-4);
  config.set("max_iterations", 3000);
  const auto model = train_ann(config, X, y);
  CHECK(r_squared(y, model->predict(X)) > 0.95);
}

TEST_CASE("training is deterministic in the seed") {
  Matrix X;
  std::vector<double> y;
  tiny_instance(9, X, y);
  RegressorConfig config(ModelKind::ann, 21);
  const auto a = train_ann(config, X, y);
  const auto b = train_ann(config, X, y);
  CHECK(a->weights() == b->weights());
  CHECK(a->predict(X) == b->predict(X));
}

TEST_CASE("predict rejects a mismatched feature width") {
  Matrix X;
  std::vector<double> y;
  tiny_instance(12, X, y);
  RegressorConfig config(ModelKind::ann, 2);
  const auto model = train_ann(config, X, y);
  Matrix wrong(2, X.cols() + 1, 0.0);
  CHECK_THROWS_AS(model->predict(wrong), ArgumentError);
}

TEST_CASE("ann config validation") {
  RegressorConfig config(ModelKind::ann);
  CHECK_THROWS_AS(config.set("hidden_units", 0), ArgumentError);
  CHECK_THROWS_AS(config.set("learning_rate", 0.0), ArgumentError);
  CHECK_THROWS_AS(config.set("weight_decay", -1e-4), ArgumentError);
  CHECK(config.get_count("max_iterations") == 2000);
}
