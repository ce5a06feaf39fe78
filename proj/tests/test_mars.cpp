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

#include "aquaspec/mars.hpp"
#include "aquaspec/rng.hpp"
#include "aquaspec/tuning.hpp"

using namespace aquaspec;

namespace {

RegressorConfig mars_config(double max_terms, double penalty) {
  RegressorConfig config(ModelKind::mars);
  config.set("max_terms", max_terms);
  config.set("gcv_penalty", penalty);
  config.set("max_knots", 0);  // all observed values
  return config;
}

}  // namespace

TEST_CASE("mars recovers a planted hinge") {
  Rng rng(1);
  const std::size_t n = 200;
  Matrix X(n, 1);
  std::vector<double> y(n);
  for (std::size_t i = 0; i < n; ++i) {
    X.at(i, 0) = rng.uniform(0.0, 1.0);
    y[i] = std::max(0.0, X.at(i, 0) - 0.5) + 1.0;
  }

  const auto model = train_mars(mars_config(11, 2), X, y);
  CHECK(r_squared(y, model->predict(X)) > 0.999);

  bool near_half = false;
  for (const auto& h : model->hinges())
    if (std::fabs(h.knot - 0.5) < 0.05) near_half = true;
  CHECK(near_half);

  CHECK(model->gcv() <= model->forward_gcv() + 1e-12);
  CHECK(model->term_count() <= 11);
}

TEST_CASE("mars fits an exact line through paired hinges") {
  Rng rng(2);
  const std::size_t n = 80;
  Matrix X(n, 2);
  std::vector<double> y(n);
  for (std::size_t i = 0; i < n; ++i) {
    X.at(i, 0) = rng.uniform(-1.0, 1.0);
    X.at(i, 1) = rng.uniform(-1.0, 1.0);
    y[i] = 3.0 * X.at(i, 0) + 2.0;
  }
  const auto model = train_mars(mars_config(11, 3), X, y);
  CHECK(r_squared(y, model->predict(X)) > 0.9999);
}

TEST_CASE("mars prunes a constant target to the intercept") {
  Rng rng(3);
  Matrix X(50, 2);
  std::vector<double> y(50, 4.25);
  for (std::size_t i = 0; i < 50; ++i)
    for (std::size_t j = 0; j < 2; ++j) X.at(i, j) = rng.uniform(0.0, 1.0);

  const auto model = train_mars(mars_config(11, 3), X, y);
  CHECK(model->term_count() == 1);
  CHECK(model->intercept() == doctest::Approx(4.25).epsilon(1e-9));
}

TEST_CASE("pruned GCV never exceeds the forward-pass GCV") {
  Rng rng(4);
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const std::size_t n = 90;
    Matrix X(n, 3);
    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < 3; ++j) X.at(i, j) = rng.uniform(0.0, 1.0);
      y[i] = std::sin(5.0 * X.at(i, 0)) + 0.3 * rng.normal();
    }
    const auto model = train_mars(mars_config(21, 3), X, y);
    CHECK(model->gcv() <= model->forward_gcv() + 1e-12);
    CHECK(model->term_count() <= 21);
  }
}

TEST_CASE("mars is deterministic and row-order stable within tolerance") {
  Rng rng(5);
  const std::size_t n = 60;
  Matrix X(n, 2);
  std::vector<double> y(n);
  for (std::size_t i = 0; i < n; ++i) {
    X.at(i, 0) = rng.uniform(0.0, 1.0);
    X.at(i, 1) = rng.uniform(0.0, 1.0);
    y[i] = std::max(0.0, X.at(i, 0) - 0.3) - 2.0 * std::max(0.0, 0.6 - X.at(i, 1)) +
           0.05 * rng.normal();
  }

  const auto a = train_mars(mars_config(11, 3), X, y);
  const auto b = train_mars(mars_config(11, 3), X, y);
  CHECK(a->predict(X) == b->predict(X));

  Matrix Xr(n, 2);
  std::vector<double> yr(n);
  for (std::size_t i = 0; i < n; ++i) {
    yr[i] = y[n - 1 - i];
    Xr.at(i, 0) = X.at(n - 1 - i, 0);
    Xr.at(i, 1) = X.at(n - 1 - i, 1);
  }
  const auto c = train_mars(mars_config(11, 3), Xr, yr);
  const auto pa = a->predict(X);
  const auto pc = c->predict(X);
  for (std::size_t i = 0; i < n; ++i) CHECK(std::fabs(pa[i] - pc[i]) < 1e-6);
}

TEST_CASE("max_knots thins the candidate set but keeps observed values") {
  Rng rng(6);
  const std::size_t n = 150;
  Matrix X(n, 1);
  std::vector<double> y(n);
  for (std::size_t i = 0; i < n; ++i) {
    X.at(i, 0) = rng.uniform(0.0, 1.0);
    y[i] = std::max(0.0, X.at(i, 0) - 0.5);
  }
  RegressorConfig config(ModelKind::mars);
  config.set("max_knots", 25);
  const auto model = train_mars(config, X, y);
  CHECK(r_squared(y, model->predict(X)) > 0.99);
  for (const auto& h : model->hinges()) {
    bool observed = false;
    for (std::size_t i = 0; i < n; ++i)
      if (X.at(i, 0) == h.knot) observed = true;
    CHECK(observed);
  }
}

TEST_CASE("mars config validation") {
  RegressorConfig config(ModelKind::mars);
  CHECK_THROWS_AS(config.set("max_terms", 0), ArgumentError);
  CHECK_THROWS_AS(config.set("gcv_penalty", -1.0), ArgumentError);
  CHECK(config.get_count("max_terms") == 21);
  CHECK(config.get("gcv_penalty") == 3.0);
}
