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

#include "aquaspec/rng.hpp"
#include "aquaspec/svr.hpp"
#include "aquaspec/tuning.hpp"

using namespace aquaspec;

namespace {

void make_data(std::size_t n, std::size_t p, std::uint64_t seed, double noise,
               Matrix& X, std::vector<double>& y) {
  Rng rng(seed);
  X = Matrix(n, p);
  y.assign(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < p; ++j) X.at(i, j) = rng.uniform(-1.0, 1.0);
    y[i] = std::sin(2.0 * X.at(i, 0)) + 0.5 * X.at(i, p - 1) + noise * rng.normal();
  }
}

RegressorConfig svr_config(double C, double gamma, double epsilon) {
  RegressorConfig config(ModelKind::svr);
  config.set("C", C);
  config.set("gamma", gamma);
  config.set("epsilon", epsilon);
  return config;
}

}  // namespace

TEST_CASE("svr satisfies the KKT conditions at convergence") {
  Matrix X;
  std::vector<double> y;
  for (const auto& [C, gamma, eps] :
       {std::tuple{10.0, 0.5, 0.1}, std::tuple{1.0, 1.0, 0.05}, std::tuple{100.0, 0.1, 0.2}}) {
    make_data(60, 3, 42, 0.1, X, y);
    const auto model = train_svr(svr_config(C, gamma, eps), X, y);
    CHECK(model->kkt_violation() >= 0.0);
    CHECK(model->kkt_violation() <= kSvrKktTolerance + 1e-9);
  }
}

TEST_CASE("a wide tube keeps every residual inside epsilon") {
  Matrix X;
  std::vector<double> y;
  make_data(40, 2, 7, 0.0, X, y);

  // epsilon chosen large enough that the tube can hold all residuals
  const double eps = 0.5;
  const auto model = train_svr(svr_config(100.0, 1.0, eps), X, y);
  const auto pred = model->predict(X);
  for (std::size_t i = 0; i < y.size(); ++i)
    CHECK(std::fabs(pred[i] - y[i]) <= eps + kSvrKktTolerance);
}

TEST_CASE("svr is deterministic and prediction is a pure function") {
  Matrix X;
  std::vector<double> y;
  make_data(50, 3, 9, 0.1, X, y);
  const auto a = train_svr(svr_config(10.0, 0.5, 0.1), X, y);
  const auto b = train_svr(svr_config(10.0, 0.5, 0.1), X, y);
  CHECK(a->predict(X) == b->predict(X));

  Matrix duplicated(2, 3);
  for (std::size_t j = 0; j < 3; ++j) {
    duplicated.at(0, j) = 0.25;
    duplicated.at(1, j) = 0.25;
  }
  const auto pred = a->predict(duplicated);
  CHECK(pred[0] == pred[1]);
}

TEST_CASE("row order only perturbs the solution within tolerance") {
  Matrix X;
  std::vector<double> y;
  make_data(40, 2, 13, 0.05, X, y);

  // reverse the rows
  Matrix Xr(X.rows(), X.cols());
  std::vector<double> yr(y.size());
  for (std::size_t i = 0; i < X.rows(); ++i) {
    yr[i] = y[X.rows() - 1 - i];
    for (std::size_t j = 0; j < X.cols(); ++j) Xr.at(i, j) = X.at(X.rows() - 1 - i, j);
  }

  const auto a = train_svr(svr_config(10.0, 0.5, 0.1), X, y);
  const auto b = train_svr(svr_config(10.0, 0.5, 0.1), Xr, yr);
  const auto pa = a->predict(X);
  const auto pb = b->predict(X);
  for (std::size_t i = 0; i < pa.size(); ++i)
    CHECK(std::fabs(pa[i] - pb[i]) < 5e-3);  // KKT tolerance scale
}

TEST_CASE("support vectors exclude zero duals") {
  Matrix X;
  std::vector<double> y;
  make_data(50, 2, 21, 0.0, X, y);
  // most points should sit strictly inside a generous tube
  const auto model = train_svr(svr_config(10.0, 0.5, 0.4), X, y);
  CHECK(model->support_vector_count() < X.rows());
  for (double beta : model->betas()) CHECK(beta != 0.0);
}

TEST_CASE("svr config validation") {
  RegressorConfig config(ModelKind::svr);
  CHECK_THROWS_AS(config.set("C", 0.0), ArgumentError);
  CHECK_THROWS_AS(config.set("gamma", -1.0), ArgumentError);
  CHECK_THROWS_AS(config.set("epsilon", -0.1), ArgumentError);
  config.set("epsilon", 0.0);  // zero tube is legal
  CHECK(config.get("epsilon") == 0.0);
}
