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

// The four regression models behind one contract: random forest, eps-SVR
// with RBF kernel, multivariate adaptive regression splines and a
// single-hidden-layer network.  Training is deterministic given
// (config, data, seed).

#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "aquaspec/matrix.hpp"

namespace aquaspec {

enum class ModelKind { rf, svr, mars, ann };

std::string_view model_kind_name(ModelKind k);
ModelKind model_kind_from_name(std::string_view name);

// Model kind, named hyperparameters and the training seed.  Integer-valued
// hyperparameters (tree counts, hidden units, ...) are stored as doubles
// and validated to be integral.
class RegressorConfig {
 public:
  RegressorConfig(ModelKind kind, std::uint64_t seed = 0);

  ModelKind kind() const { return kind_; }
  std::uint64_t seed() const { return seed_; }
  void set_seed(std::uint64_t s) { seed_ = s; }

  double get(const std::string& name) const;
  std::size_t get_count(const std::string& name) const;
  void set(const std::string& name, double value);  // validates name and range

  const std::map<std::string, double>& params() const { return params_; }
  std::string to_string() const;  // "kind{a=1;b=2}"

 private:
  ModelKind kind_;
  std::uint64_t seed_;
  std::map<std::string, double> params_;
};

// A trained model.  Immutable; predict is pure and thread-safe.
class FittedModel {
 public:
  virtual ~FittedModel() = default;

  virtual ModelKind kind() const = 0;
  const RegressorConfig& config() const { return config_; }
  std::size_t feature_width() const { return feature_width_; }

  // Throws ArgumentError when the feature width differs from training.
  std::vector<double> predict(const Matrix& X) const;
  double predict_one(const double* x) const;

  void serialize(std::ostream& out) const;

 protected:
  FittedModel(RegressorConfig config, std::size_t feature_width)
      : config_(std::move(config)), feature_width_(feature_width) {}

  virtual double predict_row(const double* x) const = 0;
  virtual void serialize_body(std::ostream& out) const = 0;

 private:
  RegressorConfig config_;
  std::size_t feature_width_;
};

// Requires rows(X) == len(y) >= 5 and finite entries.
std::unique_ptr<FittedModel> train(const RegressorConfig& config, const Matrix& X,
                                   const std::vector<double>& y);

// Versioned self-describing text format; stable within a major version.
void save_model(const FittedModel& model, const std::string& path);
std::unique_ptr<FittedModel> load_model(std::istream& in);
std::unique_ptr<FittedModel> load_model_file(const std::string& path);

}  // namespace aquaspec
