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

#pragma once

#include "aquaspec/regressor.hpp"

namespace aquaspec {

// CART regression trees on bootstrap resamples; variance-reduction splits
// over mtry features sampled per split; prediction is the mean over trees.
// Split ties break to the lowest feature index, then the lowest threshold.
class ForestModel final : public FittedModel {
 public:
  struct Node {
    int feature = -1;  // -1 marks a leaf
    double threshold = 0.0;
    int left = -1;
    int right = -1;
    double value = 0.0;  // leaf mean
  };
  struct Tree {
    std::vector<Node> nodes;
    double predict(const double* x) const;
  };

  ForestModel(RegressorConfig config, std::size_t feature_width, std::vector<Tree> trees)
      : FittedModel(std::move(config), feature_width), trees_(std::move(trees)) {}

  ModelKind kind() const override { return ModelKind::rf; }
  const std::vector<Tree>& trees() const { return trees_; }

 protected:
  double predict_row(const double* x) const override;
  void serialize_body(std::ostream& out) const override;

 private:
  std::vector<Tree> trees_;
};

std::unique_ptr<ForestModel> train_rf(const RegressorConfig& config, const Matrix& X,
                                      const std::vector<double>& y);

}  // namespace aquaspec
