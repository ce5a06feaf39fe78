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

// One sigmoid hidden layer, linear output.  Loss is mean squared error on
// the internally [0,1]-scaled target plus weight_decay * ||w||^2 over all
// parameters (biases included).  Training is fixed-step gradient descent
// with step halving on loss increase; weights start from a seeded
// uniform(-0.5, 0.5) draw.
//
// Parameter layout within the flat weight vector:
//   [ hidden weights (h x p, row-major) | hidden biases (h) |
//     output weights (h) | output bias ]
class AnnModel final : public FittedModel {
 public:
  AnnModel(RegressorConfig config, std::size_t feature_width, std::size_t hidden,
           std::vector<double> weights, double y_offset, double y_scale,
           std::size_t accepted_iterations, double final_loss)
      : FittedModel(std::move(config), feature_width),
        hidden_(hidden),
        weights_(std::move(weights)),
        y_offset_(y_offset),
        y_scale_(y_scale),
        accepted_iterations_(accepted_iterations),
        final_loss_(final_loss) {}

  ModelKind kind() const override { return ModelKind::ann; }

  std::size_t hidden_units() const { return hidden_; }
  const std::vector<double>& weights() const { return weights_; }
  double final_loss() const { return final_loss_; }
  std::size_t accepted_iterations() const { return accepted_iterations_; }

 protected:
  double predict_row(const double* x) const override;
  void serialize_body(std::ostream& out) const override;

 private:
  std::size_t hidden_;
  std::vector<double> weights_;
  double y_offset_;  // prediction = raw * y_scale + y_offset
  double y_scale_;
  std::size_t accepted_iterations_;
  double final_loss_;
};

std::size_t ann_parameter_count(std::size_t inputs, std::size_t hidden);

// Loss (and optionally its gradient) of the network on already-scaled
// targets.  X may have zero rows, in which case only the decay term
// contributes.
double ann_loss(const Matrix& X, const std::vector<double>& y_scaled, std::size_t hidden,
                double decay, const std::vector<double>& weights,
                std::vector<double>* gradient);

// Max relative difference between the analytic gradient and central finite
// differences (step 1e-6) over all weights, at the seeded initial point of
// the given config.  Meant for small instances (<= 20 rows, <= 5 features).
double gradient_check(const RegressorConfig& config, const Matrix& X,
                      const std::vector<double>& y);

std::unique_ptr<AnnModel> train_ann(const RegressorConfig& config, const Matrix& X,
                                    const std::vector<double>& y);

}  // namespace aquaspec
