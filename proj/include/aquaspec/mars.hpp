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

// Additive (degree 1) multivariate adaptive regression splines: a forward
// pass adds hinge pairs max(0, x-t) / max(0, t-x) with knots at observed
// feature values, then a backward pass prunes terms minimizing GCV with
// the configured penalty.  Effective parameters for GCV:
// terms + penalty * (terms - 1) / 2.
class MarsModel final : public FittedModel {
 public:
  struct Hinge {
    std::size_t feature = 0;
    double knot = 0.0;
    int direction = +1;  // +1: max(0, x - knot); -1: max(0, knot - x)

    double eval(const double* x) const {
      const double v = direction > 0 ? x[feature] - knot : knot - x[feature];
      return v > 0.0 ? v : 0.0;
    }
  };

  MarsModel(RegressorConfig config, std::size_t feature_width, double intercept,
            std::vector<Hinge> hinges, std::vector<double> coefficients,
            double gcv, double forward_gcv)
      : FittedModel(std::move(config), feature_width),
        intercept_(intercept),
        hinges_(std::move(hinges)),
        coefficients_(std::move(coefficients)),
        gcv_(gcv),
        forward_gcv_(forward_gcv) {}

  ModelKind kind() const override { return ModelKind::mars; }

  double intercept() const { return intercept_; }
  const std::vector<Hinge>& hinges() const { return hinges_; }
  const std::vector<double>& coefficients() const { return coefficients_; }
  std::size_t term_count() const { return hinges_.size() + 1; }  // incl. intercept

  // GCV of the pruned model and of the full forward-pass model (negative
  // when unknown, e.g. after deserialization).
  double gcv() const { return gcv_; }
  double forward_gcv() const { return forward_gcv_; }

 protected:
  double predict_row(const double* x) const override;
  void serialize_body(std::ostream& out) const override;

 private:
  double intercept_;
  std::vector<Hinge> hinges_;
  std::vector<double> coefficients_;
  double gcv_;
  double forward_gcv_;
};

std::unique_ptr<MarsModel> train_mars(const RegressorConfig& config, const Matrix& X,
                                      const std::vector<double>& y);

}  // namespace aquaspec
