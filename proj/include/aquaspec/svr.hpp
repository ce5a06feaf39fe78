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

// eps-insensitive support vector regression with an RBF kernel
// k(a,b) = exp(-gamma ||a-b||^2).  The dual is solved by pairwise
// (maximal-violating-pair) updates to KKT tolerance 1e-3; hitting the
// update cap raises ConvergenceError instead of returning silently.
class SvrModel final : public FittedModel {
 public:
  SvrModel(RegressorConfig config, std::size_t feature_width, Matrix support_vectors,
           std::vector<double> betas, double bias, double kkt_violation)
      : FittedModel(std::move(config), feature_width),
        support_vectors_(std::move(support_vectors)),
        betas_(std::move(betas)),
        bias_(bias),
        kkt_violation_(kkt_violation) {}

  ModelKind kind() const override { return ModelKind::svr; }

  std::size_t support_vector_count() const { return betas_.size(); }
  const Matrix& support_vectors() const { return support_vectors_; }
  const std::vector<double>& betas() const { return betas_; }
  double bias() const { return bias_; }

  // Largest KKT violation over the training set at convergence
  // (negative when unknown, e.g. after deserialization).
  double kkt_violation() const { return kkt_violation_; }

 protected:
  double predict_row(const double* x) const override;
  void serialize_body(std::ostream& out) const override;

 private:
  Matrix support_vectors_;
  std::vector<double> betas_;  // alpha - alpha*, nonzero entries only
  double bias_;
  double kkt_violation_;
};

inline constexpr double kSvrKktTolerance = 1e-3;
inline constexpr std::uint64_t kSvrMaxUpdates = 1000000;

std::unique_ptr<SvrModel> train_svr(const RegressorConfig& config, const Matrix& X,
                                    const std::vector<double>& y);

}  // namespace aquaspec
