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

#include "aquaspec/ann.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "aquaspec/csv.hpp"
#include "aquaspec/kernels.hpp"
#include "aquaspec/rng.hpp"

namespace aquaspec {

namespace {

inline double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

struct Layout {
  std::size_t p;
  std::size_t h;
  std::size_t w1(std::size_t unit) const { return unit * p; }           // row start
  std::size_t b1(std::size_t unit) const { return h * p + unit; }       // hidden bias
  std::size_t w2(std::size_t unit) const { return h * p + h + unit; }   // output weight
  std::size_t b2() const { return h * p + 2 * h; }                      // output bias
  std::size_t count() const { return h * p + 2 * h + 1; }
};

double forward(const Layout& lay, const std::vector<double>& w, const double* x,
               double* hidden_out) {
  double out = w[lay.b2()];
  for (std::size_t k = 0; k < lay.h; ++k) {
    const double z = sigmoid(kernels::dot(&w[lay.w1(k)], x, lay.p) + w[lay.b1(k)]);
    if (hidden_out) hidden_out[k] = z;
    out += w[lay.w2(k)] * z;
  }
  return out;
}

}  // namespace

std::size_t ann_parameter_count(std::size_t inputs, std::size_t hidden) {
  return Layout{inputs, hidden}.count();
}

double ann_loss(const Matrix& X, const std::vector<double>& y_scaled, std::size_t hidden,
                double decay, const std::vector<double>& weights,
                std::vector<double>* gradient) {
  const Layout lay{X.cols(), hidden};
  if (weights.size() != lay.count())
    throw ArgumentError("weight vector has wrong size for this network shape");
  const std::size_t n = X.rows();

  if (gradient) gradient->assign(lay.count(), 0.0);

  double data_loss = 0.0;
  std::vector<double> z(lay.h);
  for (std::size_t i = 0; i < n; ++i) {
    const double* x = X.row(i);
    const double pred = forward(lay, weights, x, z.data());
    const double err = pred - y_scaled[i];
    data_loss += err * err;
    if (gradient) {
      auto& g = *gradient;
      const double e = 2.0 * err / static_cast<double>(n);
      g[lay.b2()] += e;
      for (std::size_t k = 0; k < lay.h; ++k) {
        g[lay.w2(k)] += e * z[k];
        const double back = e * weights[lay.w2(k)] * z[k] * (1.0 - z[k]);
        g[lay.b1(k)] += back;
        kernels::axpy(back, x, &(*gradient)[lay.w1(k)], lay.p);
      }
    }
  }
  if (n > 0) data_loss /= static_cast<double>(n);

  double decay_loss = 0.0;
  for (double w : weights) decay_loss += w * w;
  decay_loss *= decay;
  if (gradient)
    for (std::size_t j = 0; j < weights.size(); ++j)
      (*gradient)[j] += 2.0 * decay * weights[j];

  return data_loss + decay_loss;
}

double gradient_check(const RegressorConfig& config, const Matrix& X,
                      const std::vector<double>& y) {
  const std::size_t hidden = config.get_count("hidden_units");
  const double decay = config.get("weight_decay");

  // same target scaling as training
  double ymin = y.empty() ? 0.0 : *std::min_element(y.begin(), y.end());
  double ymax = y.empty() ? 0.0 : *std::max_element(y.begin(), y.end());
  const double scale = (ymax - ymin) > 0.0 ? (ymax - ymin) : 1.0;
  std::vector<double> y_scaled(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) y_scaled[i] = (y[i] - ymin) / scale;

  const Layout lay{X.cols(), hidden};
  Rng rng(derive_seed(config.seed(), "ann-init"));
  std::vector<double> w(lay.count());
  for (auto& v : w) v = rng.uniform(-0.5, 0.5);

  std::vector<double> analytic;
  ann_loss(X, y_scaled, hidden, decay, w, &analytic);

  const double step = 1e-6;
  double worst = 0.0;
  for (std::size_t j = 0; j < w.size(); ++j) {
    const double saved = w[j];
    w[j] = saved + step;
    const double lp = ann_loss(X, y_scaled, hidden, decay, w, nullptr);
    w[j] = saved - step;
    const double lm = ann_loss(X, y_scaled, hidden, decay, w, nullptr);
    w[j] = saved;
    const double fd = (lp - lm) / (2.0 * step);
    const double rel = std::fabs(analytic[j] - fd) /
                       std::max({1.0, std::fabs(analytic[j]), std::fabs(fd)});
    worst = std::max(worst, rel);
  }
  return worst;
}

double AnnModel::predict_row(const double* x) const {
  const Layout lay{feature_width(), hidden_};
  return forward(lay, weights_, x, nullptr) * y_scale_ + y_offset_;
}

void AnnModel::serialize_body(std::ostream& out) const {
  out << "hidden " << hidden_ << "\n";
  out << "y_offset " << format_double_exact(y_offset_) << "\n";
  out << "y_scale " << format_double_exact(y_scale_) << "\n";
  out << "weights " << weights_.size() << "\n";
  for (double w : weights_) out << format_double_exact(w) << "\n";
}

std::unique_ptr<AnnModel> train_ann(const RegressorConfig& config, const Matrix& X,
                                    const std::vector<double>& y) {
  const std::size_t hidden = config.get_count("hidden_units");
  const double decay = config.get("weight_decay");
  const std::size_t max_iterations = config.get_count("max_iterations");
  double lr = config.get("learning_rate");

  const double ymin = *std::min_element(y.begin(), y.end());
  const double ymax = *std::max_element(y.begin(), y.end());
  const double scale = (ymax - ymin) > 0.0 ? (ymax - ymin) : 1.0;
  std::vector<double> y_scaled(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) y_scaled[i] = (y[i] - ymin) / scale;

  const Layout lay{X.cols(), hidden};
  Rng rng(derive_seed(config.seed(), "ann-init"));
  std::vector<double> w(lay.count());
  for (auto& v : w) v = rng.uniform(-0.5, 0.5);

  std::vector<double> gradient;
  double loss = ann_loss(X, y_scaled, hidden, decay, w, &gradient);
  if (!std::isfinite(loss))
    throw ConvergenceError("ann training started from a non-finite loss", 0, loss);

  std::vector<double> trial(w.size());
  std::vector<double> trial_gradient;
  std::size_t accepted = 0;
  for (std::size_t iter = 0; iter < max_iterations; ++iter) {
    for (std::size_t j = 0; j < w.size(); ++j) trial[j] = w[j] - lr * gradient[j];
    const double trial_loss = ann_loss(X, y_scaled, hidden, decay, trial, &trial_gradient);
    if (std::isfinite(trial_loss) && trial_loss <= loss) {
      w.swap(trial);
      gradient.swap(trial_gradient);
      loss = trial_loss;
      ++accepted;
    } else {
      if (!std::isfinite(trial_loss))
        lr /= 16.0;  // back far away from the overflow region
      else
        lr /= 2.0;
      if (lr < 1e-15) break;  // cannot improve further at double precision
    }
  }

  return std::make_unique<AnnModel>(config, X.cols(), hidden, std::move(w), ymin, scale,
                                    accepted, loss);
}

}  // namespace aquaspec
