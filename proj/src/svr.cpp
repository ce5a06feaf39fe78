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

// Dual solver notes.  The problem is written over t = [alpha; alpha*] in
// [0, C]^{2n} with signs z = [+1...; -1...]:
//   min 1/2 t' Q t + p' t,   Q_ab = z_a z_b K(a mod n, b mod n),
//   p = [eps - y; eps + y],  subject to z' t = 0.
// Each step picks the maximal violating pair over (-z_i G_i) with
// G = Q t + p, solves the two-variable subproblem analytically and
// updates the gradient.  beta = alpha - alpha*, f(x) = sum beta_i k(x_i, x) + b.

#include "aquaspec/svr.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

#include "aquaspec/csv.hpp"
#include "aquaspec/kernels.hpp"

namespace aquaspec {

double SvrModel::predict_row(const double* x) const {
  const double gamma = config().get("gamma");
  double f = bias_;
  for (std::size_t i = 0; i < betas_.size(); ++i) {
    const double d2 = kernels::sqdist(support_vectors_.row(i), x, feature_width());
    f += betas_[i] * std::exp(-gamma * d2);
  }
  return f;
}

void SvrModel::serialize_body(std::ostream& out) const {
  out << "bias " << format_double_exact(bias_) << "\n";
  out << "support_vectors " << betas_.size() << "\n";
  for (std::size_t i = 0; i < betas_.size(); ++i) {
    out << format_double_exact(betas_[i]);
    for (std::size_t c = 0; c < feature_width(); ++c)
      out << " " << format_double_exact(support_vectors_.at(i, c));
    out << "\n";
  }
}

namespace {

struct SmoState {
  std::size_t n;
  double C;
  double eps;
  const Matrix& K;             // kernel matrix, n x n
  std::vector<double> t;       // 2n dual variables in [0, C]
  std::vector<double> g;       // gradient, 2n
  std::vector<double> linear;  // p, 2n

  double sign(std::size_t a) const { return a < n ? 1.0 : -1.0; }
  std::size_t base(std::size_t a) const { return a < n ? a : a - n; }
  double q(std::size_t a, std::size_t b) const {
    return sign(a) * sign(b) * K.at(base(a), base(b));
  }

  bool in_up_set(std::size_t a) const {
    return a < n ? t[a] < C : t[a] > 0.0;
  }
  bool in_low_set(std::size_t a) const {
    return a < n ? t[a] > 0.0 : t[a] < C;
  }

  double objective() const {
    double w = 0.0;
    for (std::size_t a = 0; a < 2 * n; ++a) w += t[a] * (g[a] + linear[a]);
    return w / 2.0;
  }
};

}  // namespace

std::unique_ptr<SvrModel> train_svr(const RegressorConfig& config, const Matrix& X,
                                    const std::vector<double>& y) {
  const std::size_t n = X.rows();
  const double C = config.get("C");
  const double gamma = config.get("gamma");
  const double eps = config.get("epsilon");

  Matrix K(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    K.at(i, i) = 1.0;
    for (std::size_t j = i + 1; j < n; ++j) {
      const double k = std::exp(-gamma * kernels::sqdist(X.row(i), X.row(j), X.cols()));
      K.at(i, j) = k;
      K.at(j, i) = k;
    }
  }

  SmoState s{n, C, eps, K, std::vector<double>(2 * n, 0.0),
             std::vector<double>(2 * n), std::vector<double>(2 * n)};
  for (std::size_t i = 0; i < n; ++i) {
    s.linear[i] = eps - y[i];
    s.linear[n + i] = eps + y[i];
  }
  s.g = s.linear;  // t = 0 initially, so G = p

  std::uint64_t updates = 0;
  for (;; ++updates) {
    // maximal violating pair on -z_i G_i
    double up_value = -std::numeric_limits<double>::infinity();
    double low_value = std::numeric_limits<double>::infinity();
    std::size_t i = 2 * n, j = 2 * n;
    for (std::size_t a = 0; a < 2 * n; ++a) {
      const double v = -s.sign(a) * s.g[a];
      if (s.in_up_set(a) && v > up_value) {
        up_value = v;
        i = a;
      }
      if (s.in_low_set(a) && v < low_value) {
        low_value = v;
        j = a;
      }
    }
    if (i >= 2 * n || j >= 2 * n || up_value - low_value < kSvrKktTolerance) break;
    if (updates >= kSvrMaxUpdates)
      throw ConvergenceError("svr dual solver hit its pairwise-update cap", updates,
                             s.objective());

    const double old_ti = s.t[i];
    const double old_tj = s.t[j];
    const double quad_raw = s.q(i, i) + s.q(j, j) - 2.0 * s.sign(i) * s.sign(j) * s.q(i, j);
    const double quad = quad_raw > 1e-12 ? quad_raw : 1e-12;

    if (s.sign(i) != s.sign(j)) {
      const double delta = (-s.g[i] - s.g[j]) / quad;
      const double diff = s.t[i] - s.t[j];
      s.t[i] += delta;
      s.t[j] += delta;
      if (diff > 0.0 && s.t[j] < 0.0) {
        s.t[j] = 0.0;
        s.t[i] = diff;
      } else if (diff <= 0.0 && s.t[i] < 0.0) {
        s.t[i] = 0.0;
        s.t[j] = -diff;
      }
      if (diff > 0.0) {
        if (s.t[i] > C) {
          s.t[i] = C;
          s.t[j] = C - diff;
        }
      } else {
        if (s.t[j] > C) {
          s.t[j] = C;
          s.t[i] = C + diff;
        }
      }
    } else {
      const double delta = (s.g[i] - s.g[j]) / quad;
      const double total = s.t[i] + s.t[j];
      s.t[i] -= delta;
      s.t[j] += delta;
      if (total > C) {
        if (s.t[i] > C) {
          s.t[i] = C;
          s.t[j] = total - C;
        } else if (s.t[j] > C) {
          s.t[j] = C;
          s.t[i] = total - C;
        }
      } else {
        if (s.t[j] < 0.0) {
          s.t[j] = 0.0;
          s.t[i] = total;
        } else if (s.t[i] < 0.0) {
          s.t[i] = 0.0;
          s.t[j] = total;
        }
      }
    }

    const double di = s.t[i] - old_ti;
    const double dj = s.t[j] - old_tj;
    if (di == 0.0 && dj == 0.0) {
      // numerically stuck pair; treat as converged to tolerance
      break;
    }
    const std::size_t bi = s.base(i), bj = s.base(j);
    const double zi_di = s.sign(i) * di;
    const double zj_dj = s.sign(j) * dj;
    const double* ki = K.row(bi);
    const double* kj = K.row(bj);
    for (std::size_t a = 0; a < n; ++a) {
      const double contrib = ki[a] * zi_di + kj[a] * zj_dj;
      s.g[a] += contrib;
      s.g[n + a] -= contrib;
    }
  }

  // bias from the bound interval on -z_i G_i
  double b_lo = -std::numeric_limits<double>::infinity();
  double b_hi = std::numeric_limits<double>::infinity();
  double free_sum = 0.0;
  std::size_t free_count = 0;
  for (std::size_t a = 0; a < 2 * n; ++a) {
    const double v = -s.sign(a) * s.g[a];
    if (s.t[a] > 0.0 && s.t[a] < C) {
      free_sum += v;
      ++free_count;
    }
    if (s.in_up_set(a)) b_lo = std::max(b_lo, v);
    if (s.in_low_set(a)) b_hi = std::min(b_hi, v);
  }
  double bias;
  if (free_count > 0)
    bias = free_sum / static_cast<double>(free_count);
  else if (std::isfinite(b_lo) && std::isfinite(b_hi))
    bias = (b_lo + b_hi) / 2.0;
  else
    bias = 0.0;

  // beta and the primal KKT diagnostic over all training points
  std::vector<double> beta(n);
  for (std::size_t a = 0; a < n; ++a) beta[a] = s.t[a] - s.t[n + a];

  double worst = 0.0;
  const double bound_tol = 1e-9 * C;
  for (std::size_t a = 0; a < n; ++a) {
    // f_i - b = sum_j beta_j K_aj = G_a - eps + y_a
    const double f = (s.g[a] - eps + y[a]) + bias;
    const double r = y[a] - f;
    double violation = 0.0;
    if (std::fabs(beta[a]) <= bound_tol)
      violation = std::max(0.0, std::fabs(r) - eps);
    else if (beta[a] >= C - bound_tol)
      violation = std::max(0.0, eps - r);
    else if (beta[a] > 0.0)
      violation = std::fabs(r - eps);
    else if (beta[a] <= -(C - bound_tol))
      violation = std::max(0.0, r + eps);
    else
      violation = std::fabs(r + eps);
    worst = std::max(worst, violation);
  }

  // keep only the support vectors
  std::size_t n_sv = 0;
  for (double b : beta)
    if (b != 0.0) ++n_sv;
  Matrix sv(n_sv, X.cols());
  std::vector<double> sv_beta;
  sv_beta.reserve(n_sv);
  for (std::size_t a = 0; a < n; ++a) {
    if (beta[a] == 0.0) continue;
    for (std::size_t c = 0; c < X.cols(); ++c) sv.at(sv_beta.size(), c) = X.at(a, c);
    sv_beta.push_back(beta[a]);
  }

  return std::make_unique<SvrModel>(config, X.cols(), std::move(sv), std::move(sv_beta),
                                    bias, worst);
}

}  // namespace aquaspec
