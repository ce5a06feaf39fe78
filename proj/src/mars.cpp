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

#include "aquaspec/mars.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

#include "aquaspec/csv.hpp"
#include "aquaspec/kernels.hpp"

namespace aquaspec {

double MarsModel::predict_row(const double* x) const {
  double v = intercept_;
  for (std::size_t i = 0; i < hinges_.size(); ++i) v += coefficients_[i] * hinges_[i].eval(x);
  return v;
}

void MarsModel::serialize_body(std::ostream& out) const {
  out << "intercept " << format_double_exact(intercept_) << "\n";
  out << "hinges " << hinges_.size() << "\n";
  for (std::size_t i = 0; i < hinges_.size(); ++i)
    out << hinges_[i].feature << " " << format_double_exact(hinges_[i].knot) << " "
        << hinges_[i].direction << " " << format_double_exact(coefficients_[i]) << "\n";
}

namespace {

using Hinge = MarsModel::Hinge;

// Least squares through the normal equations with a tiny relative ridge;
// basis sizes here stay small (max_terms) so this is both fast and stable
// enough.  Returns the SSE.
double least_squares(const std::vector<const double*>& columns, std::size_t n,
                     const std::vector<double>& y, std::vector<double>& coef) {
  const std::size_t m = columns.size();
  Matrix normal(m, m);
  std::vector<double> rhs(m);
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = a; b < m; ++b) {
      const double v = kernels::dot(columns[a], columns[b], n);
      normal.at(a, b) = v;
      normal.at(b, a) = v;
    }
    rhs[a] = kernels::dot(columns[a], y.data(), n);
  }
  double trace = 0.0;
  for (std::size_t a = 0; a < m; ++a) trace += normal.at(a, a);
  const double ridge = 1e-12 * (trace / static_cast<double>(m) + 1.0);
  for (std::size_t a = 0; a < m; ++a) normal.at(a, a) += ridge;

  // Cholesky factorization
  Matrix chol = normal;
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = 0; b <= a; ++b) {
      double s = chol.at(a, b);
      for (std::size_t k = 0; k < b; ++k) s -= chol.at(a, k) * chol.at(b, k);
      if (a == b) {
        if (s <= 0.0) s = 1e-30;
        chol.at(a, a) = std::sqrt(s);
      } else {
        chol.at(a, b) = s / chol.at(b, b);
      }
    }
  }
  coef.assign(m, 0.0);
  // forward then backward substitution
  for (std::size_t a = 0; a < m; ++a) {
    double s = rhs[a];
    for (std::size_t k = 0; k < a; ++k) s -= chol.at(a, k) * coef[k];
    coef[a] = s / chol.at(a, a);
  }
  for (std::size_t a = m; a-- > 0;) {
    double s = coef[a];
    for (std::size_t k = a + 1; k < m; ++k) s -= chol.at(k, a) * coef[k];
    coef[a] = s / chol.at(a, a);
  }

  double sse = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double fit = 0.0;
    for (std::size_t a = 0; a < m; ++a) fit += coef[a] * columns[a][i];
    const double r = y[i] - fit;
    sse += r * r;
  }
  return sse;
}

double gcv_of(double sse, std::size_t n, std::size_t terms, double penalty) {
  const double eff =
      static_cast<double>(terms) + penalty * (static_cast<double>(terms) - 1.0) / 2.0;
  const double denom = 1.0 - eff / static_cast<double>(n);
  if (denom <= 0.0) return std::numeric_limits<double>::infinity();
  return (sse / static_cast<double>(n)) / (denom * denom);
}

// Candidate knots per feature: distinct observed values, quantile-thinned
// to at most max_knots (0 keeps all).
std::vector<double> candidate_knots(const Matrix& X, std::size_t feature,
                                    std::size_t max_knots) {
  std::vector<double> values = X.column(feature);
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  if (max_knots == 0 || values.size() <= max_knots) return values;
  std::vector<double> thinned;
  thinned.reserve(max_knots);
  const std::size_t m = values.size();
  for (std::size_t k = 0; k < max_knots; ++k) {
    const std::size_t idx = (k * (m - 1)) / (max_knots - 1);
    thinned.push_back(values[idx]);
  }
  thinned.erase(std::unique(thinned.begin(), thinned.end()), thinned.end());
  return thinned;
}

struct ForwardPass {
  const Matrix& X;
  const std::vector<double>& y;
  std::size_t n;

  // orthonormal basis of the current model span (rows of length n)
  std::vector<std::vector<double>> q;
  std::vector<double> residual;
  std::vector<Hinge> hinges;

  // Projects v onto the orthogonal complement of the current basis.
  void project_out(std::vector<double>& v) const {
    for (const auto& qk : q) {
      const double c = kernels::dot(qk.data(), v.data(), n);
      kernels::axpy(-c, qk.data(), v.data(), n);
    }
  }

  // Appends v/|v| to the basis and removes its component from the residual.
  // Returns false when v is numerically inside the span.
  bool absorb(std::vector<double> v) {
    project_out(v);
    const double norm2 = kernels::dot(v.data(), v.data(), n);
    if (norm2 <= 1e-10 * static_cast<double>(n)) return false;
    const double inv = 1.0 / std::sqrt(norm2);
    for (auto& x : v) x *= inv;
    const double c = kernels::dot(v.data(), residual.data(), n);
    kernels::axpy(-c, v.data(), residual.data(), n);
    q.push_back(std::move(v));
    return true;
  }
};

std::vector<double> hinge_column(const Matrix& X, const Hinge& h) {
  std::vector<double> col(X.rows());
  for (std::size_t i = 0; i < X.rows(); ++i) col[i] = h.eval(X.row(i));
  return col;
}

}  // namespace

std::unique_ptr<MarsModel> train_mars(const RegressorConfig& config, const Matrix& X,
                                      const std::vector<double>& y) {
  const std::size_t n = X.rows();
  const std::size_t p = X.cols();
  const std::size_t max_terms = std::max<std::size_t>(1, config.get_count("max_terms"));
  const double penalty = config.get("gcv_penalty");
  const std::size_t max_knots = config.get_count("max_knots");

  ForwardPass fwd{X, y, n, {}, y, {}};
  fwd.q.reserve(max_terms);
  fwd.absorb(std::vector<double>(n, 1.0));  // intercept

  std::vector<std::vector<double>> knots_per_feature(p);
  for (std::size_t f = 0; f < p; ++f)
    knots_per_feature[f] = candidate_knots(X, f, max_knots);

  // scratch buffers for candidate evaluation
  std::vector<double> u, w;

  while (fwd.hinges.size() + 1 + 2 <= max_terms) {
    double best_reduction = 0.0;
    std::size_t best_feature = 0;
    double best_knot = 0.0;
    bool found = false;

    for (std::size_t f = 0; f < p; ++f) {
      for (double knot : knots_per_feature[f]) {
        const Hinge plus{f, knot, +1};
        const Hinge minus{f, knot, -1};
        u = hinge_column(X, plus);
        w = hinge_column(X, minus);
        fwd.project_out(u);
        fwd.project_out(w);

        const double uu = kernels::dot(u.data(), u.data(), n);
        const double ww = kernels::dot(w.data(), w.data(), n);
        const double uw = kernels::dot(u.data(), w.data(), n);
        const double ur = kernels::dot(u.data(), fwd.residual.data(), n);
        const double wr = kernels::dot(w.data(), fwd.residual.data(), n);
        const double tiny = 1e-10 * static_cast<double>(n);

        // SSE reduction from adding the (projected) pair; degenerate
        // columns fall back to the single usable hinge.
        double reduction = 0.0;
        if (uu > tiny && ww > tiny) {
          const double det = uu * ww - uw * uw;
          if (det > 1e-12 * uu * ww) {
            const double cu = (ww * ur - uw * wr) / det;
            const double cw = (uu * wr - uw * ur) / det;
            reduction = cu * ur + cw * wr;
          } else {
            reduction = std::max(ur * ur / uu, wr * wr / ww);
          }
        } else if (uu > tiny) {
          reduction = ur * ur / uu;
        } else if (ww > tiny) {
          reduction = wr * wr / ww;
        } else {
          continue;
        }
        // canonical order (feature asc, knot asc) + strict improvement
        // makes the choice deterministic
        if (reduction > best_reduction * (1.0 + 1e-12) && reduction > 1e-12) {
          best_reduction = reduction;
          best_feature = f;
          best_knot = knot;
          found = true;
        }
      }
    }

    if (!found) break;

    const Hinge plus{best_feature, best_knot, +1};
    const Hinge minus{best_feature, best_knot, -1};
    const std::size_t before = fwd.hinges.size();
    if (fwd.absorb(hinge_column(X, plus))) fwd.hinges.push_back(plus);
    if (fwd.hinges.size() + 1 < max_terms && fwd.absorb(hinge_column(X, minus)))
      fwd.hinges.push_back(minus);
    if (fwd.hinges.size() == before) break;  // numerically in span; stop
  }

  // exact coefficients of the full forward model
  const std::size_t m_full = fwd.hinges.size() + 1;
  std::vector<std::vector<double>> basis;
  basis.reserve(m_full);
  basis.emplace_back(n, 1.0);
  for (const auto& h : fwd.hinges) basis.push_back(hinge_column(X, h));

  auto subset_fit = [&](const std::vector<std::size_t>& keep, std::vector<double>& coef) {
    std::vector<const double*> cols;
    cols.reserve(keep.size() + 1);
    cols.push_back(basis[0].data());
    for (std::size_t k : keep) cols.push_back(basis[k + 1].data());
    return least_squares(cols, n, y, coef);
  };

  std::vector<std::size_t> current(fwd.hinges.size());
  for (std::size_t i = 0; i < current.size(); ++i) current[i] = i;

  std::vector<double> coef;
  double sse = subset_fit(current, coef);
  const double full_gcv = gcv_of(sse, n, current.size() + 1, penalty);

  std::vector<std::size_t> best_subset = current;
  double best_gcv = full_gcv;

  // backward pruning: drop the term whose removal minimizes GCV, keep the
  // best subset seen; ties prefer fewer terms
  while (!current.empty()) {
    double step_best_gcv = std::numeric_limits<double>::infinity();
    std::size_t step_best_drop = 0;
    for (std::size_t d = 0; d < current.size(); ++d) {
      std::vector<std::size_t> trial = current;
      trial.erase(trial.begin() + static_cast<std::ptrdiff_t>(d));
      std::vector<double> trial_coef;
      const double trial_sse = subset_fit(trial, trial_coef);
      const double trial_gcv = gcv_of(trial_sse, n, trial.size() + 1, penalty);
      if (trial_gcv < step_best_gcv) {
        step_best_gcv = trial_gcv;
        step_best_drop = d;
      }
    }
    current.erase(current.begin() + static_cast<std::ptrdiff_t>(step_best_drop));
    if (step_best_gcv <= best_gcv) {
      best_gcv = step_best_gcv;
      best_subset = current;
    }
  }

  sse = subset_fit(best_subset, coef);
  std::vector<Hinge> hinges;
  hinges.reserve(best_subset.size());
  for (std::size_t k : best_subset) hinges.push_back(fwd.hinges[k]);
  const double intercept = coef[0];
  coef.erase(coef.begin());

  return std::make_unique<MarsModel>(config, p, intercept, std::move(hinges),
                                     std::move(coef), best_gcv, full_gcv);
}

}  // namespace aquaspec
