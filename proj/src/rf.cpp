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

#include "aquaspec/rf.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "aquaspec/csv.hpp"
#include "aquaspec/parallel.hpp"
#include "aquaspec/rng.hpp"

namespace aquaspec {

double ForestModel::Tree::predict(const double* x) const {
  int node = 0;
  while (nodes[node].feature >= 0) {
    const Node& n = nodes[node];
    node = x[n.feature] <= n.threshold ? n.left : n.right;
  }
  return nodes[node].value;
}

double ForestModel::predict_row(const double* x) const {
  double sum = 0.0;
  for (const auto& t : trees_) sum += t.predict(x);
  return sum / static_cast<double>(trees_.size());
}

void ForestModel::serialize_body(std::ostream& out) const {
  out << "trees " << trees_.size() << "\n";
  for (const auto& t : trees_) {
    out << "tree " << t.nodes.size() << "\n";
    for (const auto& n : t.nodes)
      out << n.feature << " " << format_double_exact(n.threshold) << " " << n.left
          << " " << n.right << " " << format_double_exact(n.value) << "\n";
  }
}

namespace {

struct TreeBuilder {
  const Matrix& X;
  const std::vector<double>& y;
  std::size_t mtry;
  std::size_t min_leaf;
  Rng& rng;

  std::vector<std::uint32_t> samples;  // partitioned in place per node
  std::vector<ForestModel::Node>& nodes;
  std::vector<std::uint32_t> feature_pool;
  std::vector<std::pair<double, double>> scratch;  // (feature value, target)

  double node_mean(std::size_t begin, std::size_t end) const {
    double s = 0.0;
    for (std::size_t i = begin; i < end; ++i) s += y[samples[i]];
    return s / static_cast<double>(end - begin);
  }

  int make_leaf(std::size_t begin, std::size_t end) {
    nodes.push_back({-1, 0.0, -1, -1, node_mean(begin, end)});
    return static_cast<int>(nodes.size() - 1);
  }

  int build(std::size_t begin, std::size_t end) {
    const std::size_t size = end - begin;
    if (size < 2 * min_leaf || size < 2) return make_leaf(begin, end);

    bool pure = true;
    for (std::size_t i = begin + 1; i < end && pure; ++i)
      pure = y[samples[i]] == y[samples[begin]];
    if (pure) return make_leaf(begin, end);

    // draw mtry distinct candidate features
    const std::size_t p = X.cols();
    for (std::size_t i = 0; i < p; ++i) feature_pool[i] = static_cast<std::uint32_t>(i);
    const std::size_t tries = std::min(mtry, p);
    for (std::size_t i = 0; i < tries; ++i) {
      const std::size_t j = i + static_cast<std::size_t>(rng.below(p - i));
      std::swap(feature_pool[i], feature_pool[j]);
    }

    double best_gain = -1.0;
    int best_feature = -1;
    double best_threshold = 0.0;

    double total_sum = 0.0;
    for (std::size_t i = begin; i < end; ++i) total_sum += y[samples[i]];
    const double total_score = total_sum * total_sum / static_cast<double>(size);

    for (std::size_t fi = 0; fi < tries; ++fi) {
      const std::uint32_t f = feature_pool[fi];
      scratch.clear();
      for (std::size_t i = begin; i < end; ++i)
        scratch.emplace_back(X.at(samples[i], f), y[samples[i]]);
      std::sort(scratch.begin(), scratch.end());

      double left_sum = 0.0;
      for (std::size_t i = 0; i + 1 < size; ++i) {
        left_sum += scratch[i].second;
        if (scratch[i + 1].first <= scratch[i].first) continue;  // no gap
        const std::size_t n_left = i + 1;
        const std::size_t n_right = size - n_left;
        if (n_left < min_leaf || n_right < min_leaf) continue;
        const double right_sum = total_sum - left_sum;
        const double gain = left_sum * left_sum / static_cast<double>(n_left) +
                            right_sum * right_sum / static_cast<double>(n_right) -
                            total_score;
        const double threshold = (scratch[i].first + scratch[i + 1].first) / 2.0;
        const bool better =
            gain > best_gain ||
            (gain == best_gain && best_feature >= 0 &&
             (static_cast<int>(f) < best_feature ||
              (static_cast<int>(f) == best_feature && threshold < best_threshold)));
        if (better) {
          best_gain = gain;
          best_feature = static_cast<int>(f);
          best_threshold = threshold;
        }
      }
    }

    if (best_feature < 0 || best_gain <= 0.0) return make_leaf(begin, end);

    const auto mid_it = std::stable_partition(
        samples.begin() + static_cast<std::ptrdiff_t>(begin),
        samples.begin() + static_cast<std::ptrdiff_t>(end),
        [&](std::uint32_t s) {
          return X.at(s, static_cast<std::size_t>(best_feature)) <= best_threshold;
        });
    const std::size_t mid =
        static_cast<std::size_t>(mid_it - samples.begin());

    nodes.push_back({best_feature, best_threshold, -1, -1, 0.0});
    const int node_id = static_cast<int>(nodes.size() - 1);
    const int left = build(begin, mid);
    const int right = build(mid, end);
    nodes[node_id].left = left;
    nodes[node_id].right = right;
    return node_id;
  }
};

ForestModel::Tree build_tree(const Matrix& X, const std::vector<double>& y,
                             std::size_t mtry, std::size_t min_leaf, bool bootstrap,
                             std::uint64_t tree_seed) {
  Rng rng(tree_seed);
  const std::size_t n = X.rows();
  std::vector<std::uint32_t> samples(n);
  if (bootstrap) {
    for (auto& s : samples) s = static_cast<std::uint32_t>(rng.below(n));
    std::sort(samples.begin(), samples.end());
  } else {
    for (std::size_t i = 0; i < n; ++i) samples[i] = static_cast<std::uint32_t>(i);
  }

  ForestModel::Tree tree;
  TreeBuilder builder{X,  y,  mtry, min_leaf, rng, std::move(samples),
                      tree.nodes, {}, {}};
  builder.feature_pool.resize(X.cols());
  builder.scratch.reserve(n);
  builder.build(0, n);
  return tree;
}

}  // namespace

std::unique_ptr<ForestModel> train_rf(const RegressorConfig& config, const Matrix& X,
                                      const std::vector<double>& y) {
  const std::size_t n_trees = config.get_count("n_trees");
  const std::size_t min_leaf = config.get_count("min_leaf");
  const bool bootstrap = config.get("bootstrap") != 0.0;
  std::size_t mtry = config.get_count("mtry");
  if (mtry == 0)  // 0 = default regression rule, ceil(p / 3)
    mtry = (X.cols() + 2) / 3;
  mtry = std::max<std::size_t>(1, std::min(mtry, X.cols()));

  std::vector<ForestModel::Tree> trees(n_trees);
  // Each tree draws its own stream derived from the config seed, so results
  // do not depend on scheduling.
  parallel_for(n_trees, [&](std::size_t t) {
    trees[t] = build_tree(X, y, mtry, min_leaf, bootstrap,
                          derive_seed(config.seed(), "rf-tree", t));
  });
  return std::make_unique<ForestModel>(config, X.cols(), std::move(trees));
}

}  // namespace aquaspec
