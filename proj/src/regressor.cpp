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

#include "aquaspec/regressor.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include "aquaspec/ann.hpp"
#include "aquaspec/csv.hpp"
#include "aquaspec/mars.hpp"
#include "aquaspec/rf.hpp"
#include "aquaspec/svr.hpp"
#include "aquaspec/version.hpp"

namespace aquaspec {

std::string_view model_kind_name(ModelKind k) {
  switch (k) {
    case ModelKind::rf: return "rf";
    case ModelKind::svr: return "svr";
    case ModelKind::mars: return "mars";
    case ModelKind::ann: return "ann";
  }
  return "rf";
}

ModelKind model_kind_from_name(std::string_view name) {
  if (name == "rf") return ModelKind::rf;
  if (name == "svr" || name == "svm") return ModelKind::svr;
  if (name == "mars") return ModelKind::mars;
  if (name == "ann") return ModelKind::ann;
  throw ArgumentError("unknown model kind: '" + std::string(name) +
                      "' (expected rf, svr, mars or ann)");
}

namespace {

struct ParamSpec {
  const char* name;
  double def;
  double min;
  double max;
  bool min_exclusive;
  bool integral;
};

// clang-format off
const ParamSpec kRfParams[] = {
    {"n_trees",  200, 1, 1e6, false, true},
    {"mtry",       0, 0, 1e6, false, true},   // 0 = ceil(p/3) at train time
    {"min_leaf",   1, 1, 1e6, false, true},
    {"bootstrap",  1, 0, 1,   false, true},
};
const ParamSpec kSvrParams[] = {
    {"C",       1.0, 0, 1e12, true,  false},
    {"gamma",   0.1, 0, 1e12, true,  false},
    {"epsilon", 0.1, 0, 1e12, false, false},
};
const ParamSpec kMarsParams[] = {
    {"max_terms",    21, 1, 1000, false, true},
    {"gcv_penalty",   3, 0, 100,  false, false},
    {"max_knots",   101, 0, 1e9,  false, true},  // 0 = all observed values
};
const ParamSpec kAnnParams[] = {
    {"hidden_units",     5, 1, 1e4, false, true},
    {"weight_decay",  1e-4, 0, 1e6, false, false},
    {"max_iterations", 2000, 1, 1e9, false, true},
    {"learning_rate",   0.1, 0, 1e6, true,  false},
};
// clang-format on

std::pair<const ParamSpec*, std::size_t> param_table(ModelKind kind) {
  switch (kind) {
    case ModelKind::rf: return {kRfParams, std::size(kRfParams)};
    case ModelKind::svr: return {kSvrParams, std::size(kSvrParams)};
    case ModelKind::mars: return {kMarsParams, std::size(kMarsParams)};
    case ModelKind::ann: return {kAnnParams, std::size(kAnnParams)};
  }
  return {kRfParams, 0};
}

const ParamSpec& find_param(ModelKind kind, const std::string& name) {
  auto [table, count] = param_table(kind);
  for (std::size_t i = 0; i < count; ++i)
    if (name == table[i].name) return table[i];
  throw ArgumentError("model '" + std::string(model_kind_name(kind)) +
                      "' has no hyperparameter '" + name + "'");
}

}  // namespace

RegressorConfig::RegressorConfig(ModelKind kind, std::uint64_t seed)
    : kind_(kind), seed_(seed) {
  auto [table, count] = param_table(kind);
  for (std::size_t i = 0; i < count; ++i) params_[table[i].name] = table[i].def;
}

double RegressorConfig::get(const std::string& name) const {
  const auto it = params_.find(name);
  if (it == params_.end())
    throw ArgumentError("model '" + std::string(model_kind_name(kind_)) +
                        "' has no hyperparameter '" + name + "'");
  return it->second;
}

std::size_t RegressorConfig::get_count(const std::string& name) const {
  return static_cast<std::size_t>(get(name));
}

void RegressorConfig::set(const std::string& name, double value) {
  const ParamSpec& spec = find_param(kind_, name);
  if (!std::isfinite(value) || value > spec.max || value < spec.min ||
      (spec.min_exclusive && value == spec.min))
    throw ArgumentError("hyperparameter '" + name + "' value " +
                        format_double(value) + " outside its valid range");
  if (spec.integral && value != std::floor(value))
    throw ArgumentError("hyperparameter '" + name + "' must be an integer");
  params_[name] = value;
}

std::string RegressorConfig::to_string() const {
  std::string out(model_kind_name(kind_));
  out += "{";
  bool first = true;
  for (const auto& [name, value] : params_) {
    if (!first) out += ";";
    first = false;
    out += name + "=" + format_double(value);
  }
  out += "}";
  return out;
}

std::vector<double> FittedModel::predict(const Matrix& X) const {
  if (X.cols() != feature_width_)
    throw ArgumentError("predict got " + std::to_string(X.cols()) +
                        " features, model was trained with " +
                        std::to_string(feature_width_));
  std::vector<double> out(X.rows());
  for (std::size_t i = 0; i < X.rows(); ++i) out[i] = predict_row(X.row(i));
  return out;
}

double FittedModel::predict_one(const double* x) const { return predict_row(x); }

std::unique_ptr<FittedModel> train(const RegressorConfig& config, const Matrix& X,
                                   const std::vector<double>& y) {
  if (X.rows() != y.size())
    throw ArgumentError("feature rows (" + std::to_string(X.rows()) +
                        ") and target length (" + std::to_string(y.size()) +
                        ") differ");
  if (X.rows() < 5) throw ArgumentError("training needs at least 5 rows");
  if (X.cols() == 0) throw ArgumentError("training needs at least 1 feature");
  for (std::size_t r = 0; r < X.rows(); ++r) {
    const double* row = X.row(r);
    for (std::size_t c = 0; c < X.cols(); ++c)
      if (!std::isfinite(row[c]))
        throw ArgumentError("non-finite feature at row " + std::to_string(r));
    if (!std::isfinite(y[r]))
      throw ArgumentError("non-finite target at row " + std::to_string(r));
  }

  switch (config.kind()) {
    case ModelKind::rf: return train_rf(config, X, y);
    case ModelKind::svr: return train_svr(config, X, y);
    case ModelKind::mars: return train_mars(config, X, y);
    case ModelKind::ann: return train_ann(config, X, y);
  }
  throw ArgumentError("unknown model kind");
}

// --- serialization --------------------------------------------------------

void FittedModel::serialize(std::ostream& out) const {
  out << "aquaspec-model v" << AQUASPEC_MODEL_FORMAT_VERSION << "\n";
  out << "kind " << model_kind_name(kind()) << "\n";
  out << "seed " << config_.seed() << "\n";
  out << "feature_width " << feature_width_ << "\n";
  for (const auto& [name, value] : config_.params())
    out << "param " << name << " " << format_double_exact(value) << "\n";
  out << "body\n";
  serialize_body(out);
  out << "end\n";
}

void save_model(const FittedModel& model, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write model file: " + path);
  model.serialize(out);
}

namespace {

// whitespace-delimited token stream with token-positioned errors
struct TokenReader {
  std::istream& in;
  std::size_t count = 0;

  std::string next() {
    std::string token;
    if (!(in >> token))
      throw ValidationError("model file truncated after token " + std::to_string(count));
    ++count;
    return token;
  }
  double next_double() {
    const std::string t = next();
    return parse_double(t, "model", count);
  }
  std::int64_t next_int() {
    const std::string t = next();
    try {
      return static_cast<std::int64_t>(std::stoll(t));
    } catch (...) {
      throw ValidationError("expected integer in model file, got '" + t + "'");
    }
  }
  void expect(std::string_view literal) {
    const std::string t = next();
    if (t != literal)
      throw ValidationError("model file: expected '" + std::string(literal) +
                            "', got '" + t + "'");
  }
};

std::unique_ptr<FittedModel> load_rf(TokenReader& r, RegressorConfig config,
                                     std::size_t width) {
  r.expect("trees");
  const auto n_trees = static_cast<std::size_t>(r.next_int());
  std::vector<ForestModel::Tree> trees(n_trees);
  for (auto& tree : trees) {
    r.expect("tree");
    const auto n_nodes = static_cast<std::size_t>(r.next_int());
    tree.nodes.resize(n_nodes);
    for (auto& node : tree.nodes) {
      node.feature = static_cast<int>(r.next_int());
      node.threshold = r.next_double();
      node.left = static_cast<int>(r.next_int());
      node.right = static_cast<int>(r.next_int());
      node.value = r.next_double();
    }
  }
  return std::make_unique<ForestModel>(std::move(config), width, std::move(trees));
}

std::unique_ptr<FittedModel> load_svr(TokenReader& r, RegressorConfig config,
                                      std::size_t width) {
  r.expect("bias");
  const double bias = r.next_double();
  r.expect("support_vectors");
  const auto n_sv = static_cast<std::size_t>(r.next_int());
  Matrix sv(n_sv, width);
  std::vector<double> betas(n_sv);
  for (std::size_t i = 0; i < n_sv; ++i) {
    betas[i] = r.next_double();
    for (std::size_t c = 0; c < width; ++c) sv.at(i, c) = r.next_double();
  }
  return std::make_unique<SvrModel>(std::move(config), width, std::move(sv),
                                    std::move(betas), bias, -1.0);
}

std::unique_ptr<FittedModel> load_mars(TokenReader& r, RegressorConfig config,
                                       std::size_t width) {
  r.expect("intercept");
  const double intercept = r.next_double();
  r.expect("hinges");
  const auto n_hinges = static_cast<std::size_t>(r.next_int());
  std::vector<MarsModel::Hinge> hinges(n_hinges);
  std::vector<double> coefs(n_hinges);
  for (std::size_t i = 0; i < n_hinges; ++i) {
    hinges[i].feature = static_cast<std::size_t>(r.next_int());
    hinges[i].knot = r.next_double();
    hinges[i].direction = static_cast<int>(r.next_int());
    coefs[i] = r.next_double();
  }
  return std::make_unique<MarsModel>(std::move(config), width, intercept,
                                     std::move(hinges), std::move(coefs), -1.0, -1.0);
}

std::unique_ptr<FittedModel> load_ann(TokenReader& r, RegressorConfig config,
                                      std::size_t width) {
  r.expect("hidden");
  const auto hidden = static_cast<std::size_t>(r.next_int());
  r.expect("y_offset");
  const double y_offset = r.next_double();
  r.expect("y_scale");
  const double y_scale = r.next_double();
  r.expect("weights");
  const auto n_weights = static_cast<std::size_t>(r.next_int());
  if (n_weights != ann_parameter_count(width, hidden))
    throw ValidationError("ann weight count does not match the network shape");
  std::vector<double> weights(n_weights);
  for (auto& w : weights) w = r.next_double();
  return std::make_unique<AnnModel>(std::move(config), width, hidden, std::move(weights),
                                    y_offset, y_scale, 0, -1.0);
}

}  // namespace

std::unique_ptr<FittedModel> load_model(std::istream& in) {
  TokenReader r{in};
  r.expect("aquaspec-model");
  const std::string version = r.next();
  if (version != "v" + std::to_string(AQUASPEC_MODEL_FORMAT_VERSION))
    throw ValidationError("unsupported model format version '" + version + "'");
  r.expect("kind");
  const ModelKind kind = model_kind_from_name(r.next());
  r.expect("seed");
  const auto seed = static_cast<std::uint64_t>(r.next_int());
  r.expect("feature_width");
  const auto width = static_cast<std::size_t>(r.next_int());

  RegressorConfig config(kind, seed);
  std::string token = r.next();
  while (token == "param") {
    const std::string name = r.next();
    config.set(name, r.next_double());
    token = r.next();
  }
  if (token != "body")
    throw ValidationError("model file: expected 'body', got '" + token + "'");

  std::unique_ptr<FittedModel> model;
  switch (kind) {
    case ModelKind::rf: model = load_rf(r, std::move(config), width); break;
    case ModelKind::svr: model = load_svr(r, std::move(config), width); break;
    case ModelKind::mars: model = load_mars(r, std::move(config), width); break;
    case ModelKind::ann: model = load_ann(r, std::move(config), width); break;
  }
  r.expect("end");
  return model;
}

std::unique_ptr<FittedModel> load_model_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open model file: " + path);
  return load_model(in);
}

}  // namespace aquaspec
