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

#include "aquaspec/cli.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>

#include "aquaspec/csv.hpp"
#include "aquaspec/kernels.hpp"
#include "aquaspec/parallel.hpp"
#include "aquaspec/pipeline.hpp"
#include "aquaspec/report.hpp"
#include "aquaspec/synth.hpp"
#include "aquaspec/tuning.hpp"
#include "aquaspec/version.hpp"

namespace aquaspec {

namespace {

namespace fs = std::filesystem;

std::vector<std::string> split_list(std::string_view value) {
  std::vector<std::string> items;
  for (const auto& cell : split_csv_line(value))
    if (!cell.empty()) items.push_back(cell);
  return items;
}

std::vector<double> split_numbers(std::string_view value, const std::string& path,
                                  std::size_t line) {
  std::vector<double> numbers;
  for (const auto& cell : split_csv_line(value)) numbers.push_back(parse_double(cell, path, line));
  if (numbers.empty()) throw ParseError(path, line, "expected a comma-separated number list");
  return numbers;
}

bool parse_bool(std::string_view value, const std::string& path, std::size_t line) {
  if (value == "on" || value == "true" || value == "1") return true;
  if (value == "off" || value == "false" || value == "0") return false;
  throw ParseError(path, line, "expected on/off, got '" + std::string(value) + "'");
}

void ensure_out_dir(const RunConfig& config) {
  std::error_code ec;
  fs::create_directories(config.out_dir, ec);
  if (ec) throw ValidationError("cannot create output directory '" + config.out_dir +
                                "': " + ec.message());
}

std::string out_path(const RunConfig& config, const std::string& name) {
  return (fs::path(config.out_dir) / name).string();
}

void require_file(const std::string& path, const std::string& what) {
  if (path.empty()) throw ValidationError("missing required " + what + " path");
  if (!fs::exists(path)) throw ValidationError(what + " file not found: " + path);
}

std::vector<ModelKind> resolve_models(const RunConfig& config) {
  std::vector<std::string> names = config.models;
  if (names.empty()) names = {"rf", "svr", "mars", "ann"};
  std::vector<ModelKind> kinds;
  kinds.reserve(names.size());
  for (const auto& n : names) kinds.push_back(model_kind_from_name(n));
  return kinds;
}

SpectralDataset load_labeled(const RunConfig& config, MatchReport* report) {
  require_file(config.spectra_path, "spectra");
  require_file(config.labels_path, "labels");
  const auto spectra = ingest_spectra_csv(config.spectra_path);
  const auto labels = ingest_labels_csv(config.labels_path);
  return attach_labels(spectra, labels, config.match_tolerance_s, report);
}

ExperimentConfig experiment_config(const RunConfig& config) {
  ExperimentConfig exp;
  exp.test_fraction = config.test_fraction;
  exp.seed = config.seed;
  exp.cv_folds = config.cv_folds;
  exp.grid_cap = config.grid_cap;
  exp.derivative_variants = config.derivative;
  exp.derivative_sensors = config.derivative_sensors;
  for (const auto& [key, values] : config.grid_overrides) {
    const auto dot = key.find('.');
    if (dot == std::string::npos)
      throw ValidationError("grid override key must be <model>.<param>: " + key);
    const ModelKind kind = model_kind_from_name(key.substr(0, dot));
    exp.grid_overrides[kind].emplace_back(key.substr(dot + 1), values);
  }
  return exp;
}

void write_manifest(const RunConfig& config, const std::string& command,
                    const std::vector<std::string>& extra_lines) {
  std::ofstream out(out_path(config, "manifest.txt"));
  if (!out) throw ValidationError("cannot write manifest");
  out << "artifact_version=" << AQUASPEC_VERSION << "\n";
  out << "model_format_version=" << AQUASPEC_MODEL_FORMAT_VERSION << "\n";
  out << "command=" << command << "\n";
  out << "seed=" << config.seed << "\n";
  out << "test_fraction=" << format_double(config.test_fraction) << "\n";
  out << "cv_folds=" << config.cv_folds << "\n";
  out << "match_tolerance_s=" << config.match_tolerance_s << "\n";
  out << "derivative=" << (config.derivative ? "on" : "off") << "\n";
  std::string names;
  for (const auto& s : config.derivative_sensors)
    names += (names.empty() ? "" : ",") + s;
  out << "derivative_sensors=" << names << "\n";
  out << "grid_cap=" << config.grid_cap << "\n";
  out << "kernel_backend=" << kernels::backend_name() << "\n";
  if (!config.spectra_path.empty()) out << "spectra=" << config.spectra_path << "\n";
  if (!config.labels_path.empty()) out << "labels=" << config.labels_path << "\n";
  for (const auto& f : config.sensor_files) out << "sensor_file=" << f << "\n";
  for (const auto& [key, values] : config.grid_overrides) {
    out << "grid." << key << "=";
    for (std::size_t i = 0; i < values.size(); ++i)
      out << (i ? "," : "") << format_double(values[i]);
    out << "\n";
  }
  for (const auto& line : extra_lines) out << line << "\n";
}

}  // namespace

void apply_config_file(RunConfig& config, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open config file: " + path);
  std::string raw;
  std::size_t lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    const auto hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    const auto line = trim(raw);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw ParseError(path, lineno, "expected key=value");
    const std::string key(trim(line.substr(0, eq)));
    const std::string value(trim(line.substr(eq + 1)));

    if (key == "spectra") config.spectra_path = value;
    else if (key == "labels") config.labels_path = value;
    else if (key == "results") config.results_path = value;
    else if (key == "out") config.out_dir = value;
    else if (key == "sensors") config.sensors = split_list(value);
    else if (key == "models") config.models = split_list(value);
    else if (key == "sensor_file")
      for (auto& f : split_list(value)) config.sensor_files.push_back(std::move(f));
    else if (key == "seed") config.seed = parse_uint(value, path, lineno);
    else if (key == "test_fraction") config.test_fraction = parse_double(value, path, lineno);
    else if (key == "workers")
      config.workers = static_cast<unsigned>(parse_uint(value, path, lineno));
    else if (key == "cv_folds")
      config.cv_folds = static_cast<std::size_t>(parse_uint(value, path, lineno));
    else if (key == "match_tolerance_s")
      config.match_tolerance_s = static_cast<std::int64_t>(parse_uint(value, path, lineno));
    else if (key == "derivative") config.derivative = parse_bool(value, path, lineno);
    else if (key == "derivative_sensors") config.derivative_sensors = split_list(value);
    else if (key == "grid_cap")
      config.grid_cap = static_cast<std::size_t>(parse_uint(value, path, lineno));
    else if (key.rfind("grid.", 0) == 0)
      config.grid_overrides[key.substr(5)] = split_numbers(value, path, lineno);
    else if (key == "synth.n")
      config.synth_n = static_cast<std::size_t>(parse_uint(value, path, lineno));
    else if (key == "synth.chl_lo") config.synth_chl_lo = parse_double(value, path, lineno);
    else if (key == "synth.chl_hi") config.synth_chl_hi = parse_double(value, path, lineno);
    else if (key == "synth.noise_sd")
      config.synth_noise_sd = parse_double(value, path, lineno);
    else
      throw ParseError(path, lineno, "unknown configuration key '" + key + "'");
  }
}

std::vector<SensorModel> resolve_sensors(const RunConfig& config,
                                         std::vector<std::string>* warnings) {
  std::vector<SensorModel> catalog = builtin_catalog();
  for (const auto& path : config.sensor_files) {
    require_file(path, "sensor definition");
    auto loaded = load_sensor_file(path);
    for (const auto& existing : catalog)
      if (existing.name == loaded.sensor.name)
        throw ValidationError("sensor file redefines '" + loaded.sensor.name + "'");
    if (warnings)
      for (auto& w : loaded.warnings) warnings->push_back(path + ": " + w);
    catalog.push_back(std::move(loaded.sensor));
  }
  if (config.sensors.empty()) return catalog;
  std::vector<SensorModel> selected;
  selected.reserve(config.sensors.size());
  for (const auto& name : config.sensors) selected.push_back(find_sensor(catalog, name));
  return selected;
}

int cmd_synth(const RunConfig& config) {
  set_worker_count(config.workers);
  SynthConfig synth;
  synth.n_samples = config.synth_n;
  synth.chl_lo_ug_l = config.synth_chl_lo;
  synth.chl_hi_ug_l = config.synth_chl_hi;
  synth.noise_sd = config.synth_noise_sd;
  synth.seed = config.seed;
  synth.validate();

  ensure_out_dir(config);
  const auto dataset = generate(synth);
  write_synth_csv(dataset, out_path(config, "synthetic_spectra.csv"),
                  out_path(config, "synthetic_labels.csv"));
  write_manifest(config, "synth",
                 {"synth.n=" + std::to_string(config.synth_n),
                  "synth.chl_lo=" + format_double(config.synth_chl_lo),
                  "synth.chl_hi=" + format_double(config.synth_chl_hi),
                  "synth.noise_sd=" + format_double(config.synth_noise_sd)});
  std::cout << "wrote " << out_path(config, "synthetic_spectra.csv") << " ("
            << dataset.size() << " samples)\n";
  return kExitOk;
}

int cmd_simulate(const RunConfig& config) {
  set_worker_count(config.workers);
  require_file(config.spectra_path, "spectra");
  std::vector<std::string> notes;
  const auto sensors = resolve_sensors(config, &notes);

  // labels are optional here; without them the chl_a column is zero
  SpectralDataset dataset = [&] {
    if (config.labels_path.empty()) {
      notes.push_back("no labels file; chl_a column written as 0");
      return ingest_spectra_csv(config.spectra_path).dataset;
    }
    MatchReport report;
    auto ds = load_labeled(config, &report);
    for (const auto& m : report.messages) notes.push_back(m);
    return ds;
  }();

  ensure_out_dir(config);
  std::vector<std::string> failures;
  for (const auto& sensor : sensors) {
    try {
      const auto sim = simulate_dataset(dataset, sensor);
      for (const auto& n : sim.notes) notes.push_back(sensor.name + ": " + n);
      write_simulated_csv(sim, out_path(config, "simulated_" + sensor.name + ".csv"));
      std::cout << sensor.name << ": " << sim.features.rows() << " x "
                << sim.features.cols() << "\n";
    } catch (const Error& e) {
      failures.push_back(sensor.name + ": " + e.what());
      std::cerr << "failed " << sensor.name << ": " << e.what() << "\n";
    }
  }
  std::vector<std::string> manifest_lines;
  for (const auto& n : notes) manifest_lines.push_back("note=" + n);
  for (const auto& f : failures) manifest_lines.push_back("failure=" + f);
  write_manifest(config, "simulate", manifest_lines);
  return failures.empty() ? kExitOk : kExitComputation;
}

int cmd_split(const RunConfig& config) {
  require_file(config.labels_path, "labels");
  const auto labels = ingest_labels_csv(config.labels_path);
  std::vector<double> targets;
  targets.reserve(labels.size());
  for (const auto& l : labels) targets.push_back(l.chl_a_ug_l);

  const auto split = stratified_split(targets, config.test_fraction,
                                      derive_seed(config.seed, "outer-split"));
  ensure_out_dir(config);
  write_split_manifest(split, out_path(config, "split_manifest.csv"));
  write_manifest(config, "split", {});
  std::cout << "split " << split.train_indices.size() << " train / "
            << split.test_indices.size() << " test\n";
  return kExitOk;
}

int cmd_run(const RunConfig& config) {
  set_worker_count(config.workers);
  std::vector<std::string> notes;
  const auto sensors = resolve_sensors(config, &notes);
  const auto models = resolve_models(config);

  MatchReport report;
  const auto dataset = load_labeled(config, &report);
  for (const auto& m : report.messages) notes.push_back(m);

  ensure_out_dir(config);
  const auto result = run_experiment(dataset, sensors, models, experiment_config(config));

  const auto rows = result_rows(result);
  write_results_csv(rows, out_path(config, "results.csv"));
  write_mae_table(rows, out_path(config, "mae_table.txt"));
  write_plot_csv(rows, out_path(config, "plot_r2.csv"));
  write_split_manifest(result.split, out_path(config, "split_manifest.csv"));

  std::vector<std::string> manifest_lines;
  manifest_lines.push_back("samples=" + std::to_string(dataset.size()));
  for (const auto& s : sensors)
    manifest_lines.push_back("sensor=" + s.name + " bands=" + std::to_string(s.band_count()) +
                             " approach=" + std::string(approach_name(s.approach)) +
                             " source=" + s.source);
  for (const auto& n : result.notes) manifest_lines.push_back("note=" + n);
  for (const auto& n : notes) manifest_lines.push_back("note=" + n);
  for (const auto& f : result.failures) manifest_lines.push_back("failure=" + f);
  write_manifest(config, "run", manifest_lines);

  std::cout << render_mae_table(rows);
  if (!result.failures.empty()) {
    std::cerr << result.failures.size() << " cell(s) failed:\n";
    for (const auto& f : result.failures) std::cerr << "  " << f << "\n";
    return kExitComputation;
  }
  return kExitOk;
}

int cmd_report(const RunConfig& config) {
  require_file(config.results_path, "results");
  const auto rows = read_results_csv(config.results_path);
  ensure_out_dir(config);
  write_mae_table(rows, out_path(config, "mae_table.txt"));
  write_plot_csv(rows, out_path(config, "plot_r2.csv"));
  std::cout << render_mae_table(rows);
  return kExitOk;
}

}  // namespace aquaspec
