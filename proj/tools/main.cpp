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

#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "aquaspec/cli.hpp"
#include "aquaspec/csv.hpp"
#include "aquaspec/errors.hpp"
#include "aquaspec/version.hpp"

namespace {

std::vector<std::string> split_arg_list(const std::string& value) {
  std::vector<std::string> items;
  for (const auto& cell : aquaspec::split_csv_line(value))
    if (!cell.empty()) items.push_back(cell);
  return items;
}

}  // namespace

int main(int argc, char** argv) {
  using aquaspec::RunConfig;

  CLI::App app{"satellite band simulation and chlorophyll-a regression"};
  app.set_version_flag("--version", AQUASPEC_VERSION);
  app.require_subcommand(1);

  RunConfig config;
  std::string config_file, sensors_arg, models_arg, derivative_sensors_arg;

  // shared flags; config file values load first, explicit flags win
  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--config", config_file, "key=value configuration file");
    cmd->add_option("--out", config.out_dir, "output directory");
    cmd->add_option("--seed", config.seed, "root seed for all randomness");
    cmd->add_option("--workers", config.workers, "worker threads (0 = hardware)");
  };

  CLI::App* synth = app.add_subcommand("synth", "generate a synthetic dataset");
  add_common(synth);
  synth->add_option("--n", config.synth_n, "number of samples");
  synth->add_option("--chl-lo", config.synth_chl_lo, "chl-a range low (ug/L)");
  synth->add_option("--chl-hi", config.synth_chl_hi, "chl-a range high (ug/L)");
  synth->add_option("--noise-sd", config.synth_noise_sd, "reflectance noise sd");

  CLI::App* simulate = app.add_subcommand("simulate", "simulate sensor band values");
  add_common(simulate);
  simulate->add_option("--spectra", config.spectra_path, "spectra CSV");
  simulate->add_option("--labels", config.labels_path, "labels CSV (optional)");
  simulate->add_option("--sensors", sensors_arg, "comma-separated sensor names");
  simulate->add_option("--sensor-file", config.sensor_files, "extra sensor definition file");
  simulate->add_option("--match-tolerance", config.match_tolerance_s,
                       "timestamp match tolerance (s)");

  CLI::App* split = app.add_subcommand("split", "write a stratified split manifest");
  add_common(split);
  split->add_option("--labels", config.labels_path, "labels CSV");
  split->add_option("--test-fraction", config.test_fraction, "test subset fraction");

  CLI::App* run = app.add_subcommand("run", "run the full regression experiment");
  add_common(run);
  run->add_option("--spectra", config.spectra_path, "spectra CSV");
  run->add_option("--labels", config.labels_path, "labels CSV");
  run->add_option("--sensors", sensors_arg, "comma-separated sensor names");
  run->add_option("--models", models_arg, "comma-separated models (rf,svr,mars,ann)");
  run->add_option("--sensor-file", config.sensor_files, "extra sensor definition file");
  run->add_option("--test-fraction", config.test_fraction, "test subset fraction");
  run->add_option("--cv-folds", config.cv_folds, "cross-validation folds");
  run->add_option("--match-tolerance", config.match_tolerance_s,
                  "timestamp match tolerance (s)");
  run->add_flag("--no-derivative", "disable derivative-variant cells");
  run->add_option("--derivative-sensors", derivative_sensors_arg,
                  "sensors getting rf/mars derivative variants");

  CLI::App* report = app.add_subcommand("report", "re-render reports from a results CSV");
  add_common(report);
  report->add_option("--results", config.results_path, "results CSV from a previous run");

  CLI11_PARSE(app, argc, argv);

  try {
    // precedence: defaults < config file < explicit flags.  CLI11 already
    // stored flag values into `config`, so reload the file first and then
    // re-apply the parsed flags on top.
    if (!config_file.empty()) {
      RunConfig merged;
      aquaspec::apply_config_file(merged, config_file);
      CLI::App* active = app.get_subcommands().front();
      auto flag_given = [&](const std::string& flag) {
        const CLI::Option* opt = active->get_option_no_throw(flag);
        return opt != nullptr && opt->count() > 0;
      };
      auto override_if = [&](const std::string& flag, auto member) {
        if (flag_given(flag)) merged.*member = config.*member;
      };
      override_if("--out", &RunConfig::out_dir);
      override_if("--seed", &RunConfig::seed);
      override_if("--workers", &RunConfig::workers);
      override_if("--spectra", &RunConfig::spectra_path);
      override_if("--labels", &RunConfig::labels_path);
      override_if("--results", &RunConfig::results_path);
      override_if("--test-fraction", &RunConfig::test_fraction);
      override_if("--cv-folds", &RunConfig::cv_folds);
      override_if("--match-tolerance", &RunConfig::match_tolerance_s);
      override_if("--n", &RunConfig::synth_n);
      override_if("--chl-lo", &RunConfig::synth_chl_lo);
      override_if("--chl-hi", &RunConfig::synth_chl_hi);
      override_if("--noise-sd", &RunConfig::synth_noise_sd);
      if (flag_given("--sensor-file")) merged.sensor_files = config.sensor_files;
      config = merged;
    }
    if (!sensors_arg.empty()) config.sensors = split_arg_list(sensors_arg);
    if (!models_arg.empty()) config.models = split_arg_list(models_arg);
    if (!derivative_sensors_arg.empty())
      config.derivative_sensors = split_arg_list(derivative_sensors_arg);
    if (run->parsed() && run->count("--no-derivative") > 0) config.derivative = false;

    if (synth->parsed()) return aquaspec::cmd_synth(config);
    if (simulate->parsed()) return aquaspec::cmd_simulate(config);
    if (split->parsed()) return aquaspec::cmd_split(config);
    if (run->parsed()) return aquaspec::cmd_run(config);
    if (report->parsed()) return aquaspec::cmd_report(config);
    std::cerr << "no subcommand\n";
    return aquaspec::kExitValidation;
  } catch (const aquaspec::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return aquaspec::kExitValidation;
  } catch (const aquaspec::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return aquaspec::kExitComputation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return aquaspec::kExitComputation;
  }
}
