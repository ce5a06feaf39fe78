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

// Command implementations behind the aquaspec binary.  All randomness flows
// from RunConfig::seed via derive_seed; runs with identical configuration
// produce byte-identical artifacts regardless of the worker count.

#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "aquaspec/sensor.hpp"

namespace aquaspec {

struct RunConfig {
  // inputs
  std::string spectra_path;
  std::string labels_path;
  std::vector<std::string> sensor_files;
  std::string results_path;  // input of the report command

  // output directory; artifacts land here
  std::string out_dir = "aquaspec-out";

  // selections (empty = everything built in / all four models)
  std::vector<std::string> sensors;
  std::vector<std::string> models;

  std::uint64_t seed = 0;
  double test_fraction = 0.5;
  unsigned workers = 0;  // 0 = hardware concurrency
  std::size_t cv_folds = 5;
  std::int64_t match_tolerance_s = 300;
  bool derivative = true;
  std::vector<std::string> derivative_sensors = {"Hyperion", "EnMAP"};
  std::size_t grid_cap = 1024;
  // "<model>.<param>" -> candidate values
  std::map<std::string, std::vector<double>> grid_overrides;

  // synth command
  std::size_t synth_n = 400;
  double synth_chl_lo = 0.0;
  double synth_chl_hi = 100.0;
  double synth_noise_sd = 0.002;
};

// key=value configuration file; '#' starts a comment.  Flags parsed by the
// binary override file values.
void apply_config_file(RunConfig& config, const std::string& path);

// Built-in catalog plus any sensor definition files, filtered down to the
// configured selection.
std::vector<SensorModel> resolve_sensors(const RunConfig& config,
                                         std::vector<std::string>* warnings = nullptr);

int cmd_simulate(const RunConfig& config);
int cmd_synth(const RunConfig& config);
int cmd_split(const RunConfig& config);
int cmd_run(const RunConfig& config);
int cmd_report(const RunConfig& config);

// Exit codes: 0 success, 2 validation failure, 3 computation failure.
inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitComputation = 3;

}  // namespace aquaspec
