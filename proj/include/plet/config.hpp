// Copyright 2026 The plet-sim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Scenario configuration: a single JSON document per run. Every scenario has
// built-in defaults taken from the published figure captions; a config file
// only needs the keys it overrides. Unknown keys are rejected.

#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

#include "plet/lindblad.hpp"
#include "plet/model.hpp"
#include "plet/trotter.hpp"

namespace plet {

enum class Scenario { polar_scan, phase_scan, degeneracy_scan, trotter_accuracy, noise_comparison };

std::string_view to_string(Scenario s);
Scenario scenario_from_string(std::string_view s);

struct ScanSpec {
  double start = 0.0;
  double stop = 0.0;
  int points = 1;
  int refine_rounds = 0;  // bisection rounds around half-maximum crossings
};

struct TrotterSettings {
  double total_time_fs = 0.0;
  int n_steps = 1;
  double rabi_01 = 2.0 * kPi * 17.30e3;  // rad/s
  double rabi_02 = 2.0 * kPi * 17.49e3;  // rad/s
  RabiConvention convention = RabiConvention::half;
};

struct ScenarioConfig {
  Scenario scenario = Scenario::phase_scan;
  PletModel model;
  TrotterSettings trotter;
  /// Photo-excitation block of trotter_accuracy (trotter holds the
  /// electron-transfer block there).
  TrotterSettings photo_trotter;
  double initial_phase = 0.5 * kPi;  // rad, electron-transfer initial state
  NoiseModelQutrit qutrit_noise;
  NoiseModelQubit qubit_noise;
  double sideband_rabi_a = 2.0 * kPi * 3.92e3;  // rad/s
  double sideband_rabi_b = 2.0 * kPi * 5.03e3;  // rad/s
  /// Scan over theta (polar), phi (phase), omega_D2/omega_D1 (degeneracy).
  ScanSpec scan;
  /// trotter_accuracy trial grids.
  ScanSpec photo_trials;
  ScanSpec et_trials;
  std::string fwhm_metric = "sigma_D1";
  std::optional<std::string> external_photoexcitation;
  std::optional<std::string> external_electron_transfer;
  std::string output_dir = "out";
};

ScenarioConfig default_config(Scenario scenario);

/// Applies a JSON document over the scenario defaults. Throws ConfigError
/// with a path-qualified message on unknown keys, wrong types or values
/// that break a model invariant.
ScenarioConfig parse_config(const nlohmann::json& doc);
ScenarioConfig load_config(const std::string& path);

nlohmann::json config_to_json(const ScenarioConfig& config);

}  // namespace plet
