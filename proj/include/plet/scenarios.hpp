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

// The five experiment drivers. Each returns everything it would write so
// tests can inspect results without touching the filesystem.

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "plet/config.hpp"
#include "plet/lindblad.hpp"
#include "plet/metrics.hpp"
#include "plet/trajectory.hpp"

namespace plet {

struct ScenarioOutput {
  nlohmann::json summary;
  std::optional<ScanResult> scan;
  std::vector<std::pair<std::string, Trajectory>> trajectories;  // file name, data
  std::vector<std::pair<std::string, nlohmann::json>> documents;
};

/// Evenly spaced values, rounded to 12 significant digits so grid points
/// such as 1.0 or 45 degrees are hit exactly.
std::vector<double> scan_grid(const ScanSpec& spec);

/// Reference and ideal Trotter trajectories for one electron-transfer run.
struct EtRun {
  Trajectory oracle;
  Trajectory trotter;
};
EtRun electron_transfer_run(const PletModel& model, const TrotterSettings& trotter, double phi);

/// Scalar summaries of an electron-transfer run keyed as in the scan CSV.
std::map<std::string, double> electron_transfer_metrics(const EtRun& run);

/// Mean of |a - b| over the listed states and steps 1..N.
double mean_abs_deviation(const Trajectory& a, const Trajectory& b, const std::vector<std::string>& states);

ScenarioOutput run_polar_scan(const ScenarioConfig& config, int threads = 1);
ScenarioOutput run_phase_scan(const ScenarioConfig& config, int threads = 1);
ScenarioOutput run_degeneracy_scan(const ScenarioConfig& config, int threads = 1);
ScenarioOutput run_trotter_accuracy(const ScenarioConfig& config, int threads = 1);
ScenarioOutput run_noise_comparison(const ScenarioConfig& config, int threads = 1);

ScenarioOutput run_scenario(const ScenarioConfig& config, int threads = 1);

/// Writes summary.json, scan.csv and every trajectory and document into
/// dir. Trajectories are validated before anything is written.
std::vector<std::filesystem::path> write_outputs(const ScenarioOutput& output, const std::filesystem::path& dir);

}  // namespace plet
