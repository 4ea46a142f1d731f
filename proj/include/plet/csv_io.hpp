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

// CSV files for trajectories and scans. Trajectory schema:
//   step_index,sim_time_fs,P_<s0>,P_<s1>,P_<s2>[,P_leak11][,err_<s>...]
// with s0 = G for photo-excitation and A for electron transfer. Numbers are
// printed with 12 significant digits.

#include <filesystem>
#include <string>
#include <vector>

#include "plet/metrics.hpp"
#include "plet/trajectory.hpp"

namespace plet {

std::string format_number(double v);

std::string trajectory_csv(const Trajectory& traj);
void write_trajectory_csv(const Trajectory& traj, const std::filesystem::path& path);

/// One row per scan value, columns sorted by metric name. Missing or NaN
/// metrics print as "nan".
std::string scan_csv(const ScanResult& scan);
void write_scan_csv(const ScanResult& scan, const std::filesystem::path& path);

/// Parses a trajectory CSV. `labels` are the three molecular states in
/// device order. Every bad row is reported; the ParseError message lists
/// them one per line.
Trajectory parse_trajectory_csv(const std::string& text, const std::vector<std::string>& labels,
                                const std::string& source = "<memory>");

/// Reads measured populations for the sigma_exp comparison. Provenance is
/// set to external.
Trajectory ingest_external(const std::filesystem::path& path, const std::vector<std::string>& labels);

void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace plet
