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

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace plet {

enum class Provenance { oracle, trotter_ideal, noisy_pred, external };

std::string_view to_string(Provenance p);

/// Populations sampled on a time grid. Step-aligned trajectories carry the
/// Trotter step index of every sample (0 = prepared state).
struct Trajectory {
  std::vector<std::string> labels;
  std::vector<int> steps;
  std::vector<double> times_fs;
  std::vector<std::vector<double>> populations;
  /// Optional per-point uncertainty (external data only), same shape as
  /// populations.
  std::optional<std::vector<std::vector<double>>> uncertainty;
  Provenance provenance = Provenance::oracle;

  std::size_t size() const { return times_fs.size(); }
  bool step_aligned() const { return !steps.empty(); }
  int n_steps() const { return steps.empty() ? 0 : steps.back(); }
  std::size_t column_index(std::string_view label) const;
  std::vector<double> column(std::string_view label) const;

  void push_back(int step, double t, std::vector<double> pops);

  /// Throws ContractViolation unless every population vector is
  /// nonnegative and sums to <= 1 + 1e-9 (== 1 for closed-system
  /// provenances) and times strictly increase.
  void validate() const;
};

}  // namespace plet
