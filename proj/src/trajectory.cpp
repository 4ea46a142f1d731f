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

#include "plet/trajectory.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

#include "plet/error.hpp"

namespace plet {

std::string_view to_string(Provenance p) {
  switch (p) {
    case Provenance::oracle: return "oracle";
    case Provenance::trotter_ideal: return "trotter_ideal";
    case Provenance::noisy_pred: return "noisy_pred";
    case Provenance::external: return "external";
  }
  return "unknown";
}

std::size_t Trajectory::column_index(std::string_view label) const {
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] == label) return i;
  }
  throw ContractViolation("Trajectory: no column '" + std::string(label) + "'");
}

std::vector<double> Trajectory::column(std::string_view label) const {
  const std::size_t c = column_index(label);
  std::vector<double> out;
  out.reserve(populations.size());
  for (const auto& row : populations) out.push_back(row[c]);
  return out;
}

void Trajectory::push_back(int step, double t, std::vector<double> pops) {
  steps.push_back(step);
  times_fs.push_back(t);
  populations.push_back(std::move(pops));
}

void Trajectory::validate() const {
  if (populations.size() != times_fs.size()) throw ContractViolation("Trajectory: ragged samples");
  if (!steps.empty() && steps.size() != times_fs.size()) throw ContractViolation("Trajectory: ragged step indices");
  const bool closed = provenance == Provenance::oracle || provenance == Provenance::trotter_ideal;
  for (std::size_t i = 0; i < populations.size(); ++i) {
    const auto& row = populations[i];
    if (row.size() != labels.size()) throw ContractViolation("Trajectory: population vector length mismatch");
    for (double p : row) {
      if (!(p >= 0.0)) {
        std::ostringstream msg;
        msg << "Trajectory: negative population at sample " << i;
        throw ContractViolation(msg.str());
      }
    }
    const double total = std::accumulate(row.begin(), row.end(), 0.0);
    if (total > 1.0 + 1e-9 || (closed && std::abs(total - 1.0) > 1e-9)) {
      std::ostringstream msg;
      msg << "Trajectory: populations sum to " << total << " at sample " << i;
      throw ContractViolation(msg.str());
    }
    if (i > 0 && !(times_fs[i] > times_fs[i - 1])) throw ContractViolation("Trajectory: times not increasing");
  }
}

}  // namespace plet
