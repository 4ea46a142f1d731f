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

#include "plet/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "plet/error.hpp"
#include "plet/qcore.hpp"

namespace plet {

namespace {

void require_step_aligned(const Trajectory& traj, const char* who) {
  if (!traj.step_aligned() || traj.n_steps() < 1) {
    throw ContractViolation(std::string(who) + ": trajectory must be step-aligned with N >= 1");
  }
}

}  // namespace

double normalized_population_difference(double p_d1, double p_d2) {
  const double total = p_d1 + p_d2;
  if (!(total > 0.0)) throw ContractViolation("normalized_population_difference: both populations vanish");
  return (p_d1 - p_d2) / total;
}

double relative_phase(std::complex<double> beta1, std::complex<double> beta2) {
  if (std::abs(beta1) <= 1e-12 || std::abs(beta2) <= 1e-12) {
    throw ContractViolation("relative_phase: vanishing amplitude");
  }
  double phi = std::arg(beta2 / beta1);
  if (phi < 0.0) phi += 2.0 * kPi;
  return phi >= 2.0 * kPi ? 0.0 : phi;
}

double donor_deviation(const Trajectory& traj, std::string_view state) {
  require_step_aligned(traj, "donor_deviation");
  const auto col = traj.column(state);
  double acc = 0.0;
  for (std::size_t i = 1; i < col.size(); ++i) acc += (col[i] - 0.5) * (col[i] - 0.5);
  return std::sqrt(acc / static_cast<double>(col.size() - 1));
}

double mean_distance(const Trajectory& a, const Trajectory& b, std::string_view state) {
  require_step_aligned(a, "mean_distance");
  require_step_aligned(b, "mean_distance");
  if (a.steps != b.steps) throw ContractViolation("mean_distance: step grids differ");
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (std::abs(a.times_fs[i] - b.times_fs[i]) > 1e-9 * std::max(1.0, std::abs(a.times_fs[i]))) {
      throw ContractViolation("mean_distance: time grids differ");
    }
  }
  const auto ca = a.column(state), cb = b.column(state);
  double acc = 0.0;
  for (std::size_t i = 1; i < ca.size(); ++i) acc += (ca[i] - cb[i]) * (ca[i] - cb[i]);
  return std::sqrt(acc / static_cast<double>(ca.size() - 1));
}

double time_averaged_population(const Trajectory& traj, std::string_view state) {
  require_step_aligned(traj, "time_averaged_population");
  const auto col = traj.column(state);
  double acc = 0.0;
  for (std::size_t i = 1; i < col.size(); ++i) acc += col[i];
  return acc / static_cast<double>(col.size() - 1);
}

void ScanResult::normalize() {
  std::sort(records.begin(), records.end(), [](const auto& x, const auto& y) { return x.value < y.value; });
  for (std::size_t i = 1; i < records.size(); ++i) {
    if (!(records[i].value > records[i - 1].value)) throw ContractViolation("ScanResult: duplicate scan value");
  }
}

std::vector<double> ScanResult::values() const {
  std::vector<double> v;
  v.reserve(records.size());
  for (const auto& r : records) v.push_back(r.value);
  return v;
}

std::vector<double> ScanResult::metric(const std::string& name) const {
  std::vector<double> v;
  v.reserve(records.size());
  for (const auto& r : records) {
    const auto it = r.metrics.find(name);
    if (it == r.metrics.end()) throw ContractViolation("ScanResult: missing metric '" + name + "'");
    v.push_back(it->second);
  }
  return v;
}

FeatureWidth fwhm_of_feature(const ScanResult& scan, const std::string& metric, double center, FeatureKind kind) {
  const auto x = scan.values();
  auto y = scan.metric(metric);
  if (x.size() < 3) throw ContractViolation("fwhm_of_feature: need at least three scan points");
  for (std::size_t i = 1; i < x.size(); ++i) {
    if (!(x[i] > x[i - 1])) throw ContractViolation("fwhm_of_feature: scan values must increase");
  }
  if (center < x.front() || center > x.back()) throw ContractViolation("fwhm_of_feature: centre outside scan");
  // Work with a dip in every case.
  if (kind == FeatureKind::peak) {
    for (auto& v : y) v = -v;
  }

  const auto upper = std::lower_bound(x.begin(), x.end(), center);
  const std::size_t ci = static_cast<std::size_t>(upper - x.begin());
  double baseline;
  if (x[ci] == center) {
    baseline = y[ci];
  } else {
    const double w = (center - x[ci - 1]) / (x[ci] - x[ci - 1]);
    baseline = (1.0 - w) * y[ci - 1] + w * y[ci];
  }
  const double top = *std::max_element(y.begin(), y.end());
  const double half = baseline + 0.5 * (top - baseline);

  // Walk outward from (center, baseline) to the first half-level crossing.
  auto walk = [&](bool rightward, double& where) {
    double px = center, py = baseline;
    const std::size_t n = x.size();
    for (std::size_t k = 0; k < n; ++k) {
      const std::size_t i = rightward ? k : n - 1 - k;
      if (rightward ? !(x[i] > center) : !(x[i] < center)) continue;
      if (y[i] >= half) {
        where = px + (half - py) * (x[i] - px) / (y[i] - py);
        return true;
      }
      px = x[i];
      py = y[i];
    }
    return false;
  };

  FeatureWidth out;
  out.baseline = kind == FeatureKind::peak ? -baseline : baseline;
  out.half_level = kind == FeatureKind::peak ? -half : half;
  const bool found_right = walk(true, out.right);
  const bool found_left = walk(false, out.left);
  if (!found_left || !found_right || !(top > baseline)) {
    std::ostringstream msg;
    msg << "fwhm_of_feature: half-maximum crossings of '" << metric << "' not bracketed in ["
        << x.front() << ", " << x.back() << "]";
    throw ContractViolation(msg.str());
  }
  out.width = out.right - out.left;
  return out;
}

}  // namespace plet
