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

#include <complex>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "plet/trajectory.hpp"

namespace plet {

/// (pD1 - pD2) / (pD1 + pD2).
double normalized_population_difference(double p_d1, double p_d2);

/// phi in [0, 2pi) with e^{i phi} = (b2/|b2|) / (b1/|b1|).
double relative_phase(std::complex<double> beta1, std::complex<double> beta2);

/// RMS deviation of a population from 0.5 over steps 1..N.
double donor_deviation(const Trajectory& traj, std::string_view state);

/// RMS pointwise distance over steps 1..N; the grids must match.
double mean_distance(const Trajectory& a, const Trajectory& b, std::string_view state);

/// Mean over steps 1..N.
double time_averaged_population(const Trajectory& traj, std::string_view state);

struct ScanRecord {
  double value = 0.0;
  std::map<std::string, double> metrics;
};

struct ScanResult {
  std::string variable;
  std::vector<ScanRecord> records;

  /// Sorts by scan value and checks strict monotonicity.
  void normalize();
  std::vector<double> values() const;
  std::vector<double> metric(const std::string& name) const;
};

enum class FeatureKind { dip, peak };

struct FeatureWidth {
  double width = 0.0;
  double left = 0.0;
  double right = 0.0;
  double baseline = 0.0;
  double half_level = 0.0;
};

/// Full width at half maximum of the feature centred at `center`: the
/// baseline is the metric at the centre, the extreme is the largest
/// excursion over the scan, and crossings are linearly interpolated.
FeatureWidth fwhm_of_feature(const ScanResult& scan, const std::string& metric, double center,
                             FeatureKind kind = FeatureKind::dip);

}  // namespace plet
