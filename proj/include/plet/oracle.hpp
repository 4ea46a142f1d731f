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

// Exact reference dynamics: closed-form evolution under a static
// Hamiltonian and adaptively refined time-ordered evolution under a
// time-dependent one.

#include <functional>
#include <vector>

#include "plet/qcore.hpp"
#include "plet/trajectory.hpp"
#include "plet/trotter.hpp"

namespace plet {

struct RefinementControl {
  int initial_substeps = 16;  // per output sample
  int max_doublings = 10;
  double tolerance = 1e-8;    // max population change between refinements
};

struct EvolutionResult {
  Trajectory trajectory;
  std::vector<QuantumState> states;  // one per sample
  int substeps_per_sample = 0;
  double last_refinement_change = 0.0;
};

/// psi(t) = exp(-i h t / hbar) psi0 at every requested time.
EvolutionResult evolve_static(const Operator& h, const QuantumState& psi0, const std::vector<double>& times_fs,
                              std::vector<std::string> labels);

/// Time-ordered product of midpoint exponentials on n_samples equal
/// intervals of [0, T]; the substep count per interval doubles until the
/// largest population change falls below the tolerance.
EvolutionResult evolve_timedep(const std::function<Operator(double)>& h_of_t, const QuantumState& psi0,
                               double total_time_fs, int n_samples, std::vector<std::string> labels,
                               RefinementControl control = {});

/// Populations at t = j T / N, j = 0..N, taken from a trajectory that
/// contains those times.
Trajectory sample_at_steps(const Trajectory& traj, const TrotterPlan& plan);

/// Step-aligned times j T / N, j = 0..N.
std::vector<double> step_times(double total_time_fs, int n_steps);

/// Exact reference trajectory for a plan: static evolution for the
/// electron-transfer step, refined time-ordered evolution for the
/// photo-excitation step.
EvolutionResult reference_dynamics(const PletModel& model, const TrotterPlan& plan, const QuantumState& psi0,
                                   RefinementControl control = {});

}  // namespace plet
