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

// Lindblad master-equation predictions of the populations a noisy device
// would report: qutrit pulse schedules under level dephasing, and two-qubit
// circuits whose entangling gates run through a Molmer-Sorensen interaction
// with a dephasing, heating motional mode.
//
// Lab-frame units throughout: Hamiltonians in rad/s, times in s, hbar = 1.

#include <string>
#include <vector>

#include <Eigen/Sparse>

#include "plet/qcore.hpp"
#include "plet/trajectory.hpp"
#include "plet/trotter.hpp"

namespace plet {

using SparseCMatrix = Eigen::SparseMatrix<Complex>;

struct NoiseModelQutrit {
  double tau1 = 0.300;  // s, coherence time of |1>
  double tau2 = 0.075;  // s, coherence time of |2>

  void validate() const;
};

struct NoiseModelQubit {
  double tau_m = 8e-3;       // s, motional coherence time (both modes)
  double gamma_oop = 10.0;   // 1/s, out-of-phase mode heating rate
  double gamma_ip = 200.0;   // 1/s, in-phase mode heating rate
  int n_max = 7;             // highest Fock state kept per mode
  double sideband_rabi = 2.0 * kPi * 0.5 * (3.92e3 + 5.03e3);  // rad/s

  int mode_dim() const { return n_max + 1; }
  void validate() const;
};

/// Collapse operators with their rates folded into the normalization.
struct CollapseSet {
  HilbertSpace space;
  std::vector<CMatrix> operators;
};

/// -(i/hbar)[H, rho] + sum_k (L rho L^dag - {L^dag L, rho}/2).
CMatrix lindblad_rhs(const CMatrix& rho, const CMatrix& h, const CollapseSet& collapse, double hbar = 1.0);

/// H(t) = h_static + e^{i w t} h_rotating + e^{-i w t} h_rotating^dag, with
/// t measured from the start of the segment.
struct HamiltonianSegment {
  CMatrix h_static;
  CMatrix h_rotating;
  double rotating_freq = 0.0;  // rad/s
  double duration = 0.0;       // s
  double max_step = 0.0;       // s; 0 means use the integrator default
};

struct IntegrationDiagnostics {
  double max_trace_drift = 0.0;
  double max_hermiticity_error = 0.0;
  double min_eigenvalue = 1.0;
  long rk4_steps = 0;

  void merge(const IntegrationDiagnostics& other);
};

/// Fixed-step RK4 integrator for one collapse set. Reentrant; holds no
/// state beyond the precomputed sparse operators and running diagnostics.
class LindbladIntegrator {
 public:
  LindbladIntegrator(int dim, const std::vector<CMatrix>& collapse);

  /// Advances rho in place across one segment. Throws NumericalGuardError
  /// when the trace drifts by more than 1e-6.
  void evolve(CMatrix& rho, const HamiltonianSegment& segment, double default_max_step);

  /// Optimized right-hand side, exposed for cross-checks.
  CMatrix rhs(const CMatrix& rho, const HamiltonianSegment& segment, double t) const;

  const IntegrationDiagnostics& diagnostics() const { return diag_; }

 private:
  int dim_;
  std::vector<SparseCMatrix> collapse_;
  std::vector<SparseCMatrix> collapse_adj_;
  SparseCMatrix damping_;  // (1/2) sum L^dag L
  IntegrationDiagnostics diag_;
};

struct MasterRun {
  std::vector<CMatrix> boundary_states;  // after each segment
  IntegrationDiagnostics diagnostics;
  double total_time = 0.0;
};

MasterRun integrate_master(const std::vector<HamiltonianSegment>& segments, const DensityMatrix& rho0,
                           const CollapseSet& collapse, double dt_max);

struct NoisyRun {
  Trajectory trajectory;
  IntegrationDiagnostics diagnostics;
  double total_lab_time = 0.0;  // s
  double max_fock_top_population = 0.0;     // out-of-phase mode (guarded)
  double max_fock_top_population_ip = 0.0;  // in-phase mode (diagnostic only)
};

CollapseSet qutrit_collapse(const NoiseModelQutrit& noise);

/// Dephasing sqrt(2/tau_m) a^dag a and heating sqrt(G) a^dag, sqrt(G) a on
/// one mode of dimension `dim`.
std::vector<CMatrix> mode_collapse(double tau_m, double gamma, int dim);

NoisyRun simulate_qutrit_noisy(const PulseSchedule& schedule, const NoiseModelQutrit& noise,
                               const QuantumState& psi0);

struct MsSegment {
  double chi = 0.0;
  double detuning = 0.0;  // rad/s
  double duration = 0.0;  // s, one closed loop 2 pi / detuning
  HamiltonianSegment segment;  // on (q0, q1, mode)
};

/// Single-loop bichromatic drive (Omega/2)(sx1 +- sx2)(a e^{i d t} + h.c.)
/// closing after 2 pi / d with d = Omega sqrt(pi / |chi|); the sign of the
/// second ion's drive carries the sign of chi.
MsSegment ms_segment(double chi, double sideband_rabi, int mode_dim);

/// Qubits plus the out-of-phase mode (coupled by the MS drive) plus the
/// in-phase mode (noise only). Columns A, D1, D2, leak11.
NoisyRun simulate_qubit_noisy(const QubitCircuit& circuit, const NoiseModelQubit& noise, const QuantumState& psi0);

/// Lab-time bookkeeping of all MS segments in a circuit.
double qubit_circuit_duration(const QubitCircuit& circuit, double sideband_rabi);

}  // namespace plet
