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

// Second-order Trotterization of both PLET steps, compilation to fixed-Rabi
// qutrit pulse schedules and to two-qubit gate circuits, and noise-free
// playback of compiled programs.

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "plet/model.hpp"
#include "plet/qcore.hpp"
#include "plet/trajectory.hpp"

#include <json.hpp>

namespace plet {

enum class PletStep { photoexcitation, electron_transfer };

std::string_view to_string(PletStep s);

/// Interaction-picture coupling of one term at a step midpoint.
struct TermSample {
  int level = 1;            // coupled level (1 or 2); the other end is level 0
  double amplitude = 0.0;   // eV, signed
  double phase = 0.0;       // rad
};

struct TrotterStep {
  int index = 1;            // 1-based
  double midpoint_fs = 0.0;  // (j - 1/2) T / N
  std::array<TermSample, 2> terms;
};

/// One sub-evolution of the symmetric split: term id and its duration as a
/// fraction of T/N.
struct SubEvolution {
  int term = 0;
  double fraction = 0.0;
};

struct TrotterPlan {
  static constexpr std::array<SubEvolution, 3> kPattern{{{0, 0.5}, {1, 1.0}, {0, 0.5}}};

  PletStep step = PletStep::electron_transfer;
  double total_time_fs = 0.0;
  int n_steps = 0;
  StateLabelMap labels = StateLabelMap::electron_transfer();
  std::vector<TrotterStep> steps;

  double step_length_fs() const { return total_time_fs / n_steps; }
};

TrotterPlan build_plan(const PletModel& model, PletStep step, double total_time_fs, int n_steps);

/// exp(-i A (e^{i phase}|0><level| + h.c.) dt / hbar).
Operator term_unitary(const TermSample& term, double dt_fs);

Operator step_unitary(const TrotterPlan& plan, int j);

/// P_Tro sampled after each prefix product, steps 0..N.
Trajectory trotter_trajectory(const TrotterPlan& plan, const QuantumState& psi0);

// ---------------------------------------------------------------------------
// Qutrit pulse schedules

enum class Transition { t01, t02 };

/// How a sub-step area A*dt/hbar maps to Rabi rate times duration.
///  half: Omega * tau = A dt / hbar (the reported duration accounting)
///  full: Omega * tau = 2 A dt / hbar (literal (Omega/2) drive Hamiltonian)
/// The applied unitary is the exact sub-exponential in both cases.
enum class RabiConvention { half, full };

std::string_view to_string(Transition t);
std::string_view to_string(RabiConvention c);
RabiConvention rabi_convention_from_string(std::string_view s);

struct Pulse {
  Transition transition = Transition::t01;
  double rabi = 0.0;            // rad/s
  double phase = 0.0;           // rad, [0, 2pi)
  double duration = 0.0;        // s
  double rotation_angle = 0.0;  // rad, rabi * duration
  int step_index = 0;
  int term_id = 0;
};

struct PulseSchedule {
  std::vector<Pulse> pulses;
  RabiConvention convention = RabiConvention::half;
  int n_steps = 0;
  double step_length_fs = 0.0;
  double total_duration = 0.0;  // s
  StateLabelMap labels = StateLabelMap::electron_transfer();
};

PulseSchedule compile_qutrit(const TrotterPlan& plan, double rabi_01, double rabi_02,
                             RabiConvention convention = RabiConvention::half);

/// Lab-frame drive Hamiltonian (rad/s) realizing the pulse's sub-exponential
/// over its duration: kappa (e^{i phase}|0><alpha| + h.c.), with kappa = rabi
/// under `half` and rabi / 2 under `full`.
CMatrix pulse_hamiltonian(const Pulse& pulse, RabiConvention convention);
CMatrix pulse_unitary(const Pulse& pulse, RabiConvention convention);

Trajectory simulate_schedule_ideal(const PulseSchedule& schedule, const QuantumState& psi0);

/// JSON array, one object per pulse: transition, rabi_rad_per_s, phase_rad,
/// duration_s, step_index, term_id.
nlohmann::json schedule_to_json(const PulseSchedule& schedule);
PulseSchedule schedule_from_json(const nlohmann::json& j, RabiConvention convention, double step_length_fs);

// ---------------------------------------------------------------------------
// Two-qubit circuits

enum class GateKind { rz, rx, hadamard, xx };

/// rz/rx: exp(-i angle sigma/2) on `target`; hadamard on `target`;
/// xx: exp(-i angle sigma_x (x) sigma_x).
struct Gate {
  GateKind kind = GateKind::rz;
  int target = 0;
  double angle = 0.0;
  int step_index = 0;
};

struct QubitCircuit {
  std::vector<Gate> gates;
  int n_steps = 0;
  double step_length_fs = 0.0;
  int substeps = 1;
};

/// Per Trotter step (split into `substeps` equal slices), each slice is
///   S(dt/2) XZ(dt/2) ZX(dt/2) ZZ(dt) ZX(dt/2) XZ(dt/2) S(dt/2)
/// where S is the exact single-qubit group and the two-qubit terms are XX
/// gates conjugated by Hadamards. Zero-coefficient terms emit nothing.
QubitCircuit compile_qubit(const std::vector<PauliDecomposition>& steps, double step_length_fs, int substeps = 1);

CMatrix gate_unitary(const Gate& gate);
CMatrix circuit_step_unitary(const QubitCircuit& circuit, int j);

/// Ideal playback; columns A, D1, D2, leak11.
/// Accepts a qutrit state (embedded as |00>, |01>, |10>) or a two-qubit state.
Trajectory simulate_circuit_ideal(const QubitCircuit& circuit, const QuantumState& psi0);

/// Embeds a three-level state on (A, D1, D2) into |00>, |01>, |10>.
QuantumState embed_qutrit_state(const QuantumState& psi);

}  // namespace plet
