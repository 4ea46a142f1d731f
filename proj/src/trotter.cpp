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

#include "plet/trotter.hpp"

#include <cmath>
#include <sstream>

#include "plet/error.hpp"

namespace plet {

namespace {

constexpr double kTwoPi = 2.0 * kPi;

double wrap_phase(double phi) {
  double w = std::fmod(phi, kTwoPi);
  if (w < 0.0) w += kTwoPi;
  return w >= kTwoPi ? 0.0 : w;
}

// exp(-i angle (e^{i phase}|0><level| + h.c.)) on the three-level space.
CMatrix two_level_rotation(int level, double angle, double phase) {
  CMatrix u = CMatrix::Identity(3, 3);
  const double c = std::cos(angle), s = std::sin(angle);
  u(0, 0) = c;
  u(level, level) = c;
  u(0, level) = Complex(0.0, -s) * std::polar(1.0, phase);
  u(level, 0) = Complex(0.0, -s) * std::polar(1.0, -phase);
  return u;
}

CMatrix on_qubit(const CMatrix& u, int target) {
  return target == 0 ? ops::kron(u, ops::identity(2)) : ops::kron(ops::identity(2), u);
}

std::vector<std::string> to_vector(const StateLabelMap& labels) {
  return {labels.labels().begin(), labels.labels().end()};
}

}  // namespace

std::string_view to_string(PletStep s) {
  return s == PletStep::photoexcitation ? "photoexcitation" : "electron_transfer";
}

std::string_view to_string(Transition t) { return t == Transition::t01 ? "0-1" : "0-2"; }

std::string_view to_string(RabiConvention c) { return c == RabiConvention::half ? "half" : "full"; }

RabiConvention rabi_convention_from_string(std::string_view s) {
  if (s == "half") return RabiConvention::half;
  if (s == "full") return RabiConvention::full;
  throw ContractViolation("unknown Rabi convention '" + std::string(s) + "'");
}

TrotterPlan build_plan(const PletModel& model, PletStep step, double total_time_fs, int n_steps) {
  model.validate();
  if (!(total_time_fs > 0.0) || !std::isfinite(total_time_fs)) throw ContractViolation("build_plan: T must be > 0");
  if (n_steps < 1) throw ContractViolation("build_plan: N must be >= 1");

  TrotterPlan plan;
  plan.step = step;
  plan.total_time_fs = total_time_fs;
  plan.n_steps = n_steps;
  plan.labels = step == PletStep::photoexcitation ? StateLabelMap::photoexcitation()
                                                  : StateLabelMap::electron_transfer();
  const auto terms = step == PletStep::photoexcitation ? interaction_terms_h1(model) : interaction_terms_h2(model);
  const double dt = total_time_fs / n_steps;
  plan.steps.reserve(n_steps);
  for (int j = 1; j <= n_steps; ++j) {
    TrotterStep s;
    s.index = j;
    s.midpoint_fs = (j - 0.5) * dt;
    for (std::size_t k = 0; k < 2; ++k) {
      s.terms[k] = {terms[k].ket_level, terms[k].amplitude(s.midpoint_fs), terms[k].phase(s.midpoint_fs)};
    }
    plan.steps.push_back(s);
  }
  return plan;
}

Operator term_unitary(const TermSample& term, double dt_fs) {
  return Operator(qutrit_space(), two_level_rotation(term.level, term.amplitude * dt_fs / kHbarEvFs, term.phase),
                  false);
}

Operator step_unitary(const TrotterPlan& plan, int j) {
  if (j < 1 || j > plan.n_steps) throw ContractViolation("step_unitary: step index out of range");
  const auto& step = plan.steps[j - 1];
  const double dt = plan.step_length_fs();
  CMatrix u = CMatrix::Identity(3, 3);
  // kPattern lists factors left to right; the rightmost acts first.
  for (auto it = TrotterPlan::kPattern.rbegin(); it != TrotterPlan::kPattern.rend(); ++it) {
    u = term_unitary(step.terms[it->term], it->fraction * dt).matrix() * u;
  }
  return Operator(qutrit_space(), std::move(u), false);
}

Trajectory trotter_trajectory(const TrotterPlan& plan, const QuantumState& psi0) {
  if (psi0.space().dim() != 3) throw ContractViolation("trotter_trajectory: initial state must be three-level");
  Trajectory traj;
  traj.labels = to_vector(plan.labels);
  traj.provenance = Provenance::trotter_ideal;
  CVector psi = psi0.amplitudes();
  traj.push_back(0, 0.0, populations(psi0));
  for (int j = 1; j <= plan.n_steps; ++j) {
    psi = step_unitary(plan, j).matrix() * psi;
    traj.push_back(j, j * plan.step_length_fs(), populations(QuantumState::normalized(psi0.space(), psi)));
  }
  return traj;
}

PulseSchedule compile_qutrit(const TrotterPlan& plan, double rabi_01, double rabi_02, RabiConvention convention) {
  if (!(rabi_01 > 0.0) || !(rabi_02 > 0.0)) throw ContractViolation("compile_qutrit: Rabi frequencies must be > 0");
  PulseSchedule schedule;
  schedule.convention = convention;
  schedule.n_steps = plan.n_steps;
  schedule.step_length_fs = plan.step_length_fs();
  schedule.labels = plan.labels;
  schedule.pulses.reserve(3 * plan.steps.size());
  const double area_scale = convention == RabiConvention::half ? 1.0 : 2.0;
  for (const auto& step : plan.steps) {
    for (const auto& sub : TrotterPlan::kPattern) {
      const TermSample& term = step.terms[sub.term];
      Pulse p;
      p.transition = term.level == 1 ? Transition::t01 : Transition::t02;
      p.rabi = term.level == 1 ? rabi_01 : rabi_02;
      // Negative amplitudes fold into a pi phase shift.
      p.phase = wrap_phase(term.amplitude < 0.0 ? term.phase + kPi : term.phase);
      const double area = std::abs(term.amplitude) * sub.fraction * schedule.step_length_fs / kHbarEvFs;
      p.duration = area_scale * area / p.rabi;
      p.rotation_angle = p.rabi * p.duration;
      p.step_index = step.index;
      p.term_id = sub.term;
      schedule.total_duration += p.duration;
      schedule.pulses.push_back(p);
    }
  }
  return schedule;
}

CMatrix pulse_hamiltonian(const Pulse& pulse, RabiConvention convention) {
  const double kappa = convention == RabiConvention::half ? pulse.rabi : 0.5 * pulse.rabi;
  const int level = pulse.transition == Transition::t01 ? 1 : 2;
  CMatrix h = CMatrix::Zero(3, 3);
  h(0, level) = std::polar(kappa, pulse.phase);
  h(level, 0) = std::conj(h(0, level));
  return h;
}

CMatrix pulse_unitary(const Pulse& pulse, RabiConvention convention) {
  const double kappa = convention == RabiConvention::half ? pulse.rabi : 0.5 * pulse.rabi;
  const int level = pulse.transition == Transition::t01 ? 1 : 2;
  return two_level_rotation(level, kappa * pulse.duration, pulse.phase);
}

Trajectory simulate_schedule_ideal(const PulseSchedule& schedule, const QuantumState& psi0) {
  if (psi0.space().dim() != 3) throw ContractViolation("simulate_schedule_ideal: initial state must be three-level");
  Trajectory traj;
  traj.labels = to_vector(schedule.labels);
  traj.provenance = Provenance::trotter_ideal;
  CVector psi = psi0.amplitudes();
  traj.push_back(0, 0.0, populations(psi0));
  std::size_t next = 0;
  for (int j = 1; j <= schedule.n_steps; ++j) {
    while (next < schedule.pulses.size() && schedule.pulses[next].step_index == j) {
      psi = pulse_unitary(schedule.pulses[next], schedule.convention) * psi;
      ++next;
    }
    traj.push_back(j, j * schedule.step_length_fs, populations(QuantumState::normalized(psi0.space(), psi)));
  }
  if (next != schedule.pulses.size()) throw ContractViolation("simulate_schedule_ideal: pulses out of step order");
  return traj;
}

nlohmann::json schedule_to_json(const PulseSchedule& schedule) {
  auto arr = nlohmann::json::array();
  for (const auto& p : schedule.pulses) {
    arr.push_back({{"transition", to_string(p.transition)},
                   {"rabi_rad_per_s", p.rabi},
                   {"phase_rad", p.phase},
                   {"duration_s", p.duration},
                   {"step_index", p.step_index},
                   {"term_id", p.term_id}});
  }
  return arr;
}

PulseSchedule schedule_from_json(const nlohmann::json& j, RabiConvention convention, double step_length_fs) {
  if (!j.is_array()) throw ParseError("pulse schedule: expected a JSON array");
  PulseSchedule s;
  s.convention = convention;
  s.step_length_fs = step_length_fs;
  for (const auto& item : j) {
    Pulse p;
    const auto tr = item.at("transition").get<std::string>();
    if (tr == "0-1") {
      p.transition = Transition::t01;
    } else if (tr == "0-2") {
      p.transition = Transition::t02;
    } else {
      throw ParseError("pulse schedule: unknown transition '" + tr + "'");
    }
    p.rabi = item.at("rabi_rad_per_s").get<double>();
    p.phase = item.at("phase_rad").get<double>();
    p.duration = item.at("duration_s").get<double>();
    p.step_index = item.at("step_index").get<int>();
    p.term_id = item.at("term_id").get<int>();
    if (p.duration < 0.0) throw ParseError("pulse schedule: negative duration");
    p.rotation_angle = p.rabi * p.duration;
    s.total_duration += p.duration;
    s.n_steps = std::max(s.n_steps, p.step_index);
    s.pulses.push_back(p);
  }
  return s;
}

// ---------------------------------------------------------------------------

namespace {

void emit_single_qubit_group(std::vector<Gate>& gates, int target, double cz, double cx, double tau_fs, int step) {
  // exp(-i (cz sz + cx sx) tau / hbar) = Rz(a) Rx(b) Rz(a) exactly.
  const double norm = std::hypot(cz, cx);
  const double theta = norm * tau_fs / kHbarEvFs;
  if (theta == 0.0) return;
  const double nz = cz / norm, nx = cx / norm;
  const Complex u00(std::cos(theta), -nz * std::sin(theta));
  const double a = -std::arg(u00);
  const double b = 2.0 * std::atan2(nx * std::sin(theta), std::abs(u00));
  if (a != 0.0) gates.push_back({GateKind::rz, target, a, step});
  if (b != 0.0) gates.push_back({GateKind::rx, target, b, step});
  if (a != 0.0) gates.push_back({GateKind::rz, target, a, step});
}

// exp(-i c P tau / hbar) for P in {XZ, ZX, ZZ} via Hadamard-conjugated XX.
void emit_two_qubit_term(std::vector<Gate>& gates, bool h0, bool h1, double c, double tau_fs, int step) {
  const double chi = c * tau_fs / kHbarEvFs;
  if (chi == 0.0) return;
  if (h0) gates.push_back({GateKind::hadamard, 0, 0.0, step});
  if (h1) gates.push_back({GateKind::hadamard, 1, 0.0, step});
  gates.push_back({GateKind::xx, 0, chi, step});
  if (h0) gates.push_back({GateKind::hadamard, 0, 0.0, step});
  if (h1) gates.push_back({GateKind::hadamard, 1, 0.0, step});
}

}  // namespace

QubitCircuit compile_qubit(const std::vector<PauliDecomposition>& steps, double step_length_fs, int substeps) {
  if (substeps < 1) throw ContractViolation("compile_qubit: substeps must be >= 1");
  if (!(step_length_fs > 0.0)) throw ContractViolation("compile_qubit: step length must be > 0");
  QubitCircuit circuit;
  circuit.n_steps = static_cast<int>(steps.size());
  circuit.step_length_fs = step_length_fs;
  circuit.substeps = substeps;
  const double dt = step_length_fs / substeps;
  for (std::size_t k = 0; k < steps.size(); ++k) {
    const auto& d = steps[k];
    const int j = static_cast<int>(k) + 1;
    for (int s = 0; s < substeps; ++s) {
      emit_single_qubit_group(circuit.gates, 0, d.zi, d.xi, 0.5 * dt, j);
      emit_single_qubit_group(circuit.gates, 1, d.iz, d.ix, 0.5 * dt, j);
      emit_two_qubit_term(circuit.gates, false, true, d.xz, 0.5 * dt, j);
      emit_two_qubit_term(circuit.gates, true, false, d.zx, 0.5 * dt, j);
      emit_two_qubit_term(circuit.gates, true, true, d.zz, dt, j);
      emit_two_qubit_term(circuit.gates, true, false, d.zx, 0.5 * dt, j);
      emit_two_qubit_term(circuit.gates, false, true, d.xz, 0.5 * dt, j);
      emit_single_qubit_group(circuit.gates, 0, d.zi, d.xi, 0.5 * dt, j);
      emit_single_qubit_group(circuit.gates, 1, d.iz, d.ix, 0.5 * dt, j);
    }
  }
  return circuit;
}

CMatrix gate_unitary(const Gate& gate) {
  const Complex mi(0.0, -1.0);
  switch (gate.kind) {
    case GateKind::rz: {
      CMatrix u = CMatrix::Zero(2, 2);
      u(0, 0) = std::polar(1.0, -0.5 * gate.angle);
      u(1, 1) = std::polar(1.0, 0.5 * gate.angle);
      return on_qubit(u, gate.target);
    }
    case GateKind::rx: {
      CMatrix u(2, 2);
      const double c = std::cos(0.5 * gate.angle), s = std::sin(0.5 * gate.angle);
      u << c, mi * s, mi * s, c;
      return on_qubit(u, gate.target);
    }
    case GateKind::hadamard:
      return on_qubit(ops::hadamard(), gate.target);
    case GateKind::xx: {
      const CMatrix xx = ops::kron(ops::pauli_x(), ops::pauli_x());
      return std::cos(gate.angle) * ops::identity(4) + mi * std::sin(gate.angle) * xx;
    }
  }
  throw ContractViolation("gate_unitary: unknown gate");
}

CMatrix circuit_step_unitary(const QubitCircuit& circuit, int j) {
  CMatrix u = ops::identity(4);
  for (const auto& g : circuit.gates) {
    if (g.step_index == j) u = gate_unitary(g) * u;
  }
  return u;
}

QuantumState embed_qutrit_state(const QuantumState& psi) {
  if (psi.space().dim() != 3) throw ContractViolation("embed_qutrit_state: expected a three-level state");
  CVector v = CVector::Zero(4);
  v.head(3) = psi.amplitudes();
  return QuantumState(two_qubit_space(), std::move(v));
}

Trajectory simulate_circuit_ideal(const QubitCircuit& circuit, const QuantumState& qutrit_or_qubits) {
  const QuantumState psi0 =
      qutrit_or_qubits.space().dim() == 3 ? embed_qutrit_state(qutrit_or_qubits) : qutrit_or_qubits;
  if (psi0.space().dim() != 4) throw ContractViolation("simulate_circuit_ideal: expected a two-qubit state");
  Trajectory traj;
  traj.labels = {"A", "D1", "D2", "leak11"};
  traj.provenance = Provenance::trotter_ideal;
  CVector psi = psi0.amplitudes();
  traj.push_back(0, 0.0, populations(psi0));
  std::size_t next = 0;
  for (int j = 1; j <= circuit.n_steps; ++j) {
    while (next < circuit.gates.size() && circuit.gates[next].step_index == j) {
      psi = gate_unitary(circuit.gates[next]) * psi;
      ++next;
    }
    traj.push_back(j, j * circuit.step_length_fs, populations(QuantumState::normalized(psi0.space(), psi)));
  }
  return traj;
}

}  // namespace plet
