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

#include "plet/lindblad.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "plet/error.hpp"

namespace plet {

namespace {

constexpr double kTraceGuard = 1e-6;
constexpr int kQutritStepsPerPulse = 100;
constexpr int kMsStepsPerLoop = 200;
constexpr double kFockGuard = 1e-4;

SparseCMatrix to_sparse(const CMatrix& m) {
  if (m.size() == 0) return {};
  return m.sparseView(Complex(1.0), 1e-300);
}

double min_eigenvalue(const CMatrix& rho) {
  const CMatrix herm = 0.5 * (rho + rho.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> es(herm, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

double rate(double tau) { return std::isinf(tau) ? 0.0 : 1.0 / tau; }

CMatrix embed_on_mode(const CMatrix& mode_op) { return ops::kron(ops::identity(4), mode_op); }

double top_fock_population(const CMatrix& mode_rho) {
  const auto n = mode_rho.rows();
  return mode_rho(n - 1, n - 1).real();
}

// Reduced mode density matrix of a (q0, q1, mode) state.
CMatrix mode_marginal(const CMatrix& rho, int mode_dim) {
  CMatrix out = CMatrix::Zero(mode_dim, mode_dim);
  for (int q = 0; q < 4; ++q) out += rho.block(q * mode_dim, q * mode_dim, mode_dim, mode_dim);
  return out;
}

}  // namespace

void NoiseModelQutrit::validate() const {
  if (!(tau1 > 0.0) || !(tau2 > 0.0)) throw ContractViolation("NoiseModelQutrit: coherence times must be > 0");
}

void NoiseModelQubit::validate() const {
  if (!(tau_m > 0.0)) throw ContractViolation("NoiseModelQubit: tau_m must be > 0");
  if (!(gamma_oop >= 0.0) || !(gamma_ip >= 0.0)) throw ContractViolation("NoiseModelQubit: heating rates must be >= 0");
  if (n_max < 2) throw ContractViolation("NoiseModelQubit: n_max must be >= 2");
  if (!(sideband_rabi > 0.0)) throw ContractViolation("NoiseModelQubit: sideband Rabi frequency must be > 0");
}

void IntegrationDiagnostics::merge(const IntegrationDiagnostics& other) {
  max_trace_drift = std::max(max_trace_drift, other.max_trace_drift);
  max_hermiticity_error = std::max(max_hermiticity_error, other.max_hermiticity_error);
  min_eigenvalue = std::min(min_eigenvalue, other.min_eigenvalue);
  rk4_steps += other.rk4_steps;
}

CMatrix lindblad_rhs(const CMatrix& rho, const CMatrix& h, const CollapseSet& collapse, double hbar) {
  if (rho.rows() != h.rows() || rho.rows() != collapse.space.dim()) {
    throw ContractViolation("lindblad_rhs: dimension mismatch");
  }
  const Complex i(0.0, 1.0);
  CMatrix out = -(i / hbar) * (h * rho - rho * h);
  for (const auto& l : collapse.operators) {
    const CMatrix ldl = l.adjoint() * l;
    out += l * rho * l.adjoint() - 0.5 * (ldl * rho + rho * ldl);
  }
  return out;
}

LindbladIntegrator::LindbladIntegrator(int dim, const std::vector<CMatrix>& collapse) : dim_(dim) {
  CMatrix damping = CMatrix::Zero(dim, dim);
  for (const auto& l : collapse) {
    if (l.rows() != dim) throw ContractViolation("LindbladIntegrator: collapse operator dimension mismatch");
    if (l.cwiseAbs().maxCoeff() == 0.0) continue;
    collapse_.push_back(to_sparse(l));
    collapse_adj_.push_back(to_sparse(l.adjoint()));
    damping += 0.5 * l.adjoint() * l;
  }
  damping_ = to_sparse(damping);
}

CMatrix LindbladIntegrator::rhs(const CMatrix& rho, const HamiltonianSegment& segment, double t) const {
  // rho' = -i (Heff rho - rho Heff^dag) + sum L rho L^dag with
  // Heff = H - (i/2) sum L^dag L; for hermitian rho the first term is
  // -i (A - A^dag), A = Heff rho.
  const Complex i(0.0, 1.0);
  CMatrix a = segment.h_static * rho;
  if (segment.h_rotating.size() != 0) {
    const Complex f = std::polar(1.0, segment.rotating_freq * t);
    const CMatrix kr = segment.h_rotating * rho;
    const CMatrix kdr = segment.h_rotating.adjoint() * rho;
    a += f * kr + std::conj(f) * kdr;
  }
  if (damping_.nonZeros() > 0) a -= i * (damping_ * rho);
  CMatrix out = -i * (a - a.adjoint());
  for (std::size_t k = 0; k < collapse_.size(); ++k) {
    const CMatrix lr = collapse_[k] * rho;
    const CMatrix lrl = collapse_[k] * lr.adjoint();  // L (L rho)^dag = L rho L^dag
    out += lrl.adjoint();
  }
  return out;
}

void LindbladIntegrator::evolve(CMatrix& rho, const HamiltonianSegment& segment, double default_max_step) {
  if (rho.rows() != dim_) throw ContractViolation("LindbladIntegrator: state dimension mismatch");
  if (segment.duration < 0.0) throw ContractViolation("LindbladIntegrator: negative segment duration");
  if (segment.duration == 0.0) return;
  const double max_step = segment.max_step > 0.0 ? segment.max_step : default_max_step;
  if (!(max_step > 0.0)) throw ContractViolation("LindbladIntegrator: max step must be > 0");

  // Sparse copies of the segment operators keep the RHS cost linear in the
  // number of nonzeros.
  const SparseCMatrix hs = to_sparse(segment.h_static);
  const SparseCMatrix hr = segment.h_rotating.size() ? to_sparse(segment.h_rotating) : SparseCMatrix();
  const SparseCMatrix hr_adj = segment.h_rotating.size() ? to_sparse(segment.h_rotating.adjoint()) : SparseCMatrix();
  const bool rotating = segment.h_rotating.size() != 0 && hr.nonZeros() > 0;

  const Complex i(0.0, 1.0);
  auto f = [&](const CMatrix& r, double t) {
    CMatrix a = hs.nonZeros() ? CMatrix(hs * r) : CMatrix::Zero(dim_, dim_);
    if (rotating) {
      const Complex ph = std::polar(1.0, segment.rotating_freq * t);
      a += ph * (hr * r) + std::conj(ph) * (hr_adj * r);
    }
    if (damping_.nonZeros() > 0) a -= i * (damping_ * r);
    CMatrix out = -i * (a - a.adjoint());
    for (std::size_t k = 0; k < collapse_.size(); ++k) {
      const CMatrix lr = collapse_[k] * r;
      const CMatrix lrl = collapse_[k] * lr.adjoint();
      out += lrl.adjoint();
    }
    return out;
  };

  const long n = std::max<long>(1, static_cast<long>(std::ceil(segment.duration / max_step - 1e-9)));
  const double h = segment.duration / static_cast<double>(n);
  for (long s = 0; s < n; ++s) {
    const double t = s * h;
    const CMatrix k1 = f(rho, t);
    const CMatrix k2 = f(rho + 0.5 * h * k1, t + 0.5 * h);
    const CMatrix k3 = f(rho + 0.5 * h * k2, t + 0.5 * h);
    const CMatrix k4 = f(rho + h * k3, t + h);
    rho += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    // The -i(A - A^dag) form is only right for hermitian rho; an
    // anti-hermitian roundoff part would evolve under -[D, E] and grow
    // exponentially at the spread of the damping rates. Project it out.
    diag_.max_hermiticity_error = std::max(diag_.max_hermiticity_error, hermiticity_error(rho));
    rho = (0.5 * (rho + rho.adjoint())).eval();

    const double drift = std::abs(rho.trace() - Complex(1.0));
    diag_.max_trace_drift = std::max(diag_.max_trace_drift, drift);
    if (drift > kTraceGuard) {
      std::ostringstream msg;
      msg << "Lindblad integration: trace drift " << drift << " exceeds " << kTraceGuard << " (step too large)";
      throw NumericalGuardError(msg.str());
    }
  }
  diag_.rk4_steps += n;
  diag_.min_eigenvalue = std::min(diag_.min_eigenvalue, min_eigenvalue(rho));
}

MasterRun integrate_master(const std::vector<HamiltonianSegment>& segments, const DensityMatrix& rho0,
                           const CollapseSet& collapse, double dt_max) {
  if (!(dt_max > 0.0)) throw ContractViolation("integrate_master: dt_max must be > 0");
  if (collapse.space.dim() != rho0.space().dim()) throw ContractViolation("integrate_master: space mismatch");
  LindbladIntegrator engine(rho0.space().dim(), collapse.operators);
  MasterRun run;
  CMatrix rho = rho0.matrix();
  for (const auto& seg : segments) {
    if (seg.h_static.rows() != rho.rows()) throw ContractViolation("integrate_master: segment dimension mismatch");
    engine.evolve(rho, seg, dt_max);
    run.total_time += seg.duration;
    run.boundary_states.push_back(rho);
  }
  run.diagnostics = engine.diagnostics();
  return run;
}

CollapseSet qutrit_collapse(const NoiseModelQutrit& noise) {
  noise.validate();
  CollapseSet set{qutrit_space(), {}};
  for (auto [level, tau] : {std::pair{1, noise.tau1}, std::pair{2, noise.tau2}}) {
    CMatrix l = CMatrix::Zero(3, 3);
    l(0, 0) = 1.0;
    l(level, level) = -1.0;
    set.operators.push_back(std::sqrt(rate(tau)) * l);
  }
  return set;
}

std::vector<CMatrix> mode_collapse(double tau_m, double gamma, int dim) {
  const CMatrix a = ops::annihilation(dim);
  const CMatrix ad = a.adjoint();
  return {std::sqrt(2.0 * rate(tau_m)) * (ad * a), std::sqrt(gamma) * ad, std::sqrt(gamma) * a};
}

NoisyRun simulate_qutrit_noisy(const PulseSchedule& schedule, const NoiseModelQutrit& noise,
                               const QuantumState& psi0) {
  if (psi0.space().dim() != 3) throw ContractViolation("simulate_qutrit_noisy: expected a three-level state");
  const CollapseSet collapse = qutrit_collapse(noise);
  LindbladIntegrator engine(3, collapse.operators);

  NoisyRun run;
  run.trajectory.labels = {schedule.labels.labels().begin(), schedule.labels.labels().end()};
  run.trajectory.provenance = Provenance::noisy_pred;
  CMatrix rho = DensityMatrix::pure(psi0).matrix();
  run.trajectory.push_back(0, 0.0, populations(DensityMatrix(qutrit_space(), rho, DensityMatrix::Unchecked{})));

  std::size_t next = 0;
  for (int j = 1; j <= schedule.n_steps; ++j) {
    while (next < schedule.pulses.size() && schedule.pulses[next].step_index == j) {
      const Pulse& p = schedule.pulses[next];
      HamiltonianSegment seg{pulse_hamiltonian(p, schedule.convention), {}, 0.0, p.duration,
                             p.duration / kQutritStepsPerPulse};
      engine.evolve(rho, seg, p.duration / kQutritStepsPerPulse);
      run.total_lab_time += p.duration;
      ++next;
    }
    run.trajectory.push_back(j, j * schedule.step_length_fs,
                             populations(DensityMatrix(qutrit_space(), rho, DensityMatrix::Unchecked{})));
  }
  run.diagnostics = engine.diagnostics();
  return run;
}

MsSegment ms_segment(double chi, double sideband_rabi, int mode_dim) {
  if (!(sideband_rabi > 0.0)) throw ContractViolation("ms_segment: sideband Rabi frequency must be > 0");
  if (mode_dim < 2) throw ContractViolation("ms_segment: mode dimension must be >= 2");
  MsSegment ms;
  ms.chi = chi;
  const int dim = 4 * mode_dim;
  ms.segment.h_static = CMatrix::Zero(dim, dim);
  if (chi == 0.0) return ms;

  // chi = pi Omega^2 / delta^2 for one closed loop of duration 2 pi / delta.
  ms.detuning = sideband_rabi * std::sqrt(kPi / std::abs(chi));
  ms.duration = 2.0 * kPi / ms.detuning;
  const double sign = chi > 0.0 ? 1.0 : -1.0;
  const CMatrix spin = ops::kron(ops::pauli_x(), ops::identity(2)) + sign * ops::kron(ops::identity(2), ops::pauli_x());
  ms.segment.h_rotating = 0.5 * sideband_rabi * ops::kron(spin, ops::annihilation(mode_dim));
  ms.segment.rotating_freq = ms.detuning;
  ms.segment.duration = ms.duration;
  ms.segment.max_step = ms.duration / kMsStepsPerLoop;
  return ms;
}

double qubit_circuit_duration(const QubitCircuit& circuit, double sideband_rabi) {
  double total = 0.0;
  for (const auto& g : circuit.gates) {
    if (g.kind == GateKind::xx && g.angle != 0.0) total += 2.0 * std::sqrt(kPi * std::abs(g.angle)) / sideband_rabi;
  }
  return total;
}

NoisyRun simulate_qubit_noisy(const QubitCircuit& circuit, const NoiseModelQubit& noise, const QuantumState& psi0) {
  noise.validate();
  const QuantumState psi = psi0.space().dim() == 3 ? embed_qutrit_state(psi0) : psi0;
  if (psi.space().dim() != 4) throw ContractViolation("simulate_qubit_noisy: expected a two-qubit state");
  if (std::norm(psi[3]) > 1e-12) throw ContractViolation("simulate_qubit_noisy: initial state leaks into |11>");

  const int md = noise.mode_dim();
  const HilbertSpace qm_space({{"q0", 2}, {"q1", 2}, {"oop", md}});
  const std::vector<std::string> qubit_labels{"q0", "q1"};

  std::vector<CMatrix> oop_ops;
  for (const auto& l : mode_collapse(noise.tau_m, noise.gamma_oop, md)) oop_ops.push_back(embed_on_mode(l));
  LindbladIntegrator qm_engine(4 * md, oop_ops);
  LindbladIntegrator ip_engine(md, mode_collapse(noise.tau_m, noise.gamma_ip, md));

  // Motional modes start in the vacuum. The in-phase mode never couples to
  // the qubits, so the joint state stays a product and it is carried as its
  // own factor.
  CMatrix vacuum = CMatrix::Zero(md, md);
  vacuum(0, 0) = 1.0;
  CMatrix rho = ops::kron(DensityMatrix::pure(psi).matrix(), vacuum);
  CMatrix rho_ip = vacuum;

  NoisyRun run;
  run.trajectory.labels = {"A", "D1", "D2", "leak11"};
  run.trajectory.provenance = Provenance::noisy_pred;
  auto record = [&](int j) {
    const DensityMatrix full(qm_space, rho, DensityMatrix::Unchecked{});
    run.trajectory.push_back(j, j * circuit.step_length_fs, populations(partial_trace(full, qubit_labels)));
  };
  record(0);

  const CMatrix id_mode = ops::identity(md);
  std::size_t next = 0;
  for (int j = 1; j <= circuit.n_steps; ++j) {
    while (next < circuit.gates.size() && circuit.gates[next].step_index == j) {
      const Gate& g = circuit.gates[next++];
      if (g.kind != GateKind::xx) {
        const CMatrix u = ops::kron(gate_unitary(g), id_mode);
        rho = u * rho * u.adjoint();
        continue;
      }
      const MsSegment ms = ms_segment(g.angle, noise.sideband_rabi, md);
      qm_engine.evolve(rho, ms.segment, ms.segment.max_step);
      HamiltonianSegment idle{CMatrix::Zero(md, md), {}, 0.0, ms.duration, ms.segment.max_step};
      ip_engine.evolve(rho_ip, idle, idle.max_step);
      run.total_lab_time += ms.duration;
    }
    // Only the out-of-phase mode feeds back on the qubits, so only its
    // truncation is guarded. The in-phase mode heats without bound
    // (d<n>/dt = gamma_ip) and is reported instead.
    const double top = top_fock_population(mode_marginal(rho, md));
    run.max_fock_top_population = std::max(run.max_fock_top_population, top);
    run.max_fock_top_population_ip = std::max(run.max_fock_top_population_ip, top_fock_population(rho_ip));
    if (top > kFockGuard) {
      std::ostringstream msg;
      msg << "simulate_qubit_noisy: top Fock level population " << top << " exceeds " << kFockGuard
          << " at step " << j << "; raise n_max";
      throw NumericalGuardError(msg.str());
    }
    record(j);
  }
  run.diagnostics = qm_engine.diagnostics();
  run.diagnostics.merge(ip_engine.diagnostics());
  return run;
}

}  // namespace plet
