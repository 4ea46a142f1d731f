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

#include "plet/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "plet/error.hpp"

namespace plet {

namespace {

double max_population_change(const std::vector<QuantumState>& a, const std::vector<QuantumState>& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const auto pa = populations(a[i]);
    const auto pb = populations(b[i]);
    for (std::size_t k = 0; k < pa.size(); ++k) worst = std::max(worst, std::abs(pa[k] - pb[k]));
  }
  return worst;
}

Trajectory make_trajectory(const std::vector<QuantumState>& states, const std::vector<double>& times,
                           std::vector<std::string> labels) {
  Trajectory traj;
  traj.labels = std::move(labels);
  traj.provenance = Provenance::oracle;
  for (std::size_t i = 0; i < states.size(); ++i) {
    traj.push_back(static_cast<int>(i), times[i], populations(states[i]));
  }
  return traj;
}

// The drive Hamiltonians are real symmetric 3x3; a fixed-size real
// eigensolver is several times faster than the general complex path and
// this loop runs ~10^5 times per trajectory.
void apply_real3(const Eigen::Matrix3d& h, double dt, CVector& psi) {
  const Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(h);
  const Eigen::Matrix3d& v = es.eigenvectors();
  Eigen::Vector3cd c = v.transpose() * Eigen::Vector3cd(psi);
  for (int i = 0; i < 3; ++i) c(i) *= std::polar(1.0, -es.eigenvalues()(i) * dt / kHbarEvFs);
  psi = v * c;
}

// One pass of midpoint-sampled exponentials; step(t_mid, dt, psi) advances
// psi across one substep.
template <class Step>
std::vector<QuantumState> timedep_pass(Step&& step, const QuantumState& psi0, double total_time, int n_samples,
                                       int substeps) {
  std::vector<QuantumState> out;
  out.reserve(n_samples + 1);
  out.push_back(psi0);
  const double dt = total_time / (static_cast<double>(n_samples) * substeps);
  CVector psi = psi0.amplitudes();
  for (int s = 0; s < n_samples; ++s) {
    for (int k = 0; k < substeps; ++k) step((static_cast<double>(s) * substeps + k + 0.5) * dt, dt, psi);
    out.push_back(QuantumState::normalized(psi0.space(), psi));
  }
  return out;
}

template <class Step>
EvolutionResult refine(Step&& step, const QuantumState& psi0, double total_time_fs, int n_samples,
                       std::vector<std::string> labels, const RefinementControl& control) {
  if (n_samples < 1 || !(total_time_fs > 0.0)) throw ContractViolation("evolve_timedep: need T > 0 and >= 1 sample");
  int substeps = control.initial_substeps;
  auto coarse = timedep_pass(step, psi0, total_time_fs, n_samples, substeps);
  double change = 0.0;
  for (int d = 0; d < control.max_doublings; ++d) {
    substeps *= 2;
    auto fine = timedep_pass(step, psi0, total_time_fs, n_samples, substeps);
    change = max_population_change(coarse, fine);
    coarse = std::move(fine);
    if (change < control.tolerance) {
      EvolutionResult result;
      result.states = std::move(coarse);
      result.substeps_per_sample = substeps;
      result.last_refinement_change = change;
      result.trajectory = make_trajectory(result.states, step_times(total_time_fs, n_samples), std::move(labels));
      return result;
    }
  }
  std::ostringstream msg;
  msg << "evolve_timedep: no convergence after " << control.max_doublings << " doublings (" << substeps
      << " substeps per sample, last population change " << change << ", tolerance " << control.tolerance << ")";
  throw NumericalGuardError(msg.str());
}

}  // namespace

std::vector<double> step_times(double total_time_fs, int n_steps) {
  std::vector<double> t(n_steps + 1);
  for (int j = 0; j <= n_steps; ++j) t[j] = j * total_time_fs / n_steps;
  return t;
}

EvolutionResult evolve_static(const Operator& h, const QuantumState& psi0, const std::vector<double>& times_fs,
                              std::vector<std::string> labels) {
  if (!h.hermitian()) throw ContractViolation("evolve_static: hamiltonian must be hermitian");
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h.matrix());
  const CMatrix& v = es.eigenvectors();
  const CVector c0 = v.adjoint() * psi0.amplitudes();
  EvolutionResult result;
  result.states.reserve(times_fs.size());
  for (double t : times_fs) {
    CVector c(c0.size());
    for (Eigen::Index i = 0; i < c0.size(); ++i) c(i) = std::polar(1.0, -es.eigenvalues()(i) * t / kHbarEvFs) * c0(i);
    result.states.push_back(QuantumState::normalized(psi0.space(), v * c));
  }
  result.trajectory = make_trajectory(result.states, times_fs, std::move(labels));
  return result;
}

EvolutionResult evolve_timedep(const std::function<Operator(double)>& h_of_t, const QuantumState& psi0,
                               double total_time_fs, int n_samples, std::vector<std::string> labels,
                               RefinementControl control) {
  auto step = [&h_of_t](double t, double dt, CVector& psi) {
    const Operator h = h_of_t(t);
    if (!h.hermitian()) throw ContractViolation("evolve_timedep: generator must be flagged hermitian");
    const CMatrix& m = h.matrix();
    if (m.rows() == 3 && m.imag().cwiseAbs().maxCoeff() == 0.0) {
      apply_real3(m.real(), dt, psi);
    } else {
      psi = matrix_exponential_step(h, dt).matrix() * psi;
    }
  };
  return refine(step, psi0, total_time_fs, n_samples, std::move(labels), control);
}

Trajectory sample_at_steps(const Trajectory& traj, const TrotterPlan& plan) {
  const auto targets = step_times(plan.total_time_fs, plan.n_steps);
  Trajectory out;
  out.labels = traj.labels;
  out.provenance = traj.provenance;
  const double tol = 1e-9 * std::max(1.0, plan.total_time_fs);
  std::size_t cursor = 0;
  for (int j = 0; j <= plan.n_steps; ++j) {
    const double t = targets[j];
    while (cursor < traj.size() && traj.times_fs[cursor] < t - tol) ++cursor;
    if (cursor == traj.size() || std::abs(traj.times_fs[cursor] - t) > tol) {
      std::ostringstream msg;
      msg << "sample_at_steps: trajectory has no sample at t = " << t << " fs (step " << j << ")";
      throw ContractViolation(msg.str());
    }
    out.push_back(j, t, traj.populations[cursor]);
  }
  return out;
}

EvolutionResult reference_dynamics(const PletModel& model, const TrotterPlan& plan, const QuantumState& psi0,
                                   RefinementControl control) {
  std::vector<std::string> labels(plan.labels.labels().begin(), plan.labels.labels().end());
  if (plan.step == PletStep::electron_transfer) {
    return evolve_static(h2_lab(model), psi0, step_times(plan.total_time_fs, plan.n_steps), std::move(labels));
  }
  // Same generator as h1_lab, assembled in place: this loop dominates the
  // cost of every photo-excitation scan.
  const double omega = model.laser_frequency();
  const double k1 = dipole_coupling_ev(model.mu1, model.e0 * std::cos(model.theta));
  const double k2 = dipole_coupling_ev(model.mu2, model.e0 * std::sin(model.theta));
  Eigen::Matrix3d h = Eigen::Matrix3d::Zero();
  h(0, 0) = model.omega_g;
  h(1, 1) = model.omega_d1;
  h(2, 2) = model.omega_d2;
  auto step = [&](double t, double dt, CVector& psi) {
    const double s = std::sin(omega * t);
    h(0, 1) = h(1, 0) = k1 * s;
    h(0, 2) = h(2, 0) = k2 * s;
    apply_real3(h, dt, psi);
  };
  return refine(step, psi0, plan.total_time_fs, plan.n_steps, std::move(labels), control);
}

}  // namespace plet
