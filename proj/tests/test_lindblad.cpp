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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "plet/error.hpp"
#include "plet/lindblad.hpp"
#include "plet/model.hpp"
#include "plet/trotter.hpp"
#include "test_support.hpp"

using namespace plet;
using plet::testing::max_abs;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double max_diff(const Trajectory& a, const Trajectory& b, std::size_t columns = 3) {
  REQUIRE(a.size() == b.size());
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k = 0; k < columns; ++k) m = std::max(m, std::abs(a.populations[i][k] - b.populations[i][k]));
  return m;
}

double mean_abs_diff(const Trajectory& a, const Trajectory& b) {
  double s = 0.0;
  int n = 0;
  for (std::size_t i = 1; i < a.size(); ++i)
    for (int k = 0; k < 3; ++k, ++n) s += std::abs(a.populations[i][k] - b.populations[i][k]);
  return s / n;
}

PulseSchedule fig3_schedule(int n_steps = 70) {
  const PletModel m;
  const auto plan = build_plan(m, PletStep::electron_transfer, n_steps * 0.471, n_steps);
  return compile_qutrit(plan, 2.0 * kPi * 17.30e3, 2.0 * kPi * 17.49e3);
}

QubitCircuit fig3_circuit(int n_steps) {
  const auto d = pauli_decompose(qubit_embed(h2_shifted(PletModel{})));
  return compile_qubit(std::vector<PauliDecomposition>(n_steps, d), 0.471);
}

// Channel of a noise-free MS segment on the two qubits, mode from vacuum,
// probed with the 16 products of {|0>, |1>, |+>, |+i>}. These span all
// two-qubit operators, so agreement on them pins the whole channel.
double ms_channel_error(double chi, double omega, int mode_dim) {
  const MsSegment ms = ms_segment(chi, omega, mode_dim);
  LindbladIntegrator engine(4 * mode_dim, {});
  const CMatrix xx = ops::kron(ops::pauli_x(), ops::pauli_x());
  const CMatrix u = plet::testing::expm_taylor(Complex(0, -chi) * xx);
  CMatrix vac = CMatrix::Zero(mode_dim, mode_dim);
  vac(0, 0) = 1.0;
  const double r = 1.0 / std::sqrt(2.0);
  std::vector<CVector> probes(4, CVector::Zero(2));
  probes[0](0) = 1.0;
  probes[1](1) = 1.0;
  probes[2] << r, r;
  probes[3] << r, Complex(0, r);
  double worst = 0.0;
  for (const auto& a : probes) {
    for (const auto& b : probes) {
      const CVector ab = ops::kron(a, b);
      const CMatrix in = ab * ab.adjoint();
      CMatrix rho = ops::kron(in, vac);
      engine.evolve(rho, ms.segment, ms.segment.max_step);
      CMatrix reduced = CMatrix::Zero(4, 4);
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) reduced(i, j) = rho.block(i * mode_dim, j * mode_dim, mode_dim, mode_dim).trace();
      worst = std::max(worst, max_abs(reduced - u * in * u.adjoint()));
    }
  }
  return worst;
}

}  // namespace

TEST_CASE("noise model validation") {
  CHECK_NOTHROW(NoiseModelQutrit{}.validate());
  CHECK_THROWS_AS((NoiseModelQutrit{0.0, 1.0}.validate()), ContractViolation);
  NoiseModelQubit q;
  CHECK_NOTHROW(q.validate());
  CHECK(q.mode_dim() == 8);
  q.n_max = 1;
  CHECK_THROWS_AS(q.validate(), ContractViolation);
  q = NoiseModelQubit{};
  q.gamma_ip = -1.0;
  CHECK_THROWS_AS(q.validate(), ContractViolation);
  q = NoiseModelQubit{};
  q.tau_m = kInf;
  CHECK_NOTHROW(q.validate());
}

TEST_CASE("master equation right-hand side") {
  const HilbertSpace qubit = HilbertSpace::single("q", 2);
  CollapseSet none{qubit, {}};
  const CMatrix plus = CMatrix::Constant(2, 2, 0.5);
  CHECK(max_abs(lindblad_rhs(plus, CMatrix::Zero(2, 2), none)) == 0.0);

  const double tau = 0.3;
  CollapseSet deph{qubit, {std::sqrt(1.0 / tau) * ops::pauli_z()}};
  const CMatrix d = lindblad_rhs(plus, CMatrix::Zero(2, 2), deph);
  CHECK(d(0, 1).real() == doctest::Approx(-(2.0 / tau) * 0.5).epsilon(1e-14));
  CHECK(std::abs(d(0, 0)) < 1e-15);

  std::mt19937 rng(3);
  for (int k = 0; k < 20; ++k) {
    const int dim = 2 + k % 5;
    const HilbertSpace s = HilbertSpace::single("s", dim);
    CollapseSet set{s, {}};
    for (int c = 0; c < 3; ++c) {
      CMatrix l = plet::testing::random_hermitian(rng, dim);
      l(0, dim - 1) += 0.7;  // break hermiticity
      set.operators.push_back(l);
    }
    const CMatrix rho = plet::testing::random_density(rng, dim);
    const CMatrix h = plet::testing::random_hermitian(rng, dim);
    const CMatrix out = lindblad_rhs(rho, h, set);
    CHECK(std::abs(out.trace()) < 1e-12);
    CHECK(hermiticity_error(out) < 1e-12);

    // The integrator's factored form agrees with the textbook one.
    LindbladIntegrator engine(dim, set.operators);
    const CMatrix hr = plet::testing::random_hermitian(rng, dim);
    HamiltonianSegment seg{h, hr, 3.0, 1.0, 0.0};
    const double t = 0.4;
    const Complex f = std::polar(1.0, 3.0 * t);
    const CMatrix h_t = h + f * hr + std::conj(f) * hr.adjoint();
    CHECK(max_abs(engine.rhs(rho, seg, t) - lindblad_rhs(rho, h_t, set)) < 1e-12);
  }
  CHECK_THROWS_AS(lindblad_rhs(CMatrix::Zero(3, 3), CMatrix::Zero(3, 3), none), ContractViolation);
}

TEST_CASE("dephasing oracle") {
  const HilbertSpace qubit = HilbertSpace::single("q", 2);
  const double tau = 1e-3;
  CollapseSet deph{qubit, {std::sqrt(1.0 / tau) * ops::pauli_z()}};
  CMatrix rho0(2, 2);
  rho0 << 0.7, Complex(0.3, 0.2), Complex(0.3, -0.2), 0.3;
  std::vector<HamiltonianSegment> segs(10, HamiltonianSegment{CMatrix::Zero(2, 2), {}, 0.0, 1e-4, 0.0});
  const auto run = integrate_master(segs, DensityMatrix(qubit, rho0), deph, 1e-6);
  CHECK(run.total_time == doctest::Approx(1e-3).epsilon(1e-12));
  for (std::size_t k = 0; k < segs.size(); ++k) {
    const double t = (k + 1) * 1e-4;
    const CMatrix& r = run.boundary_states[k];
    CHECK(std::abs(r(0, 0) - 0.7) < 1e-12);
    CHECK(std::abs(r(0, 1) - rho0(0, 1) * std::exp(-2.0 * t / tau)) < 1e-6);
  }
  CHECK(run.diagnostics.max_trace_drift < 1e-9);
}

TEST_CASE("heating oracle") {
  const int dim = 8;
  const HilbertSpace mode = HilbertSpace::single("m", dim);
  const double gamma = 100.0;
  CollapseSet heat{mode, mode_collapse(kInf, gamma, dim)};
  CHECK(max_abs(heat.operators[0]) == 0.0);
  CMatrix vac = CMatrix::Zero(dim, dim);
  vac(0, 0) = 1.0;
  const double t = 0.01 / gamma;
  const auto run = integrate_master({HamiltonianSegment{CMatrix::Zero(dim, dim), {}, 0.0, t, 0.0}},
                                    DensityMatrix(mode, vac), heat, t / 200);
  double n = 0.0;
  for (int k = 0; k < dim; ++k) n += k * run.boundary_states[0](k, k).real();
  CHECK(n == doctest::Approx(gamma * t).epsilon(0.02));

  // Dephasing of the mode leaves Fock populations alone.
  const auto dm = mode_collapse(8e-3, 0.0, dim);
  CHECK(max_abs(dm[0] - CMatrix(dm[0].diagonal().asDiagonal())) == 0.0);
  CHECK(dm[0](3, 3).real() == doctest::Approx(3.0 * std::sqrt(2.0 / 8e-3)).epsilon(1e-14));
}

TEST_CASE("trace guard") {
  const HilbertSpace qubit = HilbertSpace::single("q", 2);
  CollapseSet strong{qubit, {std::sqrt(1e6) * ops::pauli_z(), std::sqrt(1e6) * ops::pauli_x()}};
  CMatrix rho0(2, 2);
  rho0 << 0.6, 0.4, 0.4, 0.4;
  const HamiltonianSegment seg{CMatrix::Zero(2, 2), {}, 0.0, 1.0, 0.0};
  CHECK_THROWS_AS(integrate_master({seg}, DensityMatrix(qubit, rho0), strong, 1e-3), NumericalGuardError);
  CHECK_THROWS_AS(integrate_master({seg}, DensityMatrix(qubit, rho0), strong, 0.0), ContractViolation);
}

TEST_CASE("noiseless qutrit playback reproduces the ideal schedule") {
  const auto s = fig3_schedule();
  const auto psi0 = initial_superposition(0.5 * kPi);
  const auto run = simulate_qutrit_noisy(s, NoiseModelQutrit{kInf, kInf}, psi0);
  CHECK(max_diff(run.trajectory, simulate_schedule_ideal(s, psi0)) < 1e-7);
  CHECK(run.total_lab_time == doctest::Approx(s.total_duration).epsilon(1e-12));
  CHECK(run.trajectory.provenance == Provenance::noisy_pred);
}

TEST_CASE("noisy qutrit playback") {
  const auto s = fig3_schedule();
  const auto psi0 = initial_superposition(0.5 * kPi);
  const auto ideal = simulate_schedule_ideal(s, psi0);
  const auto run = simulate_qutrit_noisy(s, NoiseModelQutrit{}, psi0);
  CHECK(run.total_lab_time * 1e3 == doctest::Approx(0.226).epsilon(0.05));
  CHECK(run.diagnostics.max_trace_drift < 1e-9);
  CHECK(run.diagnostics.max_hermiticity_error < 1e-9);
  CHECK(run.diagnostics.min_eigenvalue > -1e-7);
  CHECK_NOTHROW(run.trajectory.validate());
  const double base = max_diff(run.trajectory, ideal);
  CHECK(base > 0.0);
  CHECK(base < 5e-3);

  // Ten times the dephasing never helps.
  const auto worse = simulate_qutrit_noisy(s, NoiseModelQutrit{0.030, 0.0075}, psi0);
  auto end_dev = [&](const Trajectory& t) {
    double m = 0.0;
    for (int k = 0; k < 3; ++k) m = std::max(m, std::abs(t.populations.back()[k] - ideal.populations.back()[k]));
    return m;
  };
  CHECK(end_dev(worse.trajectory) >= end_dev(run.trajectory));
  CHECK(mean_abs_diff(worse.trajectory, ideal) > mean_abs_diff(run.trajectory, ideal));
}

TEST_CASE("Molmer-Sorensen segment") {
  const double omega = 2.0 * kPi * 4.475e3;
  const auto zero = ms_segment(0.0, omega, 6);
  CHECK(zero.duration == 0.0);
  CHECK(zero.segment.duration == 0.0);

  // Single closed loop: duration 2 pi / delta with delta = Omega sqrt(pi / |chi|).
  const auto ms = ms_segment(0.3, omega, 6);
  CHECK(ms.duration == doctest::Approx(2.0 * std::sqrt(kPi * 0.3) / omega).epsilon(1e-14));
  CHECK(ms.segment.max_step == doctest::Approx(ms.duration / 200).epsilon(1e-14));

  const double d64 = ms_segment(kPi / 64, omega, 6).duration;
  const double d16 = ms_segment(kPi / 16, omega, 6).duration;
  const double d4 = ms_segment(kPi / 4, omega, 6).duration;
  CHECK(d16 / d64 == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(d4 / d16 == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(ms_segment(1e-9, omega, 6).duration < 1e-7);

  // A maximally entangling loop displaces the mode further (spin eigenvalue
  // 2 times a coherent amplitude near 1), so it gets a larger cutoff.
  for (double chi : {kPi / 64, kPi / 16, kPi / 4, -0.2}) {
    const double err = ms_channel_error(chi, omega, std::abs(chi) > 0.5 ? 16 : 8);
    MESSAGE("chi " << chi << " channel error " << err);
    CHECK(err < 1e-6);
  }
  CHECK_THROWS_AS(ms_segment(0.1, 0.0, 6), ContractViolation);
  CHECK_THROWS_AS(ms_segment(0.1, omega, 1), ContractViolation);
}

TEST_CASE("qubit lab duration bookkeeping") {
  const auto c = fig3_circuit(70);
  const double omega = NoiseModelQubit{}.sideband_rabi;
  double sum = 0.0;
  for (const auto& g : c.gates)
    if (g.kind == GateKind::xx) sum += ms_segment(g.angle, omega, 4).duration;
  CHECK(qubit_circuit_duration(c, omega) == doctest::Approx(sum).epsilon(1e-12));
  const double ms_total = qubit_circuit_duration(c, omega) * 1e3;
  MESSAGE("qubit circuit lab time " << ms_total << " ms");
  CHECK(ms_total > 17.92 / 2);
  CHECK(ms_total < 17.92 * 2);
}

TEST_CASE("noiseless qubit playback reproduces the ideal circuit") {
  NoiseModelQubit quiet;
  quiet.tau_m = kInf;
  quiet.gamma_oop = quiet.gamma_ip = 0.0;
  const auto c = fig3_circuit(8);
  const auto psi0 = initial_superposition(0.5 * kPi);
  const auto run = simulate_qubit_noisy(c, quiet, psi0);
  CHECK(max_diff(run.trajectory, simulate_circuit_ideal(c, psi0), 4) < 1e-6);
  CHECK(run.diagnostics.max_trace_drift < 1e-9);
  CHECK(run.diagnostics.max_hermiticity_error < 1e-9);
  CHECK(run.diagnostics.min_eigenvalue > -1e-7);
  CHECK(run.total_lab_time == doctest::Approx(qubit_circuit_duration(c, quiet.sideband_rabi)).epsilon(1e-12));
}

TEST_CASE("noisy qubit playback") {
  const auto c = fig3_circuit(8);
  const auto psi0 = initial_superposition(0.5 * kPi);
  const auto ideal = simulate_circuit_ideal(c, psi0);
  NoiseModelQubit n5;
  n5.n_max = 5;
  const auto r5 = simulate_qubit_noisy(c, n5, psi0);
  const auto r7 = simulate_qubit_noisy(c, NoiseModelQubit{}, psi0);
  CHECK(max_diff(r5.trajectory, r7.trajectory, 4) < 1e-4);
  CHECK(max_diff(r7.trajectory, ideal, 3) > 1e-5);
  CHECK(r7.diagnostics.max_trace_drift < 1e-9);
  CHECK(r7.diagnostics.min_eigenvalue > -1e-7);
  CHECK(r7.max_fock_top_population < 1e-4);
  CHECK(r7.max_fock_top_population_ip > 0.0);
  CHECK_NOTHROW(r7.trajectory.validate());
  for (const auto& p : r7.trajectory.populations) CHECK(p[0] + p[1] + p[2] + p[3] == doctest::Approx(1.0).epsilon(1e-9));

  // Driving a tiny mode hard trips the cutoff guard.
  NoiseModelQubit hot;
  hot.n_max = 2;
  hot.gamma_oop = 1e4;
  CHECK_THROWS_AS(simulate_qubit_noisy(c, hot, psi0), NumericalGuardError);

  QuantumState leaky = QuantumState::basis(two_qubit_space(), 3);
  CHECK_THROWS_AS(simulate_qubit_noisy(c, NoiseModelQubit{}, leaky), ContractViolation);
}
