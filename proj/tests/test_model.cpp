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
#include <random>

#include "plet/error.hpp"
#include "plet/model.hpp"
#include "plet/oracle.hpp"
#include "test_support.hpp"

using namespace plet;
using plet::testing::max_abs;

namespace {

constexpr double kDeg = kPi / 180.0;

PletModel fig3_model() { return PletModel{}; }

PletModel fig4_model() {
  PletModel m;
  m.omega_d1 = 3.86;
  m.omega_d2 = 3.76;
  return m;
}

// Independent rebuild of the Pauli sum, indexed I, X, Y, Z.
CMatrix pauli(int k) {
  CMatrix p = CMatrix::Zero(2, 2);
  switch (k) {
    case 0: p << 1, 0, 0, 1; break;
    case 1: p << 0, 1, 1, 0; break;
    case 2: p << 0, Complex(0, -1), Complex(0, 1), 0; break;
    default: p << 1, 0, 0, -1; break;
  }
  return p;
}

CMatrix kron2(int a, int b) {
  const CMatrix pa = pauli(a), pb = pauli(b);
  CMatrix out(4, 4);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) out.block(2 * i, 2 * j, 2, 2) = pa(i, j) * pb;
  return out;
}

}  // namespace

TEST_CASE("model validation") {
  CHECK_NOTHROW(fig3_model().validate());
  PletModel m;
  m.mu1 = -1.0;
  CHECK_THROWS_AS(m.validate(), ContractViolation);
  m = PletModel{};
  m.theta = 2.0 * kPi;
  CHECK_THROWS_AS(m.validate(), ContractViolation);
  m = PletModel{};
  m.e0 = -2.0;
  CHECK_THROWS_AS(m.validate(), ContractViolation);
  m = PletModel{};
  m.omega_a = std::nan("");
  CHECK_THROWS_AS(m.validate(), ContractViolation);
}

TEST_CASE("state label maps") {
  const auto photo = StateLabelMap::photoexcitation();
  CHECK(photo.label(0) == "G");
  CHECK(photo.level("D2") == 2);
  const auto et = StateLabelMap::electron_transfer();
  CHECK(et.label(0) == "A");
  CHECK_THROWS_AS(et.level("G"), ContractViolation);
  CHECK_THROWS_AS(StateLabelMap({"A", "A", "D2"}), ContractViolation);
}

TEST_CASE("field components") {
  PletModel m;
  m.theta = 90 * kDeg;
  for (double t : {0.1, 0.37, 2.5}) CHECK(std::abs(field_at(m, t).ex) < 1e-6);

  m.theta = 45 * kDeg;
  for (double t : {0.1, 0.37, 2.5}) {
    const auto f = field_at(m, t);
    CHECK(f.ex == doctest::Approx(f.ey).epsilon(1e-12));
  }

  m.theta = 135 * kDeg;
  for (double t : {0.1, 0.37, 2.5}) {
    const auto f = field_at(m, t);
    CHECK(std::abs(f.ex + f.ey) < 1e-6 * std::abs(m.e0));
    CHECK(f.ex * f.ey <= 0.0);
  }
}

TEST_CASE("photo-excitation hamiltonian") {
  PletModel m;
  m.e0 = 0.0;
  const CMatrix h0 = h1_lab(m, 0.3).matrix();
  CHECK(max_abs(h0 - CMatrix(Eigen::Vector3cd(0.0, 3.89, 3.89).asDiagonal())) < 1e-15);

  // Peak coupling: 4.58 e*a0 in 2.2 V/nm.
  CHECK(dipole_coupling_ev(4.58, 2.2e9) == doctest::Approx(0.5332).epsilon(1e-3));
  CHECK(dipole_coupling_ev(4.58, 2.2e9) == doctest::Approx(4.58 * 0.052917721 * 2.2).epsilon(1e-14));

  m = PletModel{};
  m.theta = 0.0;
  const double quarter = 0.5 * kPi / m.laser_frequency();
  const CMatrix h = h1_lab(m, quarter).matrix();
  CHECK(h(0, 1).real() == doctest::Approx(0.5332).epsilon(1e-3));
  for (double t : {0.0, 0.2, 1.7}) {
    m.theta = 30 * kDeg;
    const Operator op = h1_lab(m, t);
    CHECK(op.matrix()(1, 2) == Complex(0.0, 0.0));
    CHECK(plet::hermiticity_error(op.matrix()) < 1e-12);
  }
}

TEST_CASE("laser frequency defaults to resonance") {
  PletModel m;
  CHECK(m.laser_frequency() == doctest::Approx(3.89 / kHbarEvFs).epsilon(1e-14));
  m.omega_laser = 5.0;
  CHECK(m.laser_frequency() == 5.0);
}

TEST_CASE("donor-acceptor hamiltonian") {
  const CMatrix h = h2_lab(fig3_model()).matrix();
  CMatrix expected(3, 3);
  expected << 3.01, 0.25, 0.25, 0.25, 3.89, 0.0, 0.25, 0.0, 3.89;
  CHECK(max_abs(h - expected) < 1e-15);

  PletModel m;
  m.v1 = m.v2 = 0.0;
  const CMatrix d = h2_lab(m).matrix();
  CHECK(max_abs(d - CMatrix(d.diagonal().asDiagonal())) == 0.0);
}

TEST_CASE("energy shift") {
  const auto s = shift_energies(fig3_model());
  CHECK(s.a == doctest::Approx(-0.586667).epsilon(1e-6));
  CHECK(s.d1 == doctest::Approx(0.293333).epsilon(1e-6));
  CHECK(s.d2 == doctest::Approx(0.293333).epsilon(1e-6));
  CHECK(std::abs(s.a + s.d1 + s.d2) < 1e-12);

  PletModel flat;
  flat.omega_a = flat.omega_d1 = flat.omega_d2 = 2.0;
  const auto z = shift_energies(flat);
  CHECK(std::abs(z.a) + std::abs(z.d1) + std::abs(z.d2) < 1e-15);

  std::mt19937 rng(7);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  for (int k = 0; k < 20; ++k) {
    PletModel r;
    r.omega_a = u(rng);
    r.omega_d1 = u(rng);
    r.omega_d2 = u(rng);
    const auto e = shift_energies(r);
    CHECK(std::abs(e.a + e.d1 + e.d2) < 1e-12);
  }
}

TEST_CASE("energy shift leaves population dynamics unchanged") {
  PletModel m = fig4_model();
  const auto psi0 = initial_superposition(0.5 * kPi);
  const auto times = step_times(40.0, 80);
  const auto raw = evolve_static(h2_lab(m), psi0, times, {"A", "D1", "D2"});
  const auto shifted = evolve_static(h2_shifted(m), psi0, times, {"A", "D1", "D2"});
  double worst = 0.0;
  for (std::size_t i = 0; i < times.size(); ++i)
    for (int k = 0; k < 3; ++k)
      worst = std::max(worst, std::abs(raw.trajectory.populations[i][k] - shifted.trajectory.populations[i][k]));
  CHECK(worst < 1e-10);
}

TEST_CASE("interaction terms") {
  PletModel m;
  m.theta = 30 * kDeg;
  const auto h1 = interaction_terms_h1(m);
  CHECK(h1[0].phase(0.0) == 0.0);
  CHECK(h1[1].phase(0.0) == 0.0);
  // Degenerate donors share the phase evolution.
  CHECK(h1[0].phase_slope == h1[1].phase_slope);
  CHECK(h1[0].ket_level == 1);
  CHECK(h1[1].ket_level == 2);
  for (double t : {0.05, 0.4, 3.3}) {
    const auto f = field_at(m, t);
    CHECK(h1[0].amplitude(t) == doctest::Approx(dipole_coupling_ev(m.mu1, f.ex)).epsilon(1e-14));
    CHECK(h1[1].amplitude(t) == doctest::Approx(dipole_coupling_ev(m.mu2, f.ey)).epsilon(1e-14));
    CHECK(plet::hermiticity_error(h1[0].at(t).matrix()) < 1e-15);
  }

  const auto h2 = interaction_terms_h2(fig3_model());
  CHECK(h2[0].amplitude(1.0) == h2[1].amplitude(1.0));
  CHECK(h2[0].phase_slope == h2[1].phase_slope);

  const auto h2b = interaction_terms_h2(fig4_model());
  CHECK(std::abs(h2b[0].phase_slope - h2b[1].phase_slope) == doctest::Approx(0.10 / kHbarEvFs).epsilon(1e-12));
  CHECK(std::abs(h2b[0].phase_slope - h2b[1].phase_slope) == doctest::Approx(0.1519).epsilon(1e-3));
  const double t = 2.7;
  CHECK(h2b[1].phase(t) - h2b[0].phase(t) == doctest::Approx((3.86 - 3.76) * t / kHbarEvFs).epsilon(1e-12));
}

TEST_CASE("interaction picture reproduces the lab frame") {
  // Piecewise evolution in the interaction picture, rotated back, must match
  // the exact static evolution.
  const PletModel m = fig4_model();
  const auto terms = interaction_terms_h2(m);
  const auto psi0 = initial_superposition(0.7);
  const double total = 6.0;
  const int n = 4000;
  const double dt = total / n;
  CVector psi = psi0.amplitudes();
  for (int j = 0; j < n; ++j) {
    const double tm = (j + 0.5) * dt;
    const CMatrix hi = terms[0].at(tm).matrix() + terms[1].at(tm).matrix();
    psi = plet::testing::propagator(hi, dt) * psi;
  }
  const CMatrix exact = plet::testing::propagator(h2_lab(m).matrix(), total) * psi0.amplitudes();
  for (int k = 0; k < 3; ++k) CHECK(std::norm(psi(k)) == doctest::Approx(std::norm(exact(k))).epsilon(1e-5));
}

TEST_CASE("initial superposition") {
  for (double phi : {0.0, 0.5 * kPi, kPi, 4.0}) {
    const auto psi = initial_superposition(phi);
    const auto p = populations(psi);
    CHECK(p[0] == 0.0);
    CHECK(p[1] == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(p[2] == doctest::Approx(0.5).epsilon(1e-15));
  }
  const auto anti = initial_superposition(kPi);
  CHECK(std::abs(anti[1] + anti[2]) < 1e-15);
  const auto sym = initial_superposition(0.0);
  CHECK(std::abs(sym[1] - sym[2]) < 1e-15);
}

TEST_CASE("destructive interference eigenvector") {
  const CMatrix h = h2_lab(fig3_model()).matrix();
  const CVector anti = initial_superposition(kPi).amplitudes();
  const CVector hv = h * anti;
  const Complex lambda = anti.dot(hv);
  CHECK(max_abs(hv - lambda * anti) < 1e-14);
  CHECK(std::abs(hv(0)) < 1e-15);
}

TEST_CASE("qubit embedding") {
  const Operator h4 = qubit_embed(h2_shifted(fig3_model()));
  const CMatrix& m = h4.matrix();
  CHECK(std::abs(m.trace()) < 1e-12);
  CHECK(m(0, 0).real() == doctest::Approx(-0.586667).epsilon(1e-6));
  CHECK(m(1, 1).real() == doctest::Approx(0.293333).epsilon(1e-6));
  CHECK(m(2, 2).real() == doctest::Approx(0.293333).epsilon(1e-6));
  CHECK(m(3, 3) == Complex(0.0, 0.0));
  for (int k = 0; k < 4; ++k) {
    CHECK(m(3, k) == Complex(0.0, 0.0));
    CHECK(m(k, 3) == Complex(0.0, 0.0));
  }
  CHECK_THROWS_AS(qubit_embed(h2_lab(fig3_model())), ContractViolation);
}

TEST_CASE("pauli decomposition examples") {
  const auto d = pauli_decompose(qubit_embed(h2_shifted(fig3_model())));
  // Coupling weights sit on the x-type Paulis, V/2 each.
  CHECK(d.xi == doctest::Approx(0.125).epsilon(1e-12));
  CHECK(d.ix == doctest::Approx(0.125).epsilon(1e-12));
  CHECK(d.xz == doctest::Approx(0.125).epsilon(1e-12));
  CHECK(d.zx == doctest::Approx(0.125).epsilon(1e-12));
  const auto s = shift_energies(fig3_model());
  CHECK(d.zz == doctest::Approx(-(s.d1 + s.d2) / 2).epsilon(1e-12));
  CHECK(d.zz == doctest::Approx(-0.293333).epsilon(1e-6));

  const auto z = pauli_decompose(Operator(two_qubit_space(), CMatrix::Zero(4, 4), true));
  CHECK(z.xi == 0.0);
  CHECK(z.zz == 0.0);
  CHECK(z.xz == 0.0);

  // Weight on Y-type Paulis is not of donor-acceptor form.
  CHECK_THROWS_AS(pauli_decompose(Operator(two_qubit_space(), kron2(2, 2), true)), ContractViolation);
  CHECK_THROWS_AS(pauli_decompose(Operator(two_qubit_space(), kron2(1, 1), true)), ContractViolation);
}

TEST_CASE("pauli decomposition reconstructs random valid inputs") {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> u(-4.0, 4.0);
  for (int k = 0; k < 50; ++k) {
    PletModel m;
    m.omega_a = u(rng);
    m.omega_d1 = u(rng);
    m.omega_d2 = u(rng);
    m.v1 = u(rng);
    m.v2 = u(rng);
    const Operator h4 = qubit_embed(h2_shifted(m));
    const auto d = pauli_decompose(h4);
    CHECK(max_abs(d.reconstruct() - h4.matrix()) < 1e-12);

    const CMatrix rebuilt = d.xi * kron2(1, 0) + d.ix * kron2(0, 1) + d.zi * kron2(3, 0) + d.iz * kron2(0, 3) +
                            d.xz * kron2(1, 3) + d.zx * kron2(3, 1) + d.zz * kron2(3, 3);
    CHECK(max_abs(rebuilt - h4.matrix()) < 1e-12);

    // Every other projection vanishes.
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b) {
        const bool listed = (a == 1 && b == 0) || (a == 0 && b == 1) || (a == 3 && b == 0) || (a == 0 && b == 3) ||
                            (a == 1 && b == 3) || (a == 3 && b == 1) || (a == 3 && b == 3);
        if (listed) continue;
        CHECK(std::abs((kron2(a, b) * h4.matrix()).trace() / 4.0) < 1e-12);
      }
    CHECK(plet::hermiticity_error(h2_lab(m).matrix()) < 1e-12);
  }
}
