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
#include "plet/trotter.hpp"
#include "test_support.hpp"

using namespace plet;

namespace {

constexpr double kDeg = kPi / 180.0;
const std::vector<std::string> kEt{"A", "D1", "D2"};
const std::vector<std::string> kPhoto{"G", "D1", "D2"};

double column_mean(const Trajectory& t, int k, std::size_t from = 1) {
  double s = 0.0;
  for (std::size_t i = from; i < t.size(); ++i) s += t.populations[i][k];
  return s / static_cast<double>(t.size() - from);
}

double column_max(const Trajectory& t, int k) {
  double m = 0.0;
  for (const auto& p : t.populations) m = std::max(m, p[k]);
  return m;
}

double max_diff(const Trajectory& a, const Trajectory& b) {
  REQUIRE(a.size() == b.size());
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k = 0; k < a.populations[i].size(); ++k)
      m = std::max(m, std::abs(a.populations[i][k] - b.populations[i][k]));
  return m;
}

QuantumState ground() { return QuantumState::basis(qutrit_space(), 0); }

}  // namespace

TEST_CASE("static evolution examples") {
  const PletModel m;
  // Diagonal generator leaves populations alone.
  PletModel d;
  d.v1 = d.v2 = 0.0;
  const auto flat = evolve_static(h2_lab(d), initial_superposition(0.3), step_times(20.0, 50), kEt);
  for (const auto& p : flat.trajectory.populations) {
    CHECK(p[0] == doctest::Approx(0.0));
    CHECK(p[1] == doctest::Approx(0.5).epsilon(1e-12));
  }

  const auto dark = evolve_static(h2_lab(m), initial_superposition(kPi), step_times(100.0, 400), kEt);
  CHECK(column_max(dark.trajectory, 0) <= 1e-12);

  // Bright-state Rabi problem: amplitude 2V^2 / (2V^2 + (dw/2)^2).
  const double dw = m.omega_d1 - m.omega_a;
  const double expected_max = 2 * m.v1 * m.v1 / (2 * m.v1 * m.v1 + 0.25 * dw * dw);
  CHECK(expected_max == doctest::Approx(0.392).epsilon(2e-3));
  const auto bright = evolve_static(h2_lab(m), initial_superposition(0.0), step_times(2000.0, 40000), kEt);
  CHECK(column_max(bright.trajectory, 0) == doctest::Approx(expected_max).epsilon(1e-4));
  CHECK(column_mean(bright.trajectory, 0) == doctest::Approx(0.196).epsilon(5e-3));

  const auto quarter = evolve_static(h2_lab(m), initial_superposition(0.5 * kPi), step_times(2000.0, 40000), kEt);
  CHECK(column_mean(quarter.trajectory, 0) == doctest::Approx(0.098).epsilon(5e-3));
}

TEST_CASE("norm conservation") {
  const PletModel m;
  const auto st = evolve_static(h2_lab(m), initial_superposition(1.1), step_times(30.0, 64), kEt);
  for (const auto& s : st.states) CHECK(std::abs(s.amplitudes().norm() - 1.0) < 1e-12);
  for (const auto& p : st.trajectory.populations) CHECK(std::abs(p[0] + p[1] + p[2] - 1.0) < 1e-9);

  PletModel photo;
  photo.theta = 60 * kDeg;
  const auto plan = build_plan(photo, PletStep::photoexcitation, 7.91, 40);
  const auto td = reference_dynamics(photo, plan, ground());
  for (const auto& s : td.states) CHECK(std::abs(s.amplitudes().norm() - 1.0) < 1e-10);
  for (const auto& p : td.trajectory.populations) CHECK(std::abs(p[0] + p[1] + p[2] - 1.0) < 1e-9);
}

TEST_CASE("time-dependent evolver on constant generators matches static evolution") {
  const PletModel m;
  const Operator h = h2_lab(m);
  const auto psi0 = initial_superposition(0.5 * kPi);
  const auto st = evolve_static(h, psi0, step_times(32.91, 70), kEt);
  const auto td = evolve_timedep([&h](double) { return h; }, psi0, 32.91, 70, kEt);
  CHECK(max_diff(st.trajectory, td.trajectory) < 1e-10);
  for (std::size_t i = 0; i < st.states.size(); ++i)
    CHECK((st.states[i].amplitudes() - td.states[i].amplitudes()).cwiseAbs().maxCoeff() < 1e-10);

  // Complex generator exercises the general exponential path.
  std::mt19937 rng(5);
  const Operator hc(qutrit_space(), plet::testing::random_hermitian(rng, 3, 0.3), true);
  const auto psi = QuantumState(qutrit_space(), plet::testing::random_ket(rng, 3));
  const auto sc = evolve_static(hc, psi, step_times(10.0, 20), kEt);
  const auto tc = evolve_timedep([&hc](double) { return hc; }, psi, 10.0, 20, kEt);
  CHECK(max_diff(sc.trajectory, tc.trajectory) < 1e-10);
}

TEST_CASE("polarization fixes the amplitude ratio") {
  for (double deg : {30.0, 60.0, 110.0}) {
    PletModel m;
    m.theta = deg * kDeg;
    m.mu2 = 3.0;
    const auto plan = build_plan(m, PletStep::photoexcitation, 7.91, 40);
    const auto r = reference_dynamics(m, plan, ground());
    const double expected = (m.mu1 / m.mu2) / std::tan(m.theta);
    int checked = 0;
    for (const auto& s : r.states) {
      if (std::abs(s[2]) <= 1e-6) continue;
      const Complex ratio = s[1] / s[2];
      CHECK(std::abs(ratio - expected) < 1e-8 * std::abs(expected));
      ++checked;
    }
    CHECK(checked >= 30);
  }
}

TEST_CASE("equal projections at 135 degrees give equal donor populations") {
  PletModel m;
  m.theta = 135 * kDeg;
  const auto plan = build_plan(m, PletStep::photoexcitation, 7.91, 40);
  const auto r = reference_dynamics(m, plan, ground());
  for (const auto& p : r.trajectory.populations) CHECK(std::abs(p[1] - p[2]) < 1e-9);
  CHECK(column_max(r.trajectory, 1) > 0.01);
}

TEST_CASE("refinement reaches the tolerance and is stable under halving") {
  PletModel m;
  m.theta = 30 * kDeg;
  const auto plan = build_plan(m, PletStep::photoexcitation, 7.91, 40);
  const auto r = reference_dynamics(m, plan, ground());
  CHECK(r.last_refinement_change < 1e-8);
  CHECK(r.substeps_per_sample >= 32);

  // Post-hoc: one more halving of the substep moves nothing by 1e-8.
  RefinementControl once{r.substeps_per_sample, 1, 1.0};
  const auto finer = reference_dynamics(m, plan, ground(), once);
  CHECK(finer.substeps_per_sample == 2 * r.substeps_per_sample);
  CHECK(max_diff(r.trajectory, finer.trajectory) < 1e-8);

  RefinementControl hopeless{4, 1, 1e-30};
  CHECK_THROWS_AS(reference_dynamics(m, plan, ground(), hopeless), NumericalGuardError);
  CHECK_THROWS_AS(evolve_timedep([](double) { return h2_lab(PletModel{}); }, ground(), 0.0, 4, kEt),
                  ContractViolation);
}

TEST_CASE("fast photo-excitation path matches the generic evolver") {
  PletModel m;
  m.theta = 20 * kDeg;
  m.mu2 = 2.5;
  const auto plan = build_plan(m, PletStep::photoexcitation, 7.91, 40);
  RefinementControl fixed{256, 1, 1.0};
  const auto fast = reference_dynamics(m, plan, ground(), fixed);
  const auto slow = evolve_timedep([&m](double t) { return h1_lab(m, t); }, ground(), 7.91, 40, kPhoto, fixed);
  CHECK(max_diff(fast.trajectory, slow.trajectory) < 1e-12);
}

TEST_CASE("electron-transfer reference is the static evolution") {
  const PletModel m;
  const auto plan = build_plan(m, PletStep::electron_transfer, 32.91, 70);
  const auto r = reference_dynamics(m, plan, initial_superposition(0.5 * kPi));
  const auto st = evolve_static(h2_lab(m), initial_superposition(0.5 * kPi), step_times(32.91, 70), kEt);
  CHECK(max_diff(r.trajectory, st.trajectory) == 0.0);
  CHECK(r.trajectory.steps.back() == 70);
}

TEST_CASE("step sampling") {
  const PletModel m;
  const auto plan1 = build_plan(m, PletStep::electron_transfer, 10.0, 1);
  const auto fine = evolve_static(h2_lab(m), initial_superposition(0.2), step_times(10.0, 8), kEt).trajectory;
  const auto ends = sample_at_steps(fine, plan1);
  REQUIRE(ends.size() == 2);
  CHECK(ends.times_fs[0] == 0.0);
  CHECK(ends.times_fs[1] == 10.0);
  CHECK(ends.populations[1] == fine.populations.back());

  const auto plan4 = build_plan(m, PletStep::electron_transfer, 10.0, 4);
  const auto coarse = sample_at_steps(fine, plan4);
  REQUIRE(coarse.size() == 5);
  for (int j = 0; j <= 4; ++j) {
    CHECK(coarse.times_fs[j] == step_times(10.0, 4)[j]);
    CHECK(coarse.populations[j] == fine.populations[2 * j]);
    CHECK(coarse.steps[j] == j);
  }

  const auto plan8 = build_plan(m, PletStep::electron_transfer, 10.0, 8);
  const auto same = sample_at_steps(fine, plan8);
  CHECK(same.populations == fine.populations);
  CHECK(same.times_fs == fine.times_fs);

  const auto plan_long = build_plan(m, PletStep::electron_transfer, 20.0, 8);
  CHECK_THROWS_AS(sample_at_steps(fine, plan_long), ContractViolation);
  const auto plan3 = build_plan(m, PletStep::electron_transfer, 10.0, 3);
  CHECK_THROWS_AS(sample_at_steps(fine, plan3), ContractViolation);
}

TEST_CASE("lifting the donor degeneracy opens the acceptor channel") {
  PletModel m;
  m.omega_d1 = m.omega_d2 = 3.86;
  const auto times = step_times(70 * 0.659, 70);
  const auto deg = evolve_static(h2_lab(m), initial_superposition(kPi), times, kEt).trajectory;
  CHECK(column_mean(deg, 0) < 1e-12);
  m.omega_d2 = 3.76;
  CHECK(m.omega_d2 / m.omega_d1 == doctest::Approx(0.974).epsilon(1e-3));
  const auto lifted = evolve_static(h2_lab(m), initial_superposition(kPi), times, kEt).trajectory;
  CHECK(column_mean(lifted, 0) > 1e-4);
}
