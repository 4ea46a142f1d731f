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

#include "plet/model.hpp"

#include <cmath>
#include <set>
#include <sstream>

#include "plet/error.hpp"

namespace plet {

namespace {

constexpr double kTwoPi = 2.0 * kPi;

CMatrix pauli_by_index(int k) {
  switch (k) {
    case 0: return ops::identity(2);
    case 1: return ops::pauli_x();
    case 2: return ops::pauli_y();
    default: return ops::pauli_z();
  }
}

}  // namespace

double PletModel::laser_frequency() const {
  return omega_laser ? *omega_laser : (omega_d1 - omega_g) / kHbarEvFs;
}

void PletModel::validate() const {
  for (double e : {omega_g, omega_d1, omega_d2, omega_a, v1, v2}) {
    if (!std::isfinite(e)) throw ContractViolation("PletModel: non-finite energy or coupling");
  }
  if (!(mu1 >= 0.0) || !(mu2 >= 0.0)) throw ContractViolation("PletModel: dipole magnitudes must be >= 0");
  if (!(e0 >= 0.0) || !std::isfinite(e0)) throw ContractViolation("PletModel: field amplitude must be >= 0");
  if (!(theta >= 0.0 && theta < kTwoPi)) throw ContractViolation("PletModel: theta must lie in [0, 2pi)");
  if (omega_laser && !std::isfinite(*omega_laser)) throw ContractViolation("PletModel: non-finite laser frequency");
}

StateLabelMap::StateLabelMap(std::array<std::string, 3> labels) : labels_(std::move(labels)) {
  std::set<std::string> unique(labels_.begin(), labels_.end());
  if (unique.size() != 3) throw ContractViolation("StateLabelMap: labels must be distinct");
}

StateLabelMap StateLabelMap::photoexcitation() { return StateLabelMap({"G", "D1", "D2"}); }
StateLabelMap StateLabelMap::electron_transfer() { return StateLabelMap({"A", "D1", "D2"}); }

int StateLabelMap::level(const std::string& label) const {
  for (int i = 0; i < 3; ++i) {
    if (labels_[i] == label) return i;
  }
  throw ContractViolation("StateLabelMap: unknown label '" + label + "'");
}

HilbertSpace qutrit_space() {
  static const HilbertSpace space = HilbertSpace::single("qutrit", 3);
  return space;
}

HilbertSpace two_qubit_space() {
  static const HilbertSpace space({{"q0", 2}, {"q1", 2}});
  return space;
}

double dipole_coupling_ev(double mu, double field_v_per_m) { return mu * kBohrRadiusNm * field_v_per_m * 1e-9; }

FieldComponents field_at(const PletModel& model, double t) {
  const double s = model.e0 * std::sin(model.laser_frequency() * t);
  return {s * std::cos(model.theta), s * std::sin(model.theta)};
}

Operator InteractionTerm::at(double t) const {
  CMatrix m = CMatrix::Zero(3, 3);
  m(bra_level, ket_level) = std::polar(1.0, phase(t)) * amplitude(t);
  m(ket_level, bra_level) = std::conj(m(bra_level, ket_level));
  return Operator(qutrit_space(), std::move(m), true);
}

CMatrix PauliDecomposition::reconstruct() const {
  using ops::kron;
  const CMatrix i2 = ops::identity(2), x = ops::pauli_x(), z = ops::pauli_z();
  return xi * kron(x, i2) + ix * kron(i2, x) + zi * kron(z, i2) + iz * kron(i2, z) + xz * kron(x, z) +
         zx * kron(z, x) + zz * kron(z, z);
}

Operator h1_lab(const PletModel& model, double t) {
  const auto f = field_at(model, t);
  const double c1 = dipole_coupling_ev(model.mu1, f.ex);
  const double c2 = dipole_coupling_ev(model.mu2, f.ey);
  CMatrix m = CMatrix::Zero(3, 3);
  m(0, 0) = model.omega_g;
  m(1, 1) = model.omega_d1;
  m(2, 2) = model.omega_d2;
  m(0, 1) = m(1, 0) = c1;
  m(0, 2) = m(2, 0) = c2;
  return Operator(qutrit_space(), std::move(m), true);
}

Operator h2_lab(const PletModel& model) {
  CMatrix m = CMatrix::Zero(3, 3);
  m(0, 0) = model.omega_a;
  m(1, 1) = model.omega_d1;
  m(2, 2) = model.omega_d2;
  m(0, 1) = m(1, 0) = model.v1;
  m(0, 2) = m(2, 0) = model.v2;
  return Operator(qutrit_space(), std::move(m), true);
}

ShiftedEnergies shift_energies(const PletModel& model) {
  const double mean = (model.omega_a + model.omega_d1 + model.omega_d2) / 3.0;
  return {model.omega_a - mean, model.omega_d1 - mean, model.omega_d2 - mean};
}

Operator h2_shifted(const PletModel& model) {
  const auto w = shift_energies(model);
  CMatrix m = h2_lab(model).matrix();
  m(0, 0) = w.a;
  m(1, 1) = w.d1;
  m(2, 2) = w.d2;
  return Operator(qutrit_space(), std::move(m), true);
}

std::array<InteractionTerm, 2> interaction_terms_h1(const PletModel& model) {
  // Coupling amplitudes follow the full (non-RWA) field.
  InteractionTerm t1{0, 1, [model](double t) { return dipole_coupling_ev(model.mu1, field_at(model, t).ex); },
                     (model.omega_g - model.omega_d1) / kHbarEvFs};
  InteractionTerm t2{0, 2, [model](double t) { return dipole_coupling_ev(model.mu2, field_at(model, t).ey); },
                     (model.omega_g - model.omega_d2) / kHbarEvFs};
  return {std::move(t1), std::move(t2)};
}

std::array<InteractionTerm, 2> interaction_terms_h2(const PletModel& model) {
  const double v1 = model.v1, v2 = model.v2;
  InteractionTerm t1{0, 1, [v1](double) { return v1; }, (model.omega_a - model.omega_d1) / kHbarEvFs};
  InteractionTerm t2{0, 2, [v2](double) { return v2; }, (model.omega_a - model.omega_d2) / kHbarEvFs};
  return {std::move(t1), std::move(t2)};
}

QuantumState initial_superposition(double phi) {
  CVector v = CVector::Zero(3);
  v(1) = 1.0 / std::sqrt(2.0);
  v(2) = std::polar(1.0 / std::sqrt(2.0), phi);
  return QuantumState(qutrit_space(), std::move(v));
}

Operator qubit_embed(const Operator& h2) {
  if (h2.dim() != 3) throw ContractViolation("qubit_embed: expected a 3x3 operator");
  const CMatrix& m = h2.matrix();
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  if (std::abs(m.trace()) > 1e-12 * scale) {
    throw ContractViolation("qubit_embed: input must use shifted (traceless) energies so |11> decouples at zero energy");
  }
  // |A>, |D1>, |D2> -> |00>, |01>, |10>; |11> decoupled.
  CMatrix out = CMatrix::Zero(4, 4);
  out.topLeftCorner(3, 3) = m;
  return Operator(two_qubit_space(), std::move(out), h2.hermitian());
}

PauliDecomposition pauli_decompose(const Operator& h4) {
  if (h4.dim() != 4) throw ContractViolation("pauli_decompose: expected a 4x4 operator");
  const CMatrix& m = h4.matrix();
  std::array<std::array<double, 4>, 4> coeff{};
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) {
      const Complex c = (ops::kron(pauli_by_index(a), pauli_by_index(b)) * m).trace() / 4.0;
      if (std::abs(c.imag()) > 1e-9) throw ContractViolation("pauli_decompose: input is not hermitian");
      coeff[a][b] = c.real();
    }
  }
  // Index: 0 = I, 1 = X, 2 = Y, 3 = Z.
  PauliDecomposition d{coeff[1][0], coeff[0][1], coeff[3][0], coeff[0][3], coeff[1][3], coeff[3][1], coeff[3][3]};
  const std::set<std::pair<int, int>> allowed{{1, 0}, {0, 1}, {3, 0}, {0, 3}, {1, 3}, {3, 1}, {3, 3}};
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) {
      if (allowed.count({a, b}) == 0 && std::abs(coeff[a][b]) > 1e-9) {
        static constexpr const char* kNames = "IXYZ";
        std::ostringstream msg;
        msg << "pauli_decompose: input has weight " << coeff[a][b] << " on " << kNames[a] << kNames[b]
            << ", outside the donor-acceptor form";
        throw ContractViolation(msg.str());
      }
    }
  }
  return d;
}

}  // namespace plet
