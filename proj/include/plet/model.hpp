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

// Polarized-light-driven electron transfer (PLET) model: the photo-excitation
// Hamiltonian with a linearly polarized drive, the static donor-acceptor
// Hamiltonian, their interaction-picture coupling terms, and the two-qubit
// embedding of the donor-acceptor Hamiltonian.

#include <array>
#include <functional>
#include <optional>
#include <string>

#include "plet/qcore.hpp"

namespace plet {

/// Bohr radius in nm; converts e*a0 dipoles times V/nm fields to eV.
inline constexpr double kBohrRadiusNm = 0.052917721;

struct PletModel {
  double omega_g = 0.0;   // eV
  double omega_d1 = 3.89;  // eV
  double omega_d2 = 3.89;  // eV
  double omega_a = 3.01;   // eV
  double mu1 = 4.58;       // e*a0
  double mu2 = 4.58;       // e*a0
  double v1 = 0.25;        // eV
  double v2 = 0.25;        // eV
  double e0 = 2.2e9;       // V/m
  double theta = 0.0;      // rad, [0, 2pi)
  /// Laser angular frequency in rad/fs; resonant with G->D1 when unset.
  std::optional<double> omega_laser;

  double laser_frequency() const;
  /// Throws ContractViolation on a broken invariant.
  void validate() const;
};

/// Ordered map from molecular labels to device levels 0, 1, 2.
class StateLabelMap {
 public:
  explicit StateLabelMap(std::array<std::string, 3> labels);
  static StateLabelMap photoexcitation();    // G, D1, D2
  static StateLabelMap electron_transfer();  // A, D1, D2

  const std::string& label(int level) const { return labels_.at(level); }
  int level(const std::string& label) const;
  const std::array<std::string, 3>& labels() const { return labels_; }

 private:
  std::array<std::string, 3> labels_;
};

struct FieldComponents {
  double ex = 0.0;  // V/m
  double ey = 0.0;  // V/m
};

/// A(t) e^{i phase(t)} |bra><ket| + h.c. on the three-level space, with
/// phase(t) = phase_slope * t.
struct InteractionTerm {
  int bra_level = 0;
  int ket_level = 1;
  std::function<double(double)> amplitude;  // eV, t in fs
  double phase_slope = 0.0;                 // rad/fs

  double phase(double t) const { return phase_slope * t; }
  Operator at(double t) const;
};

/// Coefficients (eV) of the seven two-qubit Paulis spanning the embedded
/// donor-acceptor Hamiltonian. Defined by Hilbert-Schmidt projection.
struct PauliDecomposition {
  double xi = 0.0;  // sigma_x (x) I
  double ix = 0.0;  // I (x) sigma_x
  double zi = 0.0;  // sigma_z (x) I
  double iz = 0.0;  // I (x) sigma_z
  double xz = 0.0;  // sigma_x (x) sigma_z
  double zx = 0.0;  // sigma_z (x) sigma_x
  double zz = 0.0;  // sigma_z (x) sigma_z

  CMatrix reconstruct() const;
};

struct ShiftedEnergies {
  double a = 0.0;
  double d1 = 0.0;
  double d2 = 0.0;
};

HilbertSpace qutrit_space();
HilbertSpace two_qubit_space();

/// mu (e*a0) times field (V/m) in eV.
double dipole_coupling_ev(double mu, double field_v_per_m);

FieldComponents field_at(const PletModel& model, double t);
Operator h1_lab(const PletModel& model, double t);
Operator h2_lab(const PletModel& model);
ShiftedEnergies shift_energies(const PletModel& model);
/// h2_lab with the zero of energy moved to the mean of the three levels.
Operator h2_shifted(const PletModel& model);

std::array<InteractionTerm, 2> interaction_terms_h1(const PletModel& model);
std::array<InteractionTerm, 2> interaction_terms_h2(const PletModel& model);

/// (|D1> + e^{i phi}|D2>)/sqrt(2) on (A, D1, D2).
QuantumState initial_superposition(double phi);

Operator qubit_embed(const Operator& h2);
PauliDecomposition pauli_decompose(const Operator& h4);

}  // namespace plet
