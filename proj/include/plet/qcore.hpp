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

// Dense complex linear algebra over small labeled composite Hilbert spaces.
//
// Basis ordering is factor-major: the first factor of a HilbertSpace is the
// most significant digit of the flat basis index. For two qubits this gives
// |00>, |01>, |10>, |11>.

#include <complex>
#include <span>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace plet {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

/// Reduced Planck constant in eV*fs. Simulated-time dynamics use eV energies
/// and fs times; lab-frame pulse playback uses rad/s and s with hbar = 1.
inline constexpr double kHbarEvFs = 0.6582119569;

inline constexpr double kPi = 3.14159265358979323846;

class HilbertSpace {
 public:
  struct Factor {
    std::string label;
    int dim = 0;
    bool operator==(const Factor&) const = default;
  };

  explicit HilbertSpace(std::vector<Factor> factors);
  static HilbertSpace single(std::string label, int dim);

  int dim() const { return dim_; }
  const std::vector<Factor>& factors() const { return *factors_; }
  std::size_t factor_index(std::string_view label) const;
  bool operator==(const HilbertSpace& other) const {
    return factors_ == other.factors_ || *factors_ == *other.factors_;
  }

  /// Concatenation; labels must stay unique.
  friend HilbertSpace operator*(const HilbertSpace& a, const HilbertSpace& b);

 private:
  // Shared so that copying a space (every Operator holds one) is cheap.
  std::shared_ptr<const std::vector<Factor>> factors_;
  int dim_ = 1;
};

class Operator {
 public:
  Operator(HilbertSpace space, CMatrix matrix, bool hermitian);

  static Operator identity(const HilbertSpace& space);

  const HilbertSpace& space() const { return space_; }
  const CMatrix& matrix() const { return matrix_; }
  bool hermitian() const { return hermitian_; }
  int dim() const { return space_.dim(); }

 private:
  HilbertSpace space_;
  CMatrix matrix_;
  bool hermitian_;
};

class QuantumState {
 public:
  /// Requires unit norm within 1e-12.
  QuantumState(HilbertSpace space, CVector amplitudes);
  /// Normalizes a nonzero vector.
  static QuantumState normalized(HilbertSpace space, CVector amplitudes);
  static QuantumState basis(HilbertSpace space, int index);

  const HilbertSpace& space() const { return space_; }
  const CVector& amplitudes() const { return amplitudes_; }
  Complex operator[](int i) const { return amplitudes_(i); }

 private:
  HilbertSpace space_;
  CVector amplitudes_;
};

class DensityMatrix {
 public:
  struct Unchecked {};

  /// Validates Hermiticity (1e-10), unit trace (1e-9), eigenvalues >= -1e-9.
  DensityMatrix(HilbertSpace space, CMatrix matrix);
  /// Skips validation; used by integrators that track their own diagnostics.
  DensityMatrix(HilbertSpace space, CMatrix matrix, Unchecked);
  static DensityMatrix pure(const QuantumState& psi);

  const HilbertSpace& space() const { return space_; }
  const CMatrix& matrix() const { return matrix_; }

 private:
  HilbertSpace space_;
  CMatrix matrix_;
};

/// Max-abs deviation from Hermiticity.
double hermiticity_error(const CMatrix& m);

/// Kronecker product on the concatenated space.
Operator tensor(const Operator& a, const Operator& b);

/// exp(-i h dt / hbar) via eigendecomposition of the hermitian generator.
Operator matrix_exponential_step(const Operator& h, double dt, double hbar = kHbarEvFs);

/// Reduced density matrix over the factors named in `keep` (kept in the
/// order they appear in the parent space).
DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const std::string> keep);

std::vector<double> populations(const QuantumState& state);
std::vector<double> populations(const DensityMatrix& rho);

/// Pauli and ladder building blocks.
namespace ops {
CMatrix identity(int dim);
CMatrix pauli_x();
CMatrix pauli_y();
CMatrix pauli_z();
CMatrix hadamard();
/// Truncated annihilation operator on Fock states 0..dim-1.
CMatrix annihilation(int dim);
CMatrix kron(const CMatrix& a, const CMatrix& b);
}  // namespace ops

}  // namespace plet
