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

#include "plet/qcore.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "plet/error.hpp"

namespace plet {

namespace {

constexpr double kOperatorHermitianTol = 1e-12;
constexpr double kStateNormTol = 1e-12;
constexpr double kRhoHermitianTol = 1e-10;
constexpr double kRhoTraceTol = 1e-9;
constexpr double kRhoEigenTol = 1e-9;

void require_square(const CMatrix& m, int dim, const char* what) {
  if (m.rows() != dim || m.cols() != dim) {
    std::ostringstream msg;
    msg << what << ": matrix is " << m.rows() << "x" << m.cols() << ", space dimension is " << dim;
    throw ContractViolation(msg.str());
  }
}

}  // namespace

HilbertSpace::HilbertSpace(std::vector<Factor> factors)
    : factors_(std::make_shared<const std::vector<Factor>>(std::move(factors))) {
  if (factors_->empty()) throw ContractViolation("HilbertSpace: no factors");
  std::set<std::string> seen;
  for (const auto& f : *factors_) {
    if (f.dim < 2) throw ContractViolation("HilbertSpace: factor '" + f.label + "' has dimension < 2");
    if (!seen.insert(f.label).second) throw ContractViolation("HilbertSpace: duplicate label '" + f.label + "'");
    dim_ *= f.dim;
  }
}

HilbertSpace HilbertSpace::single(std::string label, int dim) { return HilbertSpace({{std::move(label), dim}}); }

std::size_t HilbertSpace::factor_index(std::string_view label) const {
  for (std::size_t i = 0; i < factors_->size(); ++i) {
    if ((*factors_)[i].label == label) return i;
  }
  throw ContractViolation("HilbertSpace: unknown factor label '" + std::string(label) + "'");
}

HilbertSpace operator*(const HilbertSpace& a, const HilbertSpace& b) {
  auto factors = *a.factors_;
  factors.insert(factors.end(), b.factors_->begin(), b.factors_->end());
  return HilbertSpace(std::move(factors));
}

double hermiticity_error(const CMatrix& m) {
  if (m.size() == 0) return 0.0;
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

Operator::Operator(HilbertSpace space, CMatrix matrix, bool hermitian)
    : space_(std::move(space)), matrix_(std::move(matrix)), hermitian_(hermitian) {
  require_square(matrix_, space_.dim(), "Operator");
  if (hermitian_) {
    const double scale = std::max(1.0, matrix_.cwiseAbs().maxCoeff());
    if (hermiticity_error(matrix_) > kOperatorHermitianTol * scale) {
      throw ContractViolation("Operator: flagged hermitian but M != M^dagger");
    }
  }
}

Operator Operator::identity(const HilbertSpace& space) {
  return Operator(space, CMatrix::Identity(space.dim(), space.dim()), true);
}

QuantumState::QuantumState(HilbertSpace space, CVector amplitudes)
    : space_(std::move(space)), amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.size() != space_.dim()) throw ContractViolation("QuantumState: dimension mismatch");
  if (std::abs(amplitudes_.norm() - 1.0) > kStateNormTol) {
    throw ContractViolation("QuantumState: amplitudes not normalized");
  }
}

QuantumState QuantumState::normalized(HilbertSpace space, CVector amplitudes) {
  const double n = amplitudes.norm();
  if (!(n > 0.0)) throw ContractViolation("QuantumState: zero vector");
  amplitudes /= n;
  return QuantumState(std::move(space), std::move(amplitudes));
}

QuantumState QuantumState::basis(HilbertSpace space, int index) {
  CVector v = CVector::Zero(space.dim());
  if (index < 0 || index >= space.dim()) throw ContractViolation("QuantumState: basis index out of range");
  v(index) = 1.0;
  return QuantumState(std::move(space), std::move(v));
}

DensityMatrix::DensityMatrix(HilbertSpace space, CMatrix matrix)
    : space_(std::move(space)), matrix_(std::move(matrix)) {
  require_square(matrix_, space_.dim(), "DensityMatrix");
  if (hermiticity_error(matrix_) > kRhoHermitianTol) throw ContractViolation("DensityMatrix: not hermitian");
  if (std::abs(matrix_.trace() - Complex(1.0)) > kRhoTraceTol) throw ContractViolation("DensityMatrix: trace != 1");
  const CMatrix herm = 0.5 * (matrix_ + matrix_.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> es(herm, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -kRhoEigenTol) throw ContractViolation("DensityMatrix: negative eigenvalue");
}

DensityMatrix::DensityMatrix(HilbertSpace space, CMatrix matrix, Unchecked)
    : space_(std::move(space)), matrix_(std::move(matrix)) {
  require_square(matrix_, space_.dim(), "DensityMatrix");
}

DensityMatrix DensityMatrix::pure(const QuantumState& psi) {
  const auto& a = psi.amplitudes();
  return DensityMatrix(psi.space(), a * a.adjoint());
}

Operator tensor(const Operator& a, const Operator& b) {
  return Operator(a.space() * b.space(), ops::kron(a.matrix(), b.matrix()), a.hermitian() && b.hermitian());
}

Operator matrix_exponential_step(const Operator& h, double dt, double hbar) {
  if (!h.hermitian()) throw ContractViolation("matrix_exponential_step: generator must be flagged hermitian");
  if (!std::isfinite(dt)) throw ContractViolation("matrix_exponential_step: non-finite dt");
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h.matrix());
  const Eigen::VectorXd& lambda = es.eigenvalues();
  CVector phases(lambda.size());
  for (Eigen::Index i = 0; i < lambda.size(); ++i) phases(i) = std::polar(1.0, -lambda(i) * dt / hbar);
  const CMatrix& v = es.eigenvectors();
  return Operator(h.space(), v * phases.asDiagonal() * v.adjoint(), false);
}

DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const std::string> keep) {
  const auto& factors = rho.space().factors();
  const std::size_t nf = factors.size();
  std::vector<bool> kept(nf, false);
  for (const auto& label : keep) kept[rho.space().factor_index(label)] = true;

  std::vector<HilbertSpace::Factor> kept_factors;
  for (std::size_t k = 0; k < nf; ++k) {
    if (kept[k]) kept_factors.push_back(factors[k]);
  }
  if (kept_factors.empty()) throw ContractViolation("partial_trace: nothing kept");

  // Split each flat index into (kept index, traced index).
  const int dim = rho.space().dim();
  std::vector<int> kept_idx(dim), traced_idx(dim);
  for (int flat = 0; flat < dim; ++flat) {
    int rem = flat, kstride = 1, tstride = 1, ki = 0, ti = 0;
    for (std::size_t k = nf; k-- > 0;) {
      const int digit = rem % factors[k].dim;
      rem /= factors[k].dim;
      if (kept[k]) {
        ki += digit * kstride;
        kstride *= factors[k].dim;
      } else {
        ti += digit * tstride;
        tstride *= factors[k].dim;
      }
    }
    kept_idx[flat] = ki;
    traced_idx[flat] = ti;
  }

  HilbertSpace reduced_space(std::move(kept_factors));
  CMatrix reduced = CMatrix::Zero(reduced_space.dim(), reduced_space.dim());
  const CMatrix& m = rho.matrix();
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) {
      if (traced_idx[i] == traced_idx[j]) reduced(kept_idx[i], kept_idx[j]) += m(i, j);
    }
  }
  return DensityMatrix(std::move(reduced_space), std::move(reduced), DensityMatrix::Unchecked{});
}

std::vector<double> populations(const QuantumState& state) {
  const auto& a = state.amplitudes();
  std::vector<double> p(a.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) p[i] = std::norm(a(i));
  return p;
}

std::vector<double> populations(const DensityMatrix& rho) {
  const auto& m = rho.matrix();
  std::vector<double> p(m.rows());
  for (Eigen::Index i = 0; i < m.rows(); ++i) p[i] = std::max(0.0, m(i, i).real());
  return p;
}

namespace ops {

CMatrix identity(int dim) { return CMatrix::Identity(dim, dim); }

CMatrix pauli_x() {
  CMatrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

CMatrix pauli_y() {
  CMatrix m(2, 2);
  m << 0, Complex(0, -1), Complex(0, 1), 0;
  return m;
}

CMatrix pauli_z() {
  CMatrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

CMatrix hadamard() {
  CMatrix m(2, 2);
  m << 1, 1, 1, -1;
  return m / std::sqrt(2.0);
}

CMatrix annihilation(int dim) {
  CMatrix a = CMatrix::Zero(dim, dim);
  for (int n = 1; n < dim; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  return a;
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

}  // namespace ops

}  // namespace plet
