// Copyright 2026 The critsense Authors
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

#include <complex>

#include <Eigen/Dense>

#include "critsense/error.hpp"

/// Dense complex linear algebra for the few-qubit problems in this library.
///
/// Basis convention: computational states |q1 q2 ... qN> with qubit 1 as the
/// most significant bit, |0> the +1 eigenstate of sigma_z.
namespace critsense::qmath {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

inline constexpr Complex kI{0.0, 1.0};

// Tolerances (fixed, not configurable).
inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kNormTol = 1e-10;
inline constexpr double kDensityHermitianTol = 1e-10;
inline constexpr double kTraceTol = 1e-10;
inline constexpr double kMinEigenvalueTol = 1e-8;

/// Normalized state vector. Construction fails with InvalidArgument when the
/// norm is off by more than kNormTol.
class PureState {
 public:
  explicit PureState(ComplexVector amplitudes);

  /// Normalizes before validating; rejects the zero vector.
  static PureState normalized(ComplexVector amplitudes);
  /// Computational basis state |index>.
  static PureState basis(Index dim, Index index);

  const ComplexVector& amplitudes() const noexcept { return amps_; }
  Index dim() const noexcept { return amps_.size(); }
  Complex operator[](Index i) const { return amps_(i); }

  ComplexMatrix projector() const { return amps_ * amps_.adjoint(); }

 private:
  ComplexVector amps_;
};

/// Hermitian, unit-trace, positive semidefinite matrix (to the tolerances above).
class DensityMatrix {
 public:
  explicit DensityMatrix(ComplexMatrix rho);

  static DensityMatrix from_pure(const PureState& psi);
  static DensityMatrix maximally_mixed(Index dim);

  const ComplexMatrix& matrix() const noexcept { return rho_; }
  Index dim() const noexcept { return rho_.rows(); }

 private:
  ComplexMatrix rho_;
};

struct EigenSystem {
  RealVector values;      // ascending
  ComplexMatrix vectors;  // orthonormal columns, vectors.col(i) <-> values(i)
};

double max_abs(const ComplexMatrix& m);
bool is_hermitian(const ComplexMatrix& m, double tol = kHermitianTol);
void require_hermitian(const ComplexMatrix& m, const char* where);

ComplexMatrix identity(Index dim);
ComplexMatrix pauli_x();
ComplexMatrix pauli_y();
ComplexMatrix pauli_z();
/// |0><1|, maps |1> to |0>.
ComplexMatrix sigma_minus();

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// Single-qubit operator acting on `site` (0-based, site 0 is the most
/// significant qubit) of an n-qubit register.
ComplexMatrix site_operator(const ComplexMatrix& op, int site, int n_qubits);

/// Eigendecomposition of a Hermitian matrix, eigenvalues ascending.
/// Throws NotHermitian when max|H - H^dag| >= kHermitianTol.
EigenSystem herm_eig(const ComplexMatrix& h);

/// exp(-i h t), computed from the eigendecomposition of h.
ComplexMatrix expm_hermitian(const ComplexMatrix& h, double t);

/// Principal square root of a positive semidefinite Hermitian matrix.
/// Eigenvalues in [-kMinEigenvalueTol, 0) are clamped to zero; anything more
/// negative raises NotPositive.
ComplexMatrix psd_sqrt(const ComplexMatrix& m);

/// Tr sqrt( sqrt(r1) r2 sqrt(r1) ), evaluated as the trace norm of
/// sqrt(r1) sqrt(r2) and clamped into [0, 1].
double uhlmann_fidelity(const DensityMatrix& r1, const DensityMatrix& r2);

/// sqrt(2 - 2 F(r1, r2)).
double bures_distance(const DensityMatrix& r1, const DensityMatrix& r2);

/// Multiplies by a global phase so that the first component with modulus
/// above 1e-8 is real and positive.
ComplexVector canonical_phase(ComplexVector v);

}  // namespace critsense::qmath
