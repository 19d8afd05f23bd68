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


#include "critsense/qmath.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace critsense::qmath {

namespace {

void require_square(const ComplexMatrix& m, const char* where) {
  if (m.rows() != m.cols()) {
    throw Error(ErrorKind::DimMismatch, std::string(where) + ": matrix is not square");
  }
}

}  // namespace

PureState::PureState(ComplexVector amplitudes) : amps_(std::move(amplitudes)) {
  if (amps_.size() == 0) throw Error(ErrorKind::InvalidArgument, "PureState: empty vector");
  const double norm = amps_.norm();
  if (std::abs(norm - 1.0) > kNormTol) {
    throw Error(ErrorKind::InvalidArgument,
                "PureState: norm " + std::to_string(norm) + " differs from 1");
  }
}

PureState PureState::normalized(ComplexVector amplitudes) {
  const double norm = amplitudes.norm();
  if (!(norm > 0.0)) throw Error(ErrorKind::InvalidArgument, "PureState: zero vector");
  amplitudes /= norm;
  return PureState(std::move(amplitudes));
}

PureState PureState::basis(Index dim, Index index) {
  if (index < 0 || index >= dim) throw Error(ErrorKind::InvalidArgument, "PureState: index out of range");
  ComplexVector v = ComplexVector::Zero(dim);
  v(index) = 1.0;
  return PureState(std::move(v));
}

DensityMatrix::DensityMatrix(ComplexMatrix rho) : rho_(std::move(rho)) {
  require_square(rho_, "DensityMatrix");
  if (!is_hermitian(rho_, kDensityHermitianTol)) {
    throw Error(ErrorKind::NotHermitian, "DensityMatrix: not Hermitian");
  }
  const double tr = rho_.trace().real();
  if (std::abs(tr - 1.0) > kTraceTol) {
    throw Error(ErrorKind::InvalidArgument, "DensityMatrix: trace " + std::to_string(tr));
  }
  // Symmetrize away sub-tolerance asymmetry so downstream eigensolvers see an
  // exactly Hermitian matrix.
  rho_ = (0.5 * (rho_ + rho_.adjoint())).eval();
  const double min_eig = herm_eig(rho_).values(0);
  if (min_eig < -kMinEigenvalueTol) {
    throw Error(ErrorKind::NotPositive,
                "DensityMatrix: minimum eigenvalue " + std::to_string(min_eig));
  }
}

DensityMatrix DensityMatrix::from_pure(const PureState& psi) { return DensityMatrix(psi.projector()); }

DensityMatrix DensityMatrix::maximally_mixed(Index dim) {
  return DensityMatrix(identity(dim) / static_cast<double>(dim));
}

double max_abs(const ComplexMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

bool is_hermitian(const ComplexMatrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  return max_abs(m - m.adjoint()) < tol;
}

void require_hermitian(const ComplexMatrix& m, const char* where) {
  require_square(m, where);
  if (!is_hermitian(m)) {
    throw Error(ErrorKind::NotHermitian, std::string(where) + ": max|M - M^dag| = " +
                                             std::to_string(max_abs(m - m.adjoint())));
  }
}

ComplexMatrix identity(Index dim) { return ComplexMatrix::Identity(dim, dim); }

ComplexMatrix pauli_x() {
  ComplexMatrix m(2, 2);
  m << 0.0, 1.0, 1.0, 0.0;
  return m;
}

ComplexMatrix pauli_y() {
  ComplexMatrix m(2, 2);
  m << 0.0, -kI, kI, 0.0;
  return m;
}

ComplexMatrix pauli_z() {
  ComplexMatrix m(2, 2);
  m << 1.0, 0.0, 0.0, -1.0;
  return m;
}

ComplexMatrix sigma_minus() {
  ComplexMatrix m(2, 2);
  m << 0.0, 1.0, 0.0, 0.0;
  return m;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

ComplexMatrix site_operator(const ComplexMatrix& op, int site, int n_qubits) {
  if (site < 0 || site >= n_qubits) throw Error(ErrorKind::InvalidArgument, "site_operator: bad site");
  ComplexMatrix out = site == 0 ? op : identity(2);
  for (int k = 1; k < n_qubits; ++k) out = kron(out, k == site ? op : identity(2));
  return out;
}

EigenSystem herm_eig(const ComplexMatrix& h) {
  require_hermitian(h, "herm_eig");
  EigenSystem es;
  if (h.imag().cwiseAbs().maxCoeff() == 0.0) {
    // Real symmetric input: the real solver is several times faster.
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h.real());
    if (solver.info() != Eigen::Success) throw Error(ErrorKind::InvalidArgument, "herm_eig: no convergence");
    es.values = solver.eigenvalues();
    es.vectors = solver.eigenvectors().cast<Complex>();
    return es;
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h);
  if (solver.info() != Eigen::Success) throw Error(ErrorKind::InvalidArgument, "herm_eig: no convergence");
  es.values = solver.eigenvalues();
  es.vectors = solver.eigenvectors();
  return es;
}

ComplexMatrix expm_hermitian(const ComplexMatrix& h, double t) {
  const EigenSystem es = herm_eig(h);
  ComplexVector phases(es.values.size());
  for (Index i = 0; i < phases.size(); ++i) phases(i) = std::exp(-kI * es.values(i) * t);
  return es.vectors * phases.asDiagonal() * es.vectors.adjoint();
}

ComplexMatrix psd_sqrt(const ComplexMatrix& m) {
  const EigenSystem es = herm_eig(m);
  const double floor = 64.0 * std::numeric_limits<double>::epsilon() *
                       std::max(1.0, es.values.cwiseAbs().maxCoeff());
  RealVector roots(es.values.size());
  for (Index i = 0; i < roots.size(); ++i) {
    const double lambda = es.values(i);
    if (lambda < -kMinEigenvalueTol) {
      throw Error(ErrorKind::NotPositive, "psd_sqrt: eigenvalue " + std::to_string(lambda));
    }
    // Eigenvalues at the roundoff floor are treated as exact zeros.
    roots(i) = lambda > floor ? std::sqrt(lambda) : 0.0;
  }
  return es.vectors * roots.cast<Complex>().asDiagonal() * es.vectors.adjoint();
}

double uhlmann_fidelity(const DensityMatrix& r1, const DensityMatrix& r2) {
  if (r1.dim() != r2.dim()) throw Error(ErrorKind::DimMismatch, "uhlmann_fidelity: dimensions differ");
  // Trace norm of sqrt(r1) sqrt(r2). Singular values keep O(eps) accuracy near
  // rank deficiency, where eigenvalues of sqrt(r1) r2 sqrt(r1) followed by a
  // square root would leave O(sqrt(eps)) noise.
  const ComplexMatrix product = psd_sqrt(r1.matrix()) * psd_sqrt(r2.matrix());
  const double f = Eigen::JacobiSVD<ComplexMatrix>(product).singularValues().sum();
  return std::clamp(f, 0.0, 1.0);
}

double bures_distance(const DensityMatrix& r1, const DensityMatrix& r2) {
  return std::sqrt(std::max(0.0, 2.0 - 2.0 * uhlmann_fidelity(r1, r2)));
}

ComplexVector canonical_phase(ComplexVector v) {
  for (Index i = 0; i < v.size(); ++i) {
    const double mod = std::abs(v(i));
    if (mod > 1e-8) {
      v *= std::conj(v(i)) / mod;
      break;
    }
  }
  return v;
}

}  // namespace critsense::qmath
