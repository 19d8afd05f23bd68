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


#include "critsense/metrology.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <utility>

namespace critsense::metrology {

using qmath::Complex;
using qmath::Index;

namespace {

void require_same_dim(Index a, Index b, const char* where) {
  if (a != b) throw Error(ErrorKind::DimMismatch, std::string(where) + ": dimensions differ");
}

void require_delta(double delta) {
  if (!(delta > 0.0)) throw Error(ErrorKind::InvalidArgument, "finite-difference step must be positive");
}

}  // namespace

Povm::Povm(std::vector<ComplexMatrix> elements) : elements_(std::move(elements)) {
  if (elements_.empty()) throw Error(ErrorKind::InvalidArgument, "POVM needs at least one element");
  const Index d = elements_.front().rows();
  ComplexMatrix total = ComplexMatrix::Zero(d, d);
  for (const auto& e : elements_) {
    if (e.rows() != d || e.cols() != d) throw Error(ErrorKind::DimMismatch, "POVM elements differ in size");
    if (!qmath::is_hermitian(e, kPovmTol)) throw Error(ErrorKind::NotHermitian, "POVM element is not Hermitian");
    const ComplexMatrix sym = 0.5 * (e + e.adjoint());
    if (qmath::herm_eig(sym).values(0) < -kPovmTol) {
      throw Error(ErrorKind::NotPositive, "POVM element has a negative eigenvalue");
    }
    total += e;
  }
  if (qmath::max_abs(total - qmath::identity(d)) > kPovmTol) {
    throw Error(ErrorKind::InvalidArgument, "POVM elements do not sum to the identity");
  }
}

Povm Povm::projective(const ComplexMatrix& basis) {
  std::vector<ComplexMatrix> elements;
  for (Index j = 0; j < basis.cols(); ++j) elements.push_back(basis.col(j) * basis.col(j).adjoint());
  return Povm(std::move(elements));
}

ProbabilityVector::ProbabilityVector(RealVector probs) : probs_(std::move(probs)) {
  for (Index i = 0; i < probs_.size(); ++i) {
    if (!(probs_(i) >= kProbabilityFloor)) {
      throw Error(ErrorKind::InvalidArgument, "probability " + std::to_string(probs_(i)) + " below floor");
    }
    probs_(i) = std::max(probs_(i), 0.0);
  }
  const double sum = probs_.sum();
  if (std::abs(sum - 1.0) > kProbabilitySumTol) {
    throw Error(ErrorKind::InvalidArgument, "probabilities sum to " + std::to_string(sum));
  }
  probs_ /= sum;
}

double pure_qfi(const PureState& state, const ComplexVector& dstate) {
  require_same_dim(state.dim(), dstate.size(), "pure_qfi");
  const Complex overlap = state.amplitudes().dot(dstate);
  return std::max(0.0, 4.0 * (dstate.squaredNorm() - std::norm(overlap)));
}

double pure_qfi_fd(const StateFamily& state_at, double b_z, double delta) {
  require_delta(delta);
  const PureState lo = state_at(b_z - 0.5 * delta);
  const PureState hi = state_at(b_z + 0.5 * delta);
  require_same_dim(lo.dim(), hi.dim(), "pure_qfi_fd");
  // For projectors the Uhlmann fidelity is the overlap modulus.
  const double fidelity = std::min(1.0, std::abs(lo.amplitudes().dot(hi.amplitudes())));
  return 4.0 * (2.0 - 2.0 * fidelity) / (delta * delta);
}

double mixed_qfi_bures_fd(const DensityFamily& rho_at, double b_z, double delta) {
  require_delta(delta);
  const double d = qmath::bures_distance(rho_at(b_z - 0.5 * delta), rho_at(b_z + 0.5 * delta));
  return 4.0 * d * d / (delta * delta);
}

ComplexMatrix density_derivative(const DensityFamily& rho_at, double b_z, double delta) {
  require_delta(delta);
  return (rho_at(b_z + 0.5 * delta).matrix() - rho_at(b_z - 0.5 * delta).matrix()) / delta;
}

double mixed_qfi_spectral(const DensityMatrix& rho, const ComplexMatrix& drho) {
  require_same_dim(rho.dim(), drho.rows(), "mixed_qfi_spectral");
  qmath::require_hermitian(drho, "mixed_qfi_spectral");
  const qmath::EigenSystem es = qmath::herm_eig(rho.matrix());
  const ComplexMatrix d = es.vectors.adjoint() * drho * es.vectors;
  double f = 0.0;
  for (Index i = 0; i < d.rows(); ++i) {
    for (Index j = 0; j < d.cols(); ++j) {
      const double s = es.values(i) + es.values(j);
      if (s > kSpectralCutoff) f += 2.0 * std::norm(d(i, j)) / s;
    }
  }
  return f;
}

ComplexMatrix sld(const PureState& state, const ComplexVector& dstate) {
  require_same_dim(state.dim(), dstate.size(), "sld");
  const ComplexMatrix outer = dstate * state.amplitudes().adjoint();
  return 2.0 * (outer + outer.adjoint());
}

ComplexMatrix optimal_basis_at_critical() {
  const double r = std::numbers::sqrt2;
  ComplexMatrix v(4, 4);
  v.col(0) << 0.0, 1.0, 1.0, r;
  v.col(1) << 0.0, 1.0, 1.0, -r;
  v.col(2) << r, 1.0, -1.0, 0.0;
  v.col(3) << -r, 1.0, -1.0, 0.0;
  return 0.5 * v;
}

Povm optimal_povm_at_critical() { return Povm::projective(optimal_basis_at_critical()); }

ProbabilityVector born_probs(const DensityMatrix& rho, const Povm& povm) {
  require_same_dim(rho.dim(), povm.dim(), "born_probs");
  RealVector p(static_cast<Index>(povm.size()));
  for (std::size_t m = 0; m < povm.size(); ++m) {
    p(static_cast<Index>(m)) = (rho.matrix() * povm.elements()[m]).trace().real();
  }
  return ProbabilityVector(std::move(p));
}

ProbabilityVector born_probs(const PureState& state, const Povm& povm) {
  require_same_dim(state.dim(), povm.dim(), "born_probs");
  RealVector p(static_cast<Index>(povm.size()));
  for (std::size_t m = 0; m < povm.size(); ++m) {
    p(static_cast<Index>(m)) = state.amplitudes().dot(povm.elements()[m] * state.amplitudes()).real();
  }
  return ProbabilityVector(std::move(p));
}

double cfi(const ProbabilityVector& probs_plus, const ProbabilityVector& probs_minus, double delta) {
  require_delta(delta);
  require_same_dim(static_cast<Index>(probs_plus.size()), static_cast<Index>(probs_minus.size()), "cfi");
  double f = 0.0;
  for (Index m = 0; m < static_cast<Index>(probs_plus.size()); ++m) {
    const double mid = 0.5 * (probs_plus[m] + probs_minus[m]);
    if (mid < kCfiSkip) continue;
    const double dp = (probs_plus[m] - probs_minus[m]) / delta;
    f += dp * dp / mid;
  }
  return f;
}

double cfi_exact(const ProbabilityVector& probs, const RealVector& dprobs) {
  require_same_dim(static_cast<Index>(probs.size()), dprobs.size(), "cfi_exact");
  double f = 0.0;
  for (Index m = 0; m < dprobs.size(); ++m) {
    if (probs[m] < kCfiSkip) continue;
    f += dprobs(m) * dprobs(m) / probs[m];
  }
  return f;
}

}  // namespace critsense::metrology
