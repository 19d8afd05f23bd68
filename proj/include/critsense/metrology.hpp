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

#include <functional>
#include <vector>

#include "critsense/qmath.hpp"

namespace critsense::metrology {

using qmath::ComplexMatrix;
using qmath::ComplexVector;
using qmath::DensityMatrix;
using qmath::PureState;
using qmath::RealVector;

inline constexpr double kPovmTol = 1e-10;
inline constexpr double kProbabilityFloor = -1e-12;
inline constexpr double kProbabilitySumTol = 1e-9;
inline constexpr double kSpectralCutoff = 1e-10;
inline constexpr double kCfiSkip = 1e-12;

/// Positive operators summing to the identity.
class Povm {
 public:
  explicit Povm(std::vector<ComplexMatrix> elements);

  /// Rank-1 projectors onto the (orthonormal) columns of `basis`.
  static Povm projective(const ComplexMatrix& basis);

  const std::vector<ComplexMatrix>& elements() const noexcept { return elements_; }
  std::size_t size() const noexcept { return elements_.size(); }
  qmath::Index dim() const noexcept { return elements_.front().rows(); }

 private:
  std::vector<ComplexMatrix> elements_;
};

/// Outcome distribution. Entries down to kProbabilityFloor are clamped to zero
/// and the vector is renormalized.
class ProbabilityVector {
 public:
  explicit ProbabilityVector(RealVector probs);

  const RealVector& values() const noexcept { return probs_; }
  std::size_t size() const noexcept { return static_cast<std::size_t>(probs_.size()); }
  double operator[](qmath::Index i) const { return probs_(i); }

 private:
  RealVector probs_;
};

using StateFamily = std::function<PureState(double)>;
using DensityFamily = std::function<DensityMatrix(double)>;

/// 4 (<dpsi|dpsi> - |<psi|dpsi>|^2).
double pure_qfi(const PureState& state, const ComplexVector& dstate);

/// 4 D_B^2 / delta^2 between the states at b_z -/+ delta/2.
double pure_qfi_fd(const StateFamily& state_at, double b_z, double delta);

/// Same estimator for density matrices, with the Uhlmann fidelity.
double mixed_qfi_bures_fd(const DensityFamily& rho_at, double b_z, double delta);

/// 2 sum_{ij} |<i|drho|j>|^2 / (l_i + l_j) over pairs with l_i + l_j > kSpectralCutoff.
double mixed_qfi_spectral(const DensityMatrix& rho, const ComplexMatrix& drho);

/// Central difference (rho(b_z + delta/2) - rho(b_z - delta/2)) / delta.
ComplexMatrix density_derivative(const DensityFamily& rho_at, double b_z, double delta);

/// Symmetric logarithmic derivative of a pure family, 2(|dpsi><psi| + |psi><dpsi|).
ComplexMatrix sld(const PureState& state, const ComplexVector& dstate);

/// Columns v1..v4 of the optimal measurement at the first-order critical point,
/// in the {|00>, |01>, |10>, |11>} basis.
ComplexMatrix optimal_basis_at_critical();
Povm optimal_povm_at_critical();

ProbabilityVector born_probs(const DensityMatrix& rho, const Povm& povm);
ProbabilityVector born_probs(const PureState& state, const Povm& povm);

/// sum_m (dp_m)^2 / pbar_m with dp_m = (p+_m - p-_m)/delta and pbar the
/// midpoint distribution. Terms with pbar_m < kCfiSkip are dropped.
double cfi(const ProbabilityVector& probs_plus, const ProbabilityVector& probs_minus, double delta);

/// sum_m dp_m^2 / p_m for an exact derivative.
double cfi_exact(const ProbabilityVector& probs, const RealVector& dprobs);

}  // namespace critsense::metrology
