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

#include <Eigen/Dense>

#include "critsense/qmath.hpp"

namespace critsense::ising {

using qmath::ComplexMatrix;
using qmath::PureState;

inline constexpr int kMaxSpins = 14;
inline constexpr double kDegeneracyTol = 1e-9;

/// Antiferromagnetic Ising chain
///   H = (J/2) sum_i sz_i sz_{i+1} + sum_i (Bz sz_i + Bx sx_i),
/// fields in units of J. With periodic boundaries and N = 2 both bond terms
/// land on the same pair, giving a net coupling J; this reproduces the
/// two-spin model exactly.
struct ChainParams {
  int n_spins = 2;
  double coupling = 1.0;
  double b_x = 0.0;
  double b_z = 0.0;
  bool periodic = true;
};

struct GroundState {
  double energy = 0.0;
  PureState state;
  double degeneracy_gap = 0.0;  // E1 - E0
};

enum class Field { Bx, Bz };

ComplexMatrix build_chain(const ChainParams& p);

/// Bz (sz1 + sz2) + Bx (sx1 + sx2) + sz1 sz2.
ComplexMatrix build_two_spin(double b_x, double b_z);

/// Two-level reduction of the two-spin model on {|a>=|11>, |b>=(|01>+|10>)/sqrt2}:
///   -|Bz| I + (1 - |Bz|) sz + sqrt2 Bx sx.
ComplexMatrix build_effective(double b_x, double b_z);

/// Lowest eigenpair. Throws Degenerate when E1 - E0 < kDegeneracyTol (the
/// Bx = 0 first-order point needs a small transverse field to be resolved).
GroundState ground_state(const ComplexMatrix& h);

/// < ((1/N) sum_i (-1)^i sz_i / 2)^2 >, sites counted from 1. In [0, 1/4].
double order_parameter(const PureState& state, int n_spins);

// Exchange-symmetry basis of two qubits, as 4-vectors in {|00>,|01>,|10>,|11>}.
PureState two_spin_a();  // |11>
PureState two_spin_b();  // (|01> + |10>)/sqrt2
PureState two_spin_c();  // |00>
PureState two_spin_d();  // (|01> - |10>)/sqrt2
ComplexMatrix swap_operator();

/// Matrix-free real representation of build_chain, for chains too large to
/// store densely.
class ChainOperator {
 public:
  explicit ChainOperator(const ChainParams& p);

  Eigen::Index dim() const noexcept { return diag_.size(); }
  const ChainParams& params() const noexcept { return params_; }

  void apply(const Eigen::VectorXd& in, Eigen::VectorXd& out) const;
  /// d H / d field applied to `in`.
  void apply_derivative(Field field, const Eigen::VectorXd& in, Eigen::VectorXd& out) const;

 private:
  ChainParams params_;
  Eigen::VectorXd diag_;
  Eigen::VectorXd magnetization_;  // sum_i sz_i per basis state
};

/// Ground state of a chain: dense diagonalization up to 8 spins, restarted
/// Lanczos beyond. Same Degenerate contract as ground_state.
GroundState chain_ground_state(const ChainParams& p);

/// Ground-state QFI with respect to Bx or Bz from linear response,
///   F = 4 || (H - E0)^+ Q dH |g> ||^2,  Q = 1 - |g><g|,
/// solved by conjugate gradients on the complement of |g>.
double chain_ground_qfi(const ChainParams& p, Field field);

}  // namespace critsense::ising
