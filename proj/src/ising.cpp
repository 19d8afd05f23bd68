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


#include "critsense/ising.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <string>
#include <vector>

namespace critsense::ising {

using qmath::Complex;
using qmath::ComplexVector;
using qmath::Index;
using Eigen::VectorXd;

namespace {

constexpr int kDenseLimit = 8;

void check_params(const ChainParams& p) {
  if (p.n_spins < 2) throw Error(ErrorKind::InvalidArgument, "chain needs at least 2 spins");
  if (p.n_spins > kMaxSpins) {
    throw Error(ErrorKind::DimTooLarge, "chain of " + std::to_string(p.n_spins) +
                                            " spins exceeds the limit of " + std::to_string(kMaxSpins));
  }
}

// sz eigenvalue of `site` (0-based from the most significant qubit) in basis state s.
inline double spin_z(Index s, int site, int n) {
  return ((s >> (n - 1 - site)) & 1) ? -1.0 : 1.0;
}

double operator_scale(const ChainParams& p) {
  return p.n_spins * (0.5 * std::abs(p.coupling) + std::abs(p.b_x) + std::abs(p.b_z)) + 1.0;
}

void project_out(VectorXd& w, const std::vector<VectorXd>& basis) {
  for (const auto& d : basis) w -= d.dot(w) * d;
}

struct RealEigenpair {
  double value = 0.0;
  VectorXd vector;
};

// Restarted Lanczos with full reorthogonalization for the lowest eigenpair of
// `op` on the orthogonal complement of `deflate`.
RealEigenpair lanczos_lowest(const ChainOperator& op, const std::vector<VectorXd>& deflate) {
  const Index n = op.dim();
  const double scale = operator_scale(op.params());
  const Index m = std::min<Index>(n - static_cast<Index>(deflate.size()), 90);
  constexpr int kMaxRestarts = 400;

  // A fixed pseudo-random start overlaps every symmetry sector; smooth
  // starts can miss the sector holding the ground state.
  std::mt19937_64 rng(0x5EED);
  std::normal_distribution<double> normal;
  VectorXd x(n);
  for (Index i = 0; i < n; ++i) x(i) = normal(rng);
  project_out(x, deflate);
  x.normalize();

  Eigen::MatrixXd basis(n, m);
  VectorXd w(n);
  for (int restart = 0; restart < kMaxRestarts; ++restart) {
    std::vector<double> alpha, beta;
    basis.col(0) = x;
    Index used = 0;
    for (Index j = 0; j < m; ++j) {
      op.apply(basis.col(j), w);
      project_out(w, deflate);
      alpha.push_back(basis.col(j).dot(w));
      for (int pass = 0; pass < 2; ++pass) {
        w -= basis.leftCols(j + 1) * (basis.leftCols(j + 1).transpose() * w);
      }
      used = j + 1;
      const double b = w.norm();
      if (j + 1 == m || b < 1e-13 * scale) break;
      beta.push_back(b);
      basis.col(j + 1) = w / b;
    }
    VectorXd diag = Eigen::Map<VectorXd>(alpha.data(), used);
    VectorXd sub = used > 1 ? VectorXd(Eigen::Map<VectorXd>(beta.data(), used - 1)) : VectorXd(0);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> tri;
    tri.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
    x = basis.leftCols(used) * tri.eigenvectors().col(0);
    project_out(x, deflate);
    x.normalize();

    op.apply(x, w);
    project_out(w, deflate);
    const double theta = x.dot(w);
    const double residual = (w - theta * x).norm();
    if (residual < 1e-11 * scale) return {theta, x};
  }
  throw Error(ErrorKind::NonTerminating, "Lanczos did not converge");
}

}  // namespace

ChainOperator::ChainOperator(const ChainParams& p) : params_(p) {
  check_params(p);
  const int n = p.n_spins;
  const Index dim = Index{1} << n;
  diag_.resize(dim);
  magnetization_.resize(dim);
  const int bonds = p.periodic ? n : n - 1;
  for (Index s = 0; s < dim; ++s) {
    double zz = 0.0, mz = 0.0;
    for (int i = 0; i < bonds; ++i) zz += spin_z(s, i, n) * spin_z(s, (i + 1) % n, n);
    for (int i = 0; i < n; ++i) mz += spin_z(s, i, n);
    diag_(s) = 0.5 * p.coupling * zz + p.b_z * mz;
    magnetization_(s) = mz;
  }
}

void ChainOperator::apply(const VectorXd& in, VectorXd& out) const {
  out = diag_.cwiseProduct(in);
  if (params_.b_x == 0.0) return;
  const int n = params_.n_spins;
  for (Index s = 0; s < dim(); ++s) {
    double acc = 0.0;
    for (int k = 0; k < n; ++k) acc += in(s ^ (Index{1} << k));
    out(s) += params_.b_x * acc;
  }
}

void ChainOperator::apply_derivative(Field field, const VectorXd& in, VectorXd& out) const {
  if (field == Field::Bz) {
    out = magnetization_.cwiseProduct(in);
    return;
  }
  out.resize(dim());
  const int n = params_.n_spins;
  for (Index s = 0; s < dim(); ++s) {
    double acc = 0.0;
    for (int k = 0; k < n; ++k) acc += in(s ^ (Index{1} << k));
    out(s) = acc;
  }
}

ComplexMatrix build_chain(const ChainParams& p) {
  const ChainOperator op(p);
  const Index dim = op.dim();
  ComplexMatrix h = ComplexMatrix::Zero(dim, dim);
  VectorXd e(dim), col(dim);
  for (Index j = 0; j < dim; ++j) {
    e.setZero();
    e(j) = 1.0;
    op.apply(e, col);
    h.col(j) = col.cast<Complex>();
  }
  return h;
}

ComplexMatrix build_two_spin(double b_x, double b_z) {
  using namespace qmath;
  const ComplexMatrix z1 = kron(pauli_z(), identity(2)), z2 = kron(identity(2), pauli_z());
  const ComplexMatrix x1 = kron(pauli_x(), identity(2)), x2 = kron(identity(2), pauli_x());
  return b_z * (z1 + z2) + b_x * (x1 + x2) + z1 * z2;
}

ComplexMatrix build_effective(double b_x, double b_z) {
  using namespace qmath;
  const double abs_bz = std::abs(b_z);
  return -abs_bz * identity(2) + (1.0 - abs_bz) * pauli_z() + std::sqrt(2.0) * b_x * pauli_x();
}

GroundState ground_state(const ComplexMatrix& h) {
  const qmath::EigenSystem es = qmath::herm_eig(h);
  const double gap = es.values.size() > 1 ? es.values(1) - es.values(0)
                                          : std::numeric_limits<double>::infinity();
  if (gap < kDegeneracyTol) {
    throw Error(ErrorKind::Degenerate, "ground state gap " + std::to_string(gap));
  }
  return GroundState{es.values(0), PureState::normalized(qmath::canonical_phase(es.vectors.col(0))), gap};
}

double order_parameter(const PureState& state, int n_spins) {
  if (n_spins < 1 || n_spins > 30 || state.dim() != (Index{1} << n_spins)) {
    throw Error(ErrorKind::DimMismatch, "order_parameter: state dimension does not match 2^N");
  }
  double value = 0.0;
  for (Index s = 0; s < state.dim(); ++s) {
    double staggered = 0.0;
    for (int i = 0; i < n_spins; ++i) {
      // Site i+1 in 1-based counting; odd sites carry the minus sign.
      const double sign = ((i + 1) % 2 == 1) ? -1.0 : 1.0;
      staggered += sign * spin_z(s, i, n_spins) / 2.0;
    }
    staggered /= n_spins;
    value += std::norm(state[s]) * staggered * staggered;
  }
  return value;
}

PureState two_spin_a() { return PureState::basis(4, 3); }
PureState two_spin_c() { return PureState::basis(4, 0); }

PureState two_spin_b() {
  ComplexVector v = ComplexVector::Zero(4);
  v(1) = v(2) = 1.0 / std::sqrt(2.0);
  return PureState::normalized(v);
}

PureState two_spin_d() {
  ComplexVector v = ComplexVector::Zero(4);
  v(1) = 1.0 / std::sqrt(2.0);
  v(2) = -1.0 / std::sqrt(2.0);
  return PureState::normalized(v);
}

ComplexMatrix swap_operator() {
  ComplexMatrix s = ComplexMatrix::Zero(4, 4);
  s(0, 0) = s(3, 3) = 1.0;
  s(1, 2) = s(2, 1) = 1.0;
  return s;
}

GroundState chain_ground_state(const ChainParams& p) {
  check_params(p);
  if (p.n_spins <= kDenseLimit) return ground_state(build_chain(p));

  const ChainOperator op(p);
  RealEigenpair g0 = lanczos_lowest(op, {});
  RealEigenpair g1 = lanczos_lowest(op, {g0.vector});
  const double gap = g1.value - g0.value;
  if (gap < kDegeneracyTol) throw Error(ErrorKind::Degenerate, "ground state gap " + std::to_string(gap));
  return GroundState{g0.value, PureState::normalized(qmath::canonical_phase(g0.vector.cast<Complex>())), gap};
}

double chain_ground_qfi(const ChainParams& p, Field field) {
  const GroundState gs = chain_ground_state(p);
  const ChainOperator op(p);
  const Index n = op.dim();
  // The chain Hamiltonian is real, so after phase fixing the ground state is real.
  const VectorXd g = gs.state.amplitudes().real();

  auto project = [&](VectorXd& v) { v -= g.dot(v) * g; };
  auto apply_shifted = [&](const VectorXd& in, VectorXd& out) {
    VectorXd tmp = in;
    project(tmp);
    op.apply(tmp, out);
    out -= gs.energy * tmp;
    project(out);
  };

  VectorXd rhs(n);
  op.apply_derivative(field, g, rhs);
  project(rhs);
  rhs = -rhs;
  const double rhs_norm = rhs.norm();
  if (rhs_norm == 0.0) return 0.0;

  // Rounding leaks the iterates toward the null direction g once the residual
  // nears 1e-13, so project every step and keep the best iterate.
  VectorXd x = VectorXd::Zero(n), r = rhs, d = rhs, ad(n), best = x;
  double rr = r.squaredNorm(), best_rr = rr;
  constexpr int kMaxIter = 20000;
  for (int it = 0; it < kMaxIter && std::sqrt(rr) > 1e-12 * rhs_norm; ++it) {
    apply_shifted(d, ad);
    const double alpha = rr / d.dot(ad);
    x += alpha * d;
    project(x);
    r -= alpha * ad;
    project(r);
    const double rr_new = r.squaredNorm();
    if (rr_new < best_rr) {
      best_rr = rr_new;
      best = x;
    } else if (rr_new > 1e6 * best_rr) {
      break;
    }
    d = r + (rr_new / rr) * d;
    project(d);
    rr = rr_new;
  }
  x = best;
  if (std::sqrt(best_rr) > 1e-9 * rhs_norm) {
    throw Error(ErrorKind::NonTerminating, "linear-response solve did not converge");
  }
  return 4.0 * x.squaredNorm();
}

}  // namespace critsense::ising
