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


#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "helpers.hpp"

#include "critsense/analytic.hpp"
#include "critsense/dynamics.hpp"
#include "critsense/ising.hpp"
#include "critsense/metrology.hpp"

using namespace critsense;
using namespace critsense::metrology;
using qmath::Complex;
using qmath::Index;
using qmath::kI;
using qmath::max_abs;

namespace {

PureState full_quench(double b_x, double b_z) {
  return dynamics::evolve_unitary(ising::build_two_spin(b_x, b_z), analytic::critical_time(b_x),
                                  ising::two_spin_a());
}

ComplexVector derivative(const StateFamily& f, double x, double h = 1e-6) {
  return (f(x + h).amplitudes() - f(x - h).amplitudes()) / (2.0 * h);
}

}  // namespace

TEST_SUITE("metrology") {

TEST_CASE("pure-state QFI basics") {
  std::mt19937_64 rng(1);
  const PureState psi(testutil::random_state(rng, 4));
  CHECK(pure_qfi(psi, kI * 0.7 * psi.amplitudes()) < 1e-14);
  const double x = 0.4;
  ComplexVector s(2), d(2);
  s << std::cos(x), std::sin(x);
  d << -std::sin(x), std::cos(x);
  CHECK(pure_qfi(PureState(s), d) == doctest::Approx(4.0));
  CHECK_THROWS_AS(pure_qfi(psi, ComplexVector::Zero(3)), Error);
}

TEST_CASE("pure-state QFI is gauge invariant") {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> phi(-5.0, 5.0);
  for (int i = 0; i < 200; ++i) {
    const PureState psi(testutil::random_state(rng, 4));
    const ComplexVector d = testutil::random_state(rng, 4) * 3.0;
    const double f = pure_qfi(psi, d);
    CHECK(std::abs(pure_qfi(psi, d + kI * phi(rng) * psi.amplitudes()) - f) < 1e-10);
  }
}

TEST_CASE("QFI of the quenched state at the critical point") {
  const double t = analytic::critical_time(0.1);
  auto family = [&](double z) { return analytic::quench_state({0.1, z, t}); };
  CHECK(pure_qfi(family(1.0), derivative(family, 1.0)) == doctest::Approx(200.0).epsilon(1e-3));
}

TEST_CASE("Bures finite-difference estimator") {
  const StateFamily constant = [](double) { return PureState::basis(4, 2); };
  CHECK(pure_qfi_fd(constant, 1.0, 0.1) == 0.0);
  CHECK_THROWS_AS(pure_qfi_fd(constant, 1.0, 0.0), Error);

  auto family = [](double z) { return full_quench(0.1, z); };
  const double exact = pure_qfi(family(1.0), derivative(family, 1.0));
  CHECK(pure_qfi_fd(family, 1.0, 1e-5) == doctest::Approx(exact).epsilon(1e-4));
  CHECK(pure_qfi_fd(family, 1.0, 0.1) < exact);

  // Density-matrix route reduces to the pure one in the unitary limit.
  const DensityFamily rho = [&](double z) { return DensityMatrix::from_pure(family(z)); };
  CHECK(mixed_qfi_bures_fd(rho, 1.0, 0.1) == doctest::Approx(pure_qfi_fd(family, 1.0, 0.1)).epsilon(1e-8));
  CHECK(mixed_qfi_bures_fd(rho, 0.9, 1e-4) == doctest::Approx(pure_qfi_fd(family, 0.9, 1e-4)).epsilon(1e-6));
  const DensityFamily fixed = [](double) { return DensityMatrix::maximally_mixed(4); };
  CHECK(mixed_qfi_bures_fd(fixed, 0.3, 0.1) < 1e-14);
}

TEST_CASE("spectral mixed QFI") {
  std::mt19937_64 rng(3);
  // Rank one: agrees with the pure formula.
  for (int i = 0; i < 20; ++i) {
    const PureState psi(testutil::random_state(rng, 4));
    const ComplexMatrix h = testutil::random_hermitian(rng, 4);
    const ComplexVector d = -kI * (h * psi.amplitudes());
    const ComplexMatrix drho = d * psi.amplitudes().adjoint() + psi.amplitudes() * d.adjoint();
    CHECK(mixed_qfi_spectral(DensityMatrix::from_pure(psi), drho) ==
          doctest::Approx(pure_qfi(psi, d)).epsilon(1e-8));
  }
  CHECK(mixed_qfi_spectral(DensityMatrix::maximally_mixed(4), ComplexMatrix::Zero(4, 4)) == 0.0);
  ComplexMatrix skew = ComplexMatrix::Zero(4, 4);
  skew(0, 1) = 1.0;
  CHECK_THROWS_AS(mixed_qfi_spectral(DensityMatrix::maximally_mixed(4), skew), Error);

  // Two independent estimators on random full-rank families.
  for (int i = 0; i < 10; ++i) {
    const ComplexMatrix r0 = testutil::random_density(rng, 4), r1 = testutil::random_density(rng, 4);
    const ComplexMatrix h = testutil::random_hermitian(rng, 4);
    const DensityFamily family = [&](double x) {
      const ComplexMatrix u = qmath::expm_hermitian(h, x);
      return DensityMatrix(u * ((1.0 - 0.3 * x) * r0 + 0.3 * x * r1) * u.adjoint());
    };
    const double x = 0.4;
    const ComplexMatrix r = family(x).matrix();
    const ComplexMatrix u = qmath::expm_hermitian(h, x);
    const ComplexMatrix exact = -kI * (h * r - r * h) + 0.3 * u * (r1 - r0) * u.adjoint();
    const double spectral = mixed_qfi_spectral(family(x), 0.5 * (exact + exact.adjoint()));
    CHECK(mixed_qfi_bures_fd(family, x, 1e-4) == doctest::Approx(spectral).epsilon(1e-3));
  }
}

TEST_CASE("symmetric logarithmic derivative") {
  std::mt19937_64 rng(4);
  const PureState psi(testutil::random_state(rng, 4));
  CHECK(max_abs(sld(psi, ComplexVector::Zero(4))) == 0.0);
  for (int i = 0; i < 50; ++i) {
    const PureState s(testutil::random_state(rng, 4));
    ComplexVector d = testutil::random_state(rng, 4);
    d -= s.amplitudes().dot(d).real() * s.amplitudes();  // purely imaginary <psi|dpsi>
    const ComplexMatrix l = sld(s, d);
    CHECK(qmath::is_hermitian(l));
    const ComplexMatrix rho = s.projector();
    CHECK(std::abs((rho * l).trace()) < 1e-12);
    CHECK((rho * l * l).trace().real() == doctest::Approx(pure_qfi(s, d)).epsilon(1e-10));
  }
}

TEST_CASE("SLD eigenvectors at the critical point are the optimal measurement") {
  const double t = analytic::critical_time(0.1);
  auto family = [&](double z) { return analytic::embed_two_level(analytic::quench_state({0.1, z, t})); };
  const ComplexMatrix l = sld(family(1.0), derivative(family, 1.0, 1e-7));
  const qmath::EigenSystem es = qmath::herm_eig(l);
  const ComplexMatrix v = optimal_basis_at_critical();
  // Nonzero eigenvalues come first and last in ascending order.
  for (Index k : {Index{0}, Index{3}}) {
    const ComplexVector e = qmath::canonical_phase(es.vectors.col(k));
    const double d1 = (e - v.col(0)).cwiseAbs().maxCoeff(), d2 = (e - v.col(1)).cwiseAbs().maxCoeff();
    CHECK(std::min(d1, d2) < 1e-6);
  }
  CHECK(std::abs(es.values(1)) < 1e-6);
  CHECK(std::abs(es.values(2)) < 1e-6);
}

TEST_CASE("optimal POVM at the critical point") {
  const Povm povm = optimal_povm_at_critical();
  REQUIRE(povm.size() == 4);
  ComplexMatrix total = ComplexMatrix::Zero(4, 4);
  for (const auto& e : povm.elements()) total += e;
  CHECK(max_abs(total - qmath::identity(4)) < 1e-12);
  const ComplexMatrix v = optimal_basis_at_critical();
  CHECK(max_abs(v.adjoint() * v - qmath::identity(4)) < 1e-15);
  const ComplexVector v1 = (ising::two_spin_a().amplitudes() + ising::two_spin_b().amplitudes()) / std::sqrt(2.0);
  CHECK(max_abs(v.col(0) - v1) < 1e-15);
}

TEST_CASE("POVM and probability validation") {
  CHECK_THROWS_AS(Povm({qmath::identity(2), qmath::identity(2)}), Error);
  ComplexMatrix neg = ComplexMatrix::Zero(2, 2);
  neg(0, 0) = 2.0;
  neg(1, 1) = 1.0;
  ComplexMatrix comp = ComplexMatrix::Zero(2, 2);
  comp(0, 0) = -1.0;
  CHECK_THROWS_AS(Povm({neg, comp}), Error);

  RealVector p(3);
  p << 0.5, 0.5 + 1e-13, -1e-13;
  const ProbabilityVector pv(p);
  CHECK(pv[2] == 0.0);
  CHECK(pv.values().sum() == doctest::Approx(1.0).epsilon(1e-15));
  p << 0.5, 0.6, -1e-6;
  CHECK_THROWS_AS(ProbabilityVector{p}, Error);
  p << 0.5, 0.4, 0.0;
  CHECK_THROWS_AS(ProbabilityVector{p}, Error);
}

TEST_CASE("Born probabilities") {
  const Povm povm = optimal_povm_at_critical();
  const ProbabilityVector first = born_probs(DensityMatrix(povm.elements()[0]), povm);
  CHECK(first[0] == doctest::Approx(1.0));
  CHECK(first[1] + first[2] + first[3] < 1e-14);
  const ProbabilityVector mixed = born_probs(DensityMatrix::maximally_mixed(4), povm);
  for (Index m = 0; m < 4; ++m) CHECK(mixed[m] == doctest::Approx(0.25));
  const double t = analytic::critical_time(0.1);
  const ProbabilityVector crit = born_probs(analytic::embed_two_level(analytic::quench_state({0.1, 1.0, t})), povm);
  CHECK(crit[0] == doctest::Approx(0.5));
  CHECK(crit[0] == doctest::Approx(analytic::optimal_probability(0.1, 1.0)));
  // Full model at (0.1, 1), numpy oracle.
  const ProbabilityVector full = born_probs(full_quench(0.1, 1.0), povm);
  CHECK(full[0] == doctest::Approx(0.5170259).epsilon(1e-6));
  CHECK(full[1] == doctest::Approx(0.4817675).epsilon(1e-6));
  CHECK(full[2] == doctest::Approx(0.0006033).epsilon(1e-4));
  CHECK(full[3] == doctest::Approx(full[2]).epsilon(1e-10));
}

TEST_CASE("classical Fisher information") {
  RealVector p(2);
  p << 0.3, 0.7;
  CHECK(cfi(ProbabilityVector(p), ProbabilityVector(p), 0.1) == 0.0);
  const double b = 0.5, delta = 0.02;
  RealVector hi(2), lo(2), dp(2), mid(2);
  hi << b + delta / 2, 1 - b - delta / 2;
  lo << b - delta / 2, 1 - b + delta / 2;
  CHECK(cfi(ProbabilityVector(hi), ProbabilityVector(lo), delta) == doctest::Approx(4.0));
  mid << 0.5, 0.5;
  dp << 1.0, -1.0;
  CHECK(cfi_exact(ProbabilityVector(mid), dp) == doctest::Approx(4.0));
  CHECK_THROWS_AS(cfi(ProbabilityVector(hi), ProbabilityVector(RealVector::Constant(3, 1.0 / 3)), delta), Error);
}

TEST_CASE("CFI of the optimal measurement converges to the QFI") {
  const Povm povm = optimal_povm_at_critical();
  const double bx = 0.14;
  auto cfi_at = [&](double delta) {
    return cfi(born_probs(full_quench(bx, 1.0 + delta / 2), povm), born_probs(full_quench(bx, 1.0 - delta / 2), povm),
               delta);
  };
  // numpy oracle values at delta = 0.06, 0.01, 0.001.
  CHECK(cfi_at(0.06) == doctest::Approx(98.0075780370078).epsilon(1e-9));
  CHECK(cfi_at(0.01) == doctest::Approx(102.55233369359475).epsilon(1e-9));
  CHECK(cfi_at(0.001) == doctest::Approx(102.68360453827032).epsilon(1e-9));
  auto family = [&](double z) { return full_quench(bx, z); };
  const double qfi = pure_qfi(family(1.0), derivative(family, 1.0));
  double previous = 1e300;
  for (double delta : {0.06, 0.01, 0.001}) {
    const double gap = std::abs(qfi - cfi_at(delta));
    CHECK(gap < previous);
    previous = gap;
  }
  // The measurement is optimal for the two-level reduction only.
  CHECK(cfi_at(0.001) <= qfi);
  CHECK(previous / qfi < 2e-3);
  // Against 2/Bx^2: within 3% once delta is small; 4% low at delta = 0.06.
  CHECK(cfi_at(0.01) == doctest::Approx(2.0 / (bx * bx)).epsilon(0.03));
  CHECK(cfi_at(0.06) == doctest::Approx(2.0 / (bx * bx)).epsilon(0.05));
}

TEST_CASE("CFI never exceeds QFI") {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 500; ++i) {
    const PureState psi(testutil::random_state(rng, 4));
    const ComplexMatrix h = testutil::random_hermitian(rng, 4);
    const ComplexVector d = -kI * (h * psi.amplitudes());
    const Povm povm = Povm::projective(testutil::random_unitary(rng, 4));
    const ProbabilityVector p = born_probs(psi, povm);
    RealVector dp(4);
    for (Index m = 0; m < 4; ++m) {
      dp(m) = 2.0 * psi.amplitudes().dot(povm.elements()[static_cast<std::size_t>(m)] * d).real();
    }
    CHECK(cfi_exact(p, dp) <= pure_qfi(psi, d) + 1e-8);
  }
}

}  // TEST_SUITE
