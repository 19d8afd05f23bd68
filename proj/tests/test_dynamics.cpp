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
using namespace critsense::dynamics;
using qmath::ComplexVector;
using qmath::Index;
using qmath::max_abs;

namespace {

ComplexMatrix pure_rho(const PureState& s) { return DensityMatrix::from_pure(s).matrix(); }

}  // namespace

TEST_SUITE("dynamics") {

TEST_CASE("unitary evolution") {
  std::mt19937_64 rng(11);
  const ComplexMatrix h = testutil::random_hermitian(rng, 4);
  const PureState psi(testutil::random_state(rng, 4));
  CHECK(max_abs(evolve_unitary(h, 0.0, psi).amplitudes() - psi.amplitudes()) < 1e-15);
  const PureState later = evolve_unitary(h, 3.7, psi);
  CHECK(later.amplitudes().norm() == doctest::Approx(1.0).epsilon(1e-14));
  const double e0 = psi.amplitudes().dot(h * psi.amplitudes()).real();
  CHECK(later.amplitudes().dot(h * later.amplitudes()).real() == doctest::Approx(e0).epsilon(1e-12));
  CHECK_THROWS_AS(evolve_unitary(qmath::identity(2), 1.0, psi), Error);

  // At the critical point |11> is carried almost entirely onto |b>.
  const PureState out = evolve_unitary(ising::build_two_spin(0.1, 1.0), analytic::critical_time(0.1),
                                       ising::two_spin_a());
  CHECK(std::norm(ising::two_spin_b().amplitudes().dot(out.amplitudes())) >= 0.99);
}

TEST_CASE("adiabatic design") {
  const ComplexMatrix h = ising::build_two_spin(0.1, 2.0);
  const AdiabaticPath same = design_adiabatic_path(h, h, 1e-4, 1.0);
  CHECK(same.steps() == 1);
  CHECK(same.schedule.back() == 1.0);

  const ComplexMatrix h0 = ising::build_two_spin(0.2, 2.0), hf = ising::build_two_spin(0.2, 1.0);
  const AdiabaticPath a = design_adiabatic_path(h0, hf, 1e-4, 0.5);
  const AdiabaticPath b = design_adiabatic_path(h0, hf, 1e-4, 0.5);
  CHECK(a.schedule == b.schedule);
  for (std::size_t j = 1; j < a.schedule.size(); ++j) CHECK(a.schedule[j] > a.schedule[j - 1]);
  CHECK(a.total_time == doctest::Approx(0.5 * static_cast<double>(a.steps())));

  const AdiabaticPath scaled = a.with_total_time(10.0);
  CHECK(scaled.dt * static_cast<double>(scaled.steps()) == doctest::Approx(10.0));
  CHECK(scaled.schedule == a.schedule);

  CHECK_THROWS_AS(design_adiabatic_path(h0, hf, 0.0, 0.5), Error);
  CHECK_THROWS_AS(design_adiabatic_path(h0, hf, 1e-4, -1.0), Error);
  try {
    design_adiabatic_path(ising::build_two_spin(0.0, 2.0), ising::build_two_spin(0.0, 1.0), 1e-4, 0.5);
    FAIL("expected GapClosed");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::GapClosed);
  }
}

TEST_CASE("adiabatic run follows the ground state") {
  const double bx = 0.1;
  const ComplexMatrix h0 = ising::build_two_spin(bx, 2.0), hf = ising::build_two_spin(bx, 1.0);
  const AdiabaticPath path = design_adiabatic_path(h0, hf, 1e-4, 0.1 / bx).with_total_time(2.5 / bx);
  const AdiabaticRun run = run_adiabatic(path, h0, hf, ising::ground_state(h0).state);
  REQUIRE(run.fidelity_trace.size() == static_cast<Index>(path.steps()));
  CHECK(run.fidelity_trace(run.fidelity_trace.size() - 1) >= 0.972);
  CHECK((run.fidelity_trace.array() <= 1.0).all());
}

TEST_CASE("Lindblad generator examples") {
  const ComplexMatrix a = pure_rho(ising::two_spin_a());
  const LindbladModel silent{ComplexMatrix::Zero(4, 4), 0.0, 0.0};
  CHECK(max_abs(lindblad_rhs(a, silent)) == 0.0);
  const LindbladModel commuting{ising::build_two_spin(0.0, 1.0), 0.0, 0.0};
  CHECK(max_abs(lindblad_rhs(a, commuting)) < 1e-15);
  const LindbladModel dephase{ComplexMatrix::Zero(4, 4), 0.3, 0.0};
  CHECK(max_abs(lindblad_rhs(a, dephase)) < 1e-15);
  const LindbladModel decay{ComplexMatrix::Zero(4, 4), 0.0, 0.1};
  CHECK(lindblad_rhs(a, decay)(3, 3).real() == doctest::Approx(-0.2));
  CHECK_THROWS_AS(lindblad_rhs(a, LindbladModel{ComplexMatrix::Zero(4, 4), -0.1, 0.0}), Error);
  CHECK_THROWS_AS(lindblad_rhs(ComplexMatrix::Zero(2, 2), decay), Error);
}

TEST_CASE("Lindblad generator is traceless and Hermitian") {
  std::mt19937_64 rng(12);
  for (int i = 0; i < 50; ++i) {
    const LindbladModel m{testutil::random_hermitian(rng, 4), 0.2, 0.3};
    const ComplexMatrix out = lindblad_rhs(testutil::random_density(rng, 4), m);
    CHECK(std::abs(out.trace()) < 1e-12);
    CHECK(max_abs(out - out.adjoint()) < 1e-12);
  }
}

TEST_CASE("Lindblad evolution") {
  const ComplexMatrix h = ising::build_two_spin(0.1, 1.0);
  const LindbladModel closed{h, 0.0, 0.0};
  const double t = analytic::critical_time(0.1);
  const DensityMatrix rho0 = DensityMatrix::from_pure(ising::two_spin_a());
  const DensityMatrix rho = evolve_lindblad(rho0, closed, t, max_lindblad_step(closed));
  CHECK(max_abs(rho.matrix() - pure_rho(evolve_unitary(h, t, ising::two_spin_a()))) < 1e-8);

  CHECK(max_abs(evolve_lindblad(rho0, closed, 0.0, 1e-4).matrix() - rho0.matrix()) == 0.0);
  CHECK_THROWS_AS(evolve_lindblad(rho0, closed, 1.0, 2.0 * max_lindblad_step(closed)), Error);
  try {
    evolve_lindblad(rho0, closed, 1.0, 1.0);
    FAIL("expected StepTooLarge");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::StepTooLarge);
  }

  const LindbladModel decay{ComplexMatrix::Zero(4, 4), 0.0, 1.0};
  const DensityMatrix relaxed = evolve_lindblad(rho0, decay, 30.0, max_lindblad_step(decay));
  CHECK(relaxed.matrix()(0, 0).real() == doctest::Approx(1.0).epsilon(1e-10));

  const LindbladModel noisy{h, 0.1, 0.1};
  const double dt = max_lindblad_step(noisy);
  const DensityMatrix coarse = evolve_lindblad(rho0, noisy, 5.0, dt);
  const DensityMatrix fine = evolve_lindblad(rho0, noisy, 5.0, dt / 2);
  CHECK(max_abs(coarse.matrix() - fine.matrix()) < 1e-6);
}

TEST_CASE("Lindblad evolution preserves trace, Hermiticity and positivity") {
  std::mt19937_64 rng(13);
  for (int i = 0; i < 3; ++i) {
    const LindbladModel m{testutil::random_hermitian(rng, 4), 0.1, 0.05};
    const DensityMatrix rho =
        evolve_lindblad(DensityMatrix(testutil::random_density(rng, 4)), m, 50.0, max_lindblad_step(m));
    CHECK(std::abs(rho.matrix().trace() - 1.0) < 1e-8);
    CHECK(max_abs(rho.matrix() - rho.matrix().adjoint()) == 0.0);
    CHECK(qmath::herm_eig(rho.matrix()).values(0) > -1e-10);
  }
}

TEST_CASE("GHZ Ramsey comparator") {
  CHECK(ramsey_ghz_qfi(0.0, 0.0, 0.0) == doctest::Approx(0.0));
  CHECK(ramsey_ghz_qfi(1.0, 0.0, 0.0) == doctest::Approx(4.0).epsilon(1e-8));
  CHECK(ramsey_ghz_qfi(3.0, 0.0, 0.0) == doctest::Approx(36.0).epsilon(1e-8));
  // Liouvillian-exponential oracle values.
  CHECK(ramsey_ghz_qfi(2.0, 0.1, 0.1) == doctest::Approx(2.5427326022509074).epsilon(1e-6));
  CHECK(ramsey_ghz_qfi(5.0, 0.1, 0.1) == doctest::Approx(0.8850016719463838).epsilon(1e-6));
  CHECK(ramsey_ghz_qfi(5.0, 0.1, 0.1) < ramsey_ghz_qfi(2.0, 0.1, 0.1));
  CHECK_THROWS_AS(ramsey_ghz_qfi(-1.0, 0.0, 0.0), Error);
}

TEST_CASE("noisy quench QFI") {
  const double bx = 0.1, t = analytic::critical_time(bx), delta = 1e-3;
  auto qfi = [&](double bz, double gamma) {
    const metrology::DensityFamily f = [&](double z) { return noisy_quench(bx, z, t, gamma, gamma); };
    return metrology::mixed_qfi_bures_fd(f, bz, delta);
  };
  // Liouvillian-exponential oracle values.
  CHECK(qfi(1.0, 0.05) == doctest::Approx(7.080789458768778).epsilon(1e-4));
  CHECK(qfi(0.8, 0.05) == doctest::Approx(7.667225678353871).epsilon(1e-4));
  CHECK(qfi(0.8, 0.1) == doctest::Approx(0.7498837089059407).epsilon(1e-4));
}

}  // TEST_SUITE
