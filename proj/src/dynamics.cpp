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


#include "critsense/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "critsense/analytic.hpp"
#include "critsense/ising.hpp"
#include "critsense/metrology.hpp"

namespace critsense::dynamics {

using qmath::Complex;
using qmath::ComplexVector;
using qmath::Index;
using qmath::kI;

namespace {

int qubit_count(Index dim) {
  int n = 0;
  while ((Index{1} << n) < dim) ++n;
  if ((Index{1} << n) != dim || n == 0) {
    throw Error(ErrorKind::DimMismatch, "dimension " + std::to_string(dim) + " is not a qubit register");
  }
  return n;
}

void check_rates(const LindbladModel& m) {
  if (m.gamma1 < 0.0 || m.gamma2 < 0.0) throw Error(ErrorKind::InvalidArgument, "rates must be non-negative");
}

ComplexMatrix interpolate(const ComplexMatrix& h0, const ComplexMatrix& hf, double a) {
  return (1.0 - a) * h0 + a * hf;
}

ising::GroundState ground_or_gap_closed(const ComplexMatrix& h, double a) {
  try {
    return ising::ground_state(h);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::Degenerate) {
      throw Error(ErrorKind::GapClosed, "gap closes at A = " + std::to_string(a));
    }
    throw;
  }
}

double spectral_norm(const ComplexMatrix& h) {
  const RealVector ev = qmath::herm_eig(h).values;
  return std::max(std::abs(ev(0)), std::abs(ev(ev.size() - 1)));
}

// Column-major vec(rho) -> rho.
ComplexMatrix unvec(const ComplexVector& v, Index dim) {
  return Eigen::Map<const ComplexMatrix>(v.data(), dim, dim);
}

}  // namespace

PureState evolve_unitary(const ComplexMatrix& h, double t, const PureState& psi0) {
  if (h.rows() != psi0.dim()) throw Error(ErrorKind::DimMismatch, "evolve_unitary: dimensions differ");
  return PureState::normalized(qmath::expm_hermitian(h, t) * psi0.amplitudes());
}

AdiabaticPath AdiabaticPath::with_total_time(double total) const {
  if (steps() == 0 || !(total > 0.0)) throw Error(ErrorKind::InvalidArgument, "cannot rescale an empty path");
  AdiabaticPath out = *this;
  out.dt = total / static_cast<double>(steps());
  out.total_time = total;
  return out;
}

AdiabaticPath design_adiabatic_path(const ComplexMatrix& h0, const ComplexMatrix& hf, double p_c, double dt,
                                    double delta_a) {
  qmath::require_hermitian(h0, "design_adiabatic_path");
  qmath::require_hermitian(hf, "design_adiabatic_path");
  if (h0.rows() != hf.rows()) throw Error(ErrorKind::DimMismatch, "design_adiabatic_path: dimensions differ");
  if (!(p_c > 0.0 && p_c < 0.1)) throw Error(ErrorKind::InvalidArgument, "p_c must lie in (0, 0.1)");
  if (!(dt > 0.0) || !(delta_a > 0.0)) throw Error(ErrorKind::InvalidArgument, "dt and delta_a must be positive");

  AdiabaticPath path;
  path.dt = dt;
  path.p_c = p_c;
  path.schedule.push_back(0.0);
  ComplexVector prev = ground_or_gap_closed(h0, 0.0).state.amplitudes();
  double a_prev = 0.0;
  long inner = 0;
  while (a_prev < 1.0) {
    double a = a_prev;
    ComplexVector ground;
    for (;;) {
      if (++inner > kMaxInnerSteps) throw Error(ErrorKind::NonTerminating, "adiabatic design exceeded step limit");
      a = std::min(a + delta_a, 1.0);
      const ComplexMatrix h = interpolate(h0, hf, a);
      ground = ground_or_gap_closed(h, a).state.amplitudes();
      const Complex amp = ground.dot(qmath::expm_hermitian(h, dt) * prev);
      if (1.0 - std::norm(amp) >= p_c || a >= 1.0) break;
    }
    path.schedule.push_back(a);
    prev = ground;
    a_prev = a;
  }
  path.total_time = static_cast<double>(path.steps()) * dt;
  return path;
}

AdiabaticRun run_adiabatic(const AdiabaticPath& path, const ComplexMatrix& h0, const ComplexMatrix& hf,
                           const PureState& psi0) {
  if (h0.rows() != psi0.dim() || hf.rows() != psi0.dim()) {
    throw Error(ErrorKind::DimMismatch, "run_adiabatic: dimensions differ");
  }
  ComplexVector psi = psi0.amplitudes();
  RealVector trace(static_cast<Index>(path.steps()));
  for (std::size_t j = 1; j < path.schedule.size(); ++j) {
    const double a = path.schedule[j];
    const ComplexMatrix h = interpolate(h0, hf, a);
    psi = qmath::expm_hermitian(h, path.dt) * psi;
    const ComplexVector g = ground_or_gap_closed(h, a).state.amplitudes();
    trace(static_cast<Index>(j - 1)) = std::min(1.0, std::norm(g.dot(psi)));
  }
  return {PureState::normalized(psi), trace};
}

ComplexMatrix lindblad_rhs(const ComplexMatrix& rho, const LindbladModel& m) {
  check_rates(m);
  const Index dim = rho.rows();
  if (m.hamiltonian.rows() != dim) throw Error(ErrorKind::DimMismatch, "lindblad_rhs: dimensions differ");
  const int n = qubit_count(dim);
  ComplexMatrix out = -kI * (m.hamiltonian * rho - rho * m.hamiltonian);
  for (int k = 0; k < n; ++k) {
    if (m.gamma1 > 0.0) {
      const ComplexMatrix z = qmath::site_operator(qmath::pauli_z(), k, n);
      out += m.gamma1 * (z * rho * z - rho);
    }
    if (m.gamma2 > 0.0) {
      const ComplexMatrix a = qmath::site_operator(qmath::sigma_minus(), k, n);
      const ComplexMatrix ada = a.adjoint() * a;
      out += m.gamma2 * (a * rho * a.adjoint() - 0.5 * (ada * rho + rho * ada));
    }
  }
  return out;
}

ComplexMatrix lindblad_rhs(const DensityMatrix& rho, const LindbladModel& m) {
  return lindblad_rhs(rho.matrix(), m);
}

double max_lindblad_step(const LindbladModel& m) {
  return 1e-3 / std::max({spectral_norm(m.hamiltonian), m.gamma1, m.gamma2, 1.0});
}

DensityMatrix evolve_lindblad(const DensityMatrix& rho0, const LindbladModel& m, double t, double dt) {
  check_rates(m);
  qmath::require_hermitian(m.hamiltonian, "evolve_lindblad");
  const Index dim = rho0.dim();
  if (m.hamiltonian.rows() != dim) throw Error(ErrorKind::DimMismatch, "evolve_lindblad: dimensions differ");
  if (!(dt > 0.0) || t < 0.0) throw Error(ErrorKind::InvalidArgument, "evolve_lindblad: bad time arguments");
  if (dt > max_lindblad_step(m) * (1.0 + 1e-12)) {
    throw Error(ErrorKind::StepTooLarge, "dt = " + std::to_string(dt) + " exceeds " +
                                             std::to_string(max_lindblad_step(m)));
  }
  const long steps = static_cast<long>(std::ceil(t / dt - 1e-9));
  if (steps <= 0) return rho0;
  const double h = t / static_cast<double>(steps);

  // The generator is linear, so one classical RK4 step is the fixed matrix
  // I + hL + (hL)^2/2 + (hL)^3/6 + (hL)^4/24 acting on vec(rho).
  const Index d2 = dim * dim;
  ComplexMatrix liouville(d2, d2);
  for (Index j = 0; j < d2; ++j) {
    ComplexMatrix e = ComplexMatrix::Zero(dim, dim);
    e(j % dim, j / dim) = 1.0;
    const ComplexMatrix col = lindblad_rhs(e, m);
    liouville.col(j) = Eigen::Map<const ComplexVector>(col.data(), d2);
  }
  const ComplexMatrix hl = h * liouville;
  ComplexMatrix step = ComplexMatrix::Identity(d2, d2);
  ComplexMatrix term = ComplexMatrix::Identity(d2, d2);
  for (int k = 1; k <= 4; ++k) {
    term = (term * hl / static_cast<double>(k)).eval();
    step += term;
  }

  ComplexVector v = Eigen::Map<const ComplexVector>(rho0.matrix().data(), d2);
  ComplexMatrix rho(dim, dim);
  auto check_positive = [&](const ComplexMatrix& r) {
    const double lowest = qmath::herm_eig(r).values(0);
    if (lowest < -kPositivityTol) {
      throw Error(ErrorKind::PositivityLost, "eigenvalue " + std::to_string(lowest) + " during evolution");
    }
  };
  for (long s = 1; s <= steps; ++s) {
    v = step * v;
    rho = unvec(v, dim);
    rho = (0.5 * (rho + rho.adjoint())).eval();
    v = Eigen::Map<const ComplexVector>(rho.data(), d2);
    if (s % 1000 == 0) check_positive(rho);
  }
  check_positive(rho);
  return DensityMatrix(rho);
}

DensityMatrix noisy_quench(double b_x, double b_z, double t, double gamma1, double gamma2) {
  const LindbladModel m{ising::build_two_spin(b_x, b_z), gamma1, gamma2};
  const DensityMatrix rho0 = DensityMatrix::from_pure(ising::two_spin_a());
  return evolve_lindblad(rho0, m, t, max_lindblad_step(m));
}

double ramsey_ghz_qfi(double t, double gamma1, double gamma2, double b_z) {
  if (t < 0.0) throw Error(ErrorKind::InvalidArgument, "ramsey_ghz_qfi: negative time");
  const ComplexMatrix generator =
      0.5 * (qmath::site_operator(qmath::pauli_z(), 0, 2) + qmath::site_operator(qmath::pauli_z(), 1, 2));
  ComplexVector ghz = ComplexVector::Zero(4);
  ghz(0) = ghz(3) = 1.0 / std::sqrt(2.0);
  const LindbladModel m{b_z * generator, gamma1, gamma2};
  const DensityMatrix rho =
      evolve_lindblad(DensityMatrix::from_pure(PureState::normalized(ghz)), m, t, max_lindblad_step(m));
  // Both channels are covariant under rotations about z, so the field enters
  // only through exp(-i Bz G t) and the derivative is exact.
  const ComplexMatrix drho = -kI * t * (generator * rho.matrix() - rho.matrix() * generator);
  return metrology::mixed_qfi_spectral(rho, 0.5 * (drho + drho.adjoint()));
}

}  // namespace critsense::dynamics
