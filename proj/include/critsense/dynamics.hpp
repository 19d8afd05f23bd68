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

#include <vector>

#include "critsense/qmath.hpp"

namespace critsense::dynamics {

using qmath::ComplexMatrix;
using qmath::DensityMatrix;
using qmath::PureState;
using qmath::RealVector;

inline constexpr double kDefaultPc = 1e-4;
inline constexpr double kDefaultDeltaA = 1e-4;
inline constexpr long kMaxInnerSteps = 10'000'000;
inline constexpr double kPositivityTol = 1e-6;

/// exp(-i h t) psi0.
PureState evolve_unitary(const ComplexMatrix& h, double t, const PureState& psi0);

/// Interpolation H(A) = (1 - A) h0 + A hf sampled at schedule[1..], each step
/// lasting dt.
struct AdiabaticPath {
  std::vector<double> schedule;  // schedule[0] = 0, last entry = 1
  double dt = 0.0;
  double p_c = kDefaultPc;
  double total_time = 0.0;

  std::size_t steps() const noexcept { return schedule.empty() ? 0 : schedule.size() - 1; }
  /// Same schedule with dt chosen so that steps() * dt == total.
  AdiabaticPath with_total_time(double total) const;
};

/// Greedy schedule: each A_j is the smallest increment of delta_a past A_{j-1}
/// with 1 - |<g(A_j)| exp(-i H(A_j) dt) |g(A_{j-1})>|^2 >= p_c.
AdiabaticPath design_adiabatic_path(const ComplexMatrix& h0, const ComplexMatrix& hf, double p_c, double dt,
                                    double delta_a = kDefaultDeltaA);

struct AdiabaticRun {
  PureState final_state;
  RealVector fidelity_trace;  // |<g(A_j)|psi_j>|^2, one entry per step
};

AdiabaticRun run_adiabatic(const AdiabaticPath& path, const ComplexMatrix& h0, const ComplexMatrix& hf,
                           const PureState& psi0);

/// Two channels per qubit: dephasing sz at rate gamma1 and decay sigma_- at
/// rate gamma2.
struct LindbladModel {
  ComplexMatrix hamiltonian;
  double gamma1 = 0.0;
  double gamma2 = 0.0;
};

/// -i[H, rho] + gamma1 sum_k D[sz_k] rho + gamma2 sum_k D[sm_k] rho.
ComplexMatrix lindblad_rhs(const ComplexMatrix& rho, const LindbladModel& m);
ComplexMatrix lindblad_rhs(const DensityMatrix& rho, const LindbladModel& m);

/// Largest admissible step, 1e-3 / max(||H||, gamma1, gamma2, 1).
double max_lindblad_step(const LindbladModel& m);

/// Fixed-step fourth-order Runge-Kutta up to time t with steps no longer than
/// dt. Throws StepTooLarge when dt exceeds max_lindblad_step.
DensityMatrix evolve_lindblad(const DensityMatrix& rho0, const LindbladModel& m, double t, double dt);

/// |11><11| quenched under the two-spin model for time t with noise.
DensityMatrix noisy_quench(double b_x, double b_z, double t, double gamma1, double gamma2);

/// QFI for Bz of the GHZ state (|00> + |11>)/sqrt2 after time t under
/// Bz (Sz1 + Sz2), Sz = sz/2, with the same noise channels.
double ramsey_ghz_qfi(double t, double gamma1, double gamma2, double b_z = 1.0);

}  // namespace critsense::dynamics
