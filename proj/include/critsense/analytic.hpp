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

#include "critsense/qmath.hpp"

/// Closed-form results for the transverse-field chain and the two-spin
/// first-order sensor.
namespace critsense::analytic {

using qmath::PureState;

/// Quench of |11> under the two-spin model for a duration t.
struct QuenchParams {
  double b_x = 0.0;
  double b_z = 0.0;
  double t = 0.0;

  double h_x() const noexcept;
  double h_z() const noexcept;
  double omega() const noexcept;
  /// h_z / h_x. Throws BxZero when b_x == 0.
  double zeta() const;
};

struct CriticalRegion {
  double zeta0 = 0.0;
  double width_L = 0.0;
  double contrast_C = 0.0;
};

/// Fermion momentum grid used in jw_qfi.
enum class Sector {
  Antiperiodic,  // q = 2 pi (k + 1/2) / N
  Periodic,      // q = 2 pi k / N
};

/// Protocol duration pi / Delta_c with Delta_c = 2 sqrt2 Bx.
double critical_time(double b_x);

/// Ground-state QFI with respect to Bx of the transverse-field chain (Bz = 0),
///   F = 2 sum_q (sin q / (1 + 4Bx^2 - 4Bx cos q))^2.
/// The antiperiodic grid reproduces exact diagonalization of the periodic
/// chain; the periodic grid is kept for comparison.
double jw_qfi(double b_x, int n_spins, Sector sector = Sector::Antiperiodic);

/// 2Bx^2 / ((1 - Bz)^2 + 2Bx^2)^2, the Bz-QFI of the effective ground state.
double effective_ground_qfi(double b_x, double b_z);

/// QFI with respect to Bz of the quenched two-level state.
double quench_qfi(const QuenchParams& q);

/// Quenched state on {|a>, |b>}.
PureState quench_state(const QuenchParams& q);

/// 4 h_x^4 / Omega^6 sin^4(Omega t).
double dominant_qfi(const QuenchParams& q);

/// 16 T^2 / pi^2.
double heisenberg_qfi(double total_time);

/// Probability of the first optimal outcome after a quench of duration
/// critical_time(b_x):  1/2 + zeta/(1+zeta^2) sin^2((pi/2) sqrt(1+zeta^2)).
double optimal_probability(double b_x, double b_z);

/// Same as optimal_probability, as a function of zeta alone.
double optimal_probability_zeta(double zeta);

/// Quench QFI at duration critical_time, times h_x^2, as a function of zeta.
/// Equals 4 at zeta = 0.
double scaled_critical_qfi(double zeta);

/// First zeta0 > 0 with F(zeta0) = C F(0); width_L = 2 h_x zeta0.
CriticalRegion critical_region_width(double b_x, double contrast_C);

struct DistinguishableRange {
  double zeta_min = 0.0;
  double zeta_max = 0.0;
  double v_max = 0.0;
};

/// Extrema of optimal_probability nearest zeta = 0 and V_max = h_x |zeta_max - zeta_min|.
DistinguishableRange distinguishable_range(double b_x);
double max_distinguishable_range(double b_x);

/// Embeds a state on {|a>, |b>} into the two-qubit space.
PureState embed_two_level(const PureState& state);

}  // namespace critsense::analytic
