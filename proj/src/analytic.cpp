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


#include "critsense/analytic.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <string>

namespace critsense::analytic {

using qmath::Complex;
using qmath::ComplexVector;
using std::numbers::pi;
using std::numbers::sqrt2;

namespace {

void require_bx(double b_x) {
  if (b_x == 0.0) throw Error(ErrorKind::BxZero, "transverse field must be nonzero");
}

double dp_dzeta(double zeta) {
  const double s2 = 1.0 + zeta * zeta;
  const double s = std::sqrt(s2);
  const double half_angle = 0.5 * pi * s;
  const double g = std::sin(half_angle) * std::sin(half_angle);
  const double dg = 0.5 * pi * std::sin(pi * s) * zeta / s;
  return (1.0 - zeta * zeta) / (s2 * s2) * g + zeta / s2 * dg;
}

template <class F>
double bisect(F&& f, double lo, double hi, double tol) {
  double f_lo = f(lo);
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    const double f_mid = f(mid);
    if ((f_mid > 0.0) == (f_lo > 0.0)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

// Nearest sign change of dp/dzeta walking away from 0 in direction `dir`.
bool nearest_extremum(double dir, double& out) {
  constexpr double kStep = 1e-3;
  constexpr double kLimit = 10.0;
  const int steps = static_cast<int>(std::lround(kLimit / kStep));
  double prev = dp_dzeta(0.0);
  for (int i = 1; i <= steps; ++i) {
    const double z = dir * i * kStep;
    const double cur = dp_dzeta(z);
    if ((cur > 0.0) != (prev > 0.0)) {
      const double a = dir * (i - 1) * kStep;
      out = bisect(dp_dzeta, std::min(a, z), std::max(a, z), 1e-12);
      return true;
    }
    prev = cur;
  }
  return false;
}

}  // namespace

double QuenchParams::h_x() const noexcept { return sqrt2 * b_x; }
double QuenchParams::h_z() const noexcept { return 1.0 - b_z; }
double QuenchParams::omega() const noexcept { return std::hypot(h_x(), h_z()); }

double QuenchParams::zeta() const {
  require_bx(b_x);
  return h_z() / h_x();
}

double critical_time(double b_x) {
  require_bx(b_x);
  return pi / (2.0 * sqrt2 * std::abs(b_x));
}

double jw_qfi(double b_x, int n_spins, Sector sector) {
  require_bx(b_x);
  if (n_spins < 2 || n_spins % 2 != 0) {
    throw Error(ErrorKind::InvalidArgument, "jw_qfi needs an even number of spins");
  }
  const double offset = sector == Sector::Antiperiodic ? 0.5 : 0.0;
  double sum = 0.0;
  for (int k = 0; k < n_spins; ++k) {
    // q = 0 and q = pi carry no weight (sin q = 0); skip them so the gapless
    // point of the periodic grid does not produce 0/0.
    if (sector == Sector::Periodic && (k == 0 || 2 * k == n_spins)) continue;
    const double q = 2.0 * pi * (k + offset) / n_spins;
    const double term = std::sin(q) / (1.0 + 4.0 * b_x * b_x - 4.0 * b_x * std::cos(q));
    sum += term * term;
  }
  return 2.0 * sum;
}

double effective_ground_qfi(double b_x, double b_z) {
  require_bx(b_x);
  const double hz = 1.0 - b_z;
  const double d = hz * hz + 2.0 * b_x * b_x;
  return 2.0 * b_x * b_x / (d * d);
}

double quench_qfi(const QuenchParams& q) {
  require_bx(q.b_x);
  const double hx = q.h_x(), hz = q.h_z(), om = q.omega(), t = q.t;
  const double s = std::sin(om * t), c = std::cos(om * t);
  const double hx2 = hx * hx, hz2 = hz * hz;
  const double om2 = om * om, om4 = om2 * om2, om5 = om4 * om, om6 = om4 * om2;
  return 4.0 * hx2 * hz2 * t * t / om4 - 8.0 * hx2 * hz2 * t * s * c / om5 +
         4.0 * hx2 * hx2 * s * s * s * s / om6 + 4.0 * hx2 * hz2 * s * s / om6;
}

PureState quench_state(const QuenchParams& q) {
  require_bx(q.b_x);
  const double om = q.omega();
  const double s = std::sin(om * q.t), c = std::cos(om * q.t);
  ComplexVector v(2);
  v(0) = Complex(c, -q.h_z() / om * s);
  v(1) = Complex(0.0, -q.h_x() / om * s);
  return PureState::normalized(v);
}

double dominant_qfi(const QuenchParams& q) {
  require_bx(q.b_x);
  const double hx = q.h_x(), om = q.omega();
  const double s = std::sin(om * q.t);
  return 4.0 * std::pow(hx, 4) * std::pow(s, 4) / std::pow(om, 6);
}

double heisenberg_qfi(double total_time) { return 16.0 * total_time * total_time / (pi * pi); }

double optimal_probability_zeta(double zeta) {
  const double s2 = 1.0 + zeta * zeta;
  const double sn = std::sin(0.5 * pi * std::sqrt(s2));
  return 0.5 + zeta / s2 * sn * sn;
}

double optimal_probability(double b_x, double b_z) {
  require_bx(b_x);
  return optimal_probability_zeta((1.0 - b_z) / (sqrt2 * b_x));
}

double scaled_critical_qfi(double zeta) {
  const double s2 = 1.0 + zeta * zeta;
  const double s = std::sqrt(s2);
  const double z2 = zeta * zeta;
  const double sn = std::sin(0.5 * pi * s);
  const double s4 = s2 * s2, s6 = s4 * s2;
  return pi * pi * z2 / s4 - 2.0 * pi * z2 * std::sin(pi * s) / (s4 * s) +
         4.0 * sn * sn * sn * sn / s6 + 4.0 * z2 * sn * sn / s6;
}

CriticalRegion critical_region_width(double b_x, double contrast_C) {
  require_bx(b_x);
  if (!(contrast_C > 0.0 && contrast_C < 1.0)) {
    throw Error(ErrorKind::InvalidArgument, "contrast must lie in (0, 1)");
  }
  const double f0 = scaled_critical_qfi(0.0);
  auto g = [&](double z) { return scaled_critical_qfi(z) / f0 - contrast_C; };
  constexpr double kStep = 0.01;
  constexpr int kSteps = 2000;  // zeta in (0, 20]
  double prev = g(0.0);
  for (int i = 1; i <= kSteps; ++i) {
    const double z = i * kStep;
    const double cur = g(z);
    if ((cur > 0.0) != (prev > 0.0)) {
      const double zeta0 = bisect(g, z - kStep, z, 1e-10);
      return {zeta0, 2.0 * sqrt2 * std::abs(b_x) * zeta0, contrast_C};
    }
    prev = cur;
  }
  std::ostringstream msg;
  msg << "no crossing for contrast " << contrast_C;
  throw Error(ErrorKind::NoRoot, msg.str());
}

DistinguishableRange distinguishable_range(double b_x) {
  require_bx(b_x);
  DistinguishableRange r;
  if (!nearest_extremum(1.0, r.zeta_max) || !nearest_extremum(-1.0, r.zeta_min)) {
    throw Error(ErrorKind::NoExtremum, "fewer than two extrema in [-10, 10]");
  }
  r.v_max = sqrt2 * std::abs(b_x) * std::abs(r.zeta_max - r.zeta_min);
  return r;
}

double max_distinguishable_range(double b_x) { return distinguishable_range(b_x).v_max; }

PureState embed_two_level(const PureState& state) {
  if (state.dim() != 2) throw Error(ErrorKind::DimMismatch, "expected a two-level state");
  ComplexVector v = ComplexVector::Zero(4);
  v(3) = state[0];
  v(1) = v(2) = state[1] / sqrt2;
  return PureState::normalized(v);
}

}  // namespace critsense::analytic
