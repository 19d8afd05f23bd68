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

#include <array>
#include <cstdint>
#include <vector>

#include "critsense/qmath.hpp"

/// Adaptive Bayesian estimation of Bz with feedback onto the first-order
/// critical point.
namespace critsense::estimation {

using qmath::RealVector;

inline constexpr int kMinGridPoints = 101;
inline constexpr double kNormalizationTol = 1e-9;
inline constexpr double kMinNormalizer = 1e-300;

/// SplitMix64 evaluated on (seed, counter): the k-th draw depends only on the
/// seed and k, so sequences are identical across platforms.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed) : seed_(seed) {}

  std::uint64_t next_u64();
  /// Uniform in [0, 1) with 53 random bits.
  double uniform();
  std::uint64_t counter() const noexcept { return counter_; }

 private:
  std::uint64_t seed_;
  std::uint64_t counter_ = 0;
};

enum class LikelihoodModel {
  Full,       // exact two-spin evolution
  Effective,  // two-level reduction, no leakage to the remaining outcomes
};

struct AdaptiveConfig {
  double b_z_true = 0.8;
  double b_x = 0.1;
  double prior_min = 0.7;
  double prior_max = 1.3;
  int shots = 110;
  int grid_points = 2001;
  std::uint64_t seed = 0;
  double b_z_critical = 1.0;
  LikelihoodModel likelihood = LikelihoodModel::Full;
};

/// Density on a uniform grid, normalized by the trapezoidal rule.
class Posterior {
 public:
  Posterior(RealVector grid, RealVector density);

  const RealVector& grid() const noexcept { return grid_; }
  const RealVector& density() const noexcept { return density_; }

 private:
  RealVector grid_;
  RealVector density_;
};

struct Step {
  double control = 0.0;
  int outcome = 0;
  double estimate = 0.0;
  double std_dev = 0.0;
};

using Trajectory = std::vector<Step>;

/// Outcome probabilities of the optimal critical-point measurement after the
/// quench of |11> for critical_time(b_x) at total longitudinal field b_z.
std::array<double, 4> outcome_probabilities(double b_x, double b_z,
                                            LikelihoodModel model = LikelihoodModel::Full);

double trapezoid(const RealVector& grid, const RealVector& values);

Posterior init_prior(const AdaptiveConfig& cfg);

/// Outcome in 1..4 drawn by inverse CDF.
int simulate_shot(double b_z_true, double b_z_ctrl, double b_x, CounterRng& rng);

Posterior bayes_update(const Posterior& post, int outcome, double b_z_ctrl, double b_x,
                       LikelihoodModel model = LikelihoodModel::Full);

double point_estimate(const Posterior& post);
double posterior_std(const Posterior& post);

Trajectory run_adaptive(const AdaptiveConfig& cfg);

/// 1 / sqrt(nu F).
double qcrb(int nu, double qfi);

/// Per-step mean of std_dev over trajectories of equal length.
RealVector mean_std_curve(const std::vector<Trajectory>& runs);

}  // namespace critsense::estimation
