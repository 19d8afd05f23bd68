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


#include "critsense/estimation.hpp"

#include <cmath>
#include <complex>
#include <string>
#include <utility>

#include <Eigen/Eigenvalues>

#include "critsense/analytic.hpp"

namespace critsense::estimation {

using qmath::Index;

namespace {

using Complex = std::complex<double>;

// |11> evolves inside the exchange-symmetric triplet {|00>, |b>, |11>}, where
// the two-spin model is the real matrix below. Exact, and much cheaper than
// the 4x4 complex route on a 2001-point likelihood grid.
std::array<double, 4> triplet_probabilities(double b_x, double b_z) {
  const double t = analytic::critical_time(b_x);
  const double off = std::sqrt(2.0) * b_x;
  Eigen::Matrix3d h;
  h << 2.0 * b_z + 1.0, off, 0.0,
       off, -1.0, off,
       0.0, off, 1.0 - 2.0 * b_z;
  const Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(h);
  const Eigen::Matrix3d& v = es.eigenvectors();
  Complex psi[3] = {0.0, 0.0, 0.0};
  for (int k = 0; k < 3; ++k) {
    const Complex phase = std::polar(1.0, -es.eigenvalues()(k) * t) * v(2, k);
    for (int i = 0; i < 3; ++i) psi[i] += v(i, k) * phase;
  }
  const double p1 = 0.5 * std::norm(psi[1] + psi[2]);
  const double p2 = 0.5 * std::norm(psi[1] - psi[2]);
  const double p34 = 0.5 * std::norm(psi[0]);
  const double sum = p1 + p2 + 2.0 * p34;
  return {p1 / sum, p2 / sum, p34 / sum, p34 / sum};
}

std::array<double, 4> effective_probabilities(double b_x, double b_z) {
  const qmath::PureState psi = analytic::quench_state({b_x, b_z, analytic::critical_time(b_x)});
  return {0.5 * std::norm(psi[0] + psi[1]), 0.5 * std::norm(psi[0] - psi[1]), 0.0, 0.0};
}

void check_outcome(int outcome) {
  if (outcome < 1 || outcome > 4) {
    throw Error(ErrorKind::InvalidArgument, "outcome " + std::to_string(outcome) + " outside 1..4");
  }
}

}  // namespace

std::uint64_t CounterRng::next_u64() {
  std::uint64_t z = seed_ + (++counter_) * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double CounterRng::uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

std::array<double, 4> outcome_probabilities(double b_x, double b_z, LikelihoodModel model) {
  return model == LikelihoodModel::Full ? triplet_probabilities(b_x, b_z) : effective_probabilities(b_x, b_z);
}

double trapezoid(const RealVector& grid, const RealVector& values) {
  double s = 0.0;
  for (Index i = 1; i < grid.size(); ++i) s += 0.5 * (grid(i) - grid(i - 1)) * (values(i) + values(i - 1));
  return s;
}

Posterior::Posterior(RealVector grid, RealVector density) : grid_(std::move(grid)), density_(std::move(density)) {
  if (grid_.size() < kMinGridPoints || density_.size() != grid_.size()) {
    throw Error(ErrorKind::InvalidArgument, "posterior needs matching grids of at least 101 points");
  }
  for (Index i = 1; i < grid_.size(); ++i) {
    if (!(grid_(i) > grid_(i - 1))) throw Error(ErrorKind::BadRange, "posterior grid must ascend");
  }
  if ((density_.array() < 0.0).any()) throw Error(ErrorKind::InvalidArgument, "negative posterior density");
  const double z = trapezoid(grid_, density_);
  if (std::abs(z - 1.0) > kNormalizationTol) {
    throw Error(ErrorKind::InvalidArgument, "posterior integrates to " + std::to_string(z));
  }
}

Posterior init_prior(const AdaptiveConfig& cfg) {
  if (!(cfg.prior_min < cfg.prior_max)) throw Error(ErrorKind::BadRange, "prior_min must be below prior_max");
  if (cfg.b_z_true < cfg.prior_min || cfg.b_z_true > cfg.prior_max) {
    throw Error(ErrorKind::BadRange, "true field outside the prior range");
  }
  if (cfg.grid_points < kMinGridPoints) throw Error(ErrorKind::InvalidArgument, "grid needs at least 101 points");
  if (cfg.shots < 1) throw Error(ErrorKind::InvalidArgument, "need at least one shot");
  RealVector grid = RealVector::LinSpaced(cfg.grid_points, cfg.prior_min, cfg.prior_max);
  RealVector density = RealVector::Constant(cfg.grid_points, 1.0 / (cfg.prior_max - cfg.prior_min));
  return Posterior(std::move(grid), std::move(density));
}

int simulate_shot(double b_z_true, double b_z_ctrl, double b_x, CounterRng& rng) {
  const std::array<double, 4> p = triplet_probabilities(b_x, b_z_true + b_z_ctrl);
  const double u = rng.uniform();
  double cumulative = 0.0;
  for (int m = 0; m < 3; ++m) {
    cumulative += p[static_cast<std::size_t>(m)];
    if (u < cumulative) return m + 1;
  }
  return 4;
}

Posterior bayes_update(const Posterior& post, int outcome, double b_z_ctrl, double b_x, LikelihoodModel model) {
  check_outcome(outcome);
  const RealVector& grid = post.grid();
  RealVector density(grid.size());
  for (Index i = 0; i < grid.size(); ++i) {
    const double like = outcome_probabilities(b_x, grid(i) + b_z_ctrl, model)[static_cast<std::size_t>(outcome - 1)];
    density(i) = like * post.density()(i);
  }
  const double z = trapezoid(grid, density);
  if (!(z >= kMinNormalizer)) {
    throw Error(ErrorKind::DegenerateLikelihood, "posterior normalizer " + std::to_string(z));
  }
  density /= z;
  return Posterior(grid, std::move(density));
}

double point_estimate(const Posterior& post) {
  return trapezoid(post.grid(), post.grid().cwiseProduct(post.density()));
}

double posterior_std(const Posterior& post) {
  const double mean = point_estimate(post);
  const RealVector dev = (post.grid().array() - mean).square().matrix();
  return std::sqrt(std::max(0.0, trapezoid(post.grid(), dev.cwiseProduct(post.density()))));
}

Trajectory run_adaptive(const AdaptiveConfig& cfg) {
  Posterior post = init_prior(cfg);
  CounterRng rng(cfg.seed);
  double estimate = point_estimate(post);
  Trajectory out;
  out.reserve(static_cast<std::size_t>(cfg.shots));
  for (int k = 0; k < cfg.shots; ++k) {
    const double control = cfg.b_z_critical - estimate;
    const int m = simulate_shot(cfg.b_z_true, control, cfg.b_x, rng);
    post = bayes_update(post, m, control, cfg.b_x, cfg.likelihood);
    estimate = point_estimate(post);
    out.push_back({control, m, estimate, posterior_std(post)});
  }
  return out;
}

double qcrb(int nu, double qfi) {
  if (nu <= 0 || !(qfi > 0.0)) throw Error(ErrorKind::NonPositive, "qcrb needs nu > 0 and qfi > 0");
  return 1.0 / std::sqrt(static_cast<double>(nu) * qfi);
}

RealVector mean_std_curve(const std::vector<Trajectory>& runs) {
  if (runs.empty()) return RealVector();
  const std::size_t len = runs.front().size();
  RealVector mean = RealVector::Zero(static_cast<Index>(len));
  for (const auto& r : runs) {
    if (r.size() != len) throw Error(ErrorKind::DimMismatch, "trajectories differ in length");
    for (std::size_t k = 0; k < len; ++k) mean(static_cast<Index>(k)) += r[k].std_dev;
  }
  return mean / static_cast<double>(runs.size());
}

}  // namespace critsense::estimation
