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

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "critsense/qmath.hpp"

namespace critsense::experiments {

using Json = nlohmann::ordered_json;

/// Malformed or inconsistent configuration (exit code 2).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Table {
  std::string name;    // file suffix; empty for the primary table
  std::string schema;  // versioned schema id written as the first line
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

struct ExperimentResult {
  std::vector<Table> tables;  // tables.front() is the primary output
  Json parameters;            // resolved parameters, defaults included
  Json summary;
};

struct RunOptions {
  std::uint64_t seed = 0;
  unsigned threads = 1;
};

const std::vector<std::string>& experiment_names();

/// Runs one experiment. Unknown parameter keys raise ConfigError.
ExperimentResult run_experiment(const std::string& name, const Json& parameters, const RunOptions& options);

/// Serializes a table: schema comment line, header row, 17 significant digits, LF endings.
std::string to_csv(const Table& table);

/// Calls f(0..n-1) on a worker pool. The first exception in index order is
/// rethrown after all workers finish.
void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& f);

/// parallel_for collecting one value per index, in index order.
std::vector<double> parallel_map(std::size_t n, unsigned threads, const std::function<double(std::size_t)>& f);

// Shared numerical building blocks (also used by the acceptance suite).

/// |11> quenched under the two-spin model for time t.
qmath::PureState full_quench(double b_x, double b_z, double t);

/// Pure-state QFI for Bz of full_quench from a central difference of the
/// amplitudes with step 1e-6.
double full_quench_qfi(double b_x, double b_z, double t);

/// CFI of the optimal critical-point measurement on full_quench at t = critical_time(b_x),
/// from outcome probabilities at b_z -/+ delta/2.
double quench_cfi(double b_x, double b_z, double delta);

struct AdiabaticPoint {
  std::size_t steps = 0;
  double total_time = 0.0;
  double final_fidelity = 0.0;
  double qfi = 0.0;
  double qfi_theory = 0.0;  // T^2 / (2 c^2)
};

/// Adiabatic passage from the two-spin ground state at b_z0 to the model at
/// b_z with T = c / b_x. The schedule is designed once at b_z and held fixed
/// while the Bz-derivative of the final state is taken.
AdiabaticPoint adiabatic_point(double b_x, double b_z0, double b_z, double p_c, double c);

struct NoisyQfi {
  double bures = 0.0;
  double spectral = 0.0;
};

/// Mixed-state QFI for Bz after a noisy quench of duration t.
NoisyQfi noisy_quench_qfi(double b_x, double b_z, double t, double gamma, double delta);

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
};

LinearFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

/// Indices i with y[i-1] < y[i] >= y[i+1].
std::vector<std::size_t> local_maxima(const std::vector<double>& y);

/// Order parameter O(b) sampled on an ascending grid: max |dO/db| by forward differences.
double max_slope(const std::vector<double>& b, const std::vector<double>& order);

}  // namespace critsense::experiments
