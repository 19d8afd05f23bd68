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


#include "experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <limits>
#include <map>
#include <numbers>
#include <set>
#include <sstream>
#include <thread>

#include "critsense/analytic.hpp"
#include "critsense/dynamics.hpp"
#include "critsense/estimation.hpp"
#include "critsense/ising.hpp"
#include "critsense/metrology.hpp"

namespace critsense::experiments {

using qmath::ComplexVector;
using qmath::PureState;

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kStateStep = 1e-6;

// Typed access to the experiment parameters. Every getter records the value it
// resolved; finish() rejects keys no getter asked for.
class Params {
 public:
  explicit Params(const Json& given) : given_(given.is_null() ? Json::object() : given) {
    if (!given_.is_object()) throw ConfigError("\"parameters\" must be a JSON object");
  }

  double number(const std::string& key, double fallback) {
    double v = fallback;
    if (const Json* j = find(key)) {
      if (!j->is_number()) throw ConfigError("parameter \"" + key + "\" must be a number");
      v = j->get<double>();
    }
    resolved_[key] = v;
    return v;
  }

  long integer(const std::string& key, long fallback) {
    long v = fallback;
    if (const Json* j = find(key)) {
      if (!j->is_number_integer()) throw ConfigError("parameter \"" + key + "\" must be an integer");
      v = j->get<long>();
    }
    resolved_[key] = v;
    return v;
  }

  std::vector<double> numbers(const std::string& key, std::vector<double> fallback) {
    if (const Json* j = find(key)) {
      if (!j->is_array() || j->empty()) throw ConfigError("parameter \"" + key + "\" must be a non-empty array");
      fallback.clear();
      for (const auto& e : *j) {
        if (!e.is_number()) throw ConfigError("parameter \"" + key + "\" must contain numbers");
        fallback.push_back(e.get<double>());
      }
    }
    resolved_[key] = fallback;
    return fallback;
  }

  std::vector<long> integers(const std::string& key, std::vector<long> fallback) {
    if (const Json* j = find(key)) {
      if (!j->is_array() || j->empty()) throw ConfigError("parameter \"" + key + "\" must be a non-empty array");
      fallback.clear();
      for (const auto& e : *j) {
        if (!e.is_number_integer()) throw ConfigError("parameter \"" + key + "\" must contain integers");
        fallback.push_back(e.get<long>());
      }
    }
    resolved_[key] = fallback;
    return fallback;
  }

  std::string choice(const std::string& key, const std::string& fallback, const std::vector<std::string>& allowed) {
    std::string v = fallback;
    if (const Json* j = find(key)) {
      if (!j->is_string()) throw ConfigError("parameter \"" + key + "\" must be a string");
      v = j->get<std::string>();
    }
    if (std::find(allowed.begin(), allowed.end(), v) == allowed.end()) {
      throw ConfigError("parameter \"" + key + "\" has unsupported value \"" + v + "\"");
    }
    resolved_[key] = v;
    return v;
  }

  Json finish() const {
    for (const auto& [key, value] : given_.items()) {
      if (!resolved_.contains(key)) throw ConfigError("unknown parameter \"" + key + "\"");
    }
    return resolved_;
  }

 private:
  const Json* find(const std::string& key) const {
    auto it = given_.find(key);
    return it == given_.end() ? nullptr : &*it;
  }

  Json given_;
  Json resolved_ = Json::object();
};

std::vector<double> uniform_grid(double lo, double hi, double step, const char* what) {
  if (!(step > 0.0) || !(hi >= lo)) throw ConfigError(std::string("invalid range for ") + what);
  const long n = std::lround((hi - lo) / step) + 1;
  if (n > 1'000'000) throw ConfigError(std::string("grid for ") + what + " is too large");
  std::vector<double> g(static_cast<std::size_t>(n));
  for (long i = 0; i < n; ++i) g[static_cast<std::size_t>(i)] = lo + static_cast<double>(i) * step;
  return g;
}

void require_positive(double v, const char* what) {
  if (!(v > 0.0)) throw ConfigError(std::string(what) + " must be positive");
}

void require_nonzero_fields(const std::vector<double>& b_x) {
  for (double b : b_x) {
    if (b == 0.0) throw ConfigError("b_x values must be nonzero");
  }
}

ComplexVector central_state_derivative(const std::function<PureState(double)>& state_at, double x) {
  return (state_at(x + kStateStep).amplitudes() - state_at(x - kStateStep).amplitudes()) / (2.0 * kStateStep);
}

// ---------------------------------------------------------------------------

ExperimentResult phase_diagram(Params& p, const RunOptions& opt) {
  const long first_n = p.integer("first_order_n_spins", 2);
  const std::vector<double> first_bx = p.numbers("first_order_b_x", {0.1, 0.07, 0.05});
  const std::vector<double> bz = uniform_grid(p.number("b_z_min", 0.0), p.number("b_z_max", 2.0),
                                              p.number("b_z_step", 0.01), "b_z");
  const std::vector<long> second_n = p.integers("second_order_n_spins", {6, 10, 14});
  const std::vector<double> bx = uniform_grid(p.number("b_x_min", 0.25), p.number("b_x_max", 1.0),
                                              p.number("b_x_step", 0.01), "b_x");
  Json params = p.finish();
  for (long n : second_n) {
    if (n < 2 || n > ising::kMaxSpins) throw ConfigError("second_order_n_spins entries must lie in [2, 14]");
  }
  if (first_n < 2 || first_n > ising::kMaxSpins) throw ConfigError("first_order_n_spins must lie in [2, 14]");

  struct Point {
    int transition;
    long n;
    double b_x, b_z;
  };
  std::vector<Point> points;
  for (double b : first_bx) {
    for (double z : bz) points.push_back({1, first_n, b, z});
  }
  for (long n : second_n) {
    for (double b : bx) points.push_back({2, n, b, 0.0});
  }

  std::vector<std::vector<double>> rows(points.size());
  parallel_for(points.size(), opt.threads, [&](std::size_t i) {
    const Point& pt = points[i];
    ising::ChainParams cp;
    cp.n_spins = static_cast<int>(pt.n);
    cp.b_x = pt.b_x;
    cp.b_z = pt.b_z;
    const ising::GroundState gs = ising::chain_ground_state(cp);
    const double order = ising::order_parameter(gs.state, cp.n_spins);
    const double qfi = ising::chain_ground_qfi(cp, pt.transition == 1 ? ising::Field::Bz : ising::Field::Bx);
    rows[i] = {static_cast<double>(pt.transition), static_cast<double>(pt.n), pt.b_x, pt.b_z, order, qfi};
  });

  Json slopes = Json::array();
  std::size_t i = 0;
  while (i < points.size()) {
    std::size_t j = i;
    std::vector<double> b, o;
    while (j < points.size() && points[j].transition == points[i].transition && points[j].n == points[i].n &&
           (points[i].transition == 2 || points[j].b_x == points[i].b_x)) {
      b.push_back(points[i].transition == 1 ? points[j].b_z : points[j].b_x);
      o.push_back(rows[j][4]);
      ++j;
    }
    slopes.push_back({{"transition", points[i].transition == 1 ? "first-order" : "second-order"},
                      {"n_spins", points[i].n},
                      {"b_x", points[i].transition == 1 ? Json(points[i].b_x) : Json(nullptr)},
                      {"max_order_slope", max_slope(b, o)}});
    i = j;
  }

  Table t{"", "critsense.phase-diagram.v1", {"transition", "N", "b_x", "b_z", "order_param", "qfi_ground"},
          std::move(rows)};
  return {{std::move(t)}, std::move(params), Json{{"order_parameter_slopes", slopes}}};
}

ExperimentResult qfi_scan(Params& p, const RunOptions& opt) {
  const double b_x = p.number("b_x", 0.1);
  const double delta = p.number("delta", 0.1);
  const std::vector<double> bz = uniform_grid(p.number("b_z_min", 0.0), p.number("b_z_max", 2.0),
                                              p.number("b_z_step", 0.005), "b_z");
  Json params = p.finish();
  require_nonzero_fields({b_x});
  require_positive(delta, "delta");
  const double tau = analytic::critical_time(b_x);

  std::vector<std::vector<double>> rows(bz.size());
  parallel_for(bz.size(), opt.threads, [&](std::size_t i) {
    const double z = bz[i];
    auto family = [&](double v) { return full_quench(b_x, v, tau); };
    rows[i] = {z, full_quench_qfi(b_x, z, tau), analytic::quench_qfi({b_x, z, tau}),
               metrology::pure_qfi_fd(family, z, delta)};
  });

  std::vector<double> analytic_curve, exact_curve;
  for (const auto& r : rows) {
    exact_curve.push_back(r[1]);
    analytic_curve.push_back(r[2]);
  }
  const double global = *std::max_element(analytic_curve.begin(), analytic_curve.end());
  Json peaks = Json::array();
  std::size_t all_maxima = 0;
  for (std::size_t k : local_maxima(analytic_curve)) {
    ++all_maxima;
    if (analytic_curve[k] < 0.5 * global) continue;
    peaks.push_back({{"b_z", bz[k]}, {"qfi_analytic", analytic_curve[k]}, {"qfi_exact", rows[k][1]},
                     {"qfi_fd_delta", rows[k][3]}});
  }
  Json summary{{"tau", tau},
               {"qfi_at_critical_analytic", analytic::quench_qfi({b_x, 1.0, tau})},
               {"local_maxima_total", all_maxima},
               {"major_peaks", peaks}};
  Table t{"", "critsense.qfi-scan.v1", {"b_z", "qfi_exact", "qfi_analytic", "qfi_fd_delta"}, std::move(rows)};
  return {{std::move(t)}, std::move(params), std::move(summary)};
}

ExperimentResult scaling(Params& p, const RunOptions& opt) {
  const std::vector<double> bx = p.numbers("b_x", {2.22, 1.5, 1.0, 0.6, 0.35, 0.2, 0.14});
  const double b_z = p.number("b_z", 1.0);
  const double delta = p.number("delta", 0.06);
  const std::string adiabatic = p.choice("adiabatic", "on", {"on", "off"});
  const double b_z0 = p.number("adiabatic_b_z0", 2.0);
  const double c = p.number("adiabatic_c", 2.5);
  const double p_c = p.number("p_c", dynamics::kDefaultPc);
  Json params = p.finish();
  require_nonzero_fields(bx);
  require_positive(delta, "delta");
  require_positive(c, "adiabatic_c");

  std::vector<std::vector<double>> rows(bx.size());
  parallel_for(bx.size(), opt.threads, [&](std::size_t i) {
    const double b = bx[i];
    const double t = analytic::critical_time(b);
    const double qfi_ad = adiabatic == "on" ? adiabatic_point(b, b_z0, b_z, p_c, c).qfi : kNaN;
    rows[i] = {b, t, quench_cfi(b, b_z, delta), analytic::heisenberg_qfi(t), qfi_ad};
  });

  std::vector<double> ts, roots;
  for (const auto& r : rows) {
    ts.push_back(r[1]);
    roots.push_back(std::sqrt(r[2]));
  }
  const LinearFit fit = fit_line(ts, roots);
  Json summary{{"sqrt_cfi_fit", {{"slope", fit.slope}, {"intercept", fit.intercept}, {"r_squared", fit.r_squared}}},
               {"heisenberg_slope", 4.0 / std::numbers::pi}};
  Table t{"", "critsense.scaling.v1", {"b_x", "T", "cfi_optimal", "qfi_theory", "qfi_adiabatic"}, std::move(rows)};
  return {{std::move(t)}, std::move(params), std::move(summary)};
}

ExperimentResult adaptive(Params& p, const RunOptions& opt) {
  estimation::AdaptiveConfig base;
  base.b_z_true = p.number("b_z_true", 0.8);
  base.b_x = p.number("b_x", 0.1);
  base.prior_min = p.number("prior_min", 0.7);
  base.prior_max = p.number("prior_max", 1.3);
  base.shots = static_cast<int>(p.integer("shots", 110));
  base.grid_points = static_cast<int>(p.integer("grid_points", 2001));
  base.b_z_critical = p.number("b_z_critical", 1.0);
  base.likelihood = p.choice("likelihood", "full", {"full", "effective"}) == "full"
                        ? estimation::LikelihoodModel::Full
                        : estimation::LikelihoodModel::Effective;
  const long n_seeds = p.integer("n_seeds", 100);
  Json params = p.finish();
  require_nonzero_fields({base.b_x});
  if (n_seeds < 1) throw ConfigError("n_seeds must be at least 1");
  if (base.shots < 1) throw ConfigError("shots must be at least 1");
  base.seed = opt.seed;
  estimation::init_prior(base);  // validates the range up front

  std::vector<estimation::Trajectory> runs(static_cast<std::size_t>(n_seeds));
  parallel_for(runs.size(), opt.threads, [&](std::size_t r) {
    estimation::AdaptiveConfig cfg = base;
    cfg.seed = base.seed + r;
    runs[r] = estimation::run_adaptive(cfg);
  });

  Table traj{"", "critsense.adaptive.trajectory.v1", {"k", "b_z_ctrl", "outcome", "estimate", "std"}, {}};
  for (std::size_t k = 0; k < runs[0].size(); ++k) {
    const auto& s = runs[0][k];
    traj.rows.push_back({static_cast<double>(k + 1), s.control, static_cast<double>(s.outcome), s.estimate, s.std_dev});
  }

  const double qfi = analytic::quench_qfi({base.b_x, base.b_z_critical, analytic::critical_time(base.b_x)});
  const qmath::RealVector mean_std = estimation::mean_std_curve(runs);
  Table ens{"ensemble", "critsense.adaptive.ensemble.v1", {"k", "mean_std", "qcrb"}, {}};
  int increases = 0;
  for (qmath::Index k = 0; k < mean_std.size(); ++k) {
    ens.rows.push_back({static_cast<double>(k + 1), mean_std(k), estimation::qcrb(static_cast<int>(k + 1), qfi)});
    if (k > 0 && mean_std(k) > mean_std(k - 1)) ++increases;
  }

  double mean_est = 0.0, sq = 0.0;
  for (const auto& r : runs) mean_est += r.back().estimate;
  mean_est /= static_cast<double>(runs.size());
  for (const auto& r : runs) sq += (r.back().estimate - mean_est) * (r.back().estimate - mean_est);
  const double spread = runs.size() > 1 ? std::sqrt(sq / static_cast<double>(runs.size() - 1)) : 0.0;
  const double final_std = mean_std(mean_std.size() - 1);
  const double bound = estimation::qcrb(base.shots, qfi);
  Json summary{{"n_seeds", n_seeds},
               {"qfi_critical", qfi},
               {"final_mean_std", final_std},
               {"qcrb", bound},
               {"ratio_to_qcrb", final_std / bound},
               {"fraction_increasing_steps",
                mean_std.size() > 1 ? increases / static_cast<double>(mean_std.size() - 1) : 0.0},
               {"final_estimate_mean", mean_est},
               {"final_estimate_spread", spread},
               {"bias", mean_est - base.b_z_true}};
  return {{std::move(traj), std::move(ens)}, std::move(params), std::move(summary)};
}

ExperimentResult adiabatic(Params& p, const RunOptions& opt) {
  const std::vector<double> bx = p.numbers("b_x", {0.1, 0.15, 0.2});
  const double b_z0 = p.number("b_z0", 2.0);
  const double b_z = p.number("b_z", 1.0);
  const double p_c = p.number("p_c", dynamics::kDefaultPc);
  const double c = p.number("c", 2.5);
  Json params = p.finish();
  require_nonzero_fields(bx);
  require_positive(c, "c");

  std::vector<std::vector<double>> rows(bx.size());
  parallel_for(bx.size(), opt.threads, [&](std::size_t i) {
    const AdiabaticPoint a = adiabatic_point(bx[i], b_z0, b_z, p_c, c);
    rows[i] = {bx[i], static_cast<double>(a.steps), a.total_time, a.final_fidelity, a.qfi, a.qfi_theory,
               a.qfi / a.qfi_theory};
  });
  double min_fid = 1.0, worst = 0.0;
  for (const auto& r : rows) {
    min_fid = std::min(min_fid, r[3]);
    worst = std::max(worst, std::abs(r[6] - 1.0));
  }
  Json summary{{"min_final_fidelity", min_fid}, {"max_relative_qfi_deviation", worst}};
  Table t{"", "critsense.adiabatic.v1",
          {"b_x", "steps", "T", "final_fidelity", "qfi", "qfi_theory", "qfi_ratio"}, std::move(rows)};
  return {{std::move(t)}, std::move(params), std::move(summary)};
}

ExperimentResult noise(Params& p, const RunOptions& opt) {
  const double b_x = p.number("b_x", 0.1);
  const std::vector<double> gammas = p.numbers("gammas", {0.0, 0.05, 0.1});
  const std::vector<double> bz = uniform_grid(p.number("b_z_min", 0.0), p.number("b_z_max", 2.0),
                                              p.number("b_z_step", 0.02), "b_z");
  const double delta = p.number("delta", 1e-3);
  const double gamma_t = p.number("time_gamma", 0.1);
  const std::vector<double> ts = uniform_grid(p.number("t_min", 0.5), p.number("t_max", 15.0),
                                              p.number("t_step", 0.5), "T");
  const double cfi_delta = p.number("cfi_delta", 0.06);
  Json params = p.finish();
  require_nonzero_fields({b_x});
  require_positive(delta, "delta");
  require_positive(cfi_delta, "cfi_delta");
  for (double g : gammas) {
    if (g < 0.0) throw ConfigError("gammas must be non-negative");
  }
  if (gamma_t < 0.0) throw ConfigError("time_gamma must be non-negative");
  for (double t : ts) require_positive(t, "T");
  const double tau = analytic::critical_time(b_x);

  std::vector<std::vector<double>> scan(gammas.size() * bz.size());
  parallel_for(scan.size(), opt.threads, [&](std::size_t i) {
    const double g = gammas[i / bz.size()], z = bz[i % bz.size()];
    const NoisyQfi q = noisy_quench_qfi(b_x, z, tau, g, delta);
    scan[i] = {g, z, q.bures, q.spectral};
  });

  std::vector<std::vector<double>> timing(ts.size());
  parallel_for(ts.size(), opt.threads, [&](std::size_t i) {
    const double t = ts[i];
    const double b = std::numbers::pi / (2.0 * std::numbers::sqrt2 * t);
    const NoisyQfi q = noisy_quench_qfi(b, 1.0, t, gamma_t, delta);
    const metrology::Povm povm = metrology::optimal_povm_at_critical();
    const double cfi = metrology::cfi(
        metrology::born_probs(dynamics::noisy_quench(b, 1.0 + 0.5 * cfi_delta, t, gamma_t, gamma_t), povm),
        metrology::born_probs(dynamics::noisy_quench(b, 1.0 - 0.5 * cfi_delta, t, gamma_t, gamma_t), povm),
        cfi_delta);
    timing[i] = {t, b, q.bures, q.spectral, cfi, dynamics::ramsey_ghz_qfi(t, gamma_t, gamma_t)};
  });

  Json anchors = Json::array();
  for (double g : gammas) {
    const NoisyQfi at_c = noisy_quench_qfi(b_x, 1.0, tau, g, delta);
    const NoisyQfi off = noisy_quench_qfi(b_x, 0.8, tau, g, delta);
    anchors.push_back({{"gamma", g}, {"qfi_b_z_1", at_c.bures}, {"qfi_b_z_0.8", off.bures}});
  }
  // Earliest grid time from which the critical scheme stays ahead of GHZ.
  Json crossover = nullptr;
  for (std::size_t i = timing.size(); i-- > 0;) {
    if (timing[i][2] > timing[i][5]) {
      crossover = timing[i][0];
    } else {
      break;
    }
  }
  Json summary{{"tau", tau}, {"anchors", anchors}, {"crossover_time", crossover}};
  Table t1{"", "critsense.noise.scan.v1", {"gamma", "b_z", "qfi_bures", "qfi_spectral"}, std::move(scan)};
  Table t2{"time", "critsense.noise.time.v1",
           {"T", "b_x", "qfi_critical", "qfi_critical_spectral", "cfi_critical", "qfi_ghz"}, std::move(timing)};
  return {{std::move(t1), std::move(t2)}, std::move(params), std::move(summary)};
}

ExperimentResult critical_region(Params& p, const RunOptions&) {
  const std::vector<double> bx = p.numbers("b_x", {0.05, 0.1, 0.2});
  const std::vector<double> cs = p.numbers("contrast", {0.5});
  Json params = p.finish();
  require_nonzero_fields(bx);
  for (double c : cs) {
    if (!(c > 0.0 && c < 1.0)) throw ConfigError("contrast values must lie in (0, 1)");
  }
  std::vector<std::vector<double>> rows;
  for (double b : bx) {
    const analytic::DistinguishableRange range = analytic::distinguishable_range(b);
    const double qfi = analytic::quench_qfi({b, 1.0, analytic::critical_time(b)});
    for (double c : cs) {
      const analytic::CriticalRegion r = analytic::critical_region_width(b, c);
      rows.push_back({b, c, r.zeta0, r.width_L, range.v_max, range.zeta_min, range.zeta_max,
                      r.width_L * std::sqrt(qfi)});
    }
  }
  Table t{"", "critsense.critical-region.v1",
          {"b_x", "C", "zeta0", "width_L", "v_max", "zeta_min", "zeta_max", "width_sqrt_qfi"}, std::move(rows)};
  return {{std::move(t)}, std::move(params), Json::object()};
}

}  // namespace

const std::vector<std::string>& experiment_names() {
  static const std::vector<std::string> names{"phase-diagram", "qfi-scan", "scaling", "adaptive",
                                              "adiabatic", "noise", "critical-region"};
  return names;
}

ExperimentResult run_experiment(const std::string& name, const Json& parameters, const RunOptions& options) {
  using Runner = ExperimentResult (*)(Params&, const RunOptions&);
  static const std::map<std::string, Runner> runners{
      {"phase-diagram", phase_diagram}, {"qfi-scan", qfi_scan}, {"scaling", scaling},
      {"adaptive", adaptive},           {"adiabatic", adiabatic}, {"noise", noise},
      {"critical-region", critical_region}};
  const auto it = runners.find(name);
  if (it == runners.end()) throw ConfigError("unknown experiment \"" + name + "\"");
  Params p(parameters);
  RunOptions opt = options;
  opt.threads = std::max(1u, opt.threads);
  return it->second(p, opt);
}

std::string to_csv(const Table& table) {
  std::ostringstream out;
  out << "# " << table.schema << '\n';
  for (std::size_t i = 0; i < table.columns.size(); ++i) out << (i ? "," : "") << table.columns[i];
  out << '\n';
  char buf[40];
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      std::snprintf(buf, sizeof buf, "%.17g", row[i]);
      out << (i ? "," : "") << buf;
    }
    out << '\n';
  }
  return out.str();
}

void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& f) {
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        f(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const unsigned count = static_cast<unsigned>(std::min<std::size_t>(std::max(1u, threads), n));
  if (count <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < count; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

std::vector<double> parallel_map(std::size_t n, unsigned threads, const std::function<double(std::size_t)>& f) {
  std::vector<double> out(n);
  parallel_for(n, threads, [&](std::size_t i) { out[i] = f(i); });
  return out;
}

PureState full_quench(double b_x, double b_z, double t) {
  return dynamics::evolve_unitary(ising::build_two_spin(b_x, b_z), t, ising::two_spin_a());
}

double full_quench_qfi(double b_x, double b_z, double t) {
  auto state_at = [&](double z) { return full_quench(b_x, z, t); };
  return metrology::pure_qfi(state_at(b_z), central_state_derivative(state_at, b_z));
}

double quench_cfi(double b_x, double b_z, double delta) {
  const double t = analytic::critical_time(b_x);
  const metrology::Povm povm = metrology::optimal_povm_at_critical();
  return metrology::cfi(metrology::born_probs(full_quench(b_x, b_z + 0.5 * delta, t), povm),
                        metrology::born_probs(full_quench(b_x, b_z - 0.5 * delta, t), povm), delta);
}

AdiabaticPoint adiabatic_point(double b_x, double b_z0, double b_z, double p_c, double c) {
  const qmath::ComplexMatrix h0 = ising::build_two_spin(b_x, b_z0);
  const PureState psi0 = ising::ground_state(h0).state;
  const double total = c / std::abs(b_x);
  const dynamics::AdiabaticPath path =
      dynamics::design_adiabatic_path(h0, ising::build_two_spin(b_x, b_z), p_c, 0.1 / std::abs(b_x))
          .with_total_time(total);
  auto run_at = [&](double z) { return dynamics::run_adiabatic(path, h0, ising::build_two_spin(b_x, z), psi0); };
  const dynamics::AdiabaticRun centre = run_at(b_z);
  auto state_at = [&](double z) { return run_at(z).final_state; };
  AdiabaticPoint out;
  out.steps = path.steps();
  out.total_time = path.total_time;
  out.final_fidelity = centre.fidelity_trace(centre.fidelity_trace.size() - 1);
  out.qfi = metrology::pure_qfi(centre.final_state, central_state_derivative(state_at, b_z));
  out.qfi_theory = total * total / (2.0 * c * c);
  return out;
}

NoisyQfi noisy_quench_qfi(double b_x, double b_z, double t, double gamma, double delta) {
  const qmath::DensityMatrix lo = dynamics::noisy_quench(b_x, b_z - 0.5 * delta, t, gamma, gamma);
  const qmath::DensityMatrix hi = dynamics::noisy_quench(b_x, b_z + 0.5 * delta, t, gamma, gamma);
  const qmath::DensityMatrix mid = dynamics::noisy_quench(b_x, b_z, t, gamma, gamma);
  const double d = qmath::bures_distance(lo, hi);
  const qmath::ComplexMatrix drho = (hi.matrix() - lo.matrix()) / delta;
  return {4.0 * d * d / (delta * delta), metrology::mixed_qfi_spectral(mid, drho)};
}

LinearFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw Error(ErrorKind::InvalidArgument, "fit needs two or more points");
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  LinearFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  f.r_squared = syy > 0.0 ? sxy * sxy / (sxx * syy) : 1.0;
  return f;
}

std::vector<std::size_t> local_maxima(const std::vector<double>& y) {
  std::vector<std::size_t> out;
  for (std::size_t i = 1; i + 1 < y.size(); ++i) {
    if (y[i] > y[i - 1] && y[i] >= y[i + 1]) out.push_back(i);
  }
  return out;
}

double max_slope(const std::vector<double>& b, const std::vector<double>& order) {
  double best = 0.0;
  for (std::size_t i = 1; i < b.size() && i < order.size(); ++i) {
    best = std::max(best, std::abs((order[i] - order[i - 1]) / (b[i] - b[i - 1])));
  }
  return best;
}

}  // namespace critsense::experiments
