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


// critsense <experiment> --config <path> [--seed N] [--out <path>] [--threads N]
//
// Writes the primary CSV to the output path, extra tables next to it as
// <stem>_<name>.csv, and a JSON summary as <stem>.json.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"

#include "critsense/error.hpp"
#include "experiments.hpp"

#ifndef CRITSENSE_VERSION
#define CRITSENSE_VERSION "0.0.0"
#endif

namespace {

namespace fs = std::filesystem;
using critsense::experiments::ConfigError;
using critsense::experiments::Json;

constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

struct Config {
  std::string experiment;
  Json parameters = Json::object();
  std::uint64_t seed = 0;
  std::string output_path;
};

Config load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path);
  Json doc;
  try {
    doc = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("config must be a JSON object");
  Config cfg;
  for (const auto& [key, value] : doc.items()) {
    if (key == "experiment") {
      if (!value.is_string()) throw ConfigError("\"experiment\" must be a string");
      cfg.experiment = value.get<std::string>();
    } else if (key == "parameters") {
      cfg.parameters = value;
    } else if (key == "seed") {
      if (!value.is_number_unsigned() && !(value.is_number_integer() && value.get<long long>() >= 0)) {
        throw ConfigError("\"seed\" must be a non-negative integer");
      }
      cfg.seed = value.get<std::uint64_t>();
    } else if (key == "output_path") {
      if (!value.is_string()) throw ConfigError("\"output_path\" must be a string");
      cfg.output_path = value.get<std::string>();
    } else {
      throw ConfigError("unknown config key \"" + key + "\"");
    }
  }
  return cfg;
}

void write_file(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) throw std::runtime_error("failed to write " + path.string());
}

bool is_config_kind(critsense::ErrorKind k) {
  using critsense::ErrorKind;
  return k == ErrorKind::InvalidArgument || k == ErrorKind::BadRange || k == ErrorKind::DimTooLarge ||
         k == ErrorKind::BxZero;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Critical quantum sensing experiments"};
  std::string experiment, config_path, out_path;
  std::uint64_t seed = 0;
  unsigned threads = std::max(1u, std::thread::hardware_concurrency());
  app.add_option("experiment", experiment, "Experiment to run")
      ->required()
      ->check(CLI::IsMember(critsense::experiments::experiment_names()));
  app.add_option("--config", config_path, "JSON config file");
  auto* seed_opt = app.add_option("--seed", seed, "Seed (overrides the config)");
  auto* out_opt = app.add_option("--out", out_path, "Primary CSV path (overrides the config)");
  app.add_option("--threads", threads, "Worker threads")->check(CLI::PositiveNumber);
  app.set_version_flag("--version", CRITSENSE_VERSION);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    Config cfg;
    if (!config_path.empty()) cfg = load_config(config_path);
    if (!cfg.experiment.empty() && cfg.experiment != experiment) {
      throw ConfigError("config is for \"" + cfg.experiment + "\", not \"" + experiment + "\"");
    }
    cfg.experiment = experiment;
    if (*seed_opt) cfg.seed = seed;
    if (*out_opt) cfg.output_path = out_path;
    if (cfg.output_path.empty()) cfg.output_path = experiment + ".csv";

    const auto result =
        critsense::experiments::run_experiment(experiment, cfg.parameters, {cfg.seed, threads});

    const fs::path primary(cfg.output_path);
    const fs::path stem = primary.parent_path() / primary.stem();
    std::vector<std::string> written;
    for (const auto& table : result.tables) {
      const fs::path path = table.name.empty() ? primary : fs::path(stem.string() + "_" + table.name + ".csv");
      write_file(path, critsense::experiments::to_csv(table));
      written.push_back(path.string());
    }
    Json summary{{"config",
                  {{"experiment", experiment},
                   {"parameters", result.parameters},
                   {"seed", cfg.seed},
                   {"output_path", cfg.output_path}}},
                 {"results", result.summary},
                 {"version", CRITSENSE_VERSION}};
    const fs::path json_path = fs::path(stem.string() + ".json");
    write_file(json_path, summary.dump(2) + "\n");
    written.push_back(json_path.string());
    for (const auto& w : written) std::cout << w << '\n';
    return 0;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const critsense::Error& e) {
    std::cerr << e.what() << '\n';
    return is_config_kind(e.kind()) ? kExitConfig : kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
