// Copyright 2026 The plet-sim Authors
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

// plet-sim: command-line driver for the electron-transfer simulations.
//
//   plet-sim run <scenario> (--config <path> | --defaults) [--out <dir>] [--threads k]
//   plet-sim validate --config <path>
//   plet-sim defaults <scenario>
//
// Exit codes: 0 success, 2 configuration or input error, 3 numerical guard
// tripped, 1 anything else.

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "plet/config.hpp"
#include "plet/error.hpp"
#include "plet/scenarios.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

int run_command(const std::string& scenario_name, const std::string& config_path, const std::string& out_dir,
                int threads) {
  const plet::Scenario scenario = plet::scenario_from_string(scenario_name);
  plet::ScenarioConfig config =
      config_path.empty() ? plet::default_config(scenario) : plet::load_config(config_path);
  if (config.scenario != scenario) {
    throw plet::ConfigError("config '" + config_path + "' describes scenario '" +
                            std::string(plet::to_string(config.scenario)) + "', not '" + scenario_name + "'");
  }
  if (!out_dir.empty()) config.output_dir = out_dir;

  const plet::ScenarioOutput output = plet::run_scenario(config, threads);
  const auto files = plet::write_outputs(output, config.output_dir);
  std::cout << output.summary.dump(2) << "\n";
  std::cerr << "wrote " << files.size() << " files to " << config.output_dir << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Trotterized qutrit and qubit simulations of polarized-light-induced electron transfer"};
  app.require_subcommand(1);

  std::string scenario, config_path, out_dir;
  bool use_defaults = false;
  int threads = 1;

  auto* run = app.add_subcommand("run", "Run one scenario and write its CSV/JSON outputs");
  run->add_option("scenario", scenario, "polar_scan | phase_scan | degeneracy_scan | trotter_accuracy | noise_comparison")
      ->required();
  auto* cfg_opt = run->add_option("--config", config_path, "JSON config overriding the scenario defaults");
  auto* def_opt = run->add_flag("--defaults", use_defaults, "Use the built-in defaults for the scenario");
  cfg_opt->excludes(def_opt);
  run->add_option("--out", out_dir, "Output directory (overrides output_dir in the config)");
  run->add_option("--threads", threads, "Worker threads for scan points")->check(CLI::PositiveNumber);

  auto* validate = app.add_subcommand("validate", "Check a config file without running it");
  validate->add_option("--config", config_path, "JSON config")->required();

  auto* defaults = app.add_subcommand("defaults", "Print the default config of a scenario");
  defaults->add_option("scenario", scenario, "Scenario name")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (run->parsed()) {
      if (config_path.empty() && !use_defaults) {
        std::cerr << "error: run needs --config <path> or --defaults\n";
        return kExitConfig;
      }
      return run_command(scenario, config_path, out_dir, threads);
    }
    if (validate->parsed()) {
      const plet::ScenarioConfig config = plet::load_config(config_path);
      std::cout << "ok: " << plet::to_string(config.scenario) << "\n";
      return 0;
    }
    if (defaults->parsed()) {
      std::cout << plet::config_to_json(plet::default_config(plet::scenario_from_string(scenario))).dump(2) << "\n";
      return 0;
    }
  } catch (const plet::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const plet::ParseError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const plet::NumericalGuardError& e) {
    std::cerr << "numerical guard: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
