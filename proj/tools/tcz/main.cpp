// Copyright 2026 The tcz Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <iostream>

#include <CLI11.hpp>

#include "commands.hpp"
#include "run_config.hpp"
#include "tcz/errors.hpp"

namespace {

constexpr int kConfigError = 2;
constexpr int kNumericalError = 3;
constexpr int kFitError = 4;

}  // namespace

int main(int argc, char** argv) {
  using namespace tcz;
  CLI::App app{"Tunable-coupler CZ gate simulation and calibration toolkit"};
  app.set_version_flag("--version", TCZ_VERSION);
  app.require_subcommand(1);
  app.fallthrough();

  cli::Overrides ov;
  app.add_option("--config", ov.config_path, "JSON run configuration")->check(CLI::ExistingFile);
  app.add_option("--seed", ov.seed, "64-bit seed, overrides the configuration");
  app.add_option("--out", ov.out_dir, "output directory");
  app.add_option("--threads", ov.threads, "worker threads")->check(CLI::PositiveNumber);
  app.add_option("--levels", ov.levels, "Fock levels per mode")->check(CLI::Range(3, 12));

  const std::vector<std::pair<const char*, void (*)(const cli::RunConfig&)>> commands = {
      {"spectrum", cli::cmd_spectrum},   {"chi-sweep", cli::cmd_chi_sweep},
      {"calibrate", cli::cmd_calibrate}, {"rb", cli::cmd_rb},
      {"error-budget", cli::cmd_error_budget}, {"crosstalk", cli::cmd_crosstalk}};
  const std::vector<const char*> help = {
      "two-excitation spectrum and minimum gap", "ZZ coupling sweep",
      "calibrate the CZ pulse amplitude", "reference and interleaved RB",
      "decoherence error budget", "flux-crosstalk sensitivity"};
  for (std::size_t i = 0; i < commands.size(); ++i) app.add_subcommand(commands[i].first, help[i]);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kConfigError;
  }

  try {
    const cli::RunConfig rc = cli::load_run_config(ov);
    for (const auto& [name, fn] : commands) {
      if (app.got_subcommand(name)) fn(rc);
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const ValidationError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const FitError& e) {
    std::cerr << "fit failure: " << e.what() << "\n";
    return kFitError;
  } catch (const CalibrationError& e) {
    std::cerr << "calibration failure: " << e.what() << "\n" << e.diagnostics() << "\n";
    return kNumericalError;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kNumericalError;
  }
  return 0;
}
