// Copyright 2026 The coadapt Authors. All rights reserved.
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


// coadapt: command-line driver for co-adaptation experiments.
//
//   coadapt run            --config F [--trials N] [--seed S] [--csv P]
//   coadapt mixing         --config F [--method exact|brute] [--csv P]
//   coadapt certify        --config F [--report P] [--csv P]
//   coadapt validate-bound --config F [--trials N] [--eps-grid a,b,c] [--csv P]
//   coadapt sweep          --config F --param NAME --values a,b,c [--csv P]
//
// Exit codes: 0 success, 1 validation error, 2 runtime error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "coadapt/certificate.h"
#include "coadapt/config.h"
#include "coadapt/experiment.h"
#include "coadapt/mixing.h"
#include "coadapt/report.h"

namespace {

constexpr int kExitValidation = 1;
constexpr int kExitRuntime = 2;

struct GlobalOptions {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::string csv_path;
  bool quiet = false;
};

coadapt::ExperimentConfig Load(const GlobalOptions& options) {
  std::string path = options.config_path;
  if (path.empty()) {
    if (const char* env = std::getenv(coadapt::kConfigEnvVar)) path = env;
  }
  if (path.empty()) {
    throw coadapt::ConfigError(std::string("--config: no experiment file given "
                                           "and ") +
                               coadapt::kConfigEnvVar + " is unset");
  }
  auto config = coadapt::LoadConfig(path);
  if (options.seed) config.seed = *options.seed;
  return config;
}

// Writes CSV through `emit` to --csv, where "-" means stdout.
template <typename Emit>
void WriteCsv(const GlobalOptions& options, Emit emit) {
  if (options.csv_path.empty()) return;
  if (options.csv_path == "-") {
    emit(std::cout);
    return;
  }
  std::ofstream file(options.csv_path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot write " + options.csv_path);
  emit(file);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Closed-loop co-adaptation experiments and certificates"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions global;
  app.add_option("--config", global.config_path,
                 std::string("Experiment file (default: $") +
                     coadapt::kConfigEnvVar + ")");
  app.add_option("--seed", global.seed, "Override the base seed");
  app.add_option("--csv", global.csv_path, "CSV output path, '-' for stdout");
  app.add_flag("--quiet", global.quiet, "Suppress the text summary");

  auto* run = app.add_subcommand("run", "Run co-adaptive episodes and regret");
  std::optional<int> run_trials;
  bool static_comparator = false;
  run->add_option("--trials", run_trials, "Override the number of trials");
  run->add_flag("--static-comparator", static_comparator,
                "Compare against the best single fixed encoder");

  auto* mixing = app.add_subcommand("mixing", "Print eta and M_T");
  std::string method = "exact";
  mixing->add_option("--method", method, "exact or brute")
      ->check(CLI::IsMember({"exact", "brute"}));

  auto* certify = app.add_subcommand("certify", "Evaluate the certificate");
  std::string report_path;
  std::optional<int> certify_trials;
  certify->add_option("--report", report_path, "Plain-text report path");
  certify->add_option("--trials", certify_trials, "Override the number of trials");

  auto* validate = app.add_subcommand(
      "validate-bound", "Monte Carlo check of the concentration bound");
  int bound_trials = 100000;
  std::vector<double> eps_grid{1.0, 2.0, 3.0, 4.0, 5.0, 6.0};
  int encoder_index = 0;
  validate->add_option("--trials", bound_trials, "Monte Carlo trials");
  validate->add_option("--eps-grid", eps_grid, "Comma-separated eps values")
      ->delimiter(',');
  validate->add_option("--encoder-index", encoder_index,
                       "Comparator encoder held fixed at every step");

  auto* sweep = app.add_subcommand("sweep", "Sweep one parameter");
  std::string parameter;
  std::vector<double> values;
  sweep->add_option("--param", parameter,
                    "T, delta, learning-rate or transition-flip-p")
      ->required();
  sweep->add_option("--values", values, "Comma-separated values")
      ->required()
      ->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitValidation;
  }

  try {
    if (run->parsed()) {
      auto config = Load(global);
      if (run_trials) config.trials = *run_trials;
      if (static_comparator) config.static_comparator = true;
      const auto report = coadapt::RunExperiment(config);
      WriteCsv(global, [&](std::ostream& out) { WriteRunCsv(report, out); });
      if (!global.quiet) WriteRunSummary(report, std::cout);
    } else if (mixing->parsed()) {
      auto config = Load(global);
      const auto profile = coadapt::ComputeMixingProfile(
          config.process, config.horizon,
          method == "brute" ? coadapt::MixingMethod::kBruteForce
                            : coadapt::MixingMethod::kExactMarkov);
      WriteCsv(global, [&](std::ostream& out) { WriteMixingCsv(profile, out); });
      if (!global.quiet) WriteMixingSummary(profile, std::cout);
    } else if (certify->parsed()) {
      auto config = Load(global);
      if (certify_trials) config.trials = *certify_trials;
      const auto report =
          coadapt::RunExperiment(config, {.keep_details = true});
      WriteCsv(global, [&](std::ostream& out) { WriteEpsCsv(report, out); });
      if (!report_path.empty()) {
        std::ofstream file(report_path, std::ios::binary);
        if (!file) throw std::runtime_error("cannot write " + report_path);
        WriteCertificateSummary(report, file);
      }
      if (!global.quiet) WriteCertificateSummary(report, std::cout);
    } else if (validate->parsed()) {
      auto config = Load(global);
      const std::vector<int> sequence(static_cast<std::size_t>(config.horizon),
                                      encoder_index);
      coadapt::BoundValidationOptions options;
      options.trials = bound_trials;
      options.eps_grid = eps_grid;
      options.seed = config.seed;
      options.threads = config.threads;
      options.lipschitz = config.lipschitz_override;
      const auto report = coadapt::ValidateConcentrationBound(
          config.process, config.loss, config.comparator(), sequence, options);
      WriteCsv(global, [&](std::ostream& out) { WriteBoundCsv(report, out); });
      if (!global.quiet) WriteBoundSummary(report, std::cout);
    } else if (sweep->parsed()) {
      auto config = Load(global);
      const auto which = coadapt::ParseSweepParameter(parameter);
      const auto rows = coadapt::Sweep(config, which, values);
      WriteCsv(global, [&](std::ostream& out) {
        WriteSweepCsv(which, rows, out);
      });
      if (!global.quiet && global.csv_path != "-") {
        WriteSweepCsv(which, rows, std::cout);
      }
    }
  } catch (const coadapt::ValidationError& e) {
    for (const auto& failure : e.failures()) {
      std::cerr << "error: " << failure << '\n';
    }
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return 0;
}
