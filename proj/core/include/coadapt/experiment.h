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


#ifndef COADAPT_EXPERIMENT_H_
#define COADAPT_EXPERIMENT_H_

// Runs configured experiments end to end: sample intentions, play the closed
// loop, solve the hindsight comparator, and evaluate the certificate.
//
// Trial k uses seed DeriveSeed(config.seed, k). Inside a trial the intention
// stream uses DeriveSeed(trial_seed, 0) and the policies use
// DeriveSeed(trial_seed, 1), so any trial can be replayed on its own.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "coadapt/certificate.h"
#include "coadapt/config.h"
#include "coadapt/mixing.h"
#include "coadapt/protocol.h"

namespace coadapt {

struct TrialRecord {
  int trial = 0;
  std::uint64_t seed = 0;
  int horizon = 0;
  double cumulative_loss = 0.0;
  double comparator_min = 0.0;
  double regret = 0.0;
  Certificate certificate;
  // Populated only when RunOptions::keep_details is set.
  Sequence intentions;
  std::optional<Trajectory> trajectory;
  std::vector<int> comparator_sequence;
  EpsSchedule eps;
};

struct ExperimentSummary {
  int trials = 0;
  double mean_regret = 0.0;
  double min_regret = 0.0;
  double max_regret = 0.0;
  double mean_cumulative_loss = 0.0;
  double mean_comparator_min = 0.0;
  double mean_eps_sum = 0.0;
  double mean_margin = 0.0;
  // Trials with R_T < 0.
  double outperform_fraction = 0.0;
  // Trials whose certificate holds.
  double certified_fraction = 0.0;
  // Among certified trials, those with R_T < 0; zero when none certified.
  double certified_outperform_fraction = 0.0;
};

struct ExperimentReport {
  int horizon = 0;
  double delta = 0.0;
  double lipschitz = 0.0;
  double deviation = 0.0;
  MixingProfile mixing;
  std::vector<TrialRecord> trials;
  ExperimentSummary summary;
};

struct RunOptions {
  bool keep_details = false;
};

std::uint64_t TrialSeed(std::uint64_t base_seed, int trial);

// Runs one trial. The mixing profile and deviation term are shared inputs.
TrialRecord RunTrial(const ExperimentConfig& config, int trial,
                     double deviation, bool keep_details);

ExperimentReport RunExperiment(const ExperimentConfig& config,
                               const RunOptions& options = {});

enum class SweepParameter { kHorizon, kDelta, kLearningRate, kFlipProbability };

// Accepts T, delta, learning-rate, transition-flip-p. Throws ValidationError
// on anything else.
SweepParameter ParseSweepParameter(const std::string& name);
std::string SweepParameterName(SweepParameter parameter);

// Copy of `config` with `parameter` set to `value`. learning-rate applies to
// every exp-weights policy; transition-flip-p needs a two-symbol alphabet.
ExperimentConfig WithParameter(const ExperimentConfig& config,
                               SweepParameter parameter, double value);

struct SweepRow {
  double value = 0.0;
  double mean_regret = 0.0;
  double mean_margin = 0.0;
  double m_t = 1.0;
  double deviation = 0.0;
  double outperform_fraction = 0.0;
  double certified_fraction = 0.0;
};

std::vector<SweepRow> Sweep(const ExperimentConfig& config,
                            SweepParameter parameter,
                            const std::vector<double>& values);

}  // namespace coadapt

#endif  // COADAPT_EXPERIMENT_H_
