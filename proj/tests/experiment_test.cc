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


#include "coadapt/experiment.h"

#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "coadapt/report.h"

namespace coadapt {
namespace {

constexpr const char* kConfig = R"(
alphabet:
  size: 2
features:
  size: 2
process:
  initial: [0.5, 0.5]
  transition:
    - [0.8, 0.2]
    - [0.2, 0.8]
loss:
  matrix:
    - [0, 1]
    - [1, 0]
encoders:
  - [0, 1]
  - [1, 0]
  - [0, 0]
decoders:
  - [0, 1]
  - [1, 0]
comparator:
  decoder: 1
episode:
  horizon: 12
certificate:
  delta: 0.1
run:
  seed: 42
  trials: 16
)";

std::string RunCsv(const ExperimentConfig& config) {
  std::ostringstream out;
  WriteRunCsv(RunExperiment(config), out);
  return out.str();
}

TEST(ExperimentTest, CsvIsReproducibleAndThreadIndependent) {
  auto config = ParseConfig(kConfig);
  const auto first = RunCsv(config);
  EXPECT_EQ(first, RunCsv(config));
  config.threads = 3;
  EXPECT_EQ(first, RunCsv(config));
  EXPECT_EQ(first.substr(0, first.find('\n')),
            "trial,T,cumulative_loss,comparator_min,regret");
  config.seed = 43;
  EXPECT_NE(first, RunCsv(config));
}

TEST(ExperimentTest, TrialsReplayOnTheirOwn) {
  const auto config = ParseConfig(kConfig);
  const auto report = RunExperiment(config);
  ASSERT_EQ(report.trials.size(), 16u);
  const auto replay = RunTrial(config, 5, report.deviation, true);
  EXPECT_EQ(replay.cumulative_loss, report.trials[5].cumulative_loss);
  EXPECT_EQ(replay.seed, TrialSeed(42, 5));
  ASSERT_TRUE(replay.trajectory.has_value());
  EXPECT_EQ(replay.intentions, replay.trajectory->y);
  EXPECT_EQ(replay.regret, replay.cumulative_loss - replay.comparator_min);
}

TEST(ExperimentTest, SingletonClassesHaveZeroRegret) {
  auto text = std::string(kConfig);
  text.replace(text.find("  - [1, 0]\n  - [0, 0]\n"), 22, "");
  text.replace(text.find("  - [1, 0]\ncomparator"), 11, "");
  text.replace(text.find("decoder: 1"), 10, "decoder: 0");
  const auto config = ParseConfig(text);
  ASSERT_EQ(config.encoders.size(), 1);
  ASSERT_EQ(config.decoders.size(), 1);
  const auto report = RunExperiment(config);
  for (const auto& trial : report.trials) EXPECT_EQ(trial.regret, 0.0);
  EXPECT_EQ(report.summary.outperform_fraction, 0.0);
}

TEST(ExperimentTest, SummaryIsConsistentWithTrials) {
  const auto report = RunExperiment(ParseConfig(kConfig));
  double sum = 0.0;
  int outperform = 0;
  for (const auto& trial : report.trials) {
    sum += trial.regret;
    if (trial.regret < 0) ++outperform;
    EXPECT_GE(trial.regret, report.summary.min_regret);
    EXPECT_LE(trial.regret, report.summary.max_regret);
  }
  EXPECT_NEAR(report.summary.mean_regret, sum / 16, 1e-12);
  EXPECT_EQ(report.summary.outperform_fraction, outperform / 16.0);
}

TEST(ExperimentTest, ComparatorMinRarelyFallsBelowEpsSumMinusDeviation) {
  auto config = ParseConfig(kConfig);
  config.trials = 400;
  const auto report = RunExperiment(config, {.keep_details = true});
  int below = 0;
  for (const auto& trial : report.trials) {
    EXPECT_EQ(trial.eps.eps.size(), 12u);
    if (trial.comparator_min < trial.eps.sum - report.deviation) ++below;
  }
  EXPECT_LE(below / 400.0, config.delta);
}

TEST(SweepTest, DeviationFallsAsDeltaGrows) {
  const auto rows = Sweep(ParseConfig(kConfig), SweepParameter::kDelta,
                          {0.01, 0.05, 0.1, 0.5, 1.0});
  ASSERT_EQ(rows.size(), 5u);
  for (std::size_t k = 1; k < rows.size(); ++k) {
    EXPECT_LT(rows[k].deviation, rows[k - 1].deviation);
  }
}

TEST(SweepTest, FlipProbabilityMatchesGeometricSum) {
  const auto rows = Sweep(ParseConfig(kConfig), SweepParameter::kFlipProbability,
                          {0.1, 0.25, 0.5, 0.9});
  for (const auto& row : rows) {
    double expected = 0.0;
    for (int k = 0; k < 12; ++k) expected += std::pow(std::abs(1 - 2 * row.value), k);
    EXPECT_NEAR(row.m_t, expected, 1e-9) << row.value;
  }
}

TEST(SweepTest, SingleValueEqualsPlainRun) {
  const auto config = ParseConfig(kConfig);
  const auto rows = Sweep(config, SweepParameter::kHorizon, {12});
  const auto report = RunExperiment(config);
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(rows[0].mean_regret, report.summary.mean_regret);
  EXPECT_EQ(rows[0].deviation, report.deviation);
  EXPECT_EQ(rows[0].m_t, report.mixing.m_t);
}

TEST(SweepTest, ParameterNames) {
  for (const auto* name : {"T", "delta", "learning-rate", "transition-flip-p"}) {
    EXPECT_EQ(SweepParameterName(ParseSweepParameter(name)), name);
  }
  EXPECT_THROW(ParseSweepParameter("gamma"), ValidationError);
  const auto config = ParseConfig(kConfig);
  EXPECT_THROW(WithParameter(config, SweepParameter::kHorizon, 2.5), ValidationError);
  EXPECT_THROW(WithParameter(config, SweepParameter::kFlipProbability, 1.5),
               ValidationError);
  EXPECT_EQ(WithParameter(config, SweepParameter::kLearningRate, 0.3)
                .decoder_policy.learning_rate,
            0.3);
}

}  // namespace
}  // namespace coadapt
