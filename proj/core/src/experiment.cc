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

#include <algorithm>
#include <cmath>
#include <thread>

#include "coadapt/random.h"

namespace coadapt {

std::uint64_t TrialSeed(std::uint64_t base_seed, int trial) {
  return DeriveSeed(base_seed, static_cast<std::uint64_t>(trial));
}

TrialRecord RunTrial(const ExperimentConfig& config, int trial,
                     double deviation, bool keep_details) {
  TrialRecord record;
  record.trial = trial;
  record.seed = TrialSeed(config.seed, trial);
  record.horizon = config.horizon;

  auto y = SampleIntentions(config.process, config.horizon,
                            DeriveSeed(record.seed, 0));
  auto trajectory = RunEpisode(
      config.closed_loop(),
      MakePolicy(config.encoder_policy, Side::kEncoder, config),
      MakePolicy(config.decoder_policy, Side::kDecoder, config), y,
      DeriveSeed(record.seed, 1));

  const auto comparator = config.comparator();
  auto best = config.static_comparator
                  ? BestStaticComparatorLoss(y, config.encoders,
                                             comparator.decoder,
                                             comparator.initial_output,
                                             config.loss)
                  : BestComparatorLoss(y, config.encoders, comparator.decoder,
                                       comparator.initial_output, config.loss);
  auto eps = ComputeEpsSchedule(config.process, config.loss, comparator, y,
                                config.eps_conditioning);

  record.cumulative_loss = trajectory.cumulative_loss;
  record.comparator_min = best.total_loss;
  record.regret = Regret(trajectory, best.total_loss);
  record.certificate = CheckCertificate(trajectory.cumulative_loss, deviation,
                                        eps.sum, config.delta);
  if (keep_details) {
    record.intentions = std::move(y);
    record.trajectory = std::move(trajectory);
    record.comparator_sequence = std::move(best.encoder_sequence);
    record.eps = std::move(eps);
  } else {
    record.eps.sum = eps.sum;
  }
  return record;
}

ExperimentReport RunExperiment(const ExperimentConfig& config,
                               const RunOptions& options) {
  ValidateConfig(config);
  ExperimentReport report;
  report.horizon = config.horizon;
  report.delta = config.delta;
  report.lipschitz = ResolveLipschitz(config.loss, config.lipschitz_override);
  report.mixing = ComputeMixingProfile(config.process, config.horizon,
                                       config.mixing_method);
  report.deviation = DeviationTerm(report.lipschitz, report.mixing.m_t,
                                   config.horizon, config.delta);

  report.trials.resize(static_cast<std::size_t>(config.trials));
  const int workers = std::clamp(config.threads, 1, config.trials);
  auto work = [&](int worker) {
    for (int trial = worker; trial < config.trials; trial += workers) {
      report.trials[static_cast<std::size_t>(trial)] =
          RunTrial(config, trial, report.deviation, options.keep_details);
    }
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(work, w);
  }

  auto& s = report.summary;
  s.trials = config.trials;
  s.min_regret = report.trials.front().regret;
  s.max_regret = report.trials.front().regret;
  int outperform = 0, certified = 0, certified_outperform = 0;
  for (const auto& t : report.trials) {
    s.mean_regret += t.regret;
    s.min_regret = std::min(s.min_regret, t.regret);
    s.max_regret = std::max(s.max_regret, t.regret);
    s.mean_cumulative_loss += t.cumulative_loss;
    s.mean_comparator_min += t.comparator_min;
    s.mean_eps_sum += t.certificate.eps_sum;
    s.mean_margin += t.certificate.margin;
    if (t.regret < 0.0) ++outperform;
    if (t.certificate.holds) {
      ++certified;
      if (t.regret < 0.0) ++certified_outperform;
    }
  }
  const double n = config.trials;
  s.mean_regret /= n;
  s.mean_cumulative_loss /= n;
  s.mean_comparator_min /= n;
  s.mean_eps_sum /= n;
  s.mean_margin /= n;
  s.outperform_fraction = outperform / n;
  s.certified_fraction = certified / n;
  s.certified_outperform_fraction =
      certified > 0 ? static_cast<double>(certified_outperform) / certified : 0.0;
  return report;
}

SweepParameter ParseSweepParameter(const std::string& name) {
  if (name == "T") return SweepParameter::kHorizon;
  if (name == "delta") return SweepParameter::kDelta;
  if (name == "learning-rate") return SweepParameter::kLearningRate;
  if (name == "transition-flip-p") return SweepParameter::kFlipProbability;
  throw ValidationError("unknown sweep parameter '" + name +
                        "'; expected T, delta, learning-rate or "
                        "transition-flip-p");
}

std::string SweepParameterName(SweepParameter parameter) {
  switch (parameter) {
    case SweepParameter::kHorizon:
      return "T";
    case SweepParameter::kDelta:
      return "delta";
    case SweepParameter::kLearningRate:
      return "learning-rate";
    case SweepParameter::kFlipProbability:
      return "transition-flip-p";
  }
  return "unknown";
}

ExperimentConfig WithParameter(const ExperimentConfig& config,
                               SweepParameter parameter, double value) {
  ExperimentConfig out = config;
  switch (parameter) {
    case SweepParameter::kHorizon:
      if (value != std::floor(value)) {
        throw ValidationError("sweep value for T must be an integer");
      }
      out.horizon = static_cast<int>(value);
      break;
    case SweepParameter::kDelta:
      out.delta = value;
      break;
    case SweepParameter::kLearningRate:
      for (auto* p : {&out.encoder_policy, &out.decoder_policy}) {
        if (p->rule == PolicyRule::kExpWeights) p->learning_rate = value;
      }
      break;
    case SweepParameter::kFlipProbability:
      if (out.process.size() != 2) {
        throw ValidationError("transition-flip-p needs a two-symbol alphabet");
      }
      if (!(value >= 0.0 && value <= 1.0)) {
        throw ValidationError("flip probability must lie in [0, 1]");
      }
      out.process.transition =
          Matrix::FromRows({{1.0 - value, value}, {value, 1.0 - value}});
      break;
  }
  ValidateConfig(out);
  return out;
}

std::vector<SweepRow> Sweep(const ExperimentConfig& config,
                            SweepParameter parameter,
                            const std::vector<double>& values) {
  std::vector<SweepRow> rows;
  rows.reserve(values.size());
  for (double value : values) {
    const auto report = RunExperiment(WithParameter(config, parameter, value));
    SweepRow row;
    row.value = value;
    row.mean_regret = report.summary.mean_regret;
    row.mean_margin = report.summary.mean_margin;
    row.m_t = report.mixing.m_t;
    row.deviation = report.deviation;
    row.outperform_fraction = report.summary.outperform_fraction;
    row.certified_fraction = report.summary.certified_fraction;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace coadapt
