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


#include "coadapt/certificate.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

#include "coadapt/mixing.h"
#include "coadapt/random.h"

namespace coadapt {
namespace {

void CheckComparator(const LossMatrix& loss, const Comparator& comparator) {
  if (comparator.encoders == nullptr) {
    throw ValidationError("comparator has no encoder class");
  }
  const int n = loss.size();
  if (comparator.encoders->input_size() != n ||
      comparator.decoder.input_size != comparator.encoders->output_size() ||
      comparator.decoder.output_size != n) {
    throw ValidationError(
        "comparator decoder and encoder class do not match the loss alphabet");
  }
  if (comparator.initial_output < 0 || comparator.initial_output >= n) {
    throw ValidationError("comparator initial output is outside the alphabet");
  }
}

// Expected loss of emitting `output` when y_t ~ law.
double ExpectedLoss(std::span<const double> law, const LossMatrix& loss,
                    Symbol output) {
  double sum = 0.0;
  for (std::size_t y = 0; y < law.size(); ++y) {
    sum += law[y] * loss(output, static_cast<Symbol>(y));
  }
  return sum;
}

struct StepMinimum {
  double value = std::numeric_limits<double>::infinity();
  Symbol output = 0;
};

// Scans encoders in index order; ties keep the lowest index.
void ScanEncoders(std::span<const double> law, const LossMatrix& loss,
                  const Comparator& comparator, Symbol state,
                  StepMinimum& best) {
  const auto& encoders = *comparator.encoders;
  for (int g = 0; g < encoders.size(); ++g) {
    const Symbol output = comparator.decoder(encoders.Apply(g, state));
    const double value = ExpectedLoss(law, loss, output);
    if (value < best.value) {
      best.value = value;
      best.output = output;
    }
  }
}

std::span<const double> PredictiveLaw(const MarkovIntentionProcess& process,
                                      std::span<const Symbol> y_prefix) {
  if (y_prefix.empty()) return process.initial;
  return process.transition.row(static_cast<std::size_t>(y_prefix.back()));
}

void CheckPrefix(const MarkovIntentionProcess& process,
                 std::span<const Symbol> y) {
  // Checks each factor rather than the running product, which underflows on
  // long sequences.
  for (std::size_t t = 0; t < y.size(); ++t) {
    if (!process.alphabet.Contains(y[t])) {
      throw ValidationError("intention " + std::to_string(t + 1) + " is " +
                            std::to_string(y[t]) + ", outside the alphabet");
    }
    const double factor =
        t == 0 ? process.initial[static_cast<std::size_t>(y[t])]
               : process.transition(static_cast<std::size_t>(y[t - 1]),
                                    static_cast<std::size_t>(y[t]));
    if (factor == 0.0) {
      throw ValidationError("intention prefix has probability zero at step " +
                            std::to_string(t + 1));
    }
  }
}

}  // namespace

double EpsT(const MarkovIntentionProcess& process, const LossMatrix& loss,
            const Comparator& comparator, std::span<const Symbol> y_prefix,
            Symbol comparator_state) {
  ValidateProcess(process).ThrowIfFailed();
  CheckComparator(loss, comparator);
  if (loss.size() != process.size()) {
    throw ValidationError("loss matrix does not match the process alphabet");
  }
  if (!process.alphabet.Contains(comparator_state)) {
    throw ValidationError("comparator state is outside the alphabet");
  }
  CheckPrefix(process, y_prefix);
  StepMinimum best;
  ScanEncoders(PredictiveLaw(process, y_prefix), loss, comparator,
               comparator_state, best);
  return best.value;
}

EpsSchedule ComputeEpsSchedule(const MarkovIntentionProcess& process,
                               const LossMatrix& loss,
                               const Comparator& comparator,
                               std::span<const Symbol> y,
                               EpsConditioning conditioning) {
  ValidateProcess(process).ThrowIfFailed();
  CheckComparator(loss, comparator);
  if (loss.size() != process.size()) {
    throw ValidationError("loss matrix does not match the process alphabet");
  }
  const auto horizon = y.size();
  EpsSchedule schedule;
  schedule.eps.reserve(horizon);
  schedule.comparator_states.reserve(horizon + 1);
  schedule.comparator_states.push_back(comparator.initial_output);

  if (conditioning == EpsConditioning::kRealized) {
    CheckPrefix(process, y);
    Symbol state = comparator.initial_output;
    for (std::size_t t = 0; t < horizon; ++t) {
      StepMinimum best;
      ScanEncoders(PredictiveLaw(process, y.first(t)), loss, comparator, state,
                   best);
      schedule.eps.push_back(best.value);
      schedule.comparator_states.push_back(best.output);
      schedule.sum += best.value;
      state = best.output;
    }
    return schedule;
  }

  const auto n = static_cast<std::size_t>(process.size());
  const auto laws = MarginalLaws(process, static_cast<int>(horizon));
  std::vector<bool> reachable(n, false);
  reachable[static_cast<std::size_t>(comparator.initial_output)] = true;
  for (std::size_t t = 0; t < horizon; ++t) {
    StepMinimum best;
    std::vector<bool> next(n, false);
    for (std::size_t s = 0; s < n; ++s) {
      if (!reachable[s]) continue;
      ScanEncoders(laws[t], loss, comparator, static_cast<Symbol>(s), best);
      for (int g = 0; g < comparator.encoders->size(); ++g) {
        next[static_cast<std::size_t>(comparator.decoder(
            comparator.encoders->Apply(g, static_cast<Symbol>(s))))] = true;
      }
    }
    schedule.eps.push_back(best.value);
    schedule.comparator_states.push_back(best.output);
    schedule.sum += best.value;
    reachable = std::move(next);
  }
  return schedule;
}

double DeviationTerm(double lipschitz, double m_t, int horizon, double delta) {
  if (!(delta > 0.0 && delta <= 2.0)) {
    throw ValidationError("delta must lie in (0, 2], got " +
                          std::to_string(delta));
  }
  if (horizon < 1) throw ValidationError("horizon must be at least 1");
  if (!(lipschitz >= 0.0) || !(m_t >= 0.0)) {
    throw ValidationError("lipschitz constant and M_T must be nonnegative");
  }
  return lipschitz * m_t * std::sqrt(2.0 * horizon * std::log(2.0 / delta));
}

Certificate CheckCertificate(double empirical_loss, double deviation,
                             double eps_sum, double delta) {
  if (!std::isfinite(empirical_loss) || !std::isfinite(deviation) ||
      !std::isfinite(eps_sum) || !std::isfinite(delta)) {
    throw ValidationError("certificate inputs must be finite");
  }
  if (deviation < 0.0) throw ValidationError("deviation must be nonnegative");
  Certificate c;
  c.empirical_loss = empirical_loss;
  c.deviation = deviation;
  c.eps_sum = eps_sum;
  c.delta = delta;
  c.holds = empirical_loss + deviation < eps_sum;
  c.margin = eps_sum - empirical_loss - deviation;
  return c;
}

double ExactExpectedPsi(const MarkovIntentionProcess& process,
                        const LossMatrix& loss, const Comparator& comparator,
                        std::span<const int> encoder_sequence) {
  CheckComparator(loss, comparator);
  const auto path =
      ComparatorTrajectory(*comparator.encoders, comparator.decoder,
                           comparator.initial_output, encoder_sequence);
  const auto laws =
      MarginalLaws(process, static_cast<int>(encoder_sequence.size()));
  double total = 0.0;
  for (std::size_t t = 0; t < laws.size(); ++t) {
    total += ExpectedLoss(laws[t], loss, path[t + 1]);
  }
  return total;
}

ComparatorSolution MinExpectedPsi(const MarkovIntentionProcess& process,
                                  const LossMatrix& loss,
                                  const Comparator& comparator, int horizon) {
  CheckComparator(loss, comparator);
  const auto laws = MarginalLaws(process, horizon);
  const auto n = static_cast<std::size_t>(process.size());
  const auto& encoders = *comparator.encoders;
  const auto k = static_cast<std::size_t>(encoders.size());
  const auto steps = laws.size();

  // expected[t * n + a]: expected loss of emitting a at step t+1.
  std::vector<double> expected(steps * n);
  for (std::size_t t = 0; t < steps; ++t) {
    for (std::size_t a = 0; a < n; ++a) {
      expected[t * n + a] = ExpectedLoss(laws[t], loss, static_cast<Symbol>(a));
    }
  }
  auto next = [&](std::size_t s, std::size_t g) {
    return static_cast<std::size_t>(comparator.decoder(
        encoders.Apply(static_cast<int>(g), static_cast<Symbol>(s))));
  };

  std::vector<double> cost_to_go((steps + 1) * n, 0.0);
  for (std::size_t t = steps; t-- > 0;) {
    for (std::size_t s = 0; s < n; ++s) {
      double best = std::numeric_limits<double>::infinity();
      for (std::size_t g = 0; g < k; ++g) {
        const auto to = next(s, g);
        best = std::min(best, expected[t * n + to] + cost_to_go[(t + 1) * n + to]);
      }
      cost_to_go[t * n + s] = best;
    }
  }
  ComparatorSolution solution;
  auto state = static_cast<std::size_t>(comparator.initial_output);
  for (std::size_t t = 0; t < steps; ++t) {
    for (std::size_t g = 0; g < k; ++g) {
      const auto to = next(state, g);
      if (expected[t * n + to] + cost_to_go[(t + 1) * n + to] ==
          cost_to_go[t * n + state]) {
        solution.encoder_sequence.push_back(static_cast<int>(g));
        solution.total_loss += expected[t * n + to];
        state = to;
        break;
      }
    }
  }
  return solution;
}

double ConcentrationBound(double epsilon, int horizon, double lipschitz,
                          double m_t) {
  const double scale = lipschitz * m_t;
  if (scale == 0.0) return 0.0;
  return 2.0 * std::exp(-epsilon * epsilon /
                        (2.0 * horizon * scale * scale));
}

BoundValidationReport ValidateConcentrationBound(
    const MarkovIntentionProcess& process, const LossMatrix& loss,
    const Comparator& comparator, std::span<const int> encoder_sequence,
    const BoundValidationOptions& options) {
  CheckComparator(loss, comparator);
  if (options.trials < 1) throw ValidationError("trials must be at least 1");
  for (double eps : options.eps_grid) {
    if (!(eps > 0.0)) throw ValidationError("eps grid values must be positive");
  }
  const int horizon = static_cast<int>(encoder_sequence.size());
  if (horizon < 1) throw ValidationError("comparator sequence is empty");

  BoundValidationReport report;
  report.horizon = horizon;
  report.lipschitz = ResolveLipschitz(loss, options.lipschitz);
  report.m_t =
      ComputeMixingProfile(process, horizon, MixingMethod::kExactMarkov).m_t;
  report.expected_psi =
      ExactExpectedPsi(process, loss, comparator, encoder_sequence);
  const auto path =
      ComparatorTrajectory(*comparator.encoders, comparator.decoder,
                           comparator.initial_output, encoder_sequence);

  const std::size_t grid = options.eps_grid.size();
  const int workers = std::clamp(options.threads, 1, options.trials);
  std::vector<std::vector<std::int64_t>> tallies(
      static_cast<std::size_t>(workers), std::vector<std::int64_t>(grid, 0));
  auto work = [&](int worker) {
    auto& tally = tallies[static_cast<std::size_t>(worker)];
    for (int trial = worker; trial < options.trials; trial += workers) {
      const auto y = SampleIntentions(
          process, horizon,
          DeriveSeed(options.seed, static_cast<std::uint64_t>(trial)));
      double psi = 0.0;
      for (std::size_t t = 0; t < y.size(); ++t) psi += loss(path[t + 1], y[t]);
      const double gap = std::abs(psi - report.expected_psi);
      for (std::size_t e = 0; e < grid; ++e) {
        if (gap > options.eps_grid[e]) ++tally[e];
      }
    }
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(work, w);
  }

  for (std::size_t e = 0; e < grid; ++e) {
    BoundValidationRow row;
    row.epsilon = options.eps_grid[e];
    for (const auto& tally : tallies) row.exceedances += tally[e];
    row.trials = options.trials;
    row.empirical_frequency =
        static_cast<double>(row.exceedances) / static_cast<double>(row.trials);
    row.standard_error =
        std::sqrt(row.empirical_frequency * (1.0 - row.empirical_frequency) /
                  static_cast<double>(row.trials));
    row.bound = ConcentrationBound(row.epsilon, horizon, report.lipschitz,
                                   report.m_t);
    report.rows.push_back(row);
  }
  return report;
}

std::string EpsConditioningName(EpsConditioning conditioning) {
  return conditioning == EpsConditioning::kRealized ? "realized" : "comparator";
}

}  // namespace coadapt
