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


// Acceptance suite. Prints one PASS or FAIL line per criterion and exits
// nonzero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <iterator>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <unistd.h>

#include "coadapt/certificate.h"
#include "coadapt/config.h"
#include "coadapt/core.h"
#include "coadapt/experiment.h"
#include "coadapt/mixing.h"
#include "coadapt/protocol.h"
#include "oracles.h"

namespace coadapt {
namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double Seconds(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

int Threads() {
  return std::max(1u, std::thread::hardware_concurrency());
}

std::string Fmt(double v) {
  std::ostringstream out;
  out << v;
  return out.str();
}

// 1. Exact mixing coefficients agree with brute-force enumeration.
Outcome MixingEquivalence() {
  const auto start = Clock::now();
  std::mt19937_64 rng(1001);
  int chains = 0;
  double worst = 0.0;
  for (int round = 0; round < 150; ++round) {
    const int n = 2 + round % 2;
    const int horizon = 2 + round % 5;
    const auto process = MakeProcess(testing::RandomDistribution(rng, n, 0.2),
                                     testing::RandomChainRows(rng, n, 0.25));
    const auto exact = ComputeMixingProfile(process, horizon, MixingMethod::kExactMarkov);
    const auto brute = ComputeMixingProfile(process, horizon, MixingMethod::kBruteForce);
    for (int i = 1; i <= horizon; ++i) {
      for (int j = i + 1; j <= horizon; ++j) {
        worst = std::max(worst, std::abs(exact.Eta(i, j) - brute.Eta(i, j)));
      }
    }
    ++chains;
  }
  bool extremes = true;
  for (int n : {2, 3}) {
    std::vector<double> uniform(static_cast<std::size_t>(n), 1.0 / n);
    std::vector<std::vector<double>> iid(static_cast<std::size_t>(n), uniform);
    std::vector<std::vector<double>> copy(static_cast<std::size_t>(n),
                                          std::vector<double>(static_cast<std::size_t>(n)));
    for (int a = 0; a < n; ++a) copy[static_cast<std::size_t>(a)][static_cast<std::size_t>(a)] = 1;
    for (int horizon = 1; horizon <= 6; ++horizon) {
      for (auto method : {MixingMethod::kExactMarkov, MixingMethod::kBruteForce}) {
        extremes &= ComputeMixingProfile(MakeProcess(uniform, iid), horizon, method).m_t == 1.0;
        extremes &= ComputeMixingProfile(MakeProcess(uniform, copy), horizon, method).m_t ==
                    static_cast<double>(horizon);
      }
    }
  }
  const double seconds = Seconds(start);
  return {worst <= 1e-9 && extremes && seconds < 30.0,
          std::to_string(chains) + " chains, max |exact - brute| = " + Fmt(worst) +
              ", iid/copy extremes " + (extremes ? "exact" : "WRONG") + ", " +
              Fmt(seconds) + " s"};
}

// 2. Monte Carlo tail frequencies stay under the concentration bound.
Outcome TailValidation() {
  const auto start = Clock::now();
  const FunctionClass encoders(MapKind::kEncoder, 2, 2, {{0, 1}, {1, 0}, {0, 0}});
  const Comparator comparator{&encoders, Map{2, 2, {0, 1}}, 0};
  const std::vector<int> sequence{0, 1, 2, 0, 1, 2, 1, 0};
  std::string detail;
  bool pass = true;
  int checked = 0;
  for (double p : {0.1, 0.3}) {
    BoundValidationOptions options;
    options.trials = 100000;
    // psi lies in [0, T], so deviations beyond T cannot occur.
    for (int k = 1; k <= 16; ++k) options.eps_grid.push_back(0.5 * k);
    options.seed = 2002;
    options.threads = Threads();
    const auto report = ValidateConcentrationBound(
        FlipChain(p), LossMatrix::ZeroOne(2), comparator, sequence, options);
    double worst_gap = -1e300;
    int informative = 0;
    for (const auto& row : report.rows) {
      if (row.bound > 1.0) continue;
      ++checked;
      ++informative;
      const double gap = row.empirical_frequency - (row.bound + 3 * row.standard_error);
      worst_gap = std::max(worst_gap, gap);
      if (gap > 0.0) pass = false;
    }
    detail += "p=" + Fmt(p) + " M_T=" + Fmt(report.m_t) + ": ";
    detail += informative == 0
                  ? "bound > 1 at every eps <= T; "
                  : std::to_string(informative) +
                        " points with bound <= 1, worst(freq - bound - 3se)=" +
                        Fmt(worst_gap) + "; ";
  }
  const double seconds = Seconds(start);
  pass = pass && checked > 0 && seconds < 60.0;
  return {pass, detail + std::to_string(checked) + " grid points, " + Fmt(seconds) + " s"};
}

// 3. eps_t equals direct enumeration of the per-step expectation.
Outcome EpsEquivalence() {
  std::mt19937_64 rng(3003);
  int instances = 0, identical = 0;
  double worst = 0.0;
  for (int round = 0; round < 200; ++round) {
    const auto inst = testing::RandomInstance(rng);
    const auto g = inst.encoder_class();
    const Comparator comparator{&g, inst.decoder_map(), inst.start};
    const int horizon = 1 + round % 5;
    const auto path = testing::RandomPath(rng, inst, horizon);
    const std::vector<int> prefix(path.begin(), path.end() - 1);
    for (int state = 0; state < inst.alphabet; ++state) {
      const double got = EpsT(inst.process(), inst.loss_matrix(), comparator, prefix, state);
      const double want = testing::EpsOracle(inst, prefix, state);
      if (got == want) ++identical;
      worst = std::max(worst, std::abs(got - want));
      ++instances;
    }
  }
  return {worst <= 1e-12 && instances >= 100,
          std::to_string(instances) + " (instance, state) pairs, " +
              std::to_string(identical) + " bit-identical, max diff " + Fmt(worst)};
}

// 4. Comparator DP equals exhaustive enumeration including tie-breaks.
Outcome ComparatorDp() {
  std::mt19937_64 rng(4004);
  int instances = 0, mismatches = 0, ties = 0;
  for (int round = 0; round < 300; ++round) {
    const auto inst = testing::RandomInstance(rng, 3, 3);
    const int horizon = 1 + round % 6;
    const auto y = testing::RandomPath(rng, inst, horizon);
    const auto dp = BestComparatorLoss(y, inst.encoder_class(), inst.decoder_map(),
                                       inst.start, inst.loss_matrix());
    const auto oracle = testing::ExhaustiveComparator(inst, y);
    if (dp.total_loss != oracle.total || dp.encoder_sequence != oracle.sequence) {
      ++mismatches;
    }
    // Count instances where some other sequence also attains the minimum.
    std::vector<int> other = oracle.sequence;
    for (std::size_t t = 0; t < other.size(); ++t) {
      for (int k = 0; k < static_cast<int>(inst.encoders.size()); ++k) {
        if (k == oracle.sequence[t]) continue;
        other = oracle.sequence;
        other[t] = k;
        if (testing::PsiOracle(inst, y, other) == oracle.total) {
          ++ties;
          t = other.size();
          break;
        }
      }
    }
    ++instances;
  }
  return {mismatches == 0,
          std::to_string(instances) + " instances (" + std::to_string(ties) +
              " with tied optima), " + std::to_string(mismatches) + " mismatches"};
}

// 5. The eps sum lower-bounds the best expected comparator loss.
Outcome InfExchange() {
  std::mt19937_64 rng(5005);
  int instances = 0, violations = 0, realized_violations = 0;
  double worst = -1e300;
  for (int round = 0; round < 500; ++round) {
    const auto inst = testing::RandomInstance(rng, 3, 3);
    const auto g = inst.encoder_class();
    const Comparator comparator{&g, inst.decoder_map(), inst.start};
    const int horizon = 1 + round % 5;
    const auto y = testing::RandomPath(rng, inst, horizon);
    const auto process = inst.process();
    const auto loss = inst.loss_matrix();
    const double best = MinExpectedPsi(process, loss, comparator, horizon).total_loss;
    const double sum =
        ComputeEpsSchedule(process, loss, comparator, y, EpsConditioning::kComparator).sum;
    worst = std::max(worst, sum - best);
    if (sum > best + 1e-12) ++violations;
    const double realized =
        ComputeEpsSchedule(process, loss, comparator, y, EpsConditioning::kRealized).sum;
    if (realized > best + 1e-12) ++realized_violations;
    ++instances;
  }
  return {violations == 0,
          std::to_string(instances) + " instances, eps conditioning=comparator, " +
              std::to_string(violations) + " violations, max(eps_sum - min E psi)=" +
              Fmt(worst) + " (realized conditioning, not a deterministic bound: " +
              std::to_string(realized_violations) + " exceed)"};
}

// 6. On an instance where the certificate holds, co-adaptation beats the
// comparator in at least a 1 - delta fraction of draws.
Outcome CertificateSoundness() {
  const auto start = Clock::now();
  auto config = LoadConfig(std::filesystem::path(COADAPT_SOURCE_DIR) / "configs" /
                           "certified.yaml");
  config.trials = 10000;
  config.threads = Threads();
  const auto report = RunExperiment(config);
  const auto& s = report.summary;
  const double target = 1.0 - config.delta;
  const double seconds = Seconds(start);
  const bool pass = s.certified_fraction >= target && s.outperform_fraction >= target &&
                    s.certified_outperform_fraction >= target && seconds < 120.0;
  return {pass, "delta=" + Fmt(config.delta) + ", certified in " +
                    Fmt(s.certified_fraction) + " of draws, outperform fraction " +
                    Fmt(s.outperform_fraction) + " (" +
                    Fmt(s.certified_outperform_fraction) + " among certified), " +
                    Fmt(seconds) + " s"};
}

// 7. Changing one intention moves psi by at most the Lipschitz constant.
Outcome LipschitzProperty() {
  std::mt19937_64 rng(7007);
  int configs = 0, checks = 0, violations = 0;
  for (int round = 0; round < 120; ++round) {
    const auto inst = testing::RandomInstance(rng, 3, 3);
    const auto g = inst.encoder_class();
    const auto h = inst.decoder_map();
    const auto loss = inst.loss_matrix();
    const double l = LipschitzConstant(loss);
    const int horizon = 1 + round % 5;
    std::vector<int> sequence(static_cast<std::size_t>(horizon));
    for (auto& k : sequence) k = std::uniform_int_distribution<int>(0, g.size() - 1)(rng);
    // Every intention sequence, every position, every replacement.
    Sequence y(static_cast<std::size_t>(horizon), 0);
    while (true) {
      const double base = ComparatorLoss(y, g, h, inst.start, loss, sequence);
      for (int t = 0; t < horizon; ++t) {
        Sequence z = y;
        for (int b = 0; b < inst.alphabet; ++b) {
          if (b == y[static_cast<std::size_t>(t)]) continue;
          z[static_cast<std::size_t>(t)] = b;
          ++checks;
          if (std::abs(ComparatorLoss(z, g, h, inst.start, loss, sequence) - base) >
              l + 1e-12) {
            ++violations;
          }
        }
      }
      std::size_t pos = y.size();
      while (pos > 0 && y[pos - 1] == inst.alphabet - 1) y[--pos] = 0;
      if (pos == 0) break;
      ++y[pos - 1];
    }
    ++configs;
  }
  return {violations == 0, std::to_string(configs) + " configurations, " +
                               std::to_string(checks) + " single flips, " +
                               std::to_string(violations) + " violations"};
}

// 8. Two CLI runs with the same config and seed write identical CSV bytes.
Outcome Reproducibility() {
  const auto dir = std::filesystem::temp_directory_path() /
                   ("coadapt_acceptance_" + std::to_string(::getpid()));
  std::filesystem::create_directories(dir);
  const auto config = std::filesystem::path(COADAPT_SOURCE_DIR) / "configs" /
                      "flip_chain.yaml";
  std::vector<std::string> contents;
  for (int k = 0; k < 2; ++k) {
    const auto csv = dir / ("run" + std::to_string(k) + ".csv");
    const std::string command = std::string("\"") + COADAPT_CLI_PATH +
                                "\" --quiet --config \"" + config.string() +
                                "\" --seed 99 --csv \"" + csv.string() + "\" run";
    if (std::system(command.c_str()) != 0) {
      std::filesystem::remove_all(dir);
      return {false, "command failed: " + command};
    }
    std::ifstream in(csv, std::ios::binary);
    contents.emplace_back(std::istreambuf_iterator<char>(in),
                          std::istreambuf_iterator<char>());
  }
  std::filesystem::remove_all(dir);
  const bool same = !contents[0].empty() && contents[0] == contents[1];
  return {same, std::to_string(contents[0].size()) + " bytes, " +
                    (same ? "identical" : "DIFFERENT")};
}

}  // namespace
}  // namespace coadapt

int main() {
  using coadapt::Outcome;
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"mixing coefficients match brute force", coadapt::MixingEquivalence},
      {"tail frequencies within the concentration bound", coadapt::TailValidation},
      {"eps_t matches enumeration", coadapt::EpsEquivalence},
      {"comparator DP matches exhaustive search", coadapt::ComparatorDp},
      {"eps sum lower-bounds min expected psi", coadapt::InfExchange},
      {"certificate soundness", coadapt::CertificateSoundness},
      {"Lipschitz bound on single flips", coadapt::LipschitzProperty},
      {"CLI run is byte-reproducible", coadapt::Reproducibility},
  };
  int failures = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    Outcome outcome;
    try {
      outcome = criteria[k].second();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    if (!outcome.pass) ++failures;
    std::printf("%s criterion %zu (%s): %s\n", outcome.pass ? "PASS" : "FAIL", k + 1,
                criteria[k].first, outcome.detail.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
