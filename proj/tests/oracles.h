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


#ifndef COADAPT_TESTS_ORACLES_H_
#define COADAPT_TESTS_ORACLES_H_

// Test-only reference computations and random instance generators. Nothing
// here calls into the routines it is used to check: the oracles work on raw
// tables and enumerate directly.

#include <cstdint>
#include <limits>
#include <random>
#include <vector>

#include "coadapt/core.h"

namespace coadapt::testing {

using Table = std::vector<int>;
using Rows = std::vector<std::vector<double>>;

// Small random instance. Loss values are multiples of 1/4 so that sums are
// exact and ties between sequences are genuine ties.
struct Instance {
  int alphabet = 2;
  int features = 2;
  std::vector<double> initial;
  Rows transition;
  Rows loss;
  std::vector<Table> encoders;
  Table decoder;
  int start = 0;

  MarkovIntentionProcess process() const { return MakeProcess(initial, transition); }
  LossMatrix loss_matrix() const { return LossMatrix(Matrix::FromRows(loss)); }
  FunctionClass encoder_class() const {
    return FunctionClass(MapKind::kEncoder, alphabet, features, encoders);
  }
  Map decoder_map() const { return {features, alphabet, decoder}; }
};

inline std::vector<double> RandomDistribution(std::mt19937_64& rng, int n,
                                              double zero_probability) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> p(static_cast<std::size_t>(n));
  double sum = 0.0;
  for (auto& v : p) {
    v = u(rng) < zero_probability ? 0.0 : u(rng) + 0.05;
    sum += v;
  }
  if (sum == 0.0) {
    p[std::uniform_int_distribution<int>(0, n - 1)(rng)] = 1.0;
    return p;
  }
  for (auto& v : p) v /= sum;
  // Put the rounding remainder on the largest entry so the row sums to one
  // well inside the stochastic tolerance.
  double total = 0.0;
  for (double v : p) total += v;
  auto largest = std::max_element(p.begin(), p.end());
  *largest += 1.0 - total;
  return p;
}

inline Rows RandomChainRows(std::mt19937_64& rng, int n,
                            double zero_probability) {
  Rows rows;
  for (int a = 0; a < n; ++a) {
    rows.push_back(RandomDistribution(rng, n, zero_probability));
  }
  return rows;
}

inline Instance RandomInstance(std::mt19937_64& rng, int max_alphabet = 3,
                               int max_encoders = 3) {
  Instance inst;
  inst.alphabet = std::uniform_int_distribution<int>(2, max_alphabet)(rng);
  inst.features = std::uniform_int_distribution<int>(1, 3)(rng);
  inst.initial = RandomDistribution(rng, inst.alphabet, 0.2);
  inst.transition = RandomChainRows(rng, inst.alphabet, 0.2);
  std::uniform_int_distribution<int> quarter(0, 8);
  for (int a = 0; a < inst.alphabet; ++a) {
    std::vector<double> row;
    for (int b = 0; b < inst.alphabet; ++b) row.push_back(quarter(rng) * 0.25);
    inst.loss.push_back(row);
  }
  const int k = std::uniform_int_distribution<int>(1, max_encoders)(rng);
  std::uniform_int_distribution<int> feature(0, inst.features - 1);
  std::uniform_int_distribution<int> symbol(0, inst.alphabet - 1);
  for (int g = 0; g < k; ++g) {
    Table t;
    for (int a = 0; a < inst.alphabet; ++a) t.push_back(feature(rng));
    inst.encoders.push_back(t);
  }
  for (int z = 0; z < inst.features; ++z) inst.decoder.push_back(symbol(rng));
  inst.start = symbol(rng);
  return inst;
}

// Comparator loss of one encoder sequence, evaluated step by step.
inline double PsiOracle(const Instance& inst, const std::vector<int>& y,
                        const std::vector<int>& sequence) {
  int state = inst.start;
  double total = 0.0;
  for (std::size_t t = 0; t < y.size(); ++t) {
    const int z = inst.encoders[static_cast<std::size_t>(sequence[t])]
                               [static_cast<std::size_t>(state)];
    state = inst.decoder[static_cast<std::size_t>(z)];
    total += inst.loss[static_cast<std::size_t>(state)]
                      [static_cast<std::size_t>(y[t])];
  }
  return total;
}

struct ExhaustiveResult {
  double total = std::numeric_limits<double>::infinity();
  std::vector<int> sequence;
};

// Enumerates all |G|^T encoder sequences in lexicographic order and keeps the
// first one with the smallest total.
inline ExhaustiveResult ExhaustiveComparator(const Instance& inst,
                                             const std::vector<int>& y) {
  const int k = static_cast<int>(inst.encoders.size());
  std::vector<int> sequence(y.size(), 0);
  ExhaustiveResult best;
  while (true) {
    const double total = PsiOracle(inst, y, sequence);
    if (total < best.total) {
      best.total = total;
      best.sequence = sequence;
    }
    std::size_t pos = sequence.size();
    while (pos > 0 && sequence[pos - 1] == k - 1) sequence[--pos] = 0;
    if (pos == 0) break;
    ++sequence[pos - 1];
  }
  return best;
}

// Minimal expected next-step loss: for every encoder, average the loss over
// the predictive law of y_t, then take the smallest average.
inline double EpsOracle(const Instance& inst, const std::vector<int>& prefix,
                        int state) {
  const std::vector<double>& law =
      prefix.empty() ? inst.initial
                     : inst.transition[static_cast<std::size_t>(prefix.back())];
  double best = std::numeric_limits<double>::infinity();
  for (const auto& g : inst.encoders) {
    const int out = inst.decoder[static_cast<std::size_t>(
        g[static_cast<std::size_t>(state)])];
    double expectation = 0.0;
    for (std::size_t y = 0; y < law.size(); ++y) {
      expectation += law[y] * inst.loss[static_cast<std::size_t>(out)][y];
    }
    if (expectation < best) best = expectation;
  }
  return best;
}

// Samples a sequence with positive probability by walking the chain.
inline std::vector<int> RandomPath(std::mt19937_64& rng, const Instance& inst,
                                   int horizon) {
  std::vector<int> y;
  std::discrete_distribution<int> first(inst.initial.begin(), inst.initial.end());
  y.push_back(first(rng));
  while (static_cast<int>(y.size()) < horizon) {
    const auto& row = inst.transition[static_cast<std::size_t>(y.back())];
    std::discrete_distribution<int> next(row.begin(), row.end());
    y.push_back(next(rng));
  }
  return y;
}

}  // namespace coadapt::testing

#endif  // COADAPT_TESTS_ORACLES_H_
