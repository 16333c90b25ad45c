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


#include "coadapt/mixing.h"

#include <algorithm>
#include <cmath>
#include <string>

namespace coadapt {
namespace {

void RenormalizeRows(Matrix& m) {
  for (std::size_t r = 0; r < m.rows(); ++r) {
    auto row = m.row(r);
    double sum = 0.0;
    for (double v : row) sum += v;
    const double drift = std::abs(sum - 1.0);
    if (drift > kStochasticTolerance) {
      throw NumericalError("transition power row " + std::to_string(r) +
                           " drifted by " + std::to_string(drift));
    }
    if (drift > 0.0) {
      for (double& v : row) v /= sum;
    }
  }
}

void CheckPositions(int i, int j) {
  if (i < 1 || j <= i) {
    throw ValidationError("eta requires 1 <= i < j, got i=" + std::to_string(i) +
                          ", j=" + std::to_string(j));
  }
}

std::uint64_t CheckedPower(std::uint64_t base, int exponent) {
  std::uint64_t value = 1;
  for (int k = 0; k < exponent; ++k) {
    value *= base;
    if (value > kBruteForceLimit) {
      throw ValidationError("brute-force enumeration of " + std::to_string(base) +
                            "^" + std::to_string(exponent) +
                            " sequences exceeds the limit of " +
                            std::to_string(kBruteForceLimit));
    }
  }
  return value;
}

// Support of Y_t, t >= 1.
std::vector<bool> Support(const MarkovIntentionProcess& process, int t) {
  const auto n = static_cast<std::size_t>(process.size());
  std::vector<bool> support(n);
  for (std::size_t a = 0; a < n; ++a) support[a] = process.initial[a] > 0.0;
  for (int step = 1; step < t; ++step) {
    std::vector<bool> next(n, false);
    for (std::size_t a = 0; a < n; ++a) {
      if (!support[a]) continue;
      for (std::size_t b = 0; b < n; ++b) {
        if (process.transition(a, b) > 0.0) next[b] = true;
      }
    }
    support = std::move(next);
  }
  return support;
}

double MaxRowDistance(const Matrix& step,
                      const std::vector<std::pair<Symbol, Symbol>>& pairs) {
  double sup = 0.0;
  for (const auto& [w, v] : pairs) {
    sup = std::max(sup, TvDistance(step.row(static_cast<std::size_t>(w)),
                                   step.row(static_cast<std::size_t>(v))));
  }
  return sup;
}

// Joint probability of every sequence in Y^horizon, indexed in base |Y| with
// y_1 as the most significant digit.
std::vector<double> JointLaw(const MarkovIntentionProcess& process,
                             int horizon) {
  const auto n = static_cast<std::size_t>(process.size());
  std::vector<double> level(process.initial.begin(), process.initial.end());
  for (int t = 1; t < horizon; ++t) {
    std::vector<double> next(level.size() * n, 0.0);
    for (std::size_t idx = 0; idx < level.size(); ++idx) {
      if (level[idx] == 0.0) continue;
      const std::size_t last = idx % n;
      for (std::size_t b = 0; b < n; ++b) {
        next[idx * n + b] = level[idx] * process.transition(last, b);
      }
    }
    level = std::move(next);
  }
  return level;
}

MixingProfile FromEta(Matrix eta, int horizon) {
  MixingProfile profile;
  profile.horizon = horizon;
  profile.eta = std::move(eta);
  profile.row_sums.assign(static_cast<std::size_t>(horizon), 1.0);
  for (std::size_t t = 0; t < profile.row_sums.size(); ++t) {
    for (std::size_t j = t + 1; j < profile.row_sums.size(); ++j) {
      profile.row_sums[t] += profile.eta(t, j);
    }
  }
  profile.m_t =
      *std::max_element(profile.row_sums.begin(), profile.row_sums.end());
  return profile;
}

}  // namespace

double TvDistance(std::span<const double> p, std::span<const double> q) {
  if (p.size() != q.size()) {
    throw ValidationError("tv distance of vectors with lengths " +
                          std::to_string(p.size()) + " and " +
                          std::to_string(q.size()));
  }
  double sum_p = 0.0, sum_q = 0.0, l1 = 0.0;
  for (std::size_t k = 0; k < p.size(); ++k) {
    sum_p += p[k];
    sum_q += q[k];
    l1 += std::abs(p[k] - q[k]);
  }
  if (!(std::abs(sum_p - 1.0) <= kTvInputTolerance) ||
      !(std::abs(sum_q - 1.0) <= kTvInputTolerance)) {
    throw ValidationError("tv distance inputs must each sum to 1");
  }
  return std::min(0.5 * l1, 1.0);
}

std::vector<Matrix> TransitionPowers(const MarkovIntentionProcess& process,
                                     int max_steps) {
  ValidateProcess(process).ThrowIfFailed();
  const auto n = static_cast<std::size_t>(process.size());
  std::vector<Matrix> powers;
  powers.reserve(static_cast<std::size_t>(std::max(max_steps, 0)) + 1);
  powers.push_back(Matrix::Identity(n));
  if (max_steps < 1) return powers;
  Matrix step = process.transition;
  RenormalizeRows(step);
  powers.push_back(step);
  for (int k = 2; k <= max_steps; ++k) {
    Matrix next = powers.back() * step;
    RenormalizeRows(next);
    powers.push_back(std::move(next));
  }
  return powers;
}

std::vector<std::vector<double>> MarginalLaws(
    const MarkovIntentionProcess& process, int horizon) {
  ValidateProcess(process).ThrowIfFailed();
  const auto n = static_cast<std::size_t>(process.size());
  std::vector<std::vector<double>> laws;
  laws.reserve(static_cast<std::size_t>(std::max(horizon, 0)));
  if (horizon < 1) return laws;
  laws.push_back(process.initial);
  for (int t = 2; t <= horizon; ++t) {
    const auto& prev = laws.back();
    std::vector<double> next(n, 0.0);
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) {
        next[b] += prev[a] * process.transition(a, b);
      }
    }
    laws.push_back(std::move(next));
  }
  return laws;
}

std::vector<std::pair<Symbol, Symbol>> CoReachablePairs(
    const MarkovIntentionProcess& process, int i) {
  const auto n = static_cast<std::size_t>(process.size());
  // Each entry is a set of symbols that can share one prefix.
  std::vector<std::vector<bool>> sibling_sets;
  if (i == 1) {
    std::vector<bool> set(n);
    for (std::size_t a = 0; a < n; ++a) set[a] = process.initial[a] > 0.0;
    sibling_sets.push_back(std::move(set));
  } else {
    const auto previous = Support(process, i - 1);
    for (std::size_t a = 0; a < n; ++a) {
      if (!previous[a]) continue;
      std::vector<bool> set(n);
      for (std::size_t b = 0; b < n; ++b) set[b] = process.transition(a, b) > 0.0;
      sibling_sets.push_back(std::move(set));
    }
  }
  std::vector<std::pair<Symbol, Symbol>> pairs;
  for (std::size_t w = 0; w < n; ++w) {
    for (std::size_t v = w + 1; v < n; ++v) {
      const bool shared = std::any_of(
          sibling_sets.begin(), sibling_sets.end(),
          [&](const std::vector<bool>& set) { return set[w] && set[v]; });
      if (shared) pairs.emplace_back(static_cast<Symbol>(w), static_cast<Symbol>(v));
    }
  }
  return pairs;
}

double EtaBarMarkov(const MarkovIntentionProcess& process, int i, int j) {
  CheckPositions(i, j);
  const auto powers = TransitionPowers(process, j - i);
  return MaxRowDistance(powers.back(), CoReachablePairs(process, i));
}

double EtaBarBruteForce(const MarkovIntentionProcess& process, int i, int j,
                        int horizon) {
  CheckPositions(i, j);
  if (j > horizon) {
    throw ValidationError("eta position j=" + std::to_string(j) +
                          " exceeds the horizon " + std::to_string(horizon));
  }
  ValidateProcess(process).ThrowIfFailed();
  const auto n = static_cast<std::uint64_t>(process.size());
  const std::uint64_t total = CheckedPower(n, horizon);
  const std::uint64_t prefix_stride = CheckedPower(n, horizon - i);
  const std::uint64_t blocks = CheckedPower(n, horizon - j + 1);
  const std::uint64_t prefixes = total / prefix_stride;  // n^i

  const auto joint = JointLaw(process, horizon);
  // block_law[p * blocks + b] = Pr[Y^i = p, (Y_j..Y_T) = b].
  std::vector<double> block_law(prefixes * blocks, 0.0);
  std::vector<double> prefix_mass(prefixes, 0.0);
  for (std::uint64_t s = 0; s < total; ++s) {
    if (joint[s] == 0.0) continue;
    const std::uint64_t p = s / prefix_stride;
    block_law[p * blocks + s % blocks] += joint[s];
    prefix_mass[p] += joint[s];
  }

  double sup = 0.0;
  std::vector<std::vector<double>> conditional(n);
  for (std::uint64_t history = 0; history < prefixes / n; ++history) {
    std::vector<std::uint64_t> admissible;
    for (std::uint64_t w = 0; w < n; ++w) {
      const std::uint64_t p = history * n + w;
      if (prefix_mass[p] <= 0.0) continue;
      auto& law = conditional[w];
      law.assign(block_law.begin() + static_cast<std::ptrdiff_t>(p * blocks),
                 block_law.begin() + static_cast<std::ptrdiff_t>((p + 1) * blocks));
      for (double& v : law) v /= prefix_mass[p];
      admissible.push_back(w);
    }
    for (std::size_t a = 0; a < admissible.size(); ++a) {
      for (std::size_t b = a + 1; b < admissible.size(); ++b) {
        sup = std::max(sup, TvDistance(conditional[admissible[a]],
                                       conditional[admissible[b]]));
      }
    }
  }
  return sup;
}

MixingProfile ComputeMixingProfile(const MarkovIntentionProcess& process,
                                   int horizon, MixingMethod method) {
  if (horizon < 1) {
    throw ValidationError("horizon " + std::to_string(horizon) + " is below 1");
  }
  ValidateProcess(process).ThrowIfFailed();
  const auto size = static_cast<std::size_t>(horizon);
  Matrix eta(size, size);
  if (method == MixingMethod::kExactMarkov) {
    const auto powers = TransitionPowers(process, horizon - 1);
    for (int i = 1; i < horizon; ++i) {
      const auto pairs = CoReachablePairs(process, i);
      for (int j = i + 1; j <= horizon; ++j) {
        eta(static_cast<std::size_t>(i - 1), static_cast<std::size_t>(j - 1)) =
            MaxRowDistance(powers[static_cast<std::size_t>(j - i)], pairs);
      }
    }
  } else {
    CheckedPower(static_cast<std::uint64_t>(process.size()), horizon);
    for (int i = 1; i < horizon; ++i) {
      for (int j = i + 1; j <= horizon; ++j) {
        eta(static_cast<std::size_t>(i - 1), static_cast<std::size_t>(j - 1)) =
            EtaBarBruteForce(process, i, j, horizon);
      }
    }
  }
  return FromEta(std::move(eta), horizon);
}

}  // namespace coadapt
