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


#ifndef COADAPT_MIXING_H_
#define COADAPT_MIXING_H_

// Dependence coefficients of the intention process.
//
// eta(i, j) is the largest total variation distance between the conditional
// laws of the block (Y_j, ..., Y_T) obtained by changing the symbol at
// position i while holding a positive-probability prefix fixed. M_T is the
// largest row sum 1 + eta(t, t+1) + ... + eta(t, T). Both feed the
// bounded-differences concentration bound for dependent sequences, where
// M_T = 1 recovers the independent case.
//
// Two routes are provided. The exact route uses the Markov property: given
// Y_i = w, the block law is the (j-i)-step row of w pushed through a shared
// kernel, so the block distance equals the distance between rows of the
// (j-i)-step transition matrix. The brute-force route enumerates every
// sequence in Y^T and compares block laws directly; it is the oracle for the
// exact route and is guarded to |Y|^T <= 1e6.

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "coadapt/core.h"

namespace coadapt {

inline constexpr std::uint64_t kBruteForceLimit = 1'000'000;
// Normalization tolerance for tv_distance inputs.
inline constexpr double kTvInputTolerance = 1e-9;

// Half the L1 distance. Throws ValidationError on a length mismatch or an
// input that does not sum to one within kTvInputTolerance.
double TvDistance(std::span<const double> p, std::span<const double> q);

// P^0 .. P^max_steps. Rows are renormalized when their drift from one is at
// most kStochasticTolerance; larger drift throws NumericalError.
std::vector<Matrix> TransitionPowers(const MarkovIntentionProcess& process,
                                     int max_steps);

// Pr[Y_t = .] for t = 1..horizon (element t-1).
std::vector<std::vector<double>> MarginalLaws(
    const MarkovIntentionProcess& process, int horizon);

// Unordered symbol pairs (w, w') with w < w' that can both follow one
// positive-probability prefix of length i-1. Computed from the support
// pattern, so no probability is rounded away.
std::vector<std::pair<Symbol, Symbol>> CoReachablePairs(
    const MarkovIntentionProcess& process, int i);

// 1 <= i < j. Positions are 1-based.
double EtaBarMarkov(const MarkovIntentionProcess& process, int i, int j);
double EtaBarBruteForce(const MarkovIntentionProcess& process, int i, int j,
                        int horizon);

enum class MixingMethod { kExactMarkov, kBruteForce };

struct MixingProfile {
  int horizon = 0;
  // eta(i-1, j-1) holds eta_{i,j} for i < j; other entries are zero.
  Matrix eta;
  // Entry t-1 holds 1 + sum_{j>t} eta_{t,j}.
  std::vector<double> row_sums;
  double m_t = 1.0;

  double Eta(int i, int j) const {
    return eta(static_cast<std::size_t>(i - 1), static_cast<std::size_t>(j - 1));
  }
};

MixingProfile ComputeMixingProfile(const MarkovIntentionProcess& process,
                                   int horizon, MixingMethod method);

}  // namespace coadapt

#endif  // COADAPT_MIXING_H_
