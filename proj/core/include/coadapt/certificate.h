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


#ifndef COADAPT_CERTIFICATE_H_
#define COADAPT_CERTIFICATE_H_

// The high-probability guarantee that co-adaptation beats the fixed decoder.
//
// For a fixed comparator encoder sequence, psi(y) = sum_t L(y~_t, y_t) obeys
//
//   Pr[|psi - E psi| > eps] <= 2 exp(-eps^2 / (2 T l^2 M_T^2)),
//
// so with probability at least 1 - delta, psi >= E psi - l M_T sqrt(2T log(2/delta)).
// Lower-bounding the infimum of E psi by the per-step minimal expected losses
// eps_t gives the certificate
//
//   sum_t L(y^_t, y_t) + l M_T sqrt(2T log(2/delta)) < sum_t eps_t.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "coadapt/core.h"
#include "coadapt/protocol.h"

namespace coadapt {

// The fixed-decoder benchmark: h~ together with the encoder class it is driven
// through and its starting output y~_0.
struct Comparator {
  const FunctionClass* encoders = nullptr;
  Map decoder;
  Symbol initial_output = 0;
};

struct Certificate {
  double empirical_loss = 0.0;
  double deviation = 0.0;
  double eps_sum = 0.0;
  double delta = 0.0;
  bool holds = false;
  // eps_sum - empirical_loss - deviation; holds iff margin > 0.
  double margin = 0.0;
};

// Which history eps_t is conditioned on.
//
// kRealized: the law of y_t given the realized y_{t-1}, evaluated at the
//   greedy comparator state (each step advances along its own minimizer).
// kComparator: the comparator never reads y, so its own history carries no
//   information about y_t; the law is the marginal Pr[Y_t = .] and the
//   minimum also ranges over every comparator state reachable at t-1. The sum
//   is then a deterministic lower bound on min over encoder sequences of E psi.
enum class EpsConditioning { kRealized, kComparator };

struct EpsSchedule {
  std::vector<double> eps;  // eps_1..eps_T
  // y~_0 followed by the comparator output attaining each eps_t. Under
  // kRealized this is the greedy comparator trajectory.
  Sequence comparator_states;
  double sum = 0.0;
};

// min over g of sum_y Pr[y_t = y | y_{t-1}] L(h~(g(state)), y); for an empty
// prefix the law is the initial distribution. Throws ValidationError for a
// prefix that leaves the alphabet or has probability zero.
double EpsT(const MarkovIntentionProcess& process, const LossMatrix& loss,
            const Comparator& comparator, std::span<const Symbol> y_prefix,
            Symbol comparator_state);

EpsSchedule ComputeEpsSchedule(const MarkovIntentionProcess& process,
                               const LossMatrix& loss,
                               const Comparator& comparator,
                               std::span<const Symbol> y,
                               EpsConditioning conditioning);

// l M_T sqrt(2 T log(2 / delta)); delta in (0, 2].
double DeviationTerm(double lipschitz, double m_t, int horizon, double delta);

// Holds iff empirical_loss + deviation < eps_sum, strictly.
Certificate CheckCertificate(double empirical_loss, double deviation,
                             double eps_sum, double delta);

// E psi for a fixed encoder sequence, from the exact marginals of Y_t.
double ExactExpectedPsi(const MarkovIntentionProcess& process,
                        const LossMatrix& loss, const Comparator& comparator,
                        std::span<const int> encoder_sequence);

// min over encoder sequences of E psi, by dynamic programming over comparator
// states with expected per-step costs.
ComparatorSolution MinExpectedPsi(const MarkovIntentionProcess& process,
                                  const LossMatrix& loss,
                                  const Comparator& comparator, int horizon);

// 2 exp(-eps^2 / (2 T l^2 M_T^2)); zero when l M_T = 0.
double ConcentrationBound(double epsilon, int horizon, double lipschitz,
                          double m_t);

struct BoundValidationRow {
  double epsilon = 0.0;
  std::int64_t exceedances = 0;
  double empirical_frequency = 0.0;
  double bound = 0.0;
  std::int64_t trials = 0;
  double standard_error = 0.0;
};

struct BoundValidationReport {
  int horizon = 0;
  double expected_psi = 0.0;
  double lipschitz = 0.0;
  double m_t = 1.0;
  std::vector<BoundValidationRow> rows;
};

struct BoundValidationOptions {
  int trials = 1;
  std::vector<double> eps_grid;
  std::uint64_t seed = 0;
  int threads = 1;
  // Defaults to LipschitzConstant(loss).
  std::optional<double> lipschitz;
};

// Samples `trials` intention sequences (trial k uses DeriveSeed(seed, k)),
// evaluates psi along the fixed comparator sequence, and tallies how often
// |psi - E psi| > eps for each grid point. Tallies are integer counts, so the
// report does not depend on the number of threads.
BoundValidationReport ValidateConcentrationBound(
    const MarkovIntentionProcess& process, const LossMatrix& loss,
    const Comparator& comparator, std::span<const int> encoder_sequence,
    const BoundValidationOptions& options);

std::string EpsConditioningName(EpsConditioning conditioning);

}  // namespace coadapt

#endif  // COADAPT_CERTIFICATE_H_
