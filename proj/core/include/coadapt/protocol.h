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


#ifndef COADAPT_PROTOCOL_H_
#define COADAPT_PROTOCOL_H_

// The closed loop between the encoder side B and the decoder side A.
//
// At step t, B holds intention y_t and the previous output y^_{t-1}, picks an
// encoder g_t and emits z_t = g_t(y^_{t-1}). A sees only z_t, picks a decoder
// h_t and produces y^_t = h_t(z_t). Both then receive the scalar loss
// L(y^_t, y_t); A never sees y_t.
//
// The benchmark is a fixed decoder h~ driven by the best encoder sequence in
// hindsight. Its outputs y~ evolve autonomously from y~_0, which makes the
// hindsight minimum a shortest path over comparator states.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "coadapt/core.h"
#include "coadapt/random.h"

namespace coadapt {

enum class Side { kEncoder, kDecoder };

enum class PolicyRule { kFixed, kUniformRandom, kExpWeights };

// Default exp-weights rate for a class of `class_size` tables over `horizon`
// steps: sqrt(ln K / T).
double DefaultLearningRate(int class_size, int horizon);

// Selection rule for one side over its function class.
//
// Exp-weights runs bandit-style: only the chosen index is updated, with the
// loss (scaled to [0, 1]) divided by the probability of having chosen it.
// Weights are kept with their maximum at one and floored at kMinWeight so
// they stay strictly positive and finite. The encoder side keeps one weight
// vector per intention symbol, since B's only handle on its intention is the
// choice of g_t; the decoder side has a single context.
class Policy {
 public:
  static constexpr double kMinWeight = 1e-300;

  static Policy Fixed(Side side, int class_size, int index);
  static Policy UniformRandom(Side side, int class_size);
  static Policy ExpWeights(Side side, int class_size, double learning_rate,
                           int contexts = 1);

  Side side() const { return side_; }
  PolicyRule rule() const { return rule_; }
  int class_size() const { return class_size_; }
  int contexts() const { return contexts_; }
  int fixed_index() const { return fixed_index_; }
  double learning_rate() const { return learning_rate_; }

  // Selection probabilities in `context`.
  std::vector<double> Probabilities(int context) const;
  std::span<const double> Weights(int context) const;

  int Select(int context, Rng& rng) const;
  // `scaled_loss` must lie in [0, 1].
  void Update(int context, int chosen, double scaled_loss);

 private:
  Policy(Side side, PolicyRule rule, int class_size, int contexts);

  Side side_;
  PolicyRule rule_;
  int class_size_;
  int contexts_;
  int fixed_index_ = 0;
  double learning_rate_ = 0.0;
  std::vector<double> weights_;  // contexts_ x class_size_
};

// Everything an episode needs besides the policies.
struct ClosedLoop {
  const LossMatrix* loss = nullptr;
  const FunctionClass* encoders = nullptr;
  const FunctionClass* decoders = nullptr;
  Symbol initial_output = 0;  // y^_0

  // Throws ValidationError when the alphabets do not line up.
  void Validate() const;
};

struct Trajectory {
  int horizon = 0;
  Sequence y;      // y_1..y_T
  Sequence y_hat;  // y^_0..y^_T
  Sequence z;      // z_1..z_T
  std::vector<int> g_choices;
  std::vector<int> h_choices;
  std::vector<double> step_losses;
  double cumulative_loss = 0.0;
};

// Runs T = intentions.size() steps. Policies are taken by value: their weight
// state lives and dies with the episode.
Trajectory RunEpisode(const ClosedLoop& loop, Policy encoder_policy,
                      Policy decoder_policy, std::span<const Symbol> intentions,
                      std::uint64_t seed);

// Replays (g_choices, h_choices) from y^_0; true iff it reproduces y_hat and
// z exactly and the losses add up.
bool IsConsistent(const ClosedLoop& loop, const Trajectory& trajectory);

// y~_0..y~_T for y~_t = h~(g'_t(y~_{t-1})). Never reads the intentions.
Sequence ComparatorTrajectory(const FunctionClass& encoders,
                              const Map& fixed_decoder, Symbol initial_output,
                              std::span<const int> encoder_sequence);

struct ComparatorSolution {
  double total_loss = 0.0;
  std::vector<int> encoder_sequence;
};

// Exact min over encoder sequences of sum_t L(y~_t, y_t). Backward dynamic
// programming over comparator states, O(T |Y| |G|). Among optimal sequences
// the lexicographically smallest is returned, and total_loss is re-summed
// forward along it.
ComparatorSolution BestComparatorLoss(std::span<const Symbol> y,
                                      const FunctionClass& encoders,
                                      const Map& fixed_decoder,
                                      Symbol initial_output,
                                      const LossMatrix& loss);

// Min over a single encoder repeated at every step.
ComparatorSolution BestStaticComparatorLoss(std::span<const Symbol> y,
                                            const FunctionClass& encoders,
                                            const Map& fixed_decoder,
                                            Symbol initial_output,
                                            const LossMatrix& loss);

// Loss of a given comparator encoder sequence against y.
double ComparatorLoss(std::span<const Symbol> y, const FunctionClass& encoders,
                      const Map& fixed_decoder, Symbol initial_output,
                      const LossMatrix& loss,
                      std::span<const int> encoder_sequence);

// R_T. Negative means co-adaptation beat the fixed decoder.
inline double Regret(const Trajectory& trajectory, double comparator_min) {
  return trajectory.cumulative_loss - comparator_min;
}

std::string PolicyRuleName(PolicyRule rule);

}  // namespace coadapt

#endif  // COADAPT_PROTOCOL_H_
