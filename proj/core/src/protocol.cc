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


#include "coadapt/protocol.h"

#include <algorithm>
#include <cmath>
#include <limits>

namespace coadapt {
namespace {

void CheckComparatorInputs(std::span<const Symbol> y,
                           const FunctionClass& encoders,
                           const Map& fixed_decoder, Symbol initial_output,
                           const LossMatrix& loss) {
  std::vector<std::string> failures;
  const int n = loss.size();
  if (encoders.input_size() != n) {
    failures.push_back("encoder input alphabet has " +
                       std::to_string(encoders.input_size()) +
                       " symbols, loss matrix has " + std::to_string(n));
  }
  if (fixed_decoder.input_size != encoders.output_size()) {
    failures.push_back("fixed decoder input alphabet does not match encoder "
                       "output alphabet");
  }
  if (fixed_decoder.output_size != n) {
    failures.push_back("fixed decoder output alphabet does not match the loss "
                       "matrix");
  }
  if (initial_output < 0 || initial_output >= n) {
    failures.push_back("initial output " + std::to_string(initial_output) +
                       " is outside the alphabet");
  }
  for (std::size_t t = 0; t < y.size(); ++t) {
    if (y[t] < 0 || y[t] >= n) {
      failures.push_back("intention " + std::to_string(t + 1) + " is " +
                         std::to_string(y[t]) + ", outside the alphabet");
      break;
    }
  }
  if (!failures.empty()) throw ValidationError(std::move(failures));
}

// next[s * |G| + g] = h~(g(s)).
std::vector<Symbol> NextStates(const FunctionClass& encoders,
                               const Map& fixed_decoder) {
  const int n = encoders.input_size();
  const int k = encoders.size();
  std::vector<Symbol> next(static_cast<std::size_t>(n * k));
  for (int s = 0; s < n; ++s) {
    for (int g = 0; g < k; ++g) {
      next[static_cast<std::size_t>(s * k + g)] =
          fixed_decoder(encoders.Apply(g, s));
    }
  }
  return next;
}

}  // namespace

double DefaultLearningRate(int class_size, int horizon) {
  if (class_size <= 1 || horizon < 1) return 0.0;
  return std::sqrt(std::log(static_cast<double>(class_size)) / horizon);
}

Policy::Policy(Side side, PolicyRule rule, int class_size, int contexts)
    : side_(side), rule_(rule), class_size_(class_size), contexts_(contexts) {
  if (class_size < 1) throw ValidationError("policy over an empty class");
  if (contexts < 1) throw ValidationError("policy needs at least one context");
  weights_.assign(static_cast<std::size_t>(class_size) * contexts, 1.0);
}

Policy Policy::Fixed(Side side, int class_size, int index) {
  Policy policy(side, PolicyRule::kFixed, class_size, 1);
  if (index < 0 || index >= class_size) {
    throw ValidationError("fixed policy index " + std::to_string(index) +
                          " is outside a class of " +
                          std::to_string(class_size));
  }
  policy.fixed_index_ = index;
  return policy;
}

Policy Policy::UniformRandom(Side side, int class_size) {
  return Policy(side, PolicyRule::kUniformRandom, class_size, 1);
}

Policy Policy::ExpWeights(Side side, int class_size, double learning_rate,
                          int contexts) {
  if (!std::isfinite(learning_rate) || learning_rate < 0.0) {
    throw ValidationError("learning rate must be finite and nonnegative");
  }
  Policy policy(side, PolicyRule::kExpWeights, class_size, contexts);
  policy.learning_rate_ = learning_rate;
  return policy;
}

std::span<const double> Policy::Weights(int context) const {
  const int c = rule_ == PolicyRule::kExpWeights ? context : 0;
  return {weights_.data() + static_cast<std::size_t>(c) * class_size_,
          static_cast<std::size_t>(class_size_)};
}

std::vector<double> Policy::Probabilities(int context) const {
  std::vector<double> p(static_cast<std::size_t>(class_size_), 0.0);
  if (rule_ == PolicyRule::kFixed) {
    p[static_cast<std::size_t>(fixed_index_)] = 1.0;
    return p;
  }
  const auto w = Weights(context);
  double total = 0.0;
  for (double v : w) total += v;
  for (std::size_t k = 0; k < p.size(); ++k) p[k] = w[k] / total;
  return p;
}

int Policy::Select(int context, Rng& rng) const {
  switch (rule_) {
    case PolicyRule::kFixed:
      return fixed_index_;
    case PolicyRule::kUniformRandom:
      return rng.UniformIndex(class_size_);
    case PolicyRule::kExpWeights:
      return rng.Categorical(Weights(context));
  }
  return 0;
}

void Policy::Update(int context, int chosen, double scaled_loss) {
  if (rule_ != PolicyRule::kExpWeights || learning_rate_ == 0.0) return;
  const double p = Probabilities(context)[static_cast<std::size_t>(chosen)];
  auto* w = weights_.data() + static_cast<std::size_t>(context) * class_size_;
  w[chosen] *= std::exp(-learning_rate_ * scaled_loss / p);
  const double top = *std::max_element(w, w + class_size_);
  for (int k = 0; k < class_size_; ++k) {
    w[k] = std::max(w[k] / top, kMinWeight);
  }
}

std::string PolicyRuleName(PolicyRule rule) {
  switch (rule) {
    case PolicyRule::kFixed:
      return "fixed";
    case PolicyRule::kUniformRandom:
      return "uniform-random";
    case PolicyRule::kExpWeights:
      return "exp-weights";
  }
  return "unknown";
}

void ClosedLoop::Validate() const {
  if (loss == nullptr || encoders == nullptr || decoders == nullptr) {
    throw ValidationError("closed loop is missing its loss or classes");
  }
  std::vector<std::string> failures;
  if (encoders->input_size() != loss->size()) {
    failures.push_back("encoder input alphabet does not match the loss matrix");
  }
  if (decoders->input_size() != encoders->output_size()) {
    failures.push_back(
        "decoder input alphabet does not match encoder output alphabet");
  }
  if (decoders->output_size() != loss->size()) {
    failures.push_back("decoder output alphabet does not match the loss matrix");
  }
  if (initial_output < 0 || initial_output >= loss->size()) {
    failures.push_back("initial output " + std::to_string(initial_output) +
                       " is outside the alphabet");
  }
  if (!failures.empty()) throw ValidationError(std::move(failures));
}

Trajectory RunEpisode(const ClosedLoop& loop, Policy encoder_policy,
                      Policy decoder_policy, std::span<const Symbol> intentions,
                      std::uint64_t seed) {
  loop.Validate();
  if (encoder_policy.class_size() != loop.encoders->size() ||
      decoder_policy.class_size() != loop.decoders->size()) {
    throw ValidationError("policy sizes do not match the function classes");
  }
  if (encoder_policy.rule() == PolicyRule::kExpWeights &&
      encoder_policy.contexts() != loop.loss->size()) {
    throw ValidationError(
        "encoder exp-weights needs one context per intention symbol");
  }
  const int n = loop.loss->size();
  const auto horizon = intentions.size();
  Trajectory tr;
  tr.horizon = static_cast<int>(horizon);
  tr.y.assign(intentions.begin(), intentions.end());
  tr.y_hat.reserve(horizon + 1);
  tr.y_hat.push_back(loop.initial_output);
  tr.z.reserve(horizon);
  tr.g_choices.reserve(horizon);
  tr.h_choices.reserve(horizon);
  tr.step_losses.reserve(horizon);

  const double scale = loop.loss->range_bound();
  Rng rng(seed);
  for (std::size_t t = 0; t < horizon; ++t) {
    const Symbol intention = intentions[t];
    if (intention < 0 || intention >= n) {
      throw ValidationError("intention " + std::to_string(t + 1) +
                            " is outside the alphabet");
    }
    const Symbol previous = tr.y_hat.back();
    const int g = encoder_policy.Select(intention, rng);
    const Symbol z = loop.encoders->Apply(g, previous);
    const int h = decoder_policy.Select(0, rng);
    const Symbol output = loop.decoders->Apply(h, z);
    const double step_loss = (*loop.loss)(output, intention);

    tr.g_choices.push_back(g);
    tr.h_choices.push_back(h);
    tr.z.push_back(z);
    tr.y_hat.push_back(output);
    tr.step_losses.push_back(step_loss);
    tr.cumulative_loss += step_loss;

    const double scaled = scale > 0.0 ? step_loss / scale : 0.0;
    encoder_policy.Update(intention, g, scaled);
    decoder_policy.Update(0, h, scaled);
  }
  return tr;
}

bool IsConsistent(const ClosedLoop& loop, const Trajectory& tr) {
  const auto horizon = static_cast<std::size_t>(tr.horizon);
  if (tr.y.size() != horizon || tr.y_hat.size() != horizon + 1 ||
      tr.z.size() != horizon || tr.g_choices.size() != horizon ||
      tr.h_choices.size() != horizon || tr.step_losses.size() != horizon) {
    return false;
  }
  if (tr.y_hat[0] != loop.initial_output) return false;
  double sum = 0.0;
  for (std::size_t t = 0; t < horizon; ++t) {
    const Symbol z = loop.encoders->Apply(tr.g_choices[t], tr.y_hat[t]);
    const Symbol out = loop.decoders->Apply(tr.h_choices[t], z);
    if (z != tr.z[t] || out != tr.y_hat[t + 1]) return false;
    if ((*loop.loss)(out, tr.y[t]) != tr.step_losses[t]) return false;
    sum += tr.step_losses[t];
  }
  return std::abs(sum - tr.cumulative_loss) <= 1e-9;
}

Sequence ComparatorTrajectory(const FunctionClass& encoders,
                              const Map& fixed_decoder, Symbol initial_output,
                              std::span<const int> encoder_sequence) {
  if (fixed_decoder.input_size != encoders.output_size() ||
      fixed_decoder.output_size != encoders.input_size()) {
    throw ValidationError("fixed decoder does not close the loop over the "
                          "encoder class");
  }
  if (initial_output < 0 || initial_output >= encoders.input_size()) {
    throw ValidationError("initial output is outside the alphabet");
  }
  Sequence out;
  out.reserve(encoder_sequence.size() + 1);
  out.push_back(initial_output);
  for (int g : encoder_sequence) {
    if (g < 0 || g >= encoders.size()) {
      throw ValidationError("comparator encoder index " + std::to_string(g) +
                            " is outside a class of " +
                            std::to_string(encoders.size()));
    }
    out.push_back(fixed_decoder(encoders.Apply(g, out.back())));
  }
  return out;
}

double ComparatorLoss(std::span<const Symbol> y, const FunctionClass& encoders,
                      const Map& fixed_decoder, Symbol initial_output,
                      const LossMatrix& loss,
                      std::span<const int> encoder_sequence) {
  if (encoder_sequence.size() != y.size()) {
    throw ValidationError("comparator sequence length does not match horizon");
  }
  const auto path = ComparatorTrajectory(encoders, fixed_decoder,
                                         initial_output, encoder_sequence);
  double total = 0.0;
  for (std::size_t t = 0; t < y.size(); ++t) total += loss(path[t + 1], y[t]);
  return total;
}

ComparatorSolution BestComparatorLoss(std::span<const Symbol> y,
                                      const FunctionClass& encoders,
                                      const Map& fixed_decoder,
                                      Symbol initial_output,
                                      const LossMatrix& loss) {
  CheckComparatorInputs(y, encoders, fixed_decoder, initial_output, loss);
  const auto n = static_cast<std::size_t>(loss.size());
  const auto k = static_cast<std::size_t>(encoders.size());
  const auto horizon = y.size();
  const auto next = NextStates(encoders, fixed_decoder);

  // cost_to_go[t * n + s]: best loss over steps t+1..T from state s.
  std::vector<double> cost_to_go((horizon + 1) * n, 0.0);
  for (std::size_t t = horizon; t-- > 0;) {
    for (std::size_t s = 0; s < n; ++s) {
      double best = std::numeric_limits<double>::infinity();
      for (std::size_t g = 0; g < k; ++g) {
        const auto to = static_cast<std::size_t>(next[s * k + g]);
        best = std::min(best, loss(static_cast<Symbol>(to), y[t]) +
                                  cost_to_go[(t + 1) * n + to]);
      }
      cost_to_go[t * n + s] = best;
    }
  }

  ComparatorSolution solution;
  solution.encoder_sequence.reserve(horizon);
  auto state = static_cast<std::size_t>(initial_output);
  for (std::size_t t = 0; t < horizon; ++t) {
    const double target = cost_to_go[t * n + state];
    for (std::size_t g = 0; g < k; ++g) {
      const auto to = static_cast<std::size_t>(next[state * k + g]);
      if (loss(static_cast<Symbol>(to), y[t]) + cost_to_go[(t + 1) * n + to] ==
          target) {
        solution.encoder_sequence.push_back(static_cast<int>(g));
        solution.total_loss += loss(static_cast<Symbol>(to), y[t]);
        state = to;
        break;
      }
    }
  }
  return solution;
}

ComparatorSolution BestStaticComparatorLoss(std::span<const Symbol> y,
                                            const FunctionClass& encoders,
                                            const Map& fixed_decoder,
                                            Symbol initial_output,
                                            const LossMatrix& loss) {
  CheckComparatorInputs(y, encoders, fixed_decoder, initial_output, loss);
  ComparatorSolution best;
  best.total_loss = std::numeric_limits<double>::infinity();
  for (int g = 0; g < encoders.size(); ++g) {
    std::vector<int> sequence(y.size(), g);
    const double total = ComparatorLoss(y, encoders, fixed_decoder,
                                        initial_output, loss, sequence);
    if (total < best.total_loss) {
      best.total_loss = total;
      best.encoder_sequence = std::move(sequence);
    }
  }
  return best;
}

}  // namespace coadapt
