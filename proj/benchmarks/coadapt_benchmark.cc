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


#include <benchmark/benchmark.h>

#include <vector>

#include "coadapt/certificate.h"
#include "coadapt/core.h"
#include "coadapt/mixing.h"
#include "coadapt/protocol.h"

namespace coadapt {
namespace {

MarkovIntentionProcess ThreeStateChain() {
  return MakeProcess({0.2, 0.3, 0.5},
                     {{0.6, 0.3, 0.1}, {0.2, 0.5, 0.3}, {0.25, 0.25, 0.5}});
}

void BM_MixingExact(benchmark::State& state) {
  const auto process = ThreeStateChain();
  const int horizon = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        ComputeMixingProfile(process, horizon, MixingMethod::kExactMarkov).m_t);
  }
}
BENCHMARK(BM_MixingExact)->Arg(6)->Arg(64)->Arg(256);

void BM_MixingBruteForce(benchmark::State& state) {
  const auto process = ThreeStateChain();
  const int horizon = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        ComputeMixingProfile(process, horizon, MixingMethod::kBruteForce).m_t);
  }
}
BENCHMARK(BM_MixingBruteForce)->Arg(4)->Arg(6);

void BM_ComparatorDp(benchmark::State& state) {
  const int horizon = static_cast<int>(state.range(0));
  const FunctionClass encoders(MapKind::kEncoder, 3, 3,
                               {{0, 1, 2}, {1, 2, 0}, {2, 2, 2}, {0, 0, 1}});
  const Map decoder{3, 3, {2, 0, 1}};
  const auto loss = LossMatrix::ZeroOne(3);
  const auto y = SampleIntentions(ThreeStateChain(), horizon, 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        BestComparatorLoss(y, encoders, decoder, 0, loss).total_loss);
  }
  state.SetItemsProcessed(state.iterations() * horizon);
}
BENCHMARK(BM_ComparatorDp)->Arg(100)->Arg(1000)->Arg(10000);

void BM_RunEpisode(benchmark::State& state) {
  const int horizon = static_cast<int>(state.range(0));
  const FunctionClass encoders(MapKind::kEncoder, 3, 3,
                               {{0, 1, 2}, {1, 2, 0}, {2, 2, 2}, {0, 0, 1}});
  const FunctionClass decoders(MapKind::kDecoder, 3, 3, {{0, 1, 2}, {2, 0, 1}});
  const auto loss = LossMatrix::ZeroOne(3);
  const ClosedLoop loop{&loss, &encoders, &decoders, 0};
  const auto y = SampleIntentions(ThreeStateChain(), horizon, 2);
  for (auto _ : state) {
    auto trajectory =
        RunEpisode(loop, Policy::ExpWeights(Side::kEncoder, 4, 0.1, 3),
                   Policy::ExpWeights(Side::kDecoder, 2, 0.1), y, 3);
    benchmark::DoNotOptimize(trajectory.cumulative_loss);
  }
  state.SetItemsProcessed(state.iterations() * horizon);
}
BENCHMARK(BM_RunEpisode)->Arg(1000)->Arg(10000);

void BM_EpsSchedule(benchmark::State& state) {
  const int horizon = static_cast<int>(state.range(0));
  const FunctionClass encoders(MapKind::kEncoder, 3, 3,
                               {{0, 1, 2}, {1, 2, 0}, {2, 2, 2}, {0, 0, 1}});
  const Comparator comparator{&encoders, Map{3, 3, {2, 0, 1}}, 0};
  const auto process = ThreeStateChain();
  const auto loss = LossMatrix::ZeroOne(3);
  const auto y = SampleIntentions(process, horizon, 4);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        ComputeEpsSchedule(process, loss, comparator, y, EpsConditioning::kRealized)
            .sum);
  }
}
BENCHMARK(BM_EpsSchedule)->Arg(1000);

}  // namespace
}  // namespace coadapt

BENCHMARK_MAIN();
