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


#ifndef COADAPT_RANDOM_H_
#define COADAPT_RANDOM_H_

#include <cstdint>
#include <random>
#include <span>

namespace coadapt {

// splitmix64 finalizer applied to base + (stream + 1) * golden-ratio
// increment. Used to give every trial (and every stream inside a trial) an
// independent, individually reproducible seed.
std::uint64_t DeriveSeed(std::uint64_t base, std::uint64_t stream);

// Seeded generator with platform-independent draws. The standard
// distributions are implementation-defined, so uniform doubles and
// categorical draws are built directly on the 64-bit engine output.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform on [0, 1) with 53 random bits.
  double Uniform();
  // Index drawn with probability proportional to weights[k]. Weights must be
  // nonnegative with a positive sum; never returns a zero-weight index.
  int Categorical(std::span<const double> weights);
  // Uniform index in [0, n).
  int UniformIndex(int n);

 private:
  std::mt19937_64 engine_;
};

}  // namespace coadapt

#endif  // COADAPT_RANDOM_H_
