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


#ifndef COADAPT_CONFIG_H_
#define COADAPT_CONFIG_H_

// Experiment definition files.
//
// The format is YAML with a fixed set of sections; unknown keys anywhere are
// rejected. See configs/README.md for the full schema. Every validation
// failure is reported as "<field path>: <reason>".

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "coadapt/certificate.h"
#include "coadapt/core.h"
#include "coadapt/mixing.h"
#include "coadapt/protocol.h"

namespace coadapt {

// Environment variable naming the default experiment file.
inline constexpr const char* kConfigEnvVar = "COADAPT_CONFIG";

class ConfigError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

struct PolicyConfig {
  PolicyRule rule = PolicyRule::kExpWeights;
  int index = 0;
  // Defaults to DefaultLearningRate(class size, horizon).
  std::optional<double> learning_rate;
};

struct ExperimentConfig {
  MarkovIntentionProcess process;
  FeatureAlphabet features;
  LossMatrix loss;
  std::optional<double> lipschitz_override;
  FunctionClass encoders;
  FunctionClass decoders;

  int comparator_decoder = 0;  // index of h~
  Symbol comparator_initial_output = 0;  // y~_0
  bool static_comparator = false;

  int horizon = 1;
  Symbol initial_output = 0;  // y^_0

  PolicyConfig encoder_policy;
  PolicyConfig decoder_policy;

  double delta = 0.1;
  EpsConditioning eps_conditioning = EpsConditioning::kRealized;
  MixingMethod mixing_method = MixingMethod::kExactMarkov;

  std::uint64_t seed = 0;
  int trials = 1;
  int threads = 1;

  Comparator comparator() const {
    return {&encoders, decoders.map(comparator_decoder),
            comparator_initial_output};
  }
  ClosedLoop closed_loop() const {
    return {&loss, &encoders, &decoders, initial_output};
  }
};

// Cross-field checks on an assembled config. Throws ConfigError.
void ValidateConfig(const ExperimentConfig& config);

ExperimentConfig ParseConfig(std::string_view text);
ExperimentConfig LoadConfig(const std::filesystem::path& path);

// Instantiates the configured policy for one side of the loop.
Policy MakePolicy(const PolicyConfig& config, Side side,
                  const ExperimentConfig& experiment);

}  // namespace coadapt

#endif  // COADAPT_CONFIG_H_
