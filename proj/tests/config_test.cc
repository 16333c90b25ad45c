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


#include "coadapt/config.h"

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

namespace coadapt {
namespace {

constexpr const char* kMinimal = R"(
alphabet:
  size: 2
features:
  size: 2
process:
  initial: [0.5, 0.5]
  transition:
    - [0.7, 0.3]
    - [0.3, 0.7]
loss:
  matrix:
    - [0, 1]
    - [1, 0]
encoders:
  - [0, 1]
  - [1, 0]
decoders:
  - [0, 1]
comparator:
  decoder: 0
episode:
  horizon: 8
certificate:
  delta: 0.1
)";

std::string Replace(std::string text, const std::string& from,
                    const std::string& to) {
  const auto pos = text.find(from);
  EXPECT_NE(pos, std::string::npos) << from;
  return text.replace(pos, from.size(), to);
}

// Returns the failures reported for `text`, or an empty list if it parsed.
std::vector<std::string> Failures(const std::string& text) {
  try {
    ParseConfig(text);
  } catch (const ConfigError& e) {
    return e.failures();
  }
  return {};
}

bool Mentions(const std::vector<std::string>& failures, const std::string& s) {
  for (const auto& f : failures) {
    if (f.find(s) != std::string::npos) return true;
  }
  return false;
}

TEST(ConfigTest, MinimalConfigLoadsWithDefaults) {
  const auto config = ParseConfig(kMinimal);
  EXPECT_EQ(config.process.size(), 2);
  EXPECT_EQ(config.horizon, 8);
  EXPECT_EQ(config.encoders.size(), 2);
  EXPECT_EQ(config.decoders.size(), 1);
  EXPECT_EQ(config.delta, 0.1);
  EXPECT_EQ(config.trials, 1);
  EXPECT_EQ(config.seed, 0u);
  EXPECT_EQ(config.eps_conditioning, EpsConditioning::kRealized);
  EXPECT_EQ(config.mixing_method, MixingMethod::kExactMarkov);
  EXPECT_EQ(config.encoder_policy.rule, PolicyRule::kExpWeights);
  EXPECT_FALSE(config.lipschitz_override.has_value());
}

TEST(ConfigTest, RejectsDeltaAboveOne) {
  const auto failures = Failures(Replace(kMinimal, "delta: 0.1", "delta: 1.5"));
  ASSERT_FALSE(failures.empty());
  EXPECT_TRUE(Mentions(failures, "certificate.delta")) << failures[0];
}

TEST(ConfigTest, NamesTheBadTransitionRow) {
  const auto failures =
      Failures(Replace(kMinimal, "- [0.3, 0.7]", "- [0.5, 0.4]"));
  ASSERT_FALSE(failures.empty());
  EXPECT_TRUE(Mentions(failures, "process.transition[1]")) << failures[0];
  EXPECT_TRUE(Mentions(failures, "0.9")) << failures[0];
}

TEST(ConfigTest, RejectsUnknownKeys) {
  EXPECT_TRUE(Mentions(Failures(std::string(kMinimal) + "extra: 1\n"), "extra"));
  EXPECT_TRUE(Mentions(Failures(Replace(kMinimal, "horizon: 8", "horizon: 8\n  steps: 3")),
                       "episode.steps"));
}

TEST(ConfigTest, ReportsEveryFailure) {
  auto text = Replace(kMinimal, "delta: 0.1", "delta: 0");
  text = Replace(text, "horizon: 8", "horizon: 0");
  const auto failures = Failures(text);
  EXPECT_TRUE(Mentions(failures, "certificate.delta"));
  EXPECT_TRUE(Mentions(failures, "episode.horizon"));
}

TEST(ConfigTest, RejectsMissingSectionsAndBadTypes) {
  EXPECT_TRUE(Mentions(Failures(Replace(kMinimal, "comparator:\n  decoder: 0\n", "")),
                       "comparator"));
  EXPECT_TRUE(Mentions(Failures(Replace(kMinimal, "horizon: 8", "horizon: many")),
                       "episode.horizon"));
  EXPECT_TRUE(Mentions(Failures(Replace(kMinimal, "decoder: 0", "decoder: 3")),
                       "comparator.decoder"));
  EXPECT_TRUE(Mentions(Failures(Replace(kMinimal, "- [0, 1]\n  - [1, 0]\ndecoders",
                                        "- [0, 2]\n  - [1, 0]\ndecoders")),
                       "encoders"));
}

TEST(ConfigTest, PolicyRules) {
  const auto config = ParseConfig(std::string(kMinimal) + R"(
policies:
  encoder: {rule: fixed, index: 1}
  decoder: {rule: exp-weights, learning_rate: 0.25}
)");
  EXPECT_EQ(config.encoder_policy.rule, PolicyRule::kFixed);
  EXPECT_EQ(config.encoder_policy.index, 1);
  EXPECT_EQ(config.decoder_policy.learning_rate, 0.25);
  const auto encoder = MakePolicy(config.encoder_policy, Side::kEncoder, config);
  EXPECT_EQ(encoder.fixed_index(), 1);
  const auto decoder = MakePolicy(config.decoder_policy, Side::kDecoder, config);
  EXPECT_EQ(decoder.learning_rate(), 0.25);

  EXPECT_TRUE(Mentions(Failures(std::string(kMinimal) +
                                "policies:\n  encoder: {rule: greedy}\n"),
                       "policies.encoder.rule"));
  EXPECT_TRUE(Mentions(Failures(std::string(kMinimal) +
                                "policies:\n  encoder: {rule: fixed, index: 5}\n"),
                       "policies.encoder"));
}

TEST(ConfigTest, LipschitzOverrideMustNotUndercut) {
  EXPECT_EQ(ParseConfig(Replace(kMinimal, "    - [1, 0]\nencoders",
                                "    - [1, 0]\n  lipschitz: 2\nencoders"))
                .lipschitz_override,
            2.0);
  EXPECT_TRUE(Mentions(Failures(Replace(kMinimal, "    - [1, 0]\nencoders",
                                        "    - [1, 0]\n  lipschitz: 0.5\nencoders")),
                       "loss.lipschitz"));
}

TEST(ConfigTest, LoadsFromFile) {
  const auto path = std::filesystem::temp_directory_path() / "coadapt_config_test.yaml";
  {
    std::ofstream out(path);
    out << kMinimal;
  }
  EXPECT_EQ(LoadConfig(path).horizon, 8);
  std::filesystem::remove(path);
  EXPECT_THROW(LoadConfig(path), ConfigError);
}

TEST(ConfigTest, RejectsMalformedYaml) {
  EXPECT_THROW(ParseConfig("alphabet: [1, 2"), ConfigError);
}

}  // namespace
}  // namespace coadapt
