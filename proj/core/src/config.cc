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

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <initializer_list>
#include <sstream>

namespace coadapt {
namespace {

std::string Index(const std::string& path, std::size_t k) {
  return path + "[" + std::to_string(k) + "]";
}

std::string Join(const std::string& parent, std::string_view key) {
  return parent.empty() ? std::string(key) : parent + "." + std::string(key);
}

// Walks a YAML document and collects "<path>: <reason>" failures instead of
// stopping at the first one.
class Reader {
 public:
  std::vector<std::string> failures;

  void Fail(const std::string& path, const std::string& reason) {
    failures.push_back(path + ": " + reason);
  }

  // False (and a failure) unless `node` is a map whose keys are all allowed.
  bool ExpectMap(const YAML::Node& node, const std::string& path,
                 std::initializer_list<std::string_view> allowed) {
    if (!node.IsMap()) {
      Fail(path.empty() ? "<root>" : path, "expected a mapping");
      return false;
    }
    for (const auto& entry : node) {
      const auto key = entry.first.as<std::string>();
      if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
        Fail(Join(path, key), "unknown key");
      }
    }
    return true;
  }

  YAML::Node Section(const YAML::Node& parent, const std::string& path,
                     std::string_view key, bool required) {
    YAML::Node node = parent[std::string(key)];
    if (!node.IsDefined() || node.IsNull()) {
      if (required) Fail(Join(path, key), "missing");
      return YAML::Node(YAML::NodeType::Undefined);
    }
    return node;
  }

  template <typename T>
  std::optional<T> Scalar(const YAML::Node& parent, const std::string& path,
                          std::string_view key, bool required) {
    YAML::Node node = Section(parent, path, key, required);
    if (!node.IsDefined()) return std::nullopt;
    return Convert<T>(node, Join(path, key));
  }

  template <typename T>
  std::optional<T> Convert(const YAML::Node& node, const std::string& path) {
    if (!node.IsScalar()) {
      Fail(path, "expected a scalar");
      return std::nullopt;
    }
    try {
      return node.as<T>();
    } catch (const YAML::Exception&) {
      Fail(path, "cannot read '" + node.Scalar() + "' as " + TypeName<T>());
      return std::nullopt;
    }
  }

  template <typename T>
  std::optional<std::vector<T>> List(const YAML::Node& node,
                                     const std::string& path) {
    if (!node.IsSequence()) {
      Fail(path, "expected a list");
      return std::nullopt;
    }
    std::vector<T> values;
    bool ok = true;
    for (std::size_t k = 0; k < node.size(); ++k) {
      auto value = Convert<T>(node[k], Index(path, k));
      if (value) {
        values.push_back(*value);
      } else {
        ok = false;
      }
    }
    if (!ok) return std::nullopt;
    return values;
  }

  template <typename T>
  std::optional<std::vector<std::vector<T>>> Rows(const YAML::Node& node,
                                                  const std::string& path) {
    if (!node.IsSequence()) {
      Fail(path, "expected a list of rows");
      return std::nullopt;
    }
    std::vector<std::vector<T>> rows;
    bool ok = true;
    for (std::size_t k = 0; k < node.size(); ++k) {
      auto row = List<T>(node[k], Index(path, k));
      if (row) {
        rows.push_back(std::move(*row));
      } else {
        ok = false;
      }
    }
    if (!ok) return std::nullopt;
    return rows;
  }

 private:
  template <typename T>
  static std::string TypeName() {
    if constexpr (std::is_same_v<T, bool>) return "a boolean";
    if constexpr (std::is_same_v<T, std::string>) return "a string";
    if constexpr (std::is_floating_point_v<T>) return "a number";
    return "an integer";
  }
};

std::optional<PolicyConfig> ReadPolicy(Reader& in, const YAML::Node& node,
                                       const std::string& path) {
  if (!in.ExpectMap(node, path, {"rule", "index", "learning_rate"})) {
    return std::nullopt;
  }
  PolicyConfig policy;
  const auto rule = in.Scalar<std::string>(node, path, "rule", true);
  if (!rule) return std::nullopt;
  if (*rule == "fixed") {
    policy.rule = PolicyRule::kFixed;
    policy.index = in.Scalar<int>(node, path, "index", true).value_or(0);
  } else if (*rule == "uniform-random") {
    policy.rule = PolicyRule::kUniformRandom;
  } else if (*rule == "exp-weights") {
    policy.rule = PolicyRule::kExpWeights;
    policy.learning_rate =
        in.Scalar<double>(node, path, "learning_rate", false);
  } else {
    in.Fail(Join(path, "rule"),
            "'" + *rule + "' is not one of fixed, uniform-random, exp-weights");
    return std::nullopt;
  }
  if (policy.rule != PolicyRule::kFixed && node["index"].IsDefined()) {
    in.Fail(Join(path, "index"), "only valid for rule 'fixed'");
  }
  if (policy.rule != PolicyRule::kExpWeights &&
      node["learning_rate"].IsDefined()) {
    in.Fail(Join(path, "learning_rate"), "only valid for rule 'exp-weights'");
  }
  return policy;
}

void Prefixed(std::vector<std::string>& out, const std::string& prefix,
              const std::vector<std::string>& failures) {
  for (const auto& f : failures) out.push_back(prefix + f);
}

ExperimentConfig Build(const YAML::Node& root) {
  Reader in;
  ExperimentConfig config;
  if (!in.ExpectMap(root, "",
                    {"alphabet", "features", "process", "loss", "encoders",
                     "decoders", "comparator", "episode", "policies",
                     "certificate", "run"})) {
    throw ConfigError(in.failures);
  }

  if (auto node = in.Section(root, "", "alphabet", true);
      node.IsDefined() && in.ExpectMap(node, "alphabet", {"size", "labels"})) {
    config.process.alphabet.size =
        in.Scalar<int>(node, "alphabet", "size", true).value_or(0);
    if (auto labels = in.Section(node, "alphabet", "labels", false);
        labels.IsDefined()) {
      config.process.alphabet.labels =
          in.List<std::string>(labels, "alphabet.labels").value_or(
              std::vector<std::string>{});
    }
    Prefixed(in.failures, "alphabet: ", config.process.alphabet.Validate().failures);
  }

  if (auto node = in.Section(root, "", "features", true);
      node.IsDefined() && in.ExpectMap(node, "features", {"size"})) {
    config.features.size =
        in.Scalar<int>(node, "features", "size", true).value_or(0);
    Prefixed(in.failures, "features: ", config.features.Validate().failures);
  }

  bool process_read = false;
  if (auto node = in.Section(root, "", "process", true);
      node.IsDefined() &&
      in.ExpectMap(node, "process", {"initial", "transition"})) {
    auto initial_node = in.Section(node, "process", "initial", true);
    auto transition_node = in.Section(node, "process", "transition", true);
    std::optional<std::vector<double>> initial;
    std::optional<std::vector<std::vector<double>>> rows;
    if (initial_node.IsDefined()) {
      initial = in.List<double>(initial_node, "process.initial");
    }
    if (transition_node.IsDefined()) {
      rows = in.Rows<double>(transition_node, "process.transition");
    }
    if (initial && rows) {
      config.process.initial = std::move(*initial);
      try {
        config.process.transition = Matrix::FromRows(*rows);
        process_read = true;
      } catch (const ValidationError& e) {
        Prefixed(in.failures, "process.transition: ", e.failures());
      }
    }
  }
  if (process_read) {
    auto result = ValidateProcess(config.process);
    std::erase_if(result.failures, [](const std::string& f) {
      return f.rfind("alphabet", 0) == 0;
    });
    Prefixed(in.failures, "process.", result.failures);
  }

  if (auto node = in.Section(root, "", "loss", true);
      node.IsDefined() && in.ExpectMap(node, "loss", {"matrix", "lipschitz"})) {
    if (auto matrix = in.Section(node, "loss", "matrix", true);
        matrix.IsDefined()) {
      if (auto rows = in.Rows<double>(matrix, "loss.matrix")) {
        try {
          config.loss = LossMatrix(Matrix::FromRows(*rows));
        } catch (const ValidationError& e) {
          Prefixed(in.failures, "loss.matrix: ", e.failures());
        }
      }
    }
    config.lipschitz_override = in.Scalar<double>(node, "loss", "lipschitz", false);
  }

  const int alphabet = config.process.alphabet.size;
  const int features = config.features.size;
  auto read_class = [&](std::string_view key, MapKind kind, int input,
                        int output) {
    FunctionClass result;
    auto node = in.Section(root, "", key, true);
    if (!node.IsDefined()) return result;
    auto tables = in.Rows<Symbol>(node, std::string(key));
    if (!tables || input < 1 || output < 1) return result;
    try {
      result = FunctionClass(kind, input, output, std::move(*tables));
    } catch (const ValidationError& e) {
      Prefixed(in.failures, std::string(key) + ": ", e.failures());
    }
    return result;
  };
  config.encoders = read_class("encoders", MapKind::kEncoder, alphabet, features);
  config.decoders = read_class("decoders", MapKind::kDecoder, features, alphabet);

  if (auto node = in.Section(root, "", "comparator", true);
      node.IsDefined() &&
      in.ExpectMap(node, "comparator", {"decoder", "initial_output", "static"})) {
    config.comparator_decoder =
        in.Scalar<int>(node, "comparator", "decoder", true).value_or(0);
    config.comparator_initial_output =
        in.Scalar<int>(node, "comparator", "initial_output", false).value_or(0);
    config.static_comparator =
        in.Scalar<bool>(node, "comparator", "static", false).value_or(false);
  }

  if (auto node = in.Section(root, "", "episode", true);
      node.IsDefined() &&
      in.ExpectMap(node, "episode", {"horizon", "initial_output"})) {
    config.horizon = in.Scalar<int>(node, "episode", "horizon", true).value_or(1);
    config.initial_output =
        in.Scalar<int>(node, "episode", "initial_output", false).value_or(0);
  }

  if (auto node = in.Section(root, "", "policies", false);
      node.IsDefined() && in.ExpectMap(node, "policies", {"encoder", "decoder"})) {
    if (auto p = in.Section(node, "policies", "encoder", false); p.IsDefined()) {
      if (auto policy = ReadPolicy(in, p, "policies.encoder")) {
        config.encoder_policy = *policy;
      }
    }
    if (auto p = in.Section(node, "policies", "decoder", false); p.IsDefined()) {
      if (auto policy = ReadPolicy(in, p, "policies.decoder")) {
        config.decoder_policy = *policy;
      }
    }
  }

  if (auto node = in.Section(root, "", "certificate", true);
      node.IsDefined() &&
      in.ExpectMap(node, "certificate",
                   {"delta", "eps_conditioning", "mixing_method"})) {
    config.delta =
        in.Scalar<double>(node, "certificate", "delta", true).value_or(0.1);
    if (auto mode = in.Scalar<std::string>(node, "certificate",
                                           "eps_conditioning", false)) {
      if (*mode == "realized") {
        config.eps_conditioning = EpsConditioning::kRealized;
      } else if (*mode == "comparator") {
        config.eps_conditioning = EpsConditioning::kComparator;
      } else {
        in.Fail("certificate.eps_conditioning",
                "'" + *mode + "' is not one of realized, comparator");
      }
    }
    if (auto method = in.Scalar<std::string>(node, "certificate",
                                             "mixing_method", false)) {
      if (*method == "exact") {
        config.mixing_method = MixingMethod::kExactMarkov;
      } else if (*method == "brute") {
        config.mixing_method = MixingMethod::kBruteForce;
      } else {
        in.Fail("certificate.mixing_method",
                "'" + *method + "' is not one of exact, brute");
      }
    }
  }

  if (auto node = in.Section(root, "", "run", false);
      node.IsDefined() && in.ExpectMap(node, "run", {"seed", "trials", "threads"})) {
    config.seed = in.Scalar<std::uint64_t>(node, "run", "seed", false).value_or(0);
    config.trials = in.Scalar<int>(node, "run", "trials", false).value_or(1);
    config.threads = in.Scalar<int>(node, "run", "threads", false).value_or(1);
  }

  if (!in.failures.empty()) throw ConfigError(std::move(in.failures));
  ValidateConfig(config);
  return config;
}

}  // namespace

void ValidateConfig(const ExperimentConfig& config) {
  std::vector<std::string> failures;
  auto fail = [&](const std::string& path, const std::string& reason) {
    failures.push_back(path + ": " + reason);
  };
  Prefixed(failures, "process.", ValidateProcess(config.process).failures);
  const int n = config.process.size();
  if (config.loss.size() != n) {
    fail("loss.matrix", "is " + std::to_string(config.loss.size()) +
                            "x" + std::to_string(config.loss.size()) +
                            ", expected " + std::to_string(n) + "x" +
                            std::to_string(n));
  }
  if (config.encoders.size() == 0) fail("encoders", "missing");
  if (config.decoders.size() == 0) fail("decoders", "missing");
  if (config.encoders.size() > 0 &&
      (config.encoders.input_size() != n ||
       config.encoders.output_size() != config.features.size)) {
    fail("encoders", "tables must map the alphabet to the feature alphabet");
  }
  if (config.decoders.size() > 0 &&
      (config.decoders.input_size() != config.features.size ||
       config.decoders.output_size() != n)) {
    fail("decoders", "tables must map the feature alphabet to the alphabet");
  }
  if (config.comparator_decoder < 0 ||
      config.comparator_decoder >= config.decoders.size()) {
    fail("comparator.decoder", std::to_string(config.comparator_decoder) +
                                   " is outside a class of " +
                                   std::to_string(config.decoders.size()));
  }
  if (!config.process.alphabet.Contains(config.comparator_initial_output)) {
    fail("comparator.initial_output",
         std::to_string(config.comparator_initial_output) +
             " is outside the alphabet");
  }
  if (!config.process.alphabet.Contains(config.initial_output)) {
    fail("episode.initial_output",
         std::to_string(config.initial_output) + " is outside the alphabet");
  }
  if (config.horizon < 1) {
    fail("episode.horizon", std::to_string(config.horizon) + " is below 1");
  }
  if (!(config.delta > 0.0 && config.delta <= 1.0)) {
    fail("certificate.delta", FormatDouble(config.delta) + " is outside (0, 1]");
  }
  if (config.trials < 1) {
    fail("run.trials", std::to_string(config.trials) + " is below 1");
  }
  if (config.threads < 1) {
    fail("run.threads", std::to_string(config.threads) + " is below 1");
  }
  auto check_policy = [&](const PolicyConfig& p, const std::string& path,
                          int class_size) {
    if (p.rule == PolicyRule::kFixed && (p.index < 0 || p.index >= class_size)) {
      fail(path + ".index", std::to_string(p.index) + " is outside a class of " +
                                std::to_string(class_size));
    }
    if (p.learning_rate &&
        !(std::isfinite(*p.learning_rate) && *p.learning_rate >= 0.0)) {
      fail(path + ".learning_rate", "must be finite and nonnegative");
    }
  };
  check_policy(config.encoder_policy, "policies.encoder", config.encoders.size());
  check_policy(config.decoder_policy, "policies.decoder", config.decoders.size());
  if (config.loss.size() == n && n > 0) {
    try {
      ResolveLipschitz(config.loss, config.lipschitz_override);
    } catch (const ValidationError& e) {
      Prefixed(failures, "loss.lipschitz: ", e.failures());
    }
  }
  if (config.mixing_method == MixingMethod::kBruteForce && n > 1 &&
      config.horizon * std::log(static_cast<double>(n)) >
          std::log(static_cast<double>(kBruteForceLimit)) + 1e-9) {
    fail("certificate.mixing_method",
         "brute force needs |alphabet|^horizon <= " +
             std::to_string(kBruteForceLimit));
  }
  if (!failures.empty()) throw ConfigError(std::move(failures));
}

ExperimentConfig ParseConfig(std::string_view text) {
  YAML::Node root;
  try {
    root = YAML::Load(std::string(text));
  } catch (const YAML::Exception& e) {
    throw ConfigError("<document>: " + std::string(e.what()));
  }
  return Build(root);
}

ExperimentConfig LoadConfig(const std::filesystem::path& path) {
  std::ifstream file(path);
  if (!file) throw ConfigError(path.string() + ": cannot open file");
  std::ostringstream text;
  text << file.rdbuf();
  return ParseConfig(text.str());
}

Policy MakePolicy(const PolicyConfig& config, Side side,
                  const ExperimentConfig& experiment) {
  const int size = side == Side::kEncoder ? experiment.encoders.size()
                                          : experiment.decoders.size();
  switch (config.rule) {
    case PolicyRule::kFixed:
      return Policy::Fixed(side, size, config.index);
    case PolicyRule::kUniformRandom:
      return Policy::UniformRandom(side, size);
    case PolicyRule::kExpWeights:
      break;
  }
  const double rate = config.learning_rate.value_or(
      DefaultLearningRate(size, experiment.horizon));
  const int contexts = side == Side::kEncoder ? experiment.process.size() : 1;
  return Policy::ExpWeights(side, size, rate, contexts);
}

}  // namespace coadapt
