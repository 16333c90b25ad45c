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


#include "coadapt/core.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <set>
#include <sstream>
#include <utility>

#include "coadapt/random.h"

namespace coadapt {
namespace {

std::string JoinFailures(const std::vector<std::string>& failures) {
  std::ostringstream out;
  for (std::size_t k = 0; k < failures.size(); ++k) {
    if (k > 0) out << "; ";
    out << failures[k];
  }
  return out.str();
}

bool IsProbability(double p) { return std::isfinite(p) && p >= 0.0 && p <= 1.0; }

void CheckDistribution(std::span<const double> p, const std::string& what,
                       std::vector<std::string>& failures) {
  double sum = 0.0;
  for (std::size_t k = 0; k < p.size(); ++k) {
    if (!IsProbability(p[k])) {
      failures.push_back(what + "[" + std::to_string(k) + "]: " +
                         FormatDouble(p[k]) + " is outside [0, 1]");
    }
    sum += p[k];
  }
  if (!(std::abs(sum - 1.0) <= kStochasticTolerance)) {
    failures.push_back(what + ": sums to " + FormatDouble(sum) +
                       ", expected 1");
  }
}

}  // namespace

std::string FormatDouble(double value) {
  char buffer[64];
  const auto result = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, result.ptr);
}

ValidationError::ValidationError(std::vector<std::string> failures)
    : std::invalid_argument(JoinFailures(failures)),
      failures_(std::move(failures)) {}

void ValidationResult::ThrowIfFailed() const {
  if (!ok()) throw ValidationError(failures);
}

Matrix Matrix::FromRows(const std::vector<std::vector<double>>& rows) {
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  Matrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) {
      throw ValidationError("matrix row " + std::to_string(r) + " has " +
                            std::to_string(rows[r].size()) +
                            " entries, expected " + std::to_string(cols));
    }
    std::copy(rows[r].begin(), rows[r].end(), m.row(r).begin());
  }
  return m;
}

Matrix Matrix::Identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t k = 0; k < n; ++k) m(k, k) = 1.0;
  return m;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols_ != b.rows_) throw std::invalid_argument("matrix shape mismatch");
  Matrix out(a.rows_, b.cols_);
  for (std::size_t r = 0; r < a.rows_; ++r) {
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const double lhs = a(r, k);
      if (lhs == 0.0) continue;
      for (std::size_t c = 0; c < b.cols_; ++c) out(r, c) += lhs * b(k, c);
    }
  }
  return out;
}

ValidationResult Alphabet::Validate() const {
  ValidationResult result;
  if (size < 2) {
    result.failures.push_back("alphabet size " + std::to_string(size) +
                              " is below 2");
  }
  if (!labels.empty()) {
    if (static_cast<int>(labels.size()) != size) {
      result.failures.push_back(
          "alphabet has " + std::to_string(labels.size()) + " labels for " +
          std::to_string(size) + " symbols");
    }
    std::set<std::string> distinct(labels.begin(), labels.end());
    if (distinct.size() != labels.size()) {
      result.failures.push_back("alphabet labels are not distinct");
    }
  }
  return result;
}

ValidationResult FeatureAlphabet::Validate() const {
  ValidationResult result;
  if (size < 1) {
    result.failures.push_back("feature alphabet size " + std::to_string(size) +
                              " is below 1");
  }
  return result;
}

ValidationResult ValidateProcess(const MarkovIntentionProcess& process) {
  ValidationResult result = process.alphabet.Validate();
  auto& failures = result.failures;
  const auto n = static_cast<std::size_t>(std::max(process.size(), 0));
  if (process.initial.size() != n) {
    failures.push_back("initial: has " + std::to_string(process.initial.size()) +
                       " entries, expected " + std::to_string(n));
  } else {
    CheckDistribution(process.initial, "initial", failures);
  }
  if (process.transition.rows() != n || process.transition.cols() != n) {
    failures.push_back("transition: is " +
                       std::to_string(process.transition.rows()) + "x" +
                       std::to_string(process.transition.cols()) +
                       ", expected " + std::to_string(n) + "x" +
                       std::to_string(n));
  } else {
    for (std::size_t r = 0; r < n; ++r) {
      CheckDistribution(process.transition.row(r),
                        "transition[" + std::to_string(r) + "]", failures);
    }
  }
  return result;
}

MarkovIntentionProcess MakeProcess(
    std::vector<double> initial, const std::vector<std::vector<double>>& rows) {
  MarkovIntentionProcess process;
  process.alphabet.size = static_cast<int>(initial.size());
  process.initial = std::move(initial);
  process.transition = Matrix::FromRows(rows);
  return process;
}

MarkovIntentionProcess FlipChain(double flip_p) {
  return MakeProcess({0.5, 0.5}, {{1.0 - flip_p, flip_p}, {flip_p, 1.0 - flip_p}});
}

Sequence SampleIntentions(const MarkovIntentionProcess& process, int horizon,
                          std::uint64_t seed) {
  if (horizon < 1) {
    throw ValidationError("horizon " + std::to_string(horizon) +
                          " is below 1");
  }
  ValidateProcess(process).ThrowIfFailed();
  Rng rng(seed);
  Sequence y(static_cast<std::size_t>(horizon));
  y[0] = rng.Categorical(process.initial);
  for (std::size_t t = 1; t < y.size(); ++t) {
    y[t] = rng.Categorical(
        process.transition.row(static_cast<std::size_t>(y[t - 1])));
  }
  return y;
}

int HammingDistance(std::span<const Symbol> x, std::span<const Symbol> y) {
  if (x.size() != y.size()) {
    throw ValidationError("hamming distance of sequences with lengths " +
                          std::to_string(x.size()) + " and " +
                          std::to_string(y.size()));
  }
  int distance = 0;
  for (std::size_t t = 0; t < x.size(); ++t) distance += x[t] != y[t] ? 1 : 0;
  return distance;
}

LossMatrix::LossMatrix(Matrix values) : values_(std::move(values)) {
  std::vector<std::string> failures;
  if (values_.rows() != values_.cols() || values_.rows() == 0) {
    failures.push_back("loss matrix is " + std::to_string(values_.rows()) +
                       "x" + std::to_string(values_.cols()) +
                       ", expected a nonempty square matrix");
  }
  for (std::size_t a = 0; a < values_.rows(); ++a) {
    for (std::size_t b = 0; b < values_.cols(); ++b) {
      const double v = values_(a, b);
      if (!std::isfinite(v) || v < 0.0) {
        std::ostringstream msg;
        msg << "loss entry (" << a << ", " << b << ") is " << v
            << ", expected finite and nonnegative";
        failures.push_back(msg.str());
      } else {
        range_bound_ = std::max(range_bound_, v);
      }
    }
  }
  if (!failures.empty()) throw ValidationError(std::move(failures));
}

LossMatrix LossMatrix::ZeroOne(int size) {
  Matrix m(static_cast<std::size_t>(size), static_cast<std::size_t>(size), 1.0);
  for (std::size_t k = 0; k < m.rows(); ++k) m(k, k) = 0.0;
  return LossMatrix(std::move(m));
}

double LipschitzConstant(const LossMatrix& loss) {
  double constant = 0.0;
  const Matrix& v = loss.values();
  for (std::size_t a = 0; a < v.rows(); ++a) {
    const auto row = v.row(a);
    const auto [lo, hi] = std::minmax_element(row.begin(), row.end());
    constant = std::max(constant, *hi - *lo);
  }
  return constant;
}

double ResolveLipschitz(const LossMatrix& loss,
                        std::optional<double> override_value) {
  const double derived = LipschitzConstant(loss);
  if (!override_value) return derived;
  if (!std::isfinite(*override_value) || *override_value < derived) {
    throw ValidationError("lipschitz override " + FormatDouble(*override_value) +
                          " is below the derived constant " +
                          FormatDouble(derived));
  }
  return *override_value;
}

Map Compose(const Map& h, const Map& g) {
  if (g.output_size != h.input_size) {
    throw ValidationError("cannot compose: encoder output alphabet has " +
                          std::to_string(g.output_size) +
                          " symbols, decoder input alphabet has " +
                          std::to_string(h.input_size));
  }
  Map composed{g.input_size, h.output_size, {}};
  composed.table.reserve(g.table.size());
  for (Symbol a : g.table) composed.table.push_back(h(a));
  return composed;
}

FunctionClass::FunctionClass(MapKind kind, int input_size, int output_size,
                             std::vector<std::vector<Symbol>> tables)
    : kind_(kind),
      input_size_(input_size),
      output_size_(output_size),
      tables_(std::move(tables)) {
  const char* name = kind_ == MapKind::kEncoder ? "encoder" : "decoder";
  std::vector<std::string> failures;
  if (tables_.empty()) failures.push_back(std::string(name) + " class is empty");
  for (std::size_t i = 0; i < tables_.size(); ++i) {
    const auto& table = tables_[i];
    const std::string where = std::string(name) + " table " + std::to_string(i);
    if (static_cast<int>(table.size()) != input_size_) {
      failures.push_back(where + " has " + std::to_string(table.size()) +
                         " entries, expected " + std::to_string(input_size_));
    }
    for (std::size_t x = 0; x < table.size(); ++x) {
      if (table[x] < 0 || table[x] >= output_size_) {
        failures.push_back(where + " maps " + std::to_string(x) + " to " +
                           std::to_string(table[x]) +
                           ", outside an output alphabet of size " +
                           std::to_string(output_size_));
      }
    }
  }
  if (!failures.empty()) throw ValidationError(std::move(failures));
}

}  // namespace coadapt
