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

#ifndef COADAPT_CORE_H_
#define COADAPT_CORE_H_

// Domain types shared by every part of the library: finite alphabets, the
// Markov law of the encoder's intentions, the loss table, and the lookup-table
// function classes for encoders (intention alphabet -> feature alphabet) and
// decoders (feature alphabet -> intention alphabet).

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace coadapt {

using Symbol = int;
using Sequence = std::vector<Symbol>;

// Tolerance on probability vectors and transition rows summing to one.
inline constexpr double kStochasticTolerance = 1e-12;

// Shortest decimal text that round-trips to `value`.
std::string FormatDouble(double value);

// Raised when an input violates a documented invariant. Carries every
// violated invariant, not just the first.
class ValidationError : public std::invalid_argument {
 public:
  explicit ValidationError(std::vector<std::string> failures);
  explicit ValidationError(const std::string& failure)
      : ValidationError(std::vector<std::string>{failure}) {}

  const std::vector<std::string>& failures() const { return failures_; }

 private:
  std::vector<std::string> failures_;
};

// Raised when a numerical computation leaves its documented tolerance.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ValidationResult {
  std::vector<std::string> failures;

  bool ok() const { return failures.empty(); }
  explicit operator bool() const { return ok(); }
  // Throws ValidationError when not ok().
  void ThrowIfFailed() const;
};

// Dense row-major matrix of doubles.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  // Builds from nested rows; every row must have the same length.
  static Matrix FromRows(const std::vector<std::vector<double>>& rows);
  static Matrix Identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  double& operator()(std::size_t r, std::size_t c) {
    return data_[r * cols_ + c];
  }
  double operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }
  std::span<const double> row(std::size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }
  std::span<double> row(std::size_t r) {
    return {data_.data() + r * cols_, cols_};
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b);
  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

// Finite truncation of the countable intention space.
struct Alphabet {
  int size = 2;
  // Optional display names; empty or exactly `size` distinct entries.
  std::vector<std::string> labels;

  ValidationResult Validate() const;
  bool Contains(Symbol s) const { return s >= 0 && s < size; }
};

struct FeatureAlphabet {
  int size = 1;

  ValidationResult Validate() const;
  bool Contains(Symbol s) const { return s >= 0 && s < size; }
};

// First-order Markov chain over an Alphabet. transition(a, b) is the
// probability that intention b follows intention a.
struct MarkovIntentionProcess {
  Alphabet alphabet;
  std::vector<double> initial;
  Matrix transition;

  int size() const { return alphabet.size; }
};

ValidationResult ValidateProcess(const MarkovIntentionProcess& process);

// Convenience constructors used throughout tests and tools.
MarkovIntentionProcess MakeProcess(std::vector<double> initial,
                                   const std::vector<std::vector<double>>& rows);
// Two-state chain that switches symbol with probability `flip_p`, started
// from the uniform law.
MarkovIntentionProcess FlipChain(double flip_p);

// Draws y_1..y_T. The same seed always yields the same sequence.
Sequence SampleIntentions(const MarkovIntentionProcess& process, int horizon,
                          std::uint64_t seed);

// Number of positions at which two equal-length sequences differ.
int HammingDistance(std::span<const Symbol> x, std::span<const Symbol> y);

// Loss of the encoder side: entry (a, b) is the loss of producing a when the
// intention was b.
class LossMatrix {
 public:
  LossMatrix() = default;
  // Throws ValidationError unless square, nonnegative and finite.
  explicit LossMatrix(Matrix values);
  static LossMatrix ZeroOne(int size);

  double operator()(Symbol prediction, Symbol intention) const {
    return values_(static_cast<std::size_t>(prediction),
                   static_cast<std::size_t>(intention));
  }
  int size() const { return static_cast<int>(values_.rows()); }
  const Matrix& values() const { return values_; }
  // Largest entry; every per-step loss lies in [0, range_bound()].
  double range_bound() const { return range_bound_; }

 private:
  Matrix values_;
  double range_bound_ = 0.0;
};

// Tightest constant l with |psi(S) - psi(S')| <= l * d_H(S, S') for the
// comparator loss psi(y) = sum_t L(y~_t, y_t). The comparator outputs y~ never
// read y, so changing one intention changes exactly one summand and the
// constant is max over predictions a of (max_b L(a,b) - min_b L(a,b)).
double LipschitzConstant(const LossMatrix& loss);

// Uses `override_value` when given; it must not undercut the derived value.
double ResolveLipschitz(const LossMatrix& loss,
                        std::optional<double> override_value);

enum class MapKind { kEncoder, kDecoder };

// A total map between finite alphabets, stored as a lookup table.
struct Map {
  int input_size = 0;
  int output_size = 0;
  std::vector<Symbol> table;

  Symbol operator()(Symbol x) const {
    return table[static_cast<std::size_t>(x)];
  }
  friend bool operator==(const Map&, const Map&) = default;
};

// Returns a -> h(g(a)). Throws ValidationError when g's output alphabet is
// not h's input alphabet.
Map Compose(const Map& h, const Map& g);

// Finite family of lookup-table maps sharing input and output alphabets.
class FunctionClass {
 public:
  FunctionClass() = default;
  // Throws ValidationError on an empty family, a partial table, or an output
  // index outside the output alphabet.
  FunctionClass(MapKind kind, int input_size, int output_size,
                std::vector<std::vector<Symbol>> tables);

  MapKind kind() const { return kind_; }
  int input_size() const { return input_size_; }
  int output_size() const { return output_size_; }
  int size() const { return static_cast<int>(tables_.size()); }
  const std::vector<Symbol>& table(int index) const {
    return tables_.at(static_cast<std::size_t>(index));
  }
  Map map(int index) const { return {input_size_, output_size_, table(index)}; }
  Symbol Apply(int index, Symbol x) const {
    return tables_[static_cast<std::size_t>(index)][static_cast<std::size_t>(x)];
  }

 private:
  MapKind kind_ = MapKind::kEncoder;
  int input_size_ = 0;
  int output_size_ = 0;
  std::vector<std::vector<Symbol>> tables_;
};

}  // namespace coadapt

#endif  // COADAPT_CORE_H_
