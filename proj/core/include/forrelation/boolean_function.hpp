/* Copyright 2026 The forrelation-nmr Authors. All Rights Reserved.
Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at
    http://www.apache.org/licenses/LICENSE-2.0
Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#ifndef FORRELATION_BOOLEAN_FUNCTION_HPP_
#define FORRELATION_BOOLEAN_FUNCTION_HPP_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace forr {

/// A ±1-valued function on n-bit strings, stored as its full truth table.
///
/// Index convention used everywhere in this library: the bit string
/// x = (x1 ... xn) maps to an integer with x1 as the most significant bit,
/// so table[0] is f(00...0) and table[2^n - 1] is f(11...1).
class BooleanFunction {
 public:
  BooleanFunction(int n_bits, std::vector<int> table);

  int n() const { return n_; }
  std::uint64_t size() const { return table_.size(); }
  const std::vector<int>& table() const { return table_; }

  /// Value at the basis index x (0 <= x < 2^n).
  int operator()(std::uint64_t x) const { return table_[x]; }

  bool operator==(const BooleanFunction& other) const = default;

 private:
  int n_;
  std::vector<int> table_;
};

/// Converts a bit string like "01" to its basis index (first char most
/// significant). Throws std::invalid_argument on non-binary characters or
/// length mismatch.
std::uint64_t bits_to_index(std::string_view bits, int n_bits);

/// Parses the diagonal-operator notation "D([1 1 1 -1])". Separators may be
/// spaces and/or commas. Errors carry the character position of the offence.
BooleanFunction parse_diagonal(std::string_view text, int n_bits);

/// Canonical inverse of parse_diagonal: single-space separators,
/// e.g. "D([1 1 1 -1])".
std::string format_diagonal(const BooleanFunction& f);

/// Orthonormal Walsh-Hadamard transform: out[y] = 2^{-n/2} sum_x (-1)^{x.y} in[x].
/// Self-inverse at this normalization. The input length must be a power of two.
std::vector<double> walsh_spectrum(const std::vector<double>& values);

/// Walsh spectrum of a ±1 truth table. Satisfies Parseval:
/// sum_y out[y]^2 == 2^n (checked; violation would be an internal error).
std::vector<double> walsh_spectrum(const BooleanFunction& f);

}  // namespace forr

#endif  // FORRELATION_BOOLEAN_FUNCTION_HPP_
