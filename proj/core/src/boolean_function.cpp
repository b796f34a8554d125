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

#include "forrelation/boolean_function.hpp"

#include <cmath>
#include <stdexcept>

namespace forr {

namespace {

[[noreturn]] void parse_error(std::string_view text, std::size_t pos,
                              const std::string& what) {
  throw std::invalid_argument("diagonal text \"" + std::string(text) +
                              "\": " + what + " at position " +
                              std::to_string(pos));
}

}  // namespace

BooleanFunction::BooleanFunction(int n_bits, std::vector<int> table)
    : n_(n_bits), table_(std::move(table)) {
  if (n_ < 1) {
    throw std::invalid_argument("BooleanFunction: n must be >= 1, got " +
                                std::to_string(n_));
  }
  const std::uint64_t expected = std::uint64_t{1} << n_;
  if (table_.size() != expected) {
    throw std::invalid_argument(
        "BooleanFunction: table length " + std::to_string(table_.size()) +
        " does not equal 2^" + std::to_string(n_));
  }
  for (std::size_t i = 0; i < table_.size(); ++i) {
    if (table_[i] != 1 && table_[i] != -1) {
      throw std::invalid_argument("BooleanFunction: entry " +
                                  std::to_string(table_[i]) + " at index " +
                                  std::to_string(i) + " is not in {-1, +1}");
    }
  }
}

std::uint64_t bits_to_index(std::string_view bits, int n_bits) {
  if (static_cast<int>(bits.size()) != n_bits) {
    throw std::invalid_argument("bit string \"" + std::string(bits) +
                                "\" has length " +
                                std::to_string(bits.size()) + ", expected " +
                                std::to_string(n_bits));
  }
  std::uint64_t x = 0;
  for (char c : bits) {
    if (c != '0' && c != '1') {
      throw std::invalid_argument("bit string \"" + std::string(bits) +
                                  "\" contains non-binary character");
    }
    x = (x << 1) | static_cast<std::uint64_t>(c - '0');
  }
  return x;
}

BooleanFunction parse_diagonal(std::string_view text, int n_bits) {
  std::size_t pos = 0;
  auto skip_ws = [&] {
    while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
  };

  skip_ws();
  if (text.compare(pos, 3, "D([") != 0) {
    parse_error(text, pos, "expected \"D([\"");
  }
  pos += 3;

  std::vector<int> table;
  bool want_separator = false;
  while (true) {
    skip_ws();
    if (pos >= text.size()) parse_error(text, pos, "unterminated list");
    if (text[pos] == ']') break;
    if (want_separator) {
      if (text[pos] == ',') {
        ++pos;
        skip_ws();
      }
      // A space already consumed by skip_ws also separates.
    }
    if (pos >= text.size()) parse_error(text, pos, "unterminated list");
    if (text[pos] == ']') break;

    const std::size_t tok_start = pos;
    bool negative = false;
    if (text[pos] == '-') {
      negative = true;
      ++pos;
    }
    if (pos >= text.size() || text[pos] < '0' || text[pos] > '9') {
      parse_error(text, tok_start, "expected 1 or -1");
    }
    std::size_t digits = 0;
    long value = 0;
    while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') {
      value = value * 10 + (text[pos] - '0');
      ++pos;
      if (++digits > 9) parse_error(text, tok_start, "element out of range");
    }
    if (negative) value = -value;
    if (value != 1 && value != -1) {
      parse_error(text, tok_start,
                  "element " + std::to_string(value) + " is not in {1, -1}");
    }
    table.push_back(static_cast<int>(value));
    want_separator = true;
  }
  ++pos;  // ']'
  if (pos >= text.size() || text[pos] != ')') {
    parse_error(text, pos, "expected \")\"");
  }
  ++pos;
  skip_ws();
  if (pos != text.size()) parse_error(text, pos, "trailing characters");

  const std::uint64_t expected = std::uint64_t{1} << n_bits;
  if (table.size() != expected) {
    throw std::invalid_argument(
        "diagonal text \"" + std::string(text) + "\": " +
        std::to_string(table.size()) + " elements listed, expected " +
        std::to_string(expected) + " for n=" + std::to_string(n_bits));
  }
  return BooleanFunction(n_bits, std::move(table));
}

std::string format_diagonal(const BooleanFunction& f) {
  std::string out = "D([";
  for (std::size_t i = 0; i < f.table().size(); ++i) {
    if (i) out += ' ';
    out += f.table()[i] == 1 ? "1" : "-1";
  }
  out += "])";
  return out;
}

std::vector<double> walsh_spectrum(const std::vector<double>& values) {
  const std::size_t size = values.size();
  if (size == 0 || (size & (size - 1)) != 0) {
    throw std::invalid_argument("walsh_spectrum: length must be a power of two");
  }
  std::vector<double> out = values;
  // In-place fast transform; pairs (i, i+half) combine as (a+b, a-b).
  for (std::size_t half = 1; half < size; half <<= 1) {
    for (std::size_t block = 0; block < size; block += 2 * half) {
      for (std::size_t i = block; i < block + half; ++i) {
        const double a = out[i];
        const double b = out[i + half];
        out[i] = a + b;
        out[i + half] = a - b;
      }
    }
  }
  const double norm = 1.0 / std::sqrt(static_cast<double>(size));
  for (double& v : out) v *= norm;
  return out;
}

std::vector<double> walsh_spectrum(const BooleanFunction& f) {
  std::vector<double> values(f.table().begin(), f.table().end());
  std::vector<double> out = walsh_spectrum(values);

  double power = 0.0;
  for (double v : out) power += v * v;
  const double expected = static_cast<double>(f.size());
  if (std::abs(power - expected) > 1e-6 * expected) {
    throw std::logic_error("walsh_spectrum: Parseval check failed");
  }
  return out;
}

}  // namespace forr
