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

#ifndef FORRELATION_COUNTING_ORACLE_HPP_
#define FORRELATION_COUNTING_ORACLE_HPP_

#include <atomic>
#include <cstdint>
#include <string_view>

#include "forrelation/boolean_function.hpp"

namespace forr {

enum class QueryMode { kClassical, kQuantum };

/// Wraps a BooleanFunction and counts how often it is queried.
///
/// A quantum query is counted once per oracle-gate application to the full
/// register (record_quantum_gate), never per basis state. Counters are atomic:
/// totals are exact once all concurrent evaluations have completed. The
/// wrapped function itself is immutable.
class CountingOracle {
 public:
  explicit CountingOracle(BooleanFunction f) : function_(std::move(f)) {}

  CountingOracle(const CountingOracle& other)
      : function_(other.function_),
        classical_(other.classical_queries()),
        quantum_(other.quantum_queries()) {}

  const BooleanFunction& function() const { return function_; }

  /// Looks up f at the bit string x ("01"-style, first char most significant)
  /// and bumps the counter selected by mode.
  int evaluate(std::string_view x, QueryMode mode);

  /// Same lookup by basis index.
  int evaluate(std::uint64_t x, QueryMode mode);

  /// One oracle-gate application to the whole register.
  void record_quantum_gate() {
    quantum_.fetch_add(1, std::memory_order_relaxed);
  }

  std::uint64_t classical_queries() const {
    return classical_.load(std::memory_order_relaxed);
  }
  std::uint64_t quantum_queries() const {
    return quantum_.load(std::memory_order_relaxed);
  }

  /// Zeroes both counters; the wrapped function is untouched.
  void reset_counters() {
    classical_.store(0, std::memory_order_relaxed);
    quantum_.store(0, std::memory_order_relaxed);
  }

 private:
  BooleanFunction function_;
  std::atomic<std::uint64_t> classical_{0};
  std::atomic<std::uint64_t> quantum_{0};
};

}  // namespace forr

#endif  // FORRELATION_COUNTING_ORACLE_HPP_
