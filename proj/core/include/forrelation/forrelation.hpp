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

#ifndef FORRELATION_FORRELATION_HPP_
#define FORRELATION_FORRELATION_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "forrelation/boolean_function.hpp"
#include "forrelation/counting_oracle.hpp"

namespace forr {

/// k Boolean functions over the same n bits, optionally annotated with the
/// Forrelation value the instance was selected for.
struct ForrelationInstance {
  int k;
  int n;
  std::vector<BooleanFunction> functions;
  std::optional<double> target;

  ForrelationInstance(std::vector<BooleanFunction> fs,
                      std::optional<double> target_value = std::nullopt);

  /// "f1=D([..]) f2=D([..]) ..." — also the deduplication key in searches.
  std::string canonical_text() const;
};

enum class PromiseLabel { kLarge, kSmall, kNeither };

struct Classification {
  PromiseLabel label;
  double value;
};

/// Decision thresholds of the promise problem.
inline constexpr double kLargeThreshold = 3.0 / 5.0;
inline constexpr double kSmallThreshold = 1.0 / 100.0;

const char* to_string(PromiseLabel label);

/// Enumeration guard: the exact evaluator walks 2^{k*n} terms and refuses to
/// run past this bound. FORRELATION_GUARD in the environment overrides the
/// built-in default of 24.
int enumeration_guard();

/// Exact k-fold Forrelation
///   Phi_k = 2^{-(k+1)n/2} sum_{x1..xk} (-1)^{x1.x2 + ... + x_{k-1}.x_k}
///           f1(x1) ... fk(xk)
/// evaluated by direct enumeration with integer accumulation; the single
/// final scaling keeps n=2 values like 0.5 exact in floating point.
double forrelation(const ForrelationInstance& instance,
                   int max_kn = enumeration_guard());

struct CountedForrelation {
  double value;
  std::uint64_t classical_queries;
};

/// Same sum, but every function lookup goes through a CountingOracle.
/// Memoized: each function is read once per input (k * 2^n queries).
/// Non-memoized: every term re-queries all k functions (k * 2^{kn}).
CountedForrelation forrelation_counted(const ForrelationInstance& instance,
                                       bool memoized,
                                       int max_kn = enumeration_guard());

/// LARGE iff phi >= 3/5, SMALL iff |phi| <= 1/100, otherwise NEITHER.
Classification classify(double phi);

/// Queries an exact classical evaluation costs: k*2^n memoized, k*2^{kn} not.
std::uint64_t classical_query_cost(int k, int n, bool memoized);

/// Enumerates k-tuples of n-bit diagonal functions in lexicographic table
/// order (entries compared numerically, -1 before +1) and returns up to
/// `limit` instances with |Phi - target| <= 1e-12.
std::vector<ForrelationInstance> find_instances(double target, int k, int n,
                                                std::size_t limit);

}  // namespace forr

#endif  // FORRELATION_FORRELATION_HPP_
