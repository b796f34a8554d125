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

#include "forrelation/forrelation.hpp"

#include <bit>
#include <cmath>
#include <cstdlib>
#include <set>
#include <stdexcept>

namespace forr {

namespace {

int parity(std::uint64_t v) { return std::popcount(v) & 1; }

void check_guard(int k, int n, int max_kn) {
  if (k < 2) throw std::invalid_argument("forrelation: k must be >= 2");
  if (k * n > max_kn) {
    throw std::runtime_error(
        "forrelation: k*n = " + std::to_string(k * n) +
        " exceeds the enumeration guard " + std::to_string(max_kn) +
        " (set FORRELATION_GUARD or pass a larger bound to override)");
  }
}

/// 2^{-(k+1)n/2} as an exact double when (k+1)n is even, otherwise via sqrt.
double normalization(int k, int n) {
  const int e = (k + 1) * n;
  if (e % 2 == 0) return std::ldexp(1.0, -e / 2);
  return std::ldexp(1.0, -(e - 1) / 2) / std::sqrt(2.0);
}

double finish(std::int64_t accumulated, int k, int n) {
  const double phi = static_cast<double>(accumulated) * normalization(k, n);
  if (std::abs(phi) > 1.0 + 1e-12) {
    throw std::logic_error("forrelation: |Phi| = " + std::to_string(phi) +
                           " violates the [-1, 1] bound");
  }
  return phi;
}

/// Walks all 2^{kn} assignments in odometer order, calling term(values, sign)
/// with the current per-slot basis indices and interference sign.
template <typename Term>
void enumerate_terms(int k, int n, Term&& term) {
  const std::uint64_t per = std::uint64_t{1} << n;
  std::vector<std::uint64_t> x(static_cast<std::size_t>(k), 0);
  while (true) {
    int sign = 0;
    for (int i = 0; i + 1 < k; ++i) sign ^= parity(x[i] & x[i + 1]);
    term(x, sign ? -1 : 1);

    int slot = k - 1;
    while (slot >= 0 && ++x[slot] == per) {
      x[slot] = 0;
      --slot;
    }
    if (slot < 0) break;
  }
}

}  // namespace

ForrelationInstance::ForrelationInstance(std::vector<BooleanFunction> fs,
                                         std::optional<double> target_value)
    : k(static_cast<int>(fs.size())),
      n(fs.empty() ? 0 : fs.front().n()),
      functions(std::move(fs)),
      target(target_value) {
  if (k < 2) {
    throw std::invalid_argument("ForrelationInstance: need at least 2 functions");
  }
  for (const auto& f : functions) {
    if (f.n() != n) {
      throw std::invalid_argument(
          "ForrelationInstance: all functions must share the same bit count");
    }
  }
  if (target && std::abs(*target) > 1.0) {
    throw std::invalid_argument("ForrelationInstance: |target| must be <= 1");
  }
}

std::string ForrelationInstance::canonical_text() const {
  std::string out;
  for (int i = 0; i < k; ++i) {
    if (i) out += ' ';
    out += 'f' + std::to_string(i + 1) + '=' + format_diagonal(functions[i]);
  }
  return out;
}

const char* to_string(PromiseLabel label) {
  switch (label) {
    case PromiseLabel::kLarge: return "LARGE";
    case PromiseLabel::kSmall: return "SMALL";
    case PromiseLabel::kNeither: return "NEITHER";
  }
  return "?";
}

int enumeration_guard() {
  static const int guard = [] {
    if (const char* env = std::getenv("FORRELATION_GUARD")) {
      const int v = std::atoi(env);
      if (v > 0) return v;
    }
    return 24;
  }();
  return guard;
}

double forrelation(const ForrelationInstance& instance, int max_kn) {
  check_guard(instance.k, instance.n, max_kn);
  std::int64_t sum = 0;
  enumerate_terms(instance.k, instance.n,
                  [&](const std::vector<std::uint64_t>& x, int sign) {
                    int product = sign;
                    for (int i = 0; i < instance.k; ++i) {
                      product *= instance.functions[i](x[i]);
                    }
                    sum += product;
                  });
  return finish(sum, instance.k, instance.n);
}

CountedForrelation forrelation_counted(const ForrelationInstance& instance,
                                       bool memoized, int max_kn) {
  check_guard(instance.k, instance.n, max_kn);
  std::vector<CountingOracle> oracles;
  oracles.reserve(instance.functions.size());
  for (const auto& f : instance.functions) oracles.emplace_back(f);

  std::int64_t sum = 0;
  if (memoized) {
    const std::uint64_t per = std::uint64_t{1} << instance.n;
    std::vector<std::vector<int>> memo(oracles.size());
    for (std::size_t i = 0; i < oracles.size(); ++i) {
      memo[i].reserve(per);
      for (std::uint64_t x = 0; x < per; ++x) {
        memo[i].push_back(oracles[i].evaluate(x, QueryMode::kClassical));
      }
    }
    enumerate_terms(instance.k, instance.n,
                    [&](const std::vector<std::uint64_t>& x, int sign) {
                      int product = sign;
                      for (int i = 0; i < instance.k; ++i) product *= memo[i][x[i]];
                      sum += product;
                    });
  } else {
    enumerate_terms(instance.k, instance.n,
                    [&](const std::vector<std::uint64_t>& x, int sign) {
                      int product = sign;
                      for (int i = 0; i < instance.k; ++i) {
                        product *= oracles[i].evaluate(x[i], QueryMode::kClassical);
                      }
                      sum += product;
                    });
  }

  std::uint64_t total = 0;
  for (const auto& oracle : oracles) total += oracle.classical_queries();
  return {finish(sum, instance.k, instance.n), total};
}

Classification classify(double phi) {
  if (std::abs(phi) > 1.0) {
    throw std::invalid_argument("classify: |phi| must be <= 1");
  }
  if (phi >= kLargeThreshold) return {PromiseLabel::kLarge, phi};
  if (std::abs(phi) <= kSmallThreshold) return {PromiseLabel::kSmall, phi};
  return {PromiseLabel::kNeither, phi};
}

std::uint64_t classical_query_cost(int k, int n, bool memoized) {
  if (k < 2 || n < 1) {
    throw std::invalid_argument("classical_query_cost: need k >= 2, n >= 1");
  }
  if (memoized) {
    return static_cast<std::uint64_t>(k) * (std::uint64_t{1} << n);
  }
  return static_cast<std::uint64_t>(k) * (std::uint64_t{1} << (k * n));
}

std::vector<ForrelationInstance> find_instances(double target, int k, int n,
                                                std::size_t limit) {
  if (std::abs(target) > 1.0) {
    throw std::invalid_argument("find_instances: |target| must be <= 1");
  }
  if (n > 3 || k * n > enumeration_guard()) {
    throw std::runtime_error("find_instances: search space too large");
  }

  const std::uint64_t table_len = std::uint64_t{1} << n;
  const std::uint64_t function_count = std::uint64_t{1} << table_len;

  // Function index -> table, ordered so that ascending index is ascending
  // numeric lexicographic table order ((-1,-1,..) first, (+1,+1,..) last).
  std::vector<BooleanFunction> all;
  all.reserve(function_count);
  for (std::uint64_t code = 0; code < function_count; ++code) {
    std::vector<int> table(table_len);
    for (std::uint64_t j = 0; j < table_len; ++j) {
      const bool high_bit = (code >> (table_len - 1 - j)) & 1;
      table[j] = high_bit ? 1 : -1;
    }
    all.emplace_back(n, std::move(table));
  }

  std::vector<ForrelationInstance> hits;
  std::set<std::string> seen;
  std::vector<std::uint64_t> pick(static_cast<std::size_t>(k), 0);
  while (hits.size() < limit) {
    std::vector<BooleanFunction> tuple;
    tuple.reserve(pick.size());
    for (std::uint64_t idx : pick) tuple.push_back(all[idx]);
    ForrelationInstance candidate(std::move(tuple));
    if (std::abs(forrelation(candidate) - target) <= 1e-12 &&
        seen.insert(candidate.canonical_text()).second) {
      candidate.target = target;
      hits.push_back(std::move(candidate));
    }

    int slot = k - 1;
    while (slot >= 0 && ++pick[slot] == function_count) {
      pick[slot] = 0;
      --slot;
    }
    if (slot < 0) break;
  }
  return hits;
}

}  // namespace forr
