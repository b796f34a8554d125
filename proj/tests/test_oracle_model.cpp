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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <bit>
#include <cmath>
#include <random>
#include <thread>

#include "forrelation/boolean_function.hpp"
#include "forrelation/counting_oracle.hpp"

using namespace forr;

namespace {

/// Independent O(4^n) transform used to check the fast implementation.
std::vector<double> walsh_by_sign_matrix(const std::vector<int>& table) {
  const std::size_t size = table.size();
  std::size_t n = 0;
  while ((std::size_t{1} << n) < size) ++n;
  std::vector<double> out(size, 0.0);
  for (std::size_t y = 0; y < size; ++y) {
    double sum = 0.0;
    for (std::size_t x = 0; x < size; ++x) {
      const int parity = std::popcount(x & y) & 1;
      sum += (parity ? -1.0 : 1.0) * table[x];
    }
    out[y] = sum / std::sqrt(static_cast<double>(size));
  }
  return out;
}

BooleanFunction random_function(int n, std::mt19937& rng) {
  std::vector<int> table(std::size_t{1} << n);
  std::bernoulli_distribution coin(0.5);
  for (auto& v : table) v = coin(rng) ? 1 : -1;
  return BooleanFunction(n, std::move(table));
}

}  // namespace

TEST_CASE("parse_diagonal accepts the documented forms") {
  const auto constant = parse_diagonal("D([1 1 1 1])", 2);
  CHECK(constant.table() == std::vector<int>{1, 1, 1, 1});

  const auto bent = parse_diagonal("D([1 1 1 -1])", 2);
  CHECK(bent.table() == std::vector<int>{1, 1, 1, -1});

  const auto commas = parse_diagonal("D([1, 1, 1, -1])", 2);
  CHECK(commas.table() == bent.table());

  const auto mixed = parse_diagonal("D([1,1 1, -1])", 2);
  CHECK(mixed.table() == bent.table());
}

TEST_CASE("parse_diagonal rejects malformed input with positions") {
  CHECK_THROWS_WITH_AS(parse_diagonal("D([1 1 1])", 2),
                       doctest::Contains("3 elements listed"),
                       std::invalid_argument);
  CHECK_THROWS_WITH_AS(parse_diagonal("D([1 1 2 1])", 2),
                       doctest::Contains("position 7"), std::invalid_argument);
  CHECK_THROWS_AS(parse_diagonal("([1 1 1 1])", 2), std::invalid_argument);
  CHECK_THROWS_AS(parse_diagonal("D([1 1 1 1]", 2), std::invalid_argument);
  CHECK_THROWS_AS(parse_diagonal("D([1 1 1 1]) tail", 2),
                  std::invalid_argument);
  CHECK_THROWS_AS(parse_diagonal("D([1 1 1 0])", 2), std::invalid_argument);
}

TEST_CASE("parse/format round-trips on random tables") {
  std::mt19937 rng(7);
  for (int n = 1; n <= 4; ++n) {
    for (int trial = 0; trial < 20; ++trial) {
      const auto f = random_function(n, rng);
      const auto text = format_diagonal(f);
      const auto back = parse_diagonal(text, n);
      CHECK(back.table() == f.table());
      CHECK(format_diagonal(back) == text);
    }
  }
}

TEST_CASE("BooleanFunction invariants") {
  CHECK_THROWS_AS(BooleanFunction(2, {1, 1, 1}), std::invalid_argument);
  CHECK_THROWS_AS(BooleanFunction(2, {1, 1, 1, 2}), std::invalid_argument);
  CHECK_THROWS_AS(BooleanFunction(0, {1}), std::invalid_argument);
}

TEST_CASE("walsh_spectrum on the documented fixtures") {
  const BooleanFunction constant(2, {1, 1, 1, 1});
  const auto flat = walsh_spectrum(constant);
  CHECK(flat[0] == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(flat[1] == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(flat[2] == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(flat[3] == doctest::Approx(0.0).epsilon(1e-14));

  // (1,1,1,-1) is its own transform; checked against the direct 4x4
  // sign-matrix multiply.
  const BooleanFunction bent(2, {1, 1, 1, -1});
  const auto spectrum = walsh_spectrum(bent);
  const auto reference = walsh_by_sign_matrix(bent.table());
  for (int y = 0; y < 4; ++y) {
    CHECK(spectrum[y] == doctest::Approx(reference[y]).epsilon(1e-14));
    CHECK(spectrum[y] == doctest::Approx(bent.table()[y]).epsilon(1e-14));
  }
}

TEST_CASE("walsh_spectrum satisfies Parseval and is an involution") {
  std::mt19937 rng(11);
  for (int n = 1; n <= 6; ++n) {
    const auto f = random_function(n, rng);
    const auto spectrum = walsh_spectrum(f);

    double power = 0.0;
    for (double v : spectrum) power += v * v;
    CHECK(power == doctest::Approx(static_cast<double>(f.size())).epsilon(1e-12));

    const auto twice = walsh_spectrum(spectrum);
    for (std::size_t i = 0; i < twice.size(); ++i) {
      CHECK(twice[i] == doctest::Approx(f.table()[i]).epsilon(1e-12));
    }

    const auto reference = walsh_by_sign_matrix(f.table());
    for (std::size_t i = 0; i < reference.size(); ++i) {
      CHECK(spectrum[i] == doctest::Approx(reference[i]).epsilon(1e-12));
    }
  }
}

TEST_CASE("evaluate looks up the table and counts per mode") {
  CountingOracle oracle(parse_diagonal("D([1 1 1 -1])", 2));

  CHECK(oracle.evaluate("11", QueryMode::kClassical) == -1);
  CHECK(oracle.classical_queries() == 1);
  CHECK(oracle.quantum_queries() == 0);

  CountingOracle constant(parse_diagonal("D([1 1 1 1])", 2));
  CHECK(constant.evaluate("00", QueryMode::kQuantum) == 1);
  CHECK(constant.quantum_queries() == 1);
  CHECK(constant.classical_queries() == 0);

  CHECK_THROWS_AS(oracle.evaluate("110", QueryMode::kClassical),
                  std::invalid_argument);

  // The function is untouched by counting and resetting.
  const auto before = oracle.function().table();
  oracle.reset_counters();
  CHECK(oracle.classical_queries() == 0);
  CHECK(oracle.function().table() == before);
}

TEST_CASE("counters are exact under concurrent evaluation") {
  CountingOracle oracle(parse_diagonal("D([1 -1])", 1));
  constexpr int kThreads = 8;
  constexpr int kPerThread = 5000;
  std::vector<std::thread> workers;
  for (int t = 0; t < kThreads; ++t) {
    workers.emplace_back([&oracle] {
      for (int i = 0; i < kPerThread; ++i) {
        oracle.evaluate(std::uint64_t{0}, QueryMode::kClassical);
        oracle.record_quantum_gate();
      }
    });
  }
  for (auto& w : workers) w.join();
  CHECK(oracle.classical_queries() == kThreads * kPerThread);
  CHECK(oracle.quantum_queries() == kThreads * kPerThread);
}
