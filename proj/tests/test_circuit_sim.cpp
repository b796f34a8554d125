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

#include <cmath>
#include <random>

#include "forrelation/circuit.hpp"
#include "forrelation/forrelation.hpp"

using namespace forr;

namespace {

const BooleanFunction kConstant(2, {1, 1, 1, 1});
const BooleanFunction kBent(2, {1, 1, 1, -1});

BooleanFunction random_function(int n, std::mt19937& rng) {
  std::vector<int> table(std::size_t{1} << n);
  std::bernoulli_distribution coin(0.5);
  for (auto& v : table) v = coin(rng) ? 1 : -1;
  return BooleanFunction(n, std::move(table));
}

}  // namespace

TEST_CASE("circuit structure for k = 2 and k = 3") {
  const auto two = build_forrelation_circuit(
      ForrelationInstance({kBent, kBent}), false);
  REQUIRE(two.size() == 5);
  CHECK(two[0].kind == CircuitOp::Kind::kHadamardLayer);
  CHECK(two[1].kind == CircuitOp::Kind::kOracle);
  CHECK(two[2].kind == CircuitOp::Kind::kHadamardLayer);
  CHECK(two[3].kind == CircuitOp::Kind::kOracle);
  CHECK(two[4].kind == CircuitOp::Kind::kHadamardLayer);
  for (const auto& op : two) CHECK(!op.controlled_by);

  const auto three = build_forrelation_circuit(
      ForrelationInstance({kBent, kBent, kBent}), false);
  int oracles = 0, layers = 0;
  for (const auto& op : three) {
    oracles += op.kind == CircuitOp::Kind::kOracle;
    layers += op.kind == CircuitOp::Kind::kHadamardLayer;
  }
  CHECK(oracles == 3);
  CHECK(layers == 4);

  const auto probed = build_forrelation_circuit(
      ForrelationInstance({kBent, kBent}), true);
  CHECK(probed.front().kind == CircuitOp::Kind::kProbeHadamard);
  CHECK(probed.back().kind == CircuitOp::Kind::kProbeHadamard);
  for (std::size_t i = 1; i + 1 < probed.size(); ++i) {
    REQUIRE(probed[i].controlled_by);
    CHECK(*probed[i].controlled_by == 0);
  }
}

TEST_CASE("apply: Hadamard layer, oracle action, involution") {
  // H layer on |00>: uniform superposition.
  StateVector state(2);
  state = apply({CircuitOp::hadamard_layer({0, 1})}, std::move(state));
  for (const auto& a : state.amplitudes()) {
    CHECK(a.real() == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(a.imag() == 0.0);
  }

  // Oracle flips the last amplitude's sign on the uniform state.
  state = apply({CircuitOp::oracle(kBent, {0, 1})}, std::move(state));
  CHECK(state.amplitudes()[3].real() == doctest::Approx(-0.5).epsilon(1e-14));

  // Two successive H layers cancel.
  StateVector twice(3);
  twice = apply({CircuitOp::hadamard_layer({0, 1, 2}),
                 CircuitOp::hadamard_layer({0, 1, 2})},
                std::move(twice));
  CHECK(std::abs(twice.amplitudes()[0] - std::complex<double>(1, 0)) < 1e-12);
  for (std::size_t i = 1; i < twice.amplitudes().size(); ++i) {
    CHECK(std::abs(twice.amplitudes()[i]) < 1e-12);
  }
}

TEST_CASE("apply rejects out-of-range targets") {
  StateVector state(2);
  CHECK_THROWS_AS(apply({CircuitOp::hadamard_layer({2})}, std::move(state)),
                  std::invalid_argument);
  StateVector state2(2);
  CHECK_THROWS_AS(
      apply({CircuitOp::oracle(kBent, {0, 0})}, std::move(state2)),
      std::invalid_argument);
}

TEST_CASE("amplitude fixtures and query counting") {
  std::uint64_t queries = 0;
  CHECK(forrelation_amplitude(ForrelationInstance({kConstant, kConstant}),
                              &queries) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(queries == 2);

  CHECK(forrelation_amplitude(ForrelationInstance({kBent, kBent}), &queries) ==
        doctest::Approx(1.0).epsilon(1e-12));
  CHECK(queries == 2);

  CHECK(forrelation_amplitude(ForrelationInstance({kBent, kBent, kBent}),
                              &queries) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(queries == 3);
}

TEST_CASE("amplitude equals brute force over all 256 two-fold pairs") {
  for (int fc = 0; fc < 16; ++fc) {
    for (int gc = 0; gc < 16; ++gc) {
      std::vector<int> ft(4), gt(4);
      for (int j = 0; j < 4; ++j) {
        ft[j] = (fc >> (3 - j)) & 1 ? 1 : -1;
        gt[j] = (gc >> (3 - j)) & 1 ? 1 : -1;
      }
      const ForrelationInstance inst({BooleanFunction(2, ft),
                                      BooleanFunction(2, gt)});
      CHECK(std::abs(forrelation_amplitude(inst) - forrelation(inst)) <= 1e-10);
    }
  }
}

TEST_CASE("probe expectation equals the amplitude (Hadamard-test identity)") {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 60; ++trial) {
    const int k = 2 + (trial % 2);
    std::vector<BooleanFunction> fs;
    for (int i = 0; i < k; ++i) fs.push_back(random_function(2, rng));
    const ForrelationInstance inst(fs);
    std::uint64_t queries = 0;
    const double probe = probe_expectation(inst, &queries);
    CHECK(std::abs(probe - forrelation_amplitude(inst)) <= 1e-10);
    CHECK(queries == static_cast<std::uint64_t>(k));
  }
}

TEST_CASE("probe fixtures at the showcase targets") {
  const auto plus_one = find_instances(1.0, 2, 2, 1);
  REQUIRE(!plus_one.empty());
  CHECK(probe_expectation(plus_one[0]) == doctest::Approx(1.0).epsilon(1e-12));

  const auto zero = find_instances(0.0, 2, 2, 1);
  REQUIRE(!zero.empty());
  CHECK(std::abs(probe_expectation(zero[0])) <= 1e-10);

  // Phi = -1 via negation covariance of a Phi = 1 instance.
  std::vector<int> negated = plus_one[0].functions[0].table();
  for (int& v : negated) v = -v;
  const ForrelationInstance minus_one(
      {BooleanFunction(2, negated), plus_one[0].functions[1]});
  CHECK(probe_expectation(minus_one) == doctest::Approx(-1.0).epsilon(1e-12));
}

TEST_CASE("unitarity: norm preserved through deep circuits") {
  std::mt19937 rng(17);
  const ForrelationInstance inst(
      {random_function(3, rng), random_function(3, rng),
       random_function(3, rng)});
  const auto ops = build_forrelation_circuit(inst, true);
  StateVector state(4);
  state = apply(ops, std::move(state));
  CHECK(std::abs(state.norm() - 1.0) <= 1e-10);
}

TEST_CASE("circuit_unitary matches statevector runs") {
  const ForrelationInstance inst({kBent, kConstant});
  const auto ops = build_forrelation_circuit(inst, true);
  const auto u = circuit_unitary(ops, 3);

  // Column 0 is the circuit acting on |000>.
  StateVector state(3);
  state = apply(ops, std::move(state));
  for (int r = 0; r < 8; ++r) {
    CHECK(std::abs(u(r, 0) - state.amplitudes()[r]) < 1e-12);
  }

  // Unitarity of the dense form.
  const Eigen::MatrixXcd gram = u.adjoint() * u;
  CHECK((gram - Eigen::MatrixXcd::Identity(8, 8)).cwiseAbs().maxCoeff() <
        1e-12);
}
