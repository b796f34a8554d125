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
#include <numbers>

#include "forrelation/circuit.hpp"
#include "forrelation/density.hpp"
#include "forrelation/pulse_compiler.hpp"

using namespace forr;

namespace {

constexpr double kPi = std::numbers::pi;

const BooleanFunction kBent(2, {1, 1, 1, -1});
const BooleanFunction kConstant(2, {1, 1, 1, 1});

SpinSystemParams two_spin_params() {
  SpinSystemParams p;
  p.spins = 2;
  p.shifts_hz = {180.0, -75.0};
  p.couplings_hz[{0, 1}] = 220.0;
  return p;
}

}  // namespace

TEST_CASE("identity circuit compiles to an empty sequence") {
  const auto seq = compile({}, two_spin_params());
  CHECK(seq.events.empty());
  const auto s = seq.stats();
  CHECK(s.pulses == 0);
  CHECK(s.delays == 0);
  CHECK(s.duration_s == 0.0);
}

TEST_CASE("single oracle compiles to the diagonal up to global phase") {
  const auto ops = std::vector<CircuitOp>{CircuitOp::oracle(kBent, {0, 1})};
  const auto seq = compile(ops, two_spin_params());
  const auto u = sequence_unitary(seq);

  Eigen::MatrixXcd target = Eigen::MatrixXcd::Identity(4, 4);
  target(3, 3) = -1.0;
  const auto eq = equivalent_up_to_phase(u, target);
  CHECK(eq.equivalent);

  // Phase tracking leaves only DELAY and transverse PULSE events.
  for (const auto& e : seq.events) {
    const bool is_delay = e.kind == PulseEvent::Kind::kDelay;
    const bool is_pulse = e.kind == PulseEvent::Kind::kHardPulse;
    CHECK((is_delay || is_pulse));
  }
}

TEST_CASE("oracle on a spectator-containing system refocuses the spectator") {
  // ZZ work happens on spins 1 and 2 of a 3-spin system; spin 0 must see
  // exact identity (shifts and couplings echoed away).
  const auto params = SpinSystemParams::placeholder_three_spin();
  const auto ops = std::vector<CircuitOp>{CircuitOp::oracle(kBent, {1, 2})};
  const auto u = sequence_unitary(compile(ops, params));

  Eigen::MatrixXcd cz = Eigen::MatrixXcd::Identity(4, 4);
  cz(3, 3) = -1.0;
  Eigen::MatrixXcd target = Eigen::MatrixXcd::Zero(8, 8);
  target.topLeftCorner(4, 4) = cz;
  target.bottomRightCorner(4, 4) = cz;

  const auto eq = equivalent_up_to_phase(u, target);
  CHECK(eq.equivalent);
}

TEST_CASE("probe-free two-fold circuits compile soundly") {
  const auto params = two_spin_params();
  for (const auto& f : {kBent, kConstant, BooleanFunction(2, {1, -1, 1, -1})}) {
    for (const auto& g : {kBent, BooleanFunction(2, {-1, 1, 1, 1})}) {
      const ForrelationInstance inst({f, g});
      const auto ops = build_forrelation_circuit(inst, false);
      const auto seq = compile(ops, params);
      const auto eq =
          equivalent_up_to_phase(sequence_unitary(seq), circuit_unitary(ops, 2));
      CHECK(eq.equivalent);
    }
  }
}

TEST_CASE("probe circuits compile soundly on three spins") {
  const auto params = SpinSystemParams::placeholder_three_spin();
  const ForrelationInstance inst({kBent, kBent});
  const auto ops = build_forrelation_circuit(inst, true);
  const auto seq = compile(ops, params);
  const auto eq =
      equivalent_up_to_phase(sequence_unitary(seq), circuit_unitary(ops, 3));
  CHECK(eq.equivalent);

  const auto s = seq.stats();
  CHECK(s.pulses > 0);
  CHECK(s.delays > 0);
  CHECK(s.duration_s > 0.0);
  CHECK(s.duration_s ==
        doctest::Approx([&] {
          double total = 0.0;
          for (const auto& e : seq.events) {
            if (e.kind == PulseEvent::Kind::kDelay) total += e.duration_s;
          }
          return total;
        }()).epsilon(1e-15));
}

TEST_CASE("compiled probe pipeline reproduces <sigma_z> = Phi") {
  const auto params = SpinSystemParams::placeholder_three_spin();
  const auto hits = find_instances(1.0, 2, 2, 1);
  REQUIRE(!hits.empty());
  const auto ops = build_forrelation_circuit(hits[0], true);
  const auto seq = compile(ops, params);

  const auto pps = pseudo_pure(0.5, 3);
  const auto final_state = evolve(pps, sequence_unitary(seq));
  const double calibrated = expect_pauli(final_state, "ZII") / 0.5;
  CHECK(calibrated == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("negative coupling angles compile via sign conjugation") {
  SpinSystemParams params = two_spin_params();
  params.couplings_hz[{0, 1}] = -220.0;  // negative J
  const ForrelationInstance inst({kBent, kBent});
  const auto ops = build_forrelation_circuit(inst, false);
  const auto eq = equivalent_up_to_phase(sequence_unitary(compile(ops, params)),
                                         circuit_unitary(ops, 2));
  CHECK(eq.equivalent);
}

TEST_CASE("compile error paths") {
  SpinSystemParams uncoupled;
  uncoupled.spins = 2;
  uncoupled.shifts_hz = {10.0, -20.0};
  const ForrelationInstance inst({kBent, kBent});
  const auto ops = build_forrelation_circuit(inst, false);
  CHECK_THROWS_WITH_AS(compile(ops, uncoupled) /* no J */,
                       doctest::Contains("coupling"), std::invalid_argument);

  CHECK_THROWS_AS(compile(ops, SpinSystemParams::placeholder_three_spin()),
                  std::invalid_argument);  // width mismatch
}

TEST_CASE("equivalent_up_to_phase fixtures") {
  const auto params = two_spin_params();
  const auto h_layer =
      circuit_unitary({CircuitOp::hadamard_layer({0, 1})}, 2);
  const auto oracle = circuit_unitary({CircuitOp::oracle(kBent, {0, 1})}, 2);

  auto eq = equivalent_up_to_phase(h_layer, h_layer);
  CHECK(eq.equivalent);
  CHECK(eq.phase == doctest::Approx(0.0).epsilon(1e-12));

  eq = equivalent_up_to_phase(h_layer, -h_layer);
  CHECK(eq.equivalent);
  CHECK(std::abs(eq.phase) == doctest::Approx(kPi).epsilon(1e-12));

  eq = equivalent_up_to_phase(h_layer, oracle);
  CHECK(!eq.equivalent);
}

TEST_CASE("sequence text round-trips") {
  const auto params = two_spin_params();
  const ForrelationInstance inst({kBent, kConstant});
  const auto seq = compile(build_forrelation_circuit(inst, false), params);
  const auto text = sequence_to_text(seq);
  const auto back = sequence_from_text(text, params);
  REQUIRE(back.events.size() == seq.events.size());
  const auto eq =
      equivalent_up_to_phase(sequence_unitary(back), sequence_unitary(seq));
  CHECK(eq.equivalent);
  CHECK(text.find("# pulses=") != std::string::npos);
}
