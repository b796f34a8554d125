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

#include "forrelation/spin_system.hpp"

using namespace forr;

namespace {

constexpr double kPi = std::numbers::pi;

double unitarity_defect(const Eigen::MatrixXcd& u) {
  return (u.adjoint() * u -
          Eigen::MatrixXcd::Identity(u.rows(), u.cols()))
      .cwiseAbs()
      .maxCoeff();
}

SpinSystemParams one_spin(double shift_hz) {
  SpinSystemParams p;
  p.spins = 1;
  p.shifts_hz = {shift_hz};
  return p;
}

SpinSystemParams two_spin(double j_hz) {
  SpinSystemParams p;
  p.spins = 2;
  p.shifts_hz = {0.0, 0.0};
  p.couplings_hz[{0, 1}] = j_hz;
  return p;
}

}  // namespace

TEST_CASE("internal Hamiltonian fixtures") {
  SpinSystemParams silent;
  silent.spins = 2;
  silent.shifts_hz = {0.0, 0.0};
  CHECK(internal_hamiltonian(silent).cwiseAbs().maxCoeff() == 0.0);

  const auto zeeman = internal_hamiltonian(one_spin(1.0));
  CHECK(zeeman(0, 0).real() == doctest::Approx(kPi).epsilon(1e-15));
  CHECK(zeeman(1, 1).real() == doctest::Approx(-kPi).epsilon(1e-15));

  const auto zz = internal_hamiltonian_diagonal(two_spin(1.0));
  CHECK(zz[0] == doctest::Approx(kPi / 2).epsilon(1e-15));
  CHECK(zz[1] == doctest::Approx(-kPi / 2).epsilon(1e-15));
  CHECK(zz[2] == doctest::Approx(-kPi / 2).epsilon(1e-15));
  CHECK(zz[3] == doctest::Approx(kPi / 2).epsilon(1e-15));
}

TEST_CASE("internal Hamiltonian commutes with every sigma_z") {
  const auto params = SpinSystemParams::placeholder_three_spin();
  const auto h = internal_hamiltonian(params);
  for (int spin = 0; spin < params.spins; ++spin) {
    const auto z = embedded_pauli(2, spin, params.spins);
    CHECK((h * z - z * h).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("free evolution fixtures") {
  const auto params = two_spin(10.0);
  const auto id = free_evolution(params, 0.0);
  CHECK((id - Eigen::MatrixXcd::Identity(4, 4)).cwiseAbs().maxCoeff() == 0.0);

  // t = 1/(2J): the controlled-phase building block.
  const auto u = free_evolution(params, 1.0 / 20.0);
  const auto phase = std::exp(std::complex<double>(0.0, -kPi / 4.0));
  CHECK(std::abs(u(0, 0) - phase) < 1e-12);
  CHECK(std::abs(u(1, 1) - std::conj(phase)) < 1e-12);
  CHECK(std::abs(u(2, 2) - std::conj(phase)) < 1e-12);
  CHECK(std::abs(u(3, 3) - phase) < 1e-12);

  // Semigroup property.
  const auto a = free_evolution(params, 0.013);
  const auto b = free_evolution(params, 0.029);
  const auto both = free_evolution(params, 0.042);
  CHECK((a * b - both).cwiseAbs().maxCoeff() < 1e-12);

  CHECK(unitarity_defect(u) < 1e-12);
  CHECK_THROWS_AS(free_evolution(params, -1.0), std::invalid_argument);
}

TEST_CASE("hard pulse fixtures") {
  // 2*pi rotation: -identity.
  const auto full_turn = hard_pulse(PulseEvent::hard_pulse({0}, 2 * kPi, 0.3), 1);
  CHECK((full_turn + Eigen::MatrixXcd::Identity(2, 2)).cwiseAbs().maxCoeff() <
        1e-12);

  // pi about x:
  const auto pi_x = hard_pulse(PulseEvent::hard_pulse({0}, kPi, 0.0), 1);
  Eigen::MatrixXcd minus_i_sigma_x(2, 2);
  minus_i_sigma_x << 0, std::complex<double>(0, -1),
      std::complex<double>(0, -1), 0;
  CHECK((pi_x - minus_i_sigma_x).cwiseAbs().maxCoeff() < 1e-15);

  // Inverse rotations cancel.
  const auto up = hard_pulse(PulseEvent::hard_pulse({0, 1}, kPi / 2, kPi / 2), 2);
  const auto down =
      hard_pulse(PulseEvent::hard_pulse({0, 1}, -kPi / 2, kPi / 2), 2);
  CHECK((up * down - Eigen::MatrixXcd::Identity(4, 4)).cwiseAbs().maxCoeff() <
        1e-14);

  CHECK(unitarity_defect(up) < 1e-12);
  CHECK_THROWS_AS(PulseEvent::hard_pulse({}, kPi, 0.0), std::invalid_argument);

  // Multi-spin pulse factorizes into commuting single-spin rotations.
  const auto pair = hard_pulse(PulseEvent::hard_pulse({0, 1}, 0.7, 0.2), 2);
  const auto first = hard_pulse(PulseEvent::hard_pulse({0}, 0.7, 0.2), 2);
  const auto second = hard_pulse(PulseEvent::hard_pulse({1}, 0.7, 0.2), 2);
  CHECK((pair - first * second).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("shaped propagator: zero amplitude reduces to free evolution") {
  const auto params = SpinSystemParams::placeholder_three_spin();
  ControlPulse pulse({0, 1, 2}, 40, 1e-4);
  const auto shaped = shaped_propagator(params, pulse);
  const auto free = free_evolution(params, pulse.duration());
  CHECK((shaped - free).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(unitarity_defect(shaped) < 1e-10);
}

TEST_CASE("shaped propagator: constant x drive is the Rabi rotation") {
  const auto params = one_spin(0.0);
  const double amp_hz = 125.0;
  const double t = 2e-3;  // 2 pi a t = pi/2
  ControlPulse pulse({0}, 25, t / 25);
  for (int s = 0; s < 25; ++s) pulse.at(s, 0, 0) = amp_hz;

  const double angle = 2.0 * kPi * amp_hz * t;
  const auto expected =
      hard_pulse(PulseEvent::hard_pulse({0}, angle, 0.0), 1);
  const auto shaped = shaped_propagator(params, pulse);
  CHECK((shaped - expected).cwiseAbs().maxCoeff() < 1e-10);
  CHECK(angle == doctest::Approx(kPi / 2).epsilon(1e-12));
}

TEST_CASE("shaped propagator: rf_scale scales the drive linearly") {
  const auto params = one_spin(0.0);
  ControlPulse pulse({0}, 10, 1e-4);
  for (int s = 0; s < 10; ++s) pulse.at(s, 0, 0) = 100.0;

  ControlPulse scaled = pulse;
  for (int s = 0; s < 10; ++s) scaled.at(s, 0, 0) = 110.0;

  const auto via_scale = shaped_propagator(params, pulse, 1.1);
  const auto via_amps = shaped_propagator(params, scaled, 1.0);
  CHECK((via_scale - via_amps).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("segment-halving refinement converges for smooth pulses") {
  // A sine-shaped drive sampled at M and 2M segments; the piecewise-constant
  // propagators must agree closely once the sampling resolves the envelope.
  SpinSystemParams params;
  params.spins = 2;
  params.shifts_hz = {40.0, -25.0};
  params.couplings_hz[{0, 1}] = 60.0;

  const double duration = 2e-3;
  auto envelope = [&](double t, int channel) {
    return 80.0 * std::sin(kPi * t / duration) * (channel == 0 ? 1.0 : 0.6);
  };

  auto sample = [&](int segments) {
    ControlPulse pulse({0, 1}, segments, duration / segments);
    for (int s = 0; s < segments; ++s) {
      const double mid = (s + 0.5) * pulse.dt;
      for (int c = 0; c < 2; ++c) {
        pulse.at(s, c, 0) = envelope(mid, c);
        pulse.at(s, c, 1) = 0.4 * envelope(mid, c);
      }
    }
    return shaped_propagator(params, pulse);
  };

  const auto coarse = sample(256);
  const auto fine = sample(512);
  CHECK((coarse - fine).cwiseAbs().maxCoeff() <= 1e-6);
}

TEST_CASE("parameter and channel validation") {
  SpinSystemParams bad;
  bad.spins = 2;
  bad.shifts_hz = {1.0};
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

  SpinSystemParams reversed;
  reversed.spins = 2;
  reversed.shifts_hz = {0.0, 0.0};
  reversed.couplings_hz[{1, 0}] = 5.0;
  CHECK_THROWS_AS(reversed.validate(), std::invalid_argument);

  const auto params = one_spin(0.0);
  ControlPulse pulse({3}, 4, 1e-4);
  CHECK_THROWS_AS(shaped_propagator(params, pulse), std::invalid_argument);
}
