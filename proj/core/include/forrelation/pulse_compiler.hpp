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

#ifndef FORRELATION_PULSE_COMPILER_HPP_
#define FORRELATION_PULSE_COMPILER_HPP_

#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "forrelation/circuit.hpp"
#include "forrelation/spin_system.hpp"

namespace forr {

/// A compiled NMR event list. Hard pulses are instantaneous, so the total
/// duration is the sum of the delays.
struct PulseSequence {
  std::vector<PulseEvent> events;
  SpinSystemParams params;

  struct Stats {
    int pulses = 0;
    int delays = 0;
    double duration_s = 0.0;
  };
  Stats stats() const;
};

/// Compiles a Forrelation circuit (Hadamard layers, diagonal oracles, probe
/// Hadamards, each optionally probe-controlled) into hard pulses and
/// J-coupling delays on the given spin system.
///
/// Hadamards execute as single pi/2 pulses; the accompanying z-rotations are
/// never executed but tracked in software and absorbed into the phases of
/// later pulses. Diagonal oracles factor into tracked z-rotations, ZZ delays
/// (with midpoint-echo refocusing so spectator spins and unwanted couplings
/// see net identity), and CNOT-conjugated ZZ delays for three-body terms.
/// Tracked z-rotations still pending at the end of the sequence are realized
/// as composite transverse-pulse blocks, so sequence_unitary(compile(ops))
/// reproduces the ideal circuit unitary up to global phase.
///
/// The circuit width must equal params.spins (at most 3).
PulseSequence compile(const std::vector<CircuitOp>& ops,
                      const SpinSystemParams& params);

/// Ordered product of the event propagators (free_evolution / hard_pulse).
Eigen::MatrixXcd sequence_unitary(const PulseSequence& seq);

struct PhaseEquivalence {
  bool equivalent = false;
  double phase = 0.0;  // the alpha maximizing |tr(V^dagger U)|
};

/// True iff max|U - e^{i alpha} V| <= 1e-8 at the optimal alpha.
PhaseEquivalence equivalent_up_to_phase(const Eigen::MatrixXcd& u,
                                        const Eigen::MatrixXcd& v,
                                        double tol = 1e-8);

/// Line-oriented text form: one "PULSE spins=.. angle=.. phase=.." or
/// "DELAY t=.." per line, then a "# pulses=.. delays=.. duration=.." trailer.
std::string sequence_to_text(const PulseSequence& seq);
PulseSequence sequence_from_text(std::string_view text,
                                 const SpinSystemParams& params);

}  // namespace forr

#endif  // FORRELATION_PULSE_COMPILER_HPP_
