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

#ifndef FORRELATION_CIRCUIT_HPP_
#define FORRELATION_CIRCUIT_HPP_

#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "forrelation/counting_oracle.hpp"
#include "forrelation/forrelation.hpp"

namespace forr {

/// Dense m-qubit state. Qubit 0 is the most significant bit of the basis
/// index (the probe, when present, sits at index 0).
class StateVector {
 public:
  explicit StateVector(int qubits);  // |00...0>

  int qubits() const { return qubits_; }
  std::uint64_t dim() const { return amps_.size(); }
  const std::vector<std::complex<double>>& amplitudes() const { return amps_; }
  std::vector<std::complex<double>>& amplitudes() { return amps_; }

  double norm() const;

 private:
  int qubits_;
  std::vector<std::complex<double>> amps_;
};

/// One step of a Forrelation query circuit. Oracles and Hadamard layers can
/// be conditioned on a probe qubit, which is how the probe circuit applies
/// the whole work-register sequence under control.
struct CircuitOp {
  enum class Kind { kHadamardLayer, kOracle, kProbeHadamard };

  Kind kind;
  std::vector<int> targets;                    // work qubits, in x1..xn order
  std::optional<BooleanFunction> function;     // kOracle only
  std::optional<int> controlled_by;            // probe qubit, when controlled
  CountingOracle* counter = nullptr;           // optional instrumentation

  static CircuitOp hadamard_layer(std::vector<int> targets,
                                  std::optional<int> control = std::nullopt);
  static CircuitOp oracle(BooleanFunction f, std::vector<int> targets,
                          std::optional<int> control = std::nullopt);
  static CircuitOp probe_hadamard(int probe);
};

/// Interleaved Hadamard/oracle circuit for a k-fold instance.
///
/// Without probe: k+1 Hadamard layers around the k oracles on n work qubits,
/// so that <0^n|U|0^n> = Phi_k. With probe: a Hadamard test of that same U —
/// probe prepared by a Hadamard, the whole work sequence controlled on the
/// probe, closing probe Hadamard — so that <sigma_z^probe> = Phi_k.
///
/// When `counters` is non-empty it must hold one entry per function; oracle
/// gate applications are then recorded there.
std::vector<CircuitOp> build_forrelation_circuit(
    const ForrelationInstance& instance, bool with_probe,
    std::vector<CountingOracle>* counters = nullptr);

int circuit_width(const std::vector<CircuitOp>& ops);

/// Applies the ops in order. Throws on qubit-range mismatch; preserves the
/// norm to 1e-10 (all ops are unitary).
StateVector apply(const std::vector<CircuitOp>& ops, StateVector state);

/// <0^n|U|0^n> from the probe-free circuit; equal to forrelation() within
/// 1e-10. The imaginary part vanishes (all gates are real) and is checked.
double forrelation_amplitude(const ForrelationInstance& instance,
                             std::uint64_t* quantum_queries = nullptr);

/// <sigma_z> of the probe after the Hadamard-test circuit on |0>|0^n>;
/// equal to forrelation_amplitude for every instance.
double probe_expectation(const ForrelationInstance& instance,
                         std::uint64_t* quantum_queries = nullptr);

/// Dense unitary of the whole op sequence (small m only).
Eigen::MatrixXcd circuit_unitary(const std::vector<CircuitOp>& ops, int qubits);

}  // namespace forr

#endif  // FORRELATION_CIRCUIT_HPP_
