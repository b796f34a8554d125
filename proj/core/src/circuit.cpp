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

#include "forrelation/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace forr {

namespace {

constexpr int kMaxQubits = 20;
constexpr double kInvSqrt2 = 0.70710678118654752440;

int bit_of(std::uint64_t index, int qubit, int qubits) {
  return static_cast<int>((index >> (qubits - 1 - qubit)) & 1);
}

void check_targets(const CircuitOp& op, int qubits) {
  std::set<int> seen;
  for (int t : op.targets) {
    if (t < 0 || t >= qubits) {
      throw std::invalid_argument("CircuitOp: target qubit " +
                                  std::to_string(t) + " out of range for " +
                                  std::to_string(qubits) + " qubits");
    }
    if (!seen.insert(t).second) {
      throw std::invalid_argument("CircuitOp: duplicate target qubit " +
                                  std::to_string(t));
    }
  }
  if (op.controlled_by) {
    const int c = *op.controlled_by;
    if (c < 0 || c >= qubits || seen.count(c)) {
      throw std::invalid_argument("CircuitOp: bad control qubit " +
                                  std::to_string(c));
    }
  }
  if (op.kind == CircuitOp::Kind::kOracle) {
    if (!op.function ||
        op.function->n() != static_cast<int>(op.targets.size())) {
      throw std::invalid_argument(
          "CircuitOp: oracle bit count does not match its target count");
    }
  }
}

/// In-place H on `qubit`, restricted to the control branch when given.
void apply_hadamard(std::vector<std::complex<double>>& amps, int qubit,
                    int qubits, std::optional<int> control) {
  const std::uint64_t mask = std::uint64_t{1} << (qubits - 1 - qubit);
  const std::uint64_t dim = amps.size();
  for (std::uint64_t i = 0; i < dim; ++i) {
    if (i & mask) continue;  // visit each pair once, from the 0 side
    if (control && bit_of(i, *control, qubits) == 0) continue;
    const std::uint64_t j = i | mask;
    const auto a = amps[i];
    const auto b = amps[j];
    amps[i] = (a + b) * kInvSqrt2;
    amps[j] = (a - b) * kInvSqrt2;
  }
}

}  // namespace

StateVector::StateVector(int qubits) : qubits_(qubits) {
  if (qubits < 1 || qubits > kMaxQubits) {
    throw std::invalid_argument("StateVector: qubit count " +
                                std::to_string(qubits) + " outside [1, " +
                                std::to_string(kMaxQubits) + "]");
  }
  amps_.assign(std::uint64_t{1} << qubits, {0.0, 0.0});
  amps_[0] = {1.0, 0.0};
}

double StateVector::norm() const {
  double sum = 0.0;
  for (const auto& a : amps_) sum += std::norm(a);
  return std::sqrt(sum);
}

CircuitOp CircuitOp::hadamard_layer(std::vector<int> targets,
                                    std::optional<int> control) {
  return {Kind::kHadamardLayer, std::move(targets), std::nullopt, control,
          nullptr};
}

CircuitOp CircuitOp::oracle(BooleanFunction f, std::vector<int> targets,
                            std::optional<int> control) {
  return {Kind::kOracle, std::move(targets), std::move(f), control, nullptr};
}

CircuitOp CircuitOp::probe_hadamard(int probe) {
  return {Kind::kProbeHadamard, {probe}, std::nullopt, std::nullopt, nullptr};
}

std::vector<CircuitOp> build_forrelation_circuit(
    const ForrelationInstance& instance, bool with_probe,
    std::vector<CountingOracle>* counters) {
  if (counters) {
    counters->clear();
    counters->reserve(instance.functions.size());
    for (const auto& f : instance.functions) counters->emplace_back(f);
  }

  std::vector<CircuitOp> ops;
  const int offset = with_probe ? 1 : 0;  // probe is qubit 0
  std::vector<int> work(instance.n);
  for (int i = 0; i < instance.n; ++i) work[i] = offset + i;
  const std::optional<int> control =
      with_probe ? std::optional<int>(0) : std::nullopt;

  if (with_probe) ops.push_back(CircuitOp::probe_hadamard(0));
  ops.push_back(CircuitOp::hadamard_layer(work, control));
  for (int i = 0; i < instance.k; ++i) {
    CircuitOp op = CircuitOp::oracle(instance.functions[i], work, control);
    if (counters) op.counter = &(*counters)[i];
    ops.push_back(std::move(op));
    ops.push_back(CircuitOp::hadamard_layer(work, control));
  }
  if (with_probe) ops.push_back(CircuitOp::probe_hadamard(0));
  return ops;
}

int circuit_width(const std::vector<CircuitOp>& ops) {
  int width = 0;
  for (const auto& op : ops) {
    for (int t : op.targets) width = std::max(width, t + 1);
    if (op.controlled_by) width = std::max(width, *op.controlled_by + 1);
  }
  return width;
}

StateVector apply(const std::vector<CircuitOp>& ops, StateVector state) {
  auto& amps = state.amplitudes();
  const int qubits = state.qubits();

  for (const auto& op : ops) {
    check_targets(op, qubits);
    switch (op.kind) {
      case CircuitOp::Kind::kHadamardLayer:
        for (int t : op.targets) {
          apply_hadamard(amps, t, qubits, op.controlled_by);
        }
        break;
      case CircuitOp::Kind::kProbeHadamard:
        apply_hadamard(amps, op.targets.at(0), qubits, std::nullopt);
        break;
      case CircuitOp::Kind::kOracle: {
        if (op.counter) op.counter->record_quantum_gate();
        const auto& f = *op.function;
        for (std::uint64_t i = 0; i < amps.size(); ++i) {
          if (op.controlled_by && bit_of(i, *op.controlled_by, qubits) == 0) {
            continue;
          }
          std::uint64_t x = 0;
          for (int t : op.targets) {
            x = (x << 1) | static_cast<std::uint64_t>(bit_of(i, t, qubits));
          }
          if (f(x) == -1) amps[i] = -amps[i];
        }
        break;
      }
    }
  }

  if (std::abs(state.norm() - 1.0) > 1e-10) {
    throw std::logic_error("apply: norm drifted beyond 1e-10");
  }
  return state;
}

namespace {

StateVector run_instance(const ForrelationInstance& instance, bool with_probe,
                         std::uint64_t* quantum_queries) {
  std::vector<CountingOracle> counters;
  auto ops = build_forrelation_circuit(instance, with_probe,
                                       quantum_queries ? &counters : nullptr);
  StateVector state(instance.n + (with_probe ? 1 : 0));
  state = forr::apply(ops, std::move(state));
  if (quantum_queries) {
    std::uint64_t total = 0;
    for (const auto& c : counters) total += c.quantum_queries();
    *quantum_queries = total;
  }
  return state;
}

}  // namespace

double forrelation_amplitude(const ForrelationInstance& instance,
                             std::uint64_t* quantum_queries) {
  StateVector state = run_instance(instance, false, quantum_queries);
  const auto amp = state.amplitudes()[0];
  if (std::abs(amp.imag()) > 1e-12) {
    throw std::logic_error("forrelation_amplitude: non-real amplitude");
  }
  return amp.real();
}

double probe_expectation(const ForrelationInstance& instance,
                         std::uint64_t* quantum_queries) {
  StateVector state = run_instance(instance, true, quantum_queries);
  const int qubits = state.qubits();
  double expectation = 0.0;
  const auto& amps = state.amplitudes();
  for (std::uint64_t i = 0; i < amps.size(); ++i) {
    const double p = std::norm(amps[i]);
    expectation += bit_of(i, 0, qubits) == 0 ? p : -p;
  }
  return expectation;
}

Eigen::MatrixXcd circuit_unitary(const std::vector<CircuitOp>& ops,
                                 int qubits) {
  if (qubits > 12) {
    throw std::invalid_argument("circuit_unitary: dense form limited to 12 qubits");
  }
  const std::uint64_t dim = std::uint64_t{1} << qubits;
  Eigen::MatrixXcd unitary(dim, dim);
  for (std::uint64_t col = 0; col < dim; ++col) {
    StateVector basis(qubits);
    basis.amplitudes()[0] = {0.0, 0.0};
    basis.amplitudes()[col] = {1.0, 0.0};
    StateVector out = forr::apply(ops, std::move(basis));
    for (std::uint64_t row = 0; row < dim; ++row) {
      unitary(row, col) = out.amplitudes()[row];
    }
  }
  return unitary;
}

}  // namespace forr
