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

#include "forrelation/pulse_compiler.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace forr {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kAngleTol = 1e-12;

double wrap_to_pi(double angle) {
  angle = std::fmod(angle, 2.0 * kPi);
  if (angle > kPi) angle -= 2.0 * kPi;
  if (angle <= -kPi) angle += 2.0 * kPi;
  return angle;
}

double wrap_to_two_pi(double angle) {
  angle = std::fmod(angle, 2.0 * kPi);
  if (angle < 0.0) angle += 2.0 * kPi;
  return angle;
}

/// Gate-to-event translation with software z-rotation tracking.
///
/// Invariant maintained throughout: intended = Rz(pending) * executed, where
/// `intended` is the product of the gates appended so far, `executed` the
/// product of the emitted events, and Rz(pending) the per-spin tracked
/// rotations. Appending a transverse pulse with its nominal phase shifted by
/// -pending keeps the invariant; diagonal evolution commutes through.
class Compiler {
 public:
  Compiler(const SpinSystemParams& params, int width) : params_(params) {
    params_.validate();
    if (width != params_.spins) {
      throw std::invalid_argument(
          "compile: circuit width " + std::to_string(width) +
          " does not match spin count " + std::to_string(params_.spins));
    }
    if (params_.spins > 3) {
      throw std::invalid_argument(
          "compile: refocusing scheme supports at most 3 spins");
    }
    pending_z_.assign(params_.spins, 0.0);
  }

  void add_op(const CircuitOp& op) {
    switch (op.kind) {
      case CircuitOp::Kind::kProbeHadamard:
        add_hadamard(op.targets.at(0));
        break;
      case CircuitOp::Kind::kHadamardLayer:
        for (int t : op.targets) {
          if (op.controlled_by) {
            add_controlled_hadamard(*op.controlled_by, t);
          } else {
            add_hadamard(t);
          }
        }
        break;
      case CircuitOp::Kind::kOracle:
        add_oracle(op);
        break;
    }
  }

  std::vector<PulseEvent> finish() {
    flush_pending();
    return std::move(events_);
  }

 private:
  // --- event emission --------------------------------------------------

  void emit_pulse(int spin, double angle, double nominal_phase) {
    if (angle < 0.0) {
      angle = -angle;
      nominal_phase += kPi;
    }
    if (std::abs(std::remainder(angle, 2.0 * kPi)) < kAngleTol) {
      return;  // multiple of 2*pi: +/- identity
    }
    angle = std::fmod(angle, 4.0 * kPi);
    const double executed_phase =
        wrap_to_two_pi(nominal_phase - pending_z_[spin]);
    events_.push_back(PulseEvent::hard_pulse({spin}, angle, executed_phase));
  }

  void emit_delay(double seconds) {
    if (seconds <= 0.0) return;
    events_.push_back(PulseEvent::delay(seconds));
  }

  // --- gate vocabulary --------------------------------------------------

  void add_rz(int spin, double delta) { pending_z_[spin] += delta; }

  /// H = (phase) * Ry(pi/2) Rz(pi): one executed pi/2 pulse, z tracked.
  void add_hadamard(int spin) {
    add_rz(spin, kPi);
    emit_pulse(spin, kPi / 2.0, kPi / 2.0);
  }

  /// Controlled-H(c, t) = Ry_t(pi/4) CZ(c, t) Ry_t(-pi/4), exactly.
  void add_controlled_hadamard(int control, int target) {
    emit_pulse(target, -kPi / 4.0, kPi / 2.0);
    add_cz(control, target);
    emit_pulse(target, kPi / 4.0, kPi / 2.0);
  }

  /// CZ = (phase) Rz_a(pi/2) Rz_b(pi/2) Rzz_ab(-pi/2).
  void add_cz(int a, int b) {
    add_rz(a, kPi / 2.0);
    add_rz(b, kPi / 2.0);
    add_zz(a, b, -kPi / 2.0);
  }

  /// CNOT(control -> target) = H_t CZ H_t.
  void add_cnot(int control, int target) {
    add_hadamard(target);
    add_cz(control, target);
    add_hadamard(target);
  }

  /// Rzz(theta) = exp(-i theta/2 Z_a Z_b) through a refocused J-delay. The
  /// echo cancels both spins' shifts, every coupling to the spectator, and
  /// the spectator's own shift; a theta whose sign J cannot produce directly
  /// is realized by conjugating the delay with pi pulses on one spin.
  void add_zz(int a, int b, double theta) {
    theta = wrap_to_pi(theta);
    if (std::abs(theta) < kAngleTol) return;

    const double j_hz = params_.coupling(a, b);
    if (std::abs(j_hz) < 1e-9) {
      throw std::invalid_argument("compile: required coupling J(" +
                                  std::to_string(a) + "," + std::to_string(b) +
                                  ") is zero");
    }

    const bool conjugate = theta * j_hz < 0.0;
    const double bare = conjugate ? -theta : theta;
    const double delay_s = bare / (kPi * j_hz);

    if (conjugate) emit_pulse(a, kPi, 0.0);
    refocused_delay(a, b, delay_s);
    if (conjugate) emit_pulse(a, kPi, 0.0);
  }

  void refocused_delay(int a, int b, double total_s) {
    if (params_.spins == 2) {
      emit_delay(total_s / 2.0);
      pi_on({a, b});
      emit_delay(total_s / 2.0);
      pi_on({a, b});
      return;
    }
    // Exactly one spectator for 3 spins.
    int spectator = 0;
    while (spectator == a || spectator == b) ++spectator;
    emit_delay(total_s / 4.0);
    pi_on({spectator});
    emit_delay(total_s / 4.0);
    pi_on({a, b});
    emit_delay(total_s / 4.0);
    pi_on({spectator});
    emit_delay(total_s / 4.0);
    pi_on({a, b});
  }

  void pi_on(const std::vector<int>& spins) {
    for (int s : spins) emit_pulse(s, kPi, 0.0);
  }

  /// exp(-i theta/2 Z Z Z) = CNOT(s1->s2) Rzz_{s0,s2}(theta) CNOT(s1->s2).
  void add_zzz(int s0, int s1, int s2, double theta) {
    theta = wrap_to_pi(theta);
    if (std::abs(theta) < kAngleTol) return;
    add_cnot(s1, s2);
    add_zz(s0, s2, theta);
    add_cnot(s1, s2);
  }

  /// Emits a +/-1 diagonal on the listed spins (spins[0] = most significant
  /// bit of the sign table) as tracked z, ZZ and ZZZ factors.
  void add_diagonal(const std::vector<int>& spins,
                    const std::vector<int>& signs) {
    const int b = static_cast<int>(spins.size());
    const std::size_t dim = std::size_t{1} << b;
    if (signs.size() != dim) {
      throw std::invalid_argument("compile: diagonal size mismatch");
    }

    // phi(y) in {0, pi}; expand as sum_S c_S * prod_{i in S} z_i.
    for (std::size_t subset = 1; subset < dim; ++subset) {
      double coeff = 0.0;
      for (std::size_t y = 0; y < dim; ++y) {
        const double phi = signs[y] == -1 ? kPi : 0.0;
        // chi_S(y): product of z_i = +/-1 over set bits of `subset`.
        const int sign_bits = std::popcount(subset & y) & 1;
        coeff += sign_bits ? -phi : phi;
      }
      coeff /= static_cast<double>(dim);
      if (std::abs(coeff) < kAngleTol) continue;

      std::vector<int> members;
      for (int i = 0; i < b; ++i) {
        if (subset & (std::size_t{1} << (b - 1 - i))) members.push_back(spins[i]);
      }
      const double theta = -2.0 * coeff;
      switch (members.size()) {
        case 1: add_rz(members[0], theta); break;
        case 2: add_zz(members[0], members[1], theta); break;
        case 3: add_zzz(members[0], members[1], members[2], theta); break;
        default:
          throw std::invalid_argument(
              "compile: diagonal interactions beyond 3 spins unsupported");
      }
    }
  }

  void add_oracle(const CircuitOp& op) {
    const auto& f = *op.function;
    if (!op.controlled_by) {
      add_diagonal(op.targets, f.table());
      return;
    }
    // Controlled diagonal: identity on the probe-0 branch.
    std::vector<int> spins;
    spins.push_back(*op.controlled_by);
    spins.insert(spins.end(), op.targets.begin(), op.targets.end());
    const std::uint64_t work_dim = f.size();
    std::vector<int> signs(2 * work_dim, 1);
    for (std::uint64_t x = 0; x < work_dim; ++x) {
      signs[work_dim + x] = f(static_cast<std::uint64_t>(x));
    }
    add_diagonal(spins, signs);
  }

  /// Residual tracked z-rotations become composite transverse blocks
  /// Rz(zeta) = Rx(pi/2) Ry(zeta) Rx(-pi/2); 2*pi multiples are dropped.
  void flush_pending() {
    for (int s = 0; s < params_.spins; ++s) {
      const double zeta = wrap_to_pi(pending_z_[s]);
      if (std::abs(zeta) < kAngleTol) {
        pending_z_[s] = 0.0;
        continue;
      }
      emit_pulse(s, -kPi / 2.0, 0.0);
      emit_pulse(s, zeta, kPi / 2.0);
      emit_pulse(s, kPi / 2.0, 0.0);
      pending_z_[s] = 0.0;
    }
  }

  SpinSystemParams params_;
  std::vector<PulseEvent> events_;
  std::vector<double> pending_z_;
};

}  // namespace

PulseSequence::Stats PulseSequence::stats() const {
  Stats s;
  for (const auto& e : events) {
    if (e.kind == PulseEvent::Kind::kDelay) {
      ++s.delays;
      s.duration_s += e.duration_s;
    } else {
      ++s.pulses;
    }
  }
  return s;
}

PulseSequence compile(const std::vector<CircuitOp>& ops,
                      const SpinSystemParams& params) {
  const int width = ops.empty() ? params.spins : circuit_width(ops);
  Compiler compiler(params, width);
  for (const auto& op : ops) compiler.add_op(op);
  PulseSequence seq;
  seq.events = compiler.finish();
  seq.params = params;
  return seq;
}

Eigen::MatrixXcd sequence_unitary(const PulseSequence& seq) {
  const Eigen::Index dim = Eigen::Index{1} << seq.params.spins;
  Eigen::MatrixXcd total = Eigen::MatrixXcd::Identity(dim, dim);
  for (const auto& event : seq.events) {
    if (event.kind == PulseEvent::Kind::kDelay) {
      total = (free_evolution(seq.params, event.duration_s) * total).eval();
    } else {
      total = (hard_pulse(event, seq.params.spins) * total).eval();
    }
  }
  return total;
}

PhaseEquivalence equivalent_up_to_phase(const Eigen::MatrixXcd& u,
                                        const Eigen::MatrixXcd& v,
                                        double tol) {
  if (u.rows() != v.rows() || u.cols() != v.cols()) {
    throw std::invalid_argument("equivalent_up_to_phase: dimension mismatch");
  }
  const std::complex<double> overlap = (v.adjoint() * u).trace();
  PhaseEquivalence result;
  if (std::abs(overlap) < 1e-300) return result;
  result.phase = std::arg(overlap);
  const Eigen::MatrixXcd diff =
      u - std::exp(std::complex<double>(0.0, result.phase)) * v;
  result.equivalent = diff.cwiseAbs().maxCoeff() <= tol;
  return result;
}

std::string sequence_to_text(const PulseSequence& seq) {
  std::ostringstream out;
  out.precision(17);
  for (const auto& e : seq.events) {
    if (e.kind == PulseEvent::Kind::kDelay) {
      out << "DELAY t=" << e.duration_s << '\n';
    } else {
      out << "PULSE spins=";
      for (std::size_t i = 0; i < e.spins.size(); ++i) {
        if (i) out << ',';
        out << e.spins[i];
      }
      out << " angle=" << e.angle_rad << " phase=" << e.phase_rad << '\n';
    }
  }
  const auto s = seq.stats();
  out << "# pulses=" << s.pulses << " delays=" << s.delays
      << " duration=" << s.duration_s << '\n';
  return out.str();
}

PulseSequence sequence_from_text(std::string_view text,
                                 const SpinSystemParams& params) {
  PulseSequence seq;
  seq.params = params;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string kind;
    ls >> kind;
    if (kind == "DELAY") {
      std::string field;
      ls >> field;
      if (field.rfind("t=", 0) != 0) {
        throw std::invalid_argument("sequence text: bad DELAY line: " + line);
      }
      seq.events.push_back(PulseEvent::delay(std::stod(field.substr(2))));
    } else if (kind == "PULSE") {
      std::string spins_field, angle_field, phase_field;
      ls >> spins_field >> angle_field >> phase_field;
      if (spins_field.rfind("spins=", 0) != 0 ||
          angle_field.rfind("angle=", 0) != 0 ||
          phase_field.rfind("phase=", 0) != 0) {
        throw std::invalid_argument("sequence text: bad PULSE line: " + line);
      }
      std::vector<int> spins;
      std::istringstream spin_in(spins_field.substr(6));
      std::string tok;
      while (std::getline(spin_in, tok, ',')) spins.push_back(std::stoi(tok));
      seq.events.push_back(PulseEvent::hard_pulse(
          std::move(spins), std::stod(angle_field.substr(6)),
          std::stod(phase_field.substr(6))));
    } else {
      throw std::invalid_argument("sequence text: unknown line: " + line);
    }
  }
  return seq;
}

}  // namespace forr
