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

#include "forrelation/spin_system.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace forr {

namespace {

using cxd = std::complex<double>;
constexpr double kPi = std::numbers::pi;

/// +1 when the spin's bit is 0 in the basis index, -1 otherwise (sigma_z).
int z_sign(std::uint64_t index, int spin, int spins) {
  return ((index >> (spins - 1 - spin)) & 1) ? -1 : 1;
}

}  // namespace

double SpinSystemParams::coupling(int j, int k) const {
  if (j > k) std::swap(j, k);
  const auto it = couplings_hz.find({j, k});
  return it == couplings_hz.end() ? 0.0 : it->second;
}

void SpinSystemParams::validate() const {
  if (spins < 1) throw std::invalid_argument("SpinSystemParams: spins must be >= 1");
  if (static_cast<int>(shifts_hz.size()) != spins) {
    throw std::invalid_argument("SpinSystemParams: shift count mismatch");
  }
  for (double v : shifts_hz) {
    if (!std::isfinite(v)) {
      throw std::invalid_argument("SpinSystemParams: non-finite shift");
    }
  }
  for (const auto& [pair, value] : couplings_hz) {
    if (pair.first < 0 || pair.second >= spins || pair.first >= pair.second) {
      throw std::invalid_argument("SpinSystemParams: coupling must use j < k in range");
    }
    if (!std::isfinite(value)) {
      throw std::invalid_argument("SpinSystemParams: non-finite coupling");
    }
  }
}

SpinSystemParams SpinSystemParams::placeholder_three_spin() {
  // Round placeholder numbers, deliberately non-physical: real experiments
  // must supply the measured shifts/couplings of the molecule in use.
  SpinSystemParams params;
  params.spins = 3;
  params.shifts_hz = {150.0, -120.0, 90.0};
  params.couplings_hz[{0, 1}] = 420.0;
  params.couplings_hz[{0, 2}] = -360.0;
  params.couplings_hz[{1, 2}] = 500.0;
  params.validate();
  return params;
}

PulseEvent PulseEvent::delay(double seconds) {
  if (seconds < 0.0 || !std::isfinite(seconds)) {
    throw std::invalid_argument("PulseEvent: delay must be finite and >= 0");
  }
  PulseEvent e;
  e.kind = Kind::kDelay;
  e.duration_s = seconds;
  return e;
}

PulseEvent PulseEvent::hard_pulse(std::vector<int> spins, double angle_rad,
                                  double phase_rad) {
  if (spins.empty()) {
    throw std::invalid_argument("PulseEvent: hard pulse needs a spin set");
  }
  if (!std::isfinite(angle_rad) || !std::isfinite(phase_rad)) {
    throw std::invalid_argument("PulseEvent: non-finite pulse parameters");
  }
  PulseEvent e;
  e.kind = Kind::kHardPulse;
  e.spins = std::move(spins);
  e.angle_rad = angle_rad;
  e.phase_rad = phase_rad;
  return e;
}

Eigen::VectorXd internal_hamiltonian_diagonal(const SpinSystemParams& params) {
  params.validate();
  const Eigen::Index dim = Eigen::Index{1} << params.spins;
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(dim);
  for (Eigen::Index idx = 0; idx < dim; ++idx) {
    double value = 0.0;
    for (int i = 0; i < params.spins; ++i) {
      value += kPi * params.shifts_hz[i] * z_sign(idx, i, params.spins);
    }
    for (const auto& [pair, j_hz] : params.couplings_hz) {
      value += (kPi / 2.0) * j_hz * z_sign(idx, pair.first, params.spins) *
               z_sign(idx, pair.second, params.spins);
    }
    diag[idx] = value;
  }
  return diag;
}

Eigen::MatrixXcd internal_hamiltonian(const SpinSystemParams& params) {
  return internal_hamiltonian_diagonal(params).cast<cxd>().asDiagonal();
}

Eigen::MatrixXcd free_evolution(const SpinSystemParams& params,
                                double seconds) {
  if (seconds < 0.0) {
    throw std::invalid_argument("free_evolution: t must be >= 0");
  }
  const Eigen::VectorXd diag = internal_hamiltonian_diagonal(params);
  Eigen::VectorXcd phases(diag.size());
  for (Eigen::Index i = 0; i < diag.size(); ++i) {
    phases[i] = std::exp(cxd(0.0, -diag[i] * seconds));
  }
  return phases.asDiagonal();
}

Eigen::MatrixXcd embedded_pauli(int axis, int spin, int spins) {
  Eigen::Matrix2cd p;
  switch (axis) {
    case 0: p << 0, 1, 1, 0; break;
    case 1: p << 0, cxd(0, -1), cxd(0, 1), 0; break;
    case 2: p << 1, 0, 0, -1; break;
    default: throw std::invalid_argument("embedded_pauli: axis must be 0..2");
  }
  if (spin < 0 || spin >= spins) {
    throw std::invalid_argument("embedded_pauli: spin out of range");
  }
  const Eigen::Index dim = Eigen::Index{1} << spins;
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dim, dim);
  const int shift = spins - 1 - spin;
  const std::uint64_t mask = std::uint64_t{1} << shift;
  for (Eigen::Index col = 0; col < dim; ++col) {
    const int bit = static_cast<int>((col >> shift) & 1);
    for (int new_bit = 0; new_bit < 2; ++new_bit) {
      const cxd entry = p(new_bit, bit);
      if (entry != cxd(0.0, 0.0)) {
        const Eigen::Index row =
            (col & ~static_cast<Eigen::Index>(mask)) |
            (static_cast<Eigen::Index>(new_bit) << shift);
        out(row, col) = entry;
      }
    }
  }
  return out;
}

Eigen::MatrixXcd hard_pulse(const PulseEvent& event, int spins) {
  if (event.kind != PulseEvent::Kind::kHardPulse) {
    throw std::invalid_argument("hard_pulse: not a hard-pulse event");
  }
  if (event.spins.empty()) {
    throw std::invalid_argument("hard_pulse: empty spin set");
  }
  const double c = std::cos(event.angle_rad / 2.0);
  const double s = std::sin(event.angle_rad / 2.0);
  Eigen::Matrix2cd rot;
  rot << cxd(c, 0.0), -cxd(0.0, s) * std::exp(cxd(0.0, -event.phase_rad)),
      -cxd(0.0, s) * std::exp(cxd(0.0, event.phase_rad)), cxd(c, 0.0);

  const Eigen::Index dim = Eigen::Index{1} << spins;
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Identity(dim, dim);
  for (int spin : event.spins) {
    if (spin < 0 || spin >= spins) {
      throw std::invalid_argument("hard_pulse: spin out of range");
    }
    const int shift = spins - 1 - spin;
    const std::uint64_t mask = std::uint64_t{1} << shift;
    Eigen::MatrixXcd next = Eigen::MatrixXcd::Zero(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
      if (i & mask) continue;
      const Eigen::Index j = i | static_cast<Eigen::Index>(mask);
      next.row(i) = rot(0, 0) * out.row(i) + rot(0, 1) * out.row(j);
      next.row(j) = rot(1, 0) * out.row(i) + rot(1, 1) * out.row(j);
    }
    out = std::move(next);
  }
  return out;
}

Eigen::MatrixXcd segment_hamiltonian(const SpinSystemParams& params,
                                     const ControlPulse& pulse, int segment,
                                     double rf_scale) {
  Eigen::MatrixXcd h = internal_hamiltonian(params);
  for (int c = 0; c < pulse.channels(); ++c) {
    const int spin = pulse.channel_spins[c];
    const double ax = pulse.at(segment, c, 0) * rf_scale;
    const double ay = pulse.at(segment, c, 1) * rf_scale;
    if (ax != 0.0) h += kPi * ax * embedded_pauli(0, spin, params.spins);
    if (ay != 0.0) h += kPi * ay * embedded_pauli(1, spin, params.spins);
  }
  return h;
}

Eigen::MatrixXcd shaped_propagator(const SpinSystemParams& params,
                                   const ControlPulse& pulse,
                                   double rf_scale) {
  params.validate();
  pulse.validate();
  for (int spin : pulse.channel_spins) {
    if (spin < 0 || spin >= params.spins) {
      throw std::invalid_argument(
          "shaped_propagator: channel spin out of range");
    }
  }

  const Eigen::Index dim = Eigen::Index{1} << params.spins;
  Eigen::MatrixXcd total = Eigen::MatrixXcd::Identity(dim, dim);
  for (int s = 0; s < pulse.segments; ++s) {
    const Eigen::MatrixXcd h = segment_hamiltonian(params, pulse, s, rf_scale);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(h);
    if (eig.info() != Eigen::Success) {
      throw std::runtime_error("shaped_propagator: eigendecomposition failed");
    }
    Eigen::VectorXcd phases(dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
      phases[i] = std::exp(cxd(0.0, -eig.eigenvalues()[i] * pulse.dt));
    }
    const Eigen::MatrixXcd segment_u = eig.eigenvectors() *
                                       phases.asDiagonal() *
                                       eig.eigenvectors().adjoint();
    total = segment_u * total;
  }
  return total;
}

}  // namespace forr
