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

#ifndef FORRELATION_SPIN_SYSTEM_HPP_
#define FORRELATION_SPIN_SYSTEM_HPP_

#include <map>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "forrelation/control_pulse.hpp"

namespace forr {

/// Chemical shifts (Hz, rotating-frame offsets) and scalar couplings (Hz)
/// of an m-spin system. Couplings are keyed by (j, k) with j < k, 0-based.
struct SpinSystemParams {
  int spins = 0;
  std::vector<double> shifts_hz;
  std::map<std::pair<int, int>, double> couplings_hz;

  double coupling(int j, int k) const;
  void validate() const;

  /// Placeholder parameter set (three spins, round non-physical numbers);
  /// substitute measured molecule values via a params file for real studies.
  static SpinSystemParams placeholder_three_spin();
};

/// A step of a compiled NMR sequence: either free evolution for a duration,
/// or an instantaneous hard pulse rotating the listed spins by `angle`
/// about the transverse axis at `phase` (0 = x, pi/2 = y).
struct PulseEvent {
  enum class Kind { kDelay, kHardPulse };

  Kind kind;
  double duration_s = 0.0;        // kDelay
  std::vector<int> spins;         // kHardPulse
  double angle_rad = 0.0;         // kHardPulse
  double phase_rad = 0.0;         // kHardPulse

  static PulseEvent delay(double seconds);
  static PulseEvent hard_pulse(std::vector<int> spins, double angle_rad,
                               double phase_rad);
};

/// Internal Hamiltonian in angular-frequency units:
///   H = sum_i pi nu_i sigma_z^i + sum_{j<k} (pi/2) J_jk sigma_z^j sigma_z^k.
/// Diagonal in the computational basis.
Eigen::VectorXd internal_hamiltonian_diagonal(const SpinSystemParams& params);
Eigen::MatrixXcd internal_hamiltonian(const SpinSystemParams& params);

/// exp(-i H t) for the internal Hamiltonian; diagonal.
Eigen::MatrixXcd free_evolution(const SpinSystemParams& params, double seconds);

/// exp(-i (angle/2) sum_{i in spins} (cos(phase) sigma_x^i + sin(phase) sigma_y^i)).
Eigen::MatrixXcd hard_pulse(const PulseEvent& event, int spins);

/// Piecewise-constant propagator: the ordered product over segments of
/// exp(-i (H_int + H_rf) dt) with H_rf = pi * (ax sigma_x + ay sigma_y) per
/// channel, amplitudes in Hz scaled by rf_scale. Exact per segment (8x8
/// eigendecomposition), no Trotterization beyond the piecewise-constant model.
Eigen::MatrixXcd shaped_propagator(const SpinSystemParams& params,
                                   const ControlPulse& pulse,
                                   double rf_scale = 1.0);

/// Single-segment Hamiltonian (H_int + H_rf) used by shaped_propagator.
Eigen::MatrixXcd segment_hamiltonian(const SpinSystemParams& params,
                                     const ControlPulse& pulse, int segment,
                                     double rf_scale);

/// Embeds a single-spin Pauli (x: axis 0, y: axis 1, z: axis 2) on `spin`.
Eigen::MatrixXcd embedded_pauli(int axis, int spin, int spins);

}  // namespace forr

#endif  // FORRELATION_SPIN_SYSTEM_HPP_
