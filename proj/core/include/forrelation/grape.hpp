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

#ifndef FORRELATION_GRAPE_HPP_
#define FORRELATION_GRAPE_HPP_

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "forrelation/control_pulse.hpp"
#include "forrelation/spin_system.hpp"

namespace forr {
namespace grape {

enum class GradientMode { kExact, kFiniteDifference };

struct Config {
  // Pulse discretization. Empty channel_spins means one channel per spin.
  int segments = 500;
  double duration_s = 0.015;
  std::vector<int> channel_spins;

  int max_iterations = 2000;
  double fidelity_goal = 0.995;

  // Normalized-ascent line search: a step moves the largest amplitude by
  // step_hz; rejected steps shrink by backtrack_factor, accepted ones grow.
  double initial_step_hz = 50.0;
  double backtrack_factor = 0.5;
  double step_growth = 1.5;
  double max_step_hz = 5000.0;
  double min_step_hz = 1e-7;

  GradientMode gradient_mode = GradientMode::kExact;

  // RF-inhomogeneity ensemble: fidelity is the weighted average over these
  // amplitude scale factors. Every individual scale must finish within
  // scale_slack of the ensemble value.
  std::vector<double> rf_scales = {0.95, 1.0, 1.05};
  std::vector<double> rf_weights = {};  // empty: uniform
  double scale_slack = 0.005;

  std::uint64_t seed = 0;
  double init_amplitude_hz = 10.0;

  void validate() const;
  std::vector<double> weights() const;  // normalized, same length as rf_scales
};

struct Result {
  ControlPulse pulse;
  std::vector<double> trace;  // ensemble fidelity, entry 0 = initial point
  double ensemble_fidelity = 0.0;
  std::vector<double> scale_fidelities;
  int iterations = 0;
  bool reached_goal = false;
};

/// |tr(U_target^dagger U_actual)|^2 / d^2 — 1 exactly when the gates agree
/// up to a global phase.
double gate_fidelity(const Eigen::MatrixXcd& actual,
                     const Eigen::MatrixXcd& target);

/// Gradient of gate_fidelity(shaped_propagator(params, pulse, rf_scale),
/// target) with respect to every stored amplitude, laid out exactly like
/// pulse.amplitudes. kExact differentiates each segment exponential through
/// its eigendecomposition (cost linear in the segment count); the
/// finite-difference mode is the independent check.
std::vector<double> fidelity_gradient(const SpinSystemParams& params,
                                      const ControlPulse& pulse,
                                      const Eigen::MatrixXcd& target,
                                      double rf_scale,
                                      GradientMode mode = GradientMode::kExact);

/// Central-difference partial derivative for one amplitude (the probe used
/// to cross-check kExact).
double finite_difference_partial(const SpinSystemParams& params,
                                 const ControlPulse& pulse,
                                 const Eigen::MatrixXcd& target,
                                 double rf_scale, int segment, int channel,
                                 int quadrature, double step_hz = 1e-6);

/// Gradient ascent with backtracking line search on the ensemble fidelity.
/// The fidelity trace is monotonically non-decreasing (only improving steps
/// are accepted) and the run is deterministic for a fixed seed.
Result optimize(const SpinSystemParams& params, const Eigen::MatrixXcd& target,
                const Config& config);

}  // namespace grape
}  // namespace forr

#endif  // FORRELATION_GRAPE_HPP_
