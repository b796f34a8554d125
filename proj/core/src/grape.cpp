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

#include "forrelation/grape.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace forr {
namespace grape {

namespace {

using cxd = std::complex<double>;
constexpr double kPi = std::numbers::pi;

double sinc(double x) {
  if (std::abs(x) < 1e-8) return 1.0 - x * x / 6.0;
  return std::sin(x) / x;
}

/// Eigendecompositions and propagators of every segment at one rf scale.
struct ScaleCache {
  std::vector<Eigen::MatrixXcd> eigvecs;
  std::vector<Eigen::VectorXd> eigvals;
  std::vector<Eigen::MatrixXcd> unitaries;
  Eigen::MatrixXcd total;
  cxd overlap;  // tr(V^dagger U_total)
};

void propagate_scale(const SpinSystemParams& params, const ControlPulse& pulse,
                     const Eigen::MatrixXcd& target, double rf_scale,
                     ScaleCache& cache) {
  const Eigen::Index dim = Eigen::Index{1} << params.spins;
  cache.eigvecs.resize(pulse.segments);
  cache.eigvals.resize(pulse.segments);
  cache.unitaries.resize(pulse.segments);
  Eigen::MatrixXcd total = Eigen::MatrixXcd::Identity(dim, dim);
  for (int s = 0; s < pulse.segments; ++s) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(
        segment_hamiltonian(params, pulse, s, rf_scale));
    if (eig.info() != Eigen::Success) {
      throw std::runtime_error("grape: eigendecomposition failed");
    }
    cache.eigvecs[s] = eig.eigenvectors();
    cache.eigvals[s] = eig.eigenvalues();
    Eigen::VectorXcd phases(dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
      phases[i] = std::exp(cxd(0.0, -cache.eigvals[s][i] * pulse.dt));
    }
    cache.unitaries[s] =
        cache.eigvecs[s] * phases.asDiagonal() * cache.eigvecs[s].adjoint();
    total = (cache.unitaries[s] * total).eval();
  }
  cache.total = std::move(total);
  cache.overlap = (target.adjoint() * cache.total).trace();
}

double fidelity_from_overlap(cxd overlap, Eigen::Index dim) {
  return std::norm(overlap) / static_cast<double>(dim * dim);
}

/// Exact gradient at one rf scale given the cached decompositions, written
/// into grad (accumulated with `weight`).
void accumulate_exact_gradient(const SpinSystemParams& params,
                               const ControlPulse& pulse,
                               const Eigen::MatrixXcd& target, double rf_scale,
                               const ScaleCache& cache, double weight,
                               std::vector<double>& grad) {
  const Eigen::Index dim = Eigen::Index{1} << params.spins;
  const int m = pulse.segments;
  const double d2 = static_cast<double>(dim * dim);

  // Control generators (without the pi * rf_scale factor).
  std::vector<Eigen::MatrixXcd> generators;
  generators.reserve(pulse.channels() * 2);
  for (int c = 0; c < pulse.channels(); ++c) {
    generators.push_back(embedded_pauli(0, pulse.channel_spins[c], params.spins));
    generators.push_back(embedded_pauli(1, pulse.channel_spins[c], params.spins));
  }

  // forward[j] = U_j ... U_1 (forward[0] = I), backward[j] = U_M ... U_{j+1}.
  std::vector<Eigen::MatrixXcd> forward(m + 1), backward(m + 1);
  forward[0] = Eigen::MatrixXcd::Identity(dim, dim);
  for (int j = 0; j < m; ++j) {
    forward[j + 1] = (cache.unitaries[j] * forward[j]).eval();
  }
  backward[m] = Eigen::MatrixXcd::Identity(dim, dim);
  for (int j = m - 1; j >= 0; --j) {
    backward[j] = (backward[j + 1] * cache.unitaries[j]).eval();
  }

  const cxd z_conj = std::conj(cache.overlap);
  const Eigen::MatrixXcd v_adj = target.adjoint();

  for (int j = 0; j < m; ++j) {
    const Eigen::MatrixXcd& w = cache.eigvecs[j];
    const Eigen::VectorXd& lam = cache.eigvals[j];

    // Divided differences of f(l) = exp(-i l dt).
    Eigen::MatrixXcd gamma(dim, dim);
    for (Eigen::Index a = 0; a < dim; ++a) {
      for (Eigen::Index b = 0; b < dim; ++b) {
        const double mean = 0.5 * (lam[a] + lam[b]);
        const double half_gap = 0.5 * (lam[a] - lam[b]) * pulse.dt;
        gamma(a, b) = std::exp(cxd(0.0, -mean * pulse.dt)) *
                      cxd(0.0, -pulse.dt) * sinc(half_gap);
      }
    }

    // tr(V^dag B_j dU_j F_{j-1}) = sum_ab K~(a,b) G(b,a) Gamma(b,a), with
    // K~ = W^dag (F_{j-1} V^dag B_j) W and G = W^dag E W.
    const Eigen::MatrixXcd k_tilde =
        w.adjoint() * (forward[j] * v_adj * backward[j + 1]) * w;

    for (int c = 0; c < pulse.channels(); ++c) {
      for (int q = 0; q < 2; ++q) {
        const Eigen::MatrixXcd g =
            w.adjoint() * generators[2 * c + q] * w * (kPi * rf_scale);
        cxd dz(0.0, 0.0);
        for (Eigen::Index a = 0; a < dim; ++a) {
          for (Eigen::Index b = 0; b < dim; ++b) {
            dz += k_tilde(a, b) * g(b, a) * gamma(b, a);
          }
        }
        const double df = 2.0 * (z_conj * dz).real() / d2;
        grad[(static_cast<std::size_t>(j) * pulse.channels() + c) * 2 + q] +=
            weight * df;
      }
    }
  }
}

}  // namespace

void Config::validate() const {
  if (segments < 1) throw std::invalid_argument("grape: segments must be >= 1");
  if (!(duration_s > 0.0)) {
    throw std::invalid_argument("grape: duration must be > 0");
  }
  if (!(fidelity_goal > 0.0) || fidelity_goal > 1.0) {
    throw std::invalid_argument("grape: fidelity_goal must be in (0, 1]");
  }
  if (max_iterations < 0) {
    throw std::invalid_argument("grape: max_iterations must be >= 0");
  }
  if (rf_scales.empty()) {
    throw std::invalid_argument("grape: rf_scales must be non-empty");
  }
  if (!rf_weights.empty()) {
    if (rf_weights.size() != rf_scales.size()) {
      throw std::invalid_argument("grape: rf_weights size mismatch");
    }
    double sum = 0.0;
    for (double w : rf_weights) {
      if (w < 0.0) throw std::invalid_argument("grape: negative rf weight");
      sum += w;
    }
    if (std::abs(sum - 1.0) > 1e-9) {
      throw std::invalid_argument("grape: rf_weights must sum to 1");
    }
  }
  if (!(initial_step_hz > 0.0) || backtrack_factor <= 0.0 ||
      backtrack_factor >= 1.0) {
    throw std::invalid_argument("grape: bad step-size policy");
  }
}

std::vector<double> Config::weights() const {
  if (!rf_weights.empty()) return rf_weights;
  return std::vector<double>(rf_scales.size(), 1.0 / rf_scales.size());
}

double gate_fidelity(const Eigen::MatrixXcd& actual,
                     const Eigen::MatrixXcd& target) {
  if (actual.rows() != target.rows() || actual.cols() != target.cols() ||
      actual.rows() != actual.cols()) {
    throw std::invalid_argument("gate_fidelity: dimension mismatch");
  }
  const cxd overlap = (target.adjoint() * actual).trace();
  return fidelity_from_overlap(overlap, actual.rows());
}

std::vector<double> fidelity_gradient(const SpinSystemParams& params,
                                      const ControlPulse& pulse,
                                      const Eigen::MatrixXcd& target,
                                      double rf_scale, GradientMode mode) {
  pulse.validate();
  std::vector<double> grad(pulse.amplitudes.size(), 0.0);
  if (mode == GradientMode::kExact) {
    ScaleCache cache;
    propagate_scale(params, pulse, target, rf_scale, cache);
    accumulate_exact_gradient(params, pulse, target, rf_scale, cache, 1.0,
                              grad);
    return grad;
  }
  for (int j = 0; j < pulse.segments; ++j) {
    for (int c = 0; c < pulse.channels(); ++c) {
      for (int q = 0; q < 2; ++q) {
        grad[(static_cast<std::size_t>(j) * pulse.channels() + c) * 2 + q] =
            finite_difference_partial(params, pulse, target, rf_scale, j, c, q);
      }
    }
  }
  return grad;
}

double finite_difference_partial(const SpinSystemParams& params,
                                 const ControlPulse& pulse,
                                 const Eigen::MatrixXcd& target,
                                 double rf_scale, int segment, int channel,
                                 int quadrature, double step_hz) {
  ControlPulse perturbed = pulse;
  perturbed.at(segment, channel, quadrature) += step_hz;
  const double up =
      gate_fidelity(shaped_propagator(params, perturbed, rf_scale), target);
  perturbed.at(segment, channel, quadrature) -= 2.0 * step_hz;
  const double down =
      gate_fidelity(shaped_propagator(params, perturbed, rf_scale), target);
  return (up - down) / (2.0 * step_hz);
}

namespace {

struct EnsembleEvaluation {
  double fidelity = 0.0;
  std::vector<double> per_scale;
  std::vector<ScaleCache> caches;
};

EnsembleEvaluation evaluate_ensemble(const SpinSystemParams& params,
                                     const ControlPulse& pulse,
                                     const Eigen::MatrixXcd& target,
                                     const std::vector<double>& scales,
                                     const std::vector<double>& weights,
                                     bool keep_caches) {
  const Eigen::Index dim = Eigen::Index{1} << params.spins;
  EnsembleEvaluation eval;
  eval.per_scale.resize(scales.size());
  eval.caches.resize(keep_caches ? scales.size() : 0);
  ScaleCache scratch;
  for (std::size_t s = 0; s < scales.size(); ++s) {
    ScaleCache& cache = keep_caches ? eval.caches[s] : scratch;
    propagate_scale(params, pulse, target, scales[s], cache);
    eval.per_scale[s] = fidelity_from_overlap(cache.overlap, dim);
    eval.fidelity += weights[s] * eval.per_scale[s];
  }
  return eval;
}

std::vector<double> ensemble_gradient(const SpinSystemParams& params,
                                      const ControlPulse& pulse,
                                      const Eigen::MatrixXcd& target,
                                      const std::vector<double>& scales,
                                      const std::vector<double>& weights,
                                      const std::vector<ScaleCache>& caches,
                                      GradientMode mode) {
  std::vector<double> grad(pulse.amplitudes.size(), 0.0);
  if (mode == GradientMode::kExact) {
    for (std::size_t s = 0; s < scales.size(); ++s) {
      accumulate_exact_gradient(params, pulse, target, scales[s], caches[s],
                                weights[s], grad);
    }
    return grad;
  }
  for (std::size_t s = 0; s < scales.size(); ++s) {
    const auto scale_grad =
        fidelity_gradient(params, pulse, target, scales[s], mode);
    for (std::size_t i = 0; i < grad.size(); ++i) {
      grad[i] += weights[s] * scale_grad[i];
    }
  }
  return grad;
}

bool scales_within_slack(const EnsembleEvaluation& eval, double slack) {
  for (double f : eval.per_scale) {
    if (f < eval.fidelity - slack) return false;
  }
  return true;
}

}  // namespace

Result optimize(const SpinSystemParams& params, const Eigen::MatrixXcd& target,
                const Config& config) {
  params.validate();
  config.validate();
  const Eigen::Index dim = Eigen::Index{1} << params.spins;
  if (target.rows() != dim || target.cols() != dim) {
    throw std::invalid_argument("grape: target dimension does not match spins");
  }
  const Eigen::MatrixXcd gram = target.adjoint() * target;
  if ((gram - Eigen::MatrixXcd::Identity(dim, dim)).cwiseAbs().maxCoeff() >
      1e-8) {
    throw std::invalid_argument("grape: target is not unitary");
  }

  std::vector<int> channels = config.channel_spins;
  if (channels.empty()) {
    for (int i = 0; i < params.spins; ++i) channels.push_back(i);
  }
  ControlPulse pulse(channels, config.segments,
                     config.duration_s / config.segments);

  std::mt19937_64 rng(config.seed);
  if (config.init_amplitude_hz > 0.0) {
    std::uniform_real_distribution<double> dist(-config.init_amplitude_hz,
                                                config.init_amplitude_hz);
    for (double& a : pulse.amplitudes) a = dist(rng);
  }

  const auto weights = config.weights();
  auto eval = evaluate_ensemble(params, pulse, target, config.rf_scales,
                                weights, true);

  Result result;
  result.trace.push_back(eval.fidelity);

  double step = config.initial_step_hz;
  int iteration = 0;
  while (iteration < config.max_iterations &&
         !(eval.fidelity >= config.fidelity_goal &&
           scales_within_slack(eval, config.scale_slack))) {
    const auto grad =
        ensemble_gradient(params, pulse, target, config.rf_scales, weights,
                          eval.caches, config.gradient_mode);
    double grad_max = 0.0;
    for (double g : grad) grad_max = std::max(grad_max, std::abs(g));
    if (grad_max < 1e-15) break;  // stationary point

    bool accepted = false;
    while (step >= config.min_step_hz) {
      ControlPulse trial = pulse;
      const double scale = step / grad_max;
      for (std::size_t i = 0; i < trial.amplitudes.size(); ++i) {
        trial.amplitudes[i] += scale * grad[i];
      }
      auto trial_eval = evaluate_ensemble(params, trial, target,
                                          config.rf_scales, weights, true);
      if (trial_eval.fidelity > eval.fidelity) {
        pulse = std::move(trial);
        eval = std::move(trial_eval);
        accepted = true;
        break;
      }
      step *= config.backtrack_factor;
    }
    if (!accepted) break;  // no uphill step available at the minimum step

    ++iteration;
    result.trace.push_back(eval.fidelity);
    step = std::min(step * config.step_growth, config.max_step_hz);
  }

  result.pulse = std::move(pulse);
  result.ensemble_fidelity = eval.fidelity;
  result.scale_fidelities = eval.per_scale;
  result.iterations = iteration;
  result.reached_goal = eval.fidelity >= config.fidelity_goal &&
                        scales_within_slack(eval, config.scale_slack);
  return result;
}

}  // namespace grape
}  // namespace forr
