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

#ifndef FORRELATION_DENSITY_HPP_
#define FORRELATION_DENSITY_HPP_

#include <map>
#include <string>
#include <string_view>

#include <Eigen/Dense>

namespace forr {

/// Hermitian, unit-trace, positive-semidefinite (to 1e-8) matrix over
/// m qubits. Construction validates all three properties.
class DensityMatrix {
 public:
  DensityMatrix(int qubits, Eigen::MatrixXcd matrix);

  int qubits() const { return qubits_; }
  Eigen::Index dim() const { return matrix_.rows(); }
  const Eigen::MatrixXcd& matrix() const { return matrix_; }

 private:
  int qubits_;
  Eigen::MatrixXcd matrix_;
};

/// (1-eps) I/2^m + eps |0..0><0..0|. Requires 0 < eps <= 1.
DensityMatrix pseudo_pure(double epsilon, int qubits);

/// U rho U^dagger. U must be unitary to 1e-8 and match rho's dimension.
DensityMatrix evolve(const DensityMatrix& rho, const Eigen::MatrixXcd& unitary);

/// tr(rho P) for a Pauli word like "ZII" (character i acts on qubit i).
double expect_pauli(const DensityMatrix& rho, std::string_view word);

/// Normalized overlap tr(a b) / sqrt(tr(a^2) tr(b^2)). 1 for identical
/// states, 0 for orthogonal pure states, symmetric in its arguments.
double fidelity(const DensityMatrix& a, const DensityMatrix& b);

/// Linear-inversion state reconstruction from the complete set of 4^m Pauli
/// expectations: rho = 2^{-m} sum_P <P> P. Exact on noiseless data.
DensityMatrix tomography(const std::map<std::string, double>& expectations,
                         int qubits);

/// All 4^m expectations of rho, keyed by Pauli word.
std::map<std::string, double> pauli_expectations(const DensityMatrix& rho);

/// (1-p) rho + p I/2^m.
DensityMatrix depolarize(const DensityMatrix& rho, double p);

/// Dense 2^m x 2^m matrix of a Pauli word.
Eigen::MatrixXcd pauli_matrix(std::string_view word);

/// Text form: first line the dimension, then one row per line as
/// whitespace-separated "re im" pairs.
std::string density_to_text(const DensityMatrix& rho);
DensityMatrix density_from_text(std::string_view text);

/// CSV with header "pauli,expectation", one row per word.
std::string expectations_to_csv(const std::map<std::string, double>& expectations);
std::map<std::string, double> expectations_from_csv(std::string_view csv);

}  // namespace forr

#endif  // FORRELATION_DENSITY_HPP_
