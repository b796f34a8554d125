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

#include "forrelation/density.hpp"

#include <cmath>
#include <complex>
#include <sstream>
#include <stdexcept>

namespace forr {

namespace {

using cxd = std::complex<double>;

constexpr double kHermitianTol = 1e-10;
constexpr double kTraceTol = 1e-10;
constexpr double kEigenvalueFloor = -1e-8;
constexpr double kUnitaryTol = 1e-8;

Eigen::Matrix2cd single_pauli(char c) {
  Eigen::Matrix2cd m;
  switch (c) {
    case 'I': m << 1, 0, 0, 1; break;
    case 'X': m << 0, 1, 1, 0; break;
    case 'Y': m << 0, cxd(0, -1), cxd(0, 1), 0; break;
    case 'Z': m << 1, 0, 0, -1; break;
    default:
      throw std::invalid_argument(std::string("Pauli word: bad character '") +
                                  c + "'");
  }
  return m;
}

void pauli_words_rec(int qubits, std::string& prefix,
                     std::vector<std::string>& out) {
  if (static_cast<int>(prefix.size()) == qubits) {
    out.push_back(prefix);
    return;
  }
  for (char c : {'I', 'X', 'Y', 'Z'}) {
    prefix.push_back(c);
    pauli_words_rec(qubits, prefix, out);
    prefix.pop_back();
  }
}

std::vector<std::string> pauli_words(int qubits) {
  std::vector<std::string> out;
  out.reserve(1u << (2 * qubits));
  std::string prefix;
  pauli_words_rec(qubits, prefix, out);
  return out;
}

int qubits_for_dim(Eigen::Index dim) {
  int qubits = 0;
  while ((Eigen::Index{1} << qubits) < dim) ++qubits;
  if ((Eigen::Index{1} << qubits) != dim) {
    throw std::invalid_argument("dimension is not a power of two");
  }
  return qubits;
}

}  // namespace

DensityMatrix::DensityMatrix(int qubits, Eigen::MatrixXcd matrix)
    : qubits_(qubits), matrix_(std::move(matrix)) {
  const Eigen::Index dim = Eigen::Index{1} << qubits;
  if (matrix_.rows() != dim || matrix_.cols() != dim) {
    throw std::invalid_argument("DensityMatrix: expected " +
                                std::to_string(dim) + "x" +
                                std::to_string(dim) + " matrix");
  }
  if ((matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff() > kHermitianTol) {
    throw std::invalid_argument("DensityMatrix: not Hermitian within 1e-10");
  }
  if (std::abs(matrix_.trace() - cxd(1.0, 0.0)) > kTraceTol) {
    throw std::invalid_argument("DensityMatrix: trace differs from 1");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(matrix_,
                                                         Eigen::EigenvaluesOnly);
  if (solver.eigenvalues().minCoeff() < kEigenvalueFloor) {
    throw std::invalid_argument("DensityMatrix: negative eigenvalue beyond 1e-8");
  }
}

DensityMatrix pseudo_pure(double epsilon, int qubits) {
  if (!(epsilon > 0.0) || epsilon > 1.0) {
    throw std::invalid_argument("pseudo_pure: epsilon must be in (0, 1]");
  }
  const Eigen::Index dim = Eigen::Index{1} << qubits;
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Identity(dim, dim) *
                         ((1.0 - epsilon) / static_cast<double>(dim));
  rho(0, 0) += epsilon;
  return DensityMatrix(qubits, std::move(rho));
}

DensityMatrix evolve(const DensityMatrix& rho,
                     const Eigen::MatrixXcd& unitary) {
  if (unitary.rows() != rho.dim() || unitary.cols() != rho.dim()) {
    throw std::invalid_argument("evolve: dimension mismatch");
  }
  const Eigen::MatrixXcd gram = unitary.adjoint() * unitary;
  const Eigen::MatrixXcd identity =
      Eigen::MatrixXcd::Identity(rho.dim(), rho.dim());
  if ((gram - identity).cwiseAbs().maxCoeff() > kUnitaryTol) {
    throw std::invalid_argument("evolve: operator is not unitary within 1e-8");
  }
  Eigen::MatrixXcd out = unitary * rho.matrix() * unitary.adjoint();
  // Symmetrize away the last-ulp Hermiticity drift of the two products.
  out = ((out + out.adjoint()) / 2.0).eval();
  return DensityMatrix(rho.qubits(), std::move(out));
}

Eigen::MatrixXcd pauli_matrix(std::string_view word) {
  if (word.empty()) throw std::invalid_argument("Pauli word: empty");
  Eigen::MatrixXcd out = single_pauli(word[0]);
  for (std::size_t i = 1; i < word.size(); ++i) {
    const Eigen::Matrix2cd next = single_pauli(word[i]);
    Eigen::MatrixXcd grown(out.rows() * 2, out.cols() * 2);
    grown.topLeftCorner(out.rows(), out.cols()) = out * next(0, 0);
    grown.topRightCorner(out.rows(), out.cols()) = out * next(0, 1);
    grown.bottomLeftCorner(out.rows(), out.cols()) = out * next(1, 0);
    grown.bottomRightCorner(out.rows(), out.cols()) = out * next(1, 1);
    out = std::move(grown);
  }
  return out;
}

double expect_pauli(const DensityMatrix& rho, std::string_view word) {
  if (static_cast<int>(word.size()) != rho.qubits()) {
    throw std::invalid_argument("expect_pauli: word length " +
                                std::to_string(word.size()) +
                                " does not match qubit count " +
                                std::to_string(rho.qubits()));
  }
  const cxd value = (rho.matrix() * pauli_matrix(word)).trace();
  if (std::abs(value.imag()) > 1e-10) {
    throw std::logic_error("expect_pauli: non-real expectation");
  }
  return value.real();
}

double fidelity(const DensityMatrix& a, const DensityMatrix& b) {
  if (a.dim() != b.dim()) {
    throw std::invalid_argument("fidelity: dimension mismatch");
  }
  const double overlap = (a.matrix() * b.matrix()).trace().real();
  const double purity_a = (a.matrix() * a.matrix()).trace().real();
  const double purity_b = (b.matrix() * b.matrix()).trace().real();
  if (purity_a <= 0.0 || purity_b <= 0.0) {
    throw std::invalid_argument("fidelity: zero-purity argument");
  }
  return overlap / std::sqrt(purity_a * purity_b);
}

DensityMatrix tomography(const std::map<std::string, double>& expectations,
                         int qubits) {
  const auto words = pauli_words(qubits);
  const std::string identity_word(qubits, 'I');
  const auto identity_it = expectations.find(identity_word);
  if (identity_it == expectations.end() ||
      std::abs(identity_it->second - 1.0) > 1e-10) {
    throw std::invalid_argument("tomography: <I...I> must be present and 1");
  }

  const Eigen::Index dim = Eigen::Index{1} << qubits;
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(dim, dim);
  for (const auto& word : words) {
    const auto it = expectations.find(word);
    if (it == expectations.end()) {
      throw std::invalid_argument("tomography: missing expectation for " + word);
    }
    if (it->second != 0.0) rho += it->second * pauli_matrix(word);
  }
  rho /= static_cast<double>(dim);
  return DensityMatrix(qubits, std::move(rho));
}

std::map<std::string, double> pauli_expectations(const DensityMatrix& rho) {
  std::map<std::string, double> out;
  for (const auto& word : pauli_words(rho.qubits())) {
    out[word] = expect_pauli(rho, word);
  }
  return out;
}

DensityMatrix depolarize(const DensityMatrix& rho, double p) {
  if (p < 0.0 || p > 1.0) {
    throw std::invalid_argument("depolarize: p must be in [0, 1]");
  }
  const Eigen::Index dim = rho.dim();
  Eigen::MatrixXcd out =
      (1.0 - p) * rho.matrix() +
      (p / static_cast<double>(dim)) * Eigen::MatrixXcd::Identity(dim, dim);
  return DensityMatrix(rho.qubits(), std::move(out));
}

std::string density_to_text(const DensityMatrix& rho) {
  std::ostringstream out;
  out.precision(17);
  out << rho.dim() << '\n';
  for (Eigen::Index r = 0; r < rho.dim(); ++r) {
    for (Eigen::Index c = 0; c < rho.dim(); ++c) {
      if (c) out << ' ';
      out << rho.matrix()(r, c).real() << ' ' << rho.matrix()(r, c).imag();
    }
    out << '\n';
  }
  return out.str();
}

DensityMatrix density_from_text(std::string_view text) {
  std::istringstream in{std::string(text)};
  Eigen::Index dim = 0;
  if (!(in >> dim) || dim < 2) {
    throw std::invalid_argument("density text: bad dimension header");
  }
  Eigen::MatrixXcd m(dim, dim);
  for (Eigen::Index r = 0; r < dim; ++r) {
    for (Eigen::Index c = 0; c < dim; ++c) {
      double re = 0.0, im = 0.0;
      if (!(in >> re >> im)) {
        throw std::invalid_argument("density text: truncated matrix body");
      }
      m(r, c) = cxd(re, im);
    }
  }
  return DensityMatrix(qubits_for_dim(dim), std::move(m));
}

std::string expectations_to_csv(
    const std::map<std::string, double>& expectations) {
  std::ostringstream out;
  out.precision(17);
  out << "pauli,expectation\n";
  for (const auto& [word, value] : expectations) {
    out << word << ',' << value << '\n';
  }
  return out.str();
}

std::map<std::string, double> expectations_from_csv(std::string_view csv) {
  std::istringstream in{std::string(csv)};
  std::string line;
  std::map<std::string, double> out;
  bool first = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (first) {
      first = false;
      if (line.rfind("pauli", 0) == 0) continue;  // header
    }
    const auto comma = line.find(',');
    if (comma == std::string::npos) {
      throw std::invalid_argument("expectations csv: missing comma in \"" +
                                  line + "\"");
    }
    out[line.substr(0, comma)] = std::stod(line.substr(comma + 1));
  }
  return out;
}

}  // namespace forr
