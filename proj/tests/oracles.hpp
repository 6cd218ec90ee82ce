// Copyright 2026 The qec5 Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Test-only reference constructions. Nothing here goes through the library's
// symbolic Pauli algebra, so these can check it.

#pragma once

#include <cmath>
#include <complex>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "qec5/dense.hpp"

namespace qec5::testing {

using Cd = std::complex<double>;

inline Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix m(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) m.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  }
  return m;
}

inline Matrix pauli2(char c) {
  Matrix m(2, 2);
  switch (c) {
    case 'X': m << 0, 1, 1, 0; break;
    case 'Y': m << 0, Cd(0, -1), Cd(0, 1), 0; break;
    case 'Z': m << 1, 0, 0, -1; break;
    default: m << 1, 0, 0, 1; break;
  }
  return m;
}

/// Kronecker product of letters, first letter = qubit 1 = most significant.
inline Matrix kron_letters(std::string_view letters, Cd prefactor = 1.0) {
  Matrix m = Matrix::Identity(1, 1);
  for (char c : letters) m = kron(m, pauli2(c));
  return prefactor * m;
}

inline double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

/// Haar-ish random unitary from QR of a complex Gaussian matrix.
template <class Rng>
Matrix random_unitary(int dim, Rng& rng) {
  std::normal_distribution<double> g;
  Matrix a(dim, dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) a(i, j) = Cd(g(rng), g(rng));
  }
  Eigen::HouseholderQR<Matrix> qr(a);
  Matrix q = qr.householderQ();
  Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int i = 0; i < dim; ++i) q.col(i) *= std::polar(1.0, std::arg(r(i, i)));
  return q;
}

/// Random channel with `k` Kraus operators from a random isometry.
template <class Rng>
KrausChannel random_channel(int num_qubits, int k, Rng& rng) {
  const int d = 1 << num_qubits;
  const Matrix u = random_unitary(d * k, rng);
  std::vector<Matrix> ops;
  for (int i = 0; i < k; ++i) ops.push_back(u.block(i * d, 0, d, d));
  return KrausChannel(num_qubits, std::move(ops));
}

template <class Rng>
DensityMatrix random_density(int num_qubits, Rng& rng) {
  const int d = 1 << num_qubits;
  std::normal_distribution<double> g;
  Matrix a(d, d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) a(i, j) = Cd(g(rng), g(rng));
  }
  Matrix rho = a * a.adjoint();
  rho /= rho.trace().real();
  rho = (rho + rho.adjoint()) / 2.0;
  return DensityMatrix(num_qubits, rho);
}

template <class Rng>
StateVector random_state(int num_qubits, Rng& rng) {
  const int d = 1 << num_qubits;
  std::normal_distribution<double> g;
  Vector v(d);
  for (int i = 0; i < d; ++i) v(i) = Cd(g(rng), g(rng));
  v.normalize();
  return StateVector(num_qubits, v);
}

template <class Rng>
std::string random_letters(int n, Rng& rng) {
  std::uniform_int_distribution<int> pick(0, 3);
  std::string s;
  for (int i = 0; i < n; ++i) s.push_back("IXYZ"[pick(rng)]);
  return s;
}

/// sum_k K rho K^dagger with full-size operators.
inline Matrix apply_kraus_full(const std::vector<Matrix>& ops, const Matrix& rho) {
  Matrix out = Matrix::Zero(rho.rows(), rho.cols());
  for (const auto& k : ops) out += k * rho * k.adjoint();
  return out;
}

}  // namespace qec5::testing
