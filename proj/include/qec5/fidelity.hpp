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

// Entanglement fidelity of one-qubit processes, three ways:
//   six-state:  (F_0 + F_1 + F_+ + F_- + F_+i + F_-i) / 4 - 1/2
//   transfer:   (P_x + P_y + P_z + 1) / 4 with P_u = tr(s_u E(s_u)) / 2
//   reference:  overlap of (data, reference) with the initial Bell pair

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qec5/dense.hpp"
#include "qec5/pauli.hpp"

namespace qec5 {

inline constexpr double kFidelityClamp = 1e-9;

enum class Axis { kX, kY, kZ };
inline constexpr std::array<Axis, 3> kAxes = {Axis::kX, Axis::kY, Axis::kZ};

inline char axis_name(Axis a) { return a == Axis::kX ? 'x' : a == Axis::kY ? 'y' : 'z'; }
inline Axis parse_axis(std::string_view s) {
  if (s == "x") return Axis::kX;
  if (s == "y") return Axis::kY;
  if (s == "z") return Axis::kZ;
  throw std::invalid_argument("axis must be x, y or z, got '" + std::string(s) + "'");
}
inline PauliString axis_pauli(Axis a) { return PauliString::single(1, 1, static_cast<char>(std::toupper(axis_name(a)))); }

enum class FidelityMethod { kSixState, kTransfer, kReference };

inline const char* method_name(FidelityMethod m) {
  switch (m) {
    case FidelityMethod::kSixState: return "six-state";
    case FidelityMethod::kTransfer: return "transfer";
    case FidelityMethod::kReference: return "reference";
  }
  return "?";
}

struct FidelityEstimate {
  double value;
  FidelityMethod method;
  std::string inputs_used;
};

/// One-qubit density matrix in, one-qubit density matrix out.
using Process = std::function<DensityMatrix(const DensityMatrix&)>;

namespace detail {

inline double clamp_fidelity(double f) {
  if (f < -kFidelityClamp || f > 1 + kFidelityClamp) {
    throw std::runtime_error("fidelity " + std::to_string(f) + " outside [0, 1]");
  }
  return std::clamp(f, 0.0, 1.0);
}

inline double expectation(const PauliString& p, const DensityMatrix& rho) {
  return (to_matrix(p) * rho.matrix()).trace().real();
}

}  // namespace detail

/// |0>, |1>, |+>, |->, |+i>, |-i>.
inline std::array<StateVector, 6> cardinal_states() {
  const double s = 1.0 / std::sqrt(2.0);
  const Complex i(0, 1);
  auto make = [](Complex a, Complex b) {
    Vector v(2);
    v << a, b;
    return StateVector(1, v);
  };
  return {make(1, 0), make(0, 1), make(s, s), make(s, -s), make(s, s * i), make(s, -s * i)};
}

inline constexpr std::array<const char*, 6> kCardinalLabels = {"0", "1", "+", "-", "+i", "-i"};

/// (sum of the six cardinal-state fidelities) / 4 - 1/2.
inline FidelityEstimate six_state_entanglement_fidelity(const Process& process) {
  double sum = 0;
  for (const StateVector& psi : cardinal_states()) sum += fidelity_pure(psi, process(DensityMatrix(psi)));
  return {detail::clamp_fidelity(sum / 4.0 - 0.5), FidelityMethod::kSixState, "|0>,|1>,|+>,|->,|+i>,|-i>"};
}

/// P(E,u) = tr(s_u E(s_u)) / 2, evaluated by linearity as
/// tr(s_u E((1 + s_u)/2)) - tr(s_u E(1/2)).
inline double transfer_coefficient(const Process& process, Axis u) {
  const PauliString s = axis_pauli(u);
  const Matrix half_plus = (Matrix::Identity(2, 2) + to_matrix(s)) / 2.0;
  const double signal = detail::expectation(s, process(DensityMatrix(1, half_plus)));
  const double offset = detail::expectation(s, process(DensityMatrix::maximally_mixed(1)));
  const double p = signal - offset;
  if (p < -1 - kFidelityClamp || p > 1 + kFidelityClamp) throw std::runtime_error("transfer coefficient outside [-1, 1]");
  return std::clamp(p, -1.0, 1.0);
}

inline FidelityEstimate transfer_entanglement_fidelity(double px, double py, double pz) {
  for (double p : {px, py, pz}) {
    if (!(p >= -1.0 && p <= 1.0)) {
      throw std::invalid_argument("transfer_entanglement_fidelity: coefficient " + std::to_string(p) + " outside [-1, 1]");
    }
  }
  return {detail::clamp_fidelity((px + py + pz + 1.0) / 4.0), FidelityMethod::kTransfer, "P(E,x),P(E,y),P(E,z)"};
}

inline FidelityEstimate transfer_entanglement_fidelity(const Process& process) {
  return transfer_entanglement_fidelity(transfer_coefficient(process, Axis::kX), transfer_coefficient(process, Axis::kY),
                                        transfer_coefficient(process, Axis::kZ));
}

/// Runs `pipeline` on a Bell pair between `data_qubit` and an appended
/// reference qubit (other pipeline qubits in |rest_bit>) and returns the
/// overlap of the (data, reference) reduced state with that Bell pair.
inline FidelityEstimate reference_entanglement_fidelity(const Pipeline& pipeline, int data_qubit, int rest_bit = 0,
                                                        BellVariant variant = BellVariant::kPhiPlus) {
  const int n = pipeline.num_qubits();
  const StateVector bell = bell_with_reference(n, data_qubit, variant, rest_bit);
  const DensityMatrix out = pipeline.apply(DensityMatrix(bell));
  const std::vector<int> keep{data_qubit, n + 1};
  const DensityMatrix reduced = partial_trace(out, keep);
  const StateVector pair = bell_with_reference(1, 1, variant);
  return {detail::clamp_fidelity(fidelity_pure(pair, reduced)), FidelityMethod::kReference, "Bell pair with reference"};
}

/// The one-qubit process "embed at `data_qubit` (others |rest_bit>), run, trace out the rest".
inline Process process_from_pipeline(const Pipeline& pipeline, int data_qubit, int rest_bit = 0) {
  return [pipeline, data_qubit, rest_bit](const DensityMatrix& rho) {
    const int n = pipeline.num_qubits();
    const std::size_t dim = std::size_t{1} << n;
    const std::uint32_t data_bit = 1u << (n - data_qubit);
    std::uint32_t rest = 0;
    if (rest_bit) {
      for (int q = 1; q <= n; ++q) {
        if (q != data_qubit) rest |= 1u << (n - q);
      }
    }
    Matrix full = Matrix::Zero(dim, dim);
    for (int a = 0; a < 2; ++a) {
      for (int b = 0; b < 2; ++b) full(rest | (a ? data_bit : 0), rest | (b ? data_bit : 0)) = rho.matrix()(a, b);
    }
    const DensityMatrix out = pipeline.apply(DensityMatrix(n, full));
    const std::vector<int> keep{data_qubit};
    return partial_trace(out, keep);
  };
}

inline Process process_from_channel(const KrausChannel& ch) {
  if (ch.num_qubits() != 1) throw std::invalid_argument("process_from_channel: need a one-qubit channel");
  return [ch](const DensityMatrix& rho) { return apply_channel(rho, ch); };
}

/// sum_k |tr K_k|^2 / d^2.
inline double kraus_entanglement_fidelity(const KrausChannel& ch) {
  const double d = static_cast<double>(std::size_t{1} << ch.num_qubits());
  double f = 0;
  for (const Matrix& k : ch.operators()) f += std::norm(k.trace());
  return detail::clamp_fidelity(f / (d * d));
}

}  // namespace qec5
