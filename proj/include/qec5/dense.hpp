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

// Exact dense simulation on at most 8 qubits. Qubit 1 is the most
// significant bit of a computational-basis index.

#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "qec5/pauli.hpp"

namespace qec5 {

inline constexpr int kMaxDenseQubits = 8;
inline constexpr double kStateTolerance = 1e-10;
inline constexpr double kUnitaryTolerance = 1e-10;
inline constexpr double kEigenvalueFloor = -1e-9;

namespace detail {

inline void check_qubit_count(int n, const char* what) {
  if (n < 1 || n > kMaxDenseQubits) {
    throw std::invalid_argument(std::string(what) + ": qubit count must be in 1..8, got " + std::to_string(n));
  }
}

inline std::size_t dim_of(int n) { return std::size_t{1} << n; }

inline void check_targets(std::span<const int> targets, int n, const char* what) {
  if (targets.empty()) throw std::invalid_argument(std::string(what) + ": empty target list");
  std::uint32_t seen = 0;
  for (int t : targets) {
    if (t < 1 || t > n) {
      throw std::invalid_argument(std::string(what) + ": target " + std::to_string(t) + " out of range 1.." +
                                  std::to_string(n));
    }
    if (seen & (1u << t)) throw std::invalid_argument(std::string(what) + ": repeated target " + std::to_string(t));
    seen |= 1u << t;
  }
}

inline bool is_unitary(const Matrix& u, double tol = kUnitaryTolerance) {
  if (u.rows() != u.cols()) return false;
  return (u.adjoint() * u - Matrix::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff() <= tol;
}

/// Embeds `op` (acting on `targets`, first target = most significant) into n qubits.
inline Matrix embed_operator(const Matrix& op, std::span<const int> targets, int n) {
  const int k = static_cast<int>(targets.size());
  const std::size_t dim = dim_of(n);
  std::uint32_t target_mask = 0;
  for (int t : targets) target_mask |= 1u << (n - t);
  auto sub_index = [&](std::uint32_t b) {
    std::uint32_t s = 0;
    for (int j = 0; j < k; ++j) s |= ((b >> (n - targets[j])) & 1u) << (k - 1 - j);
    return s;
  };
  std::vector<std::uint32_t> sub(dim);
  for (std::uint32_t b = 0; b < dim; ++b) sub[b] = sub_index(b);
  Matrix out = Matrix::Zero(dim, dim);
  for (std::uint32_t r = 0; r < dim; ++r) {
    for (std::uint32_t c = 0; c < dim; ++c) {
      if ((r & ~target_mask) == (c & ~target_mask)) out(r, c) = op(sub[r], sub[c]);
    }
  }
  return out;
}

/// P rho P^dagger for a Pauli product on the leading qubits of an n-qubit operator.
inline Matrix conjugate_by_pauli(const Matrix& rho, const PauliString& p, int n) {
  const PauliString full = p.resized(n);
  const std::size_t dim = dim_of(n);
  const std::uint32_t xm = basis_mask(full.x_bits(), n);
  const std::uint32_t zm = basis_mask(full.z_bits(), n);
  const int base = phase_exponent(full.phase()) + std::popcount(full.x_bits() & full.z_bits());
  std::vector<Complex> coeff(dim);
  for (std::uint32_t b = 0; b < dim; ++b) {
    coeff[b] = phase_value(phase_from_exponent(base + 2 * std::popcount(b & zm)));
  }
  Matrix out(dim, dim);
  for (std::uint32_t r = 0; r < dim; ++r) {
    for (std::uint32_t c = 0; c < dim; ++c) {
      out(r ^ xm, c ^ xm) = coeff[r] * std::conj(coeff[c]) * rho(r, c);
    }
  }
  return out;
}

inline Matrix partial_trace(const Matrix& rho, int n, std::span<const int> keep) {
  const int k = static_cast<int>(keep.size());
  std::vector<int> traced;
  for (int q = 1; q <= n; ++q) {
    if (std::find(keep.begin(), keep.end(), q) == keep.end()) traced.push_back(q);
  }
  const std::size_t kd = dim_of(k);
  const std::size_t td = std::size_t{1} << traced.size();
  auto compose = [&](std::uint32_t kept_index, std::uint32_t traced_index) {
    std::uint32_t b = 0;
    for (int j = 0; j < k; ++j) b |= ((kept_index >> (k - 1 - j)) & 1u) << (n - keep[j]);
    const int t = static_cast<int>(traced.size());
    for (int j = 0; j < t; ++j) b |= ((traced_index >> (t - 1 - j)) & 1u) << (n - traced[j]);
    return b;
  };
  Matrix out = Matrix::Zero(kd, kd);
  for (std::uint32_t r = 0; r < kd; ++r) {
    for (std::uint32_t c = 0; c < kd; ++c) {
      Complex acc = 0;
      for (std::uint32_t e = 0; e < td; ++e) acc += rho(compose(r, e), compose(c, e));
      out(r, c) = acc;
    }
  }
  return out;
}

}  // namespace detail

class StateVector {
 public:
  StateVector(int num_qubits, Vector amplitudes) : n_(num_qubits), amps_(std::move(amplitudes)) {
    detail::check_qubit_count(n_, "StateVector");
    if (static_cast<std::size_t>(amps_.size()) != detail::dim_of(n_)) {
      throw std::invalid_argument("StateVector: amplitude count does not match 2^n");
    }
    if (std::abs(amps_.squaredNorm() - 1.0) > kStateTolerance) {
      throw std::invalid_argument("StateVector: not normalized (norm^2 = " + std::to_string(amps_.squaredNorm()) +
                                  ")");
    }
  }

  static StateVector basis(int num_qubits, std::uint32_t index) {
    detail::check_qubit_count(num_qubits, "StateVector::basis");
    Vector v = Vector::Zero(detail::dim_of(num_qubits));
    v(index) = 1;
    return StateVector(num_qubits, std::move(v));
  }

  /// Basis state from a bit per qubit, qubit 1 first ("01000").
  static StateVector from_bits(std::string_view bits) {
    std::uint32_t index = 0;
    for (char c : bits) {
      if (c != '0' && c != '1') throw std::invalid_argument("StateVector::from_bits: expected 0/1");
      index = (index << 1) | static_cast<std::uint32_t>(c == '1');
    }
    return basis(static_cast<int>(bits.size()), index);
  }

  int num_qubits() const { return n_; }
  const Vector& amplitudes() const { return amps_; }

  StateVector tensor(const StateVector& other) const {
    Vector v(amps_.size() * other.amps_.size());
    for (Eigen::Index i = 0; i < amps_.size(); ++i) {
      v.segment(i * other.amps_.size(), other.amps_.size()) = amps_(i) * other.amps_;
    }
    return StateVector(n_ + other.n_, std::move(v));
  }

 private:
  int n_;
  Vector amps_;
};

class DensityMatrix {
 public:
  /// Validates Hermiticity, unit trace and the eigenvalue floor.
  DensityMatrix(int num_qubits, Matrix entries) : n_(num_qubits), rho_(std::move(entries)) {
    detail::check_qubit_count(n_, "DensityMatrix");
    const auto dim = static_cast<Eigen::Index>(detail::dim_of(n_));
    if (rho_.rows() != dim || rho_.cols() != dim) throw std::invalid_argument("DensityMatrix: wrong dimension");
    if ((rho_ - rho_.adjoint()).cwiseAbs().maxCoeff() > kStateTolerance) {
      throw std::invalid_argument("DensityMatrix: not Hermitian");
    }
    if (std::abs(rho_.trace() - Complex(1, 0)) > kStateTolerance) {
      throw std::invalid_argument("DensityMatrix: trace is not 1");
    }
    Eigen::SelfAdjointEigenSolver<Matrix> es(rho_, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < kEigenvalueFloor) {
      throw std::invalid_argument("DensityMatrix: negative eigenvalue " + std::to_string(es.eigenvalues().minCoeff()));
    }
  }

  explicit DensityMatrix(const StateVector& psi)
      : n_(psi.num_qubits()), rho_(psi.amplitudes() * psi.amplitudes().adjoint()) {}

  static DensityMatrix maximally_mixed(int num_qubits) {
    const auto dim = static_cast<Eigen::Index>(detail::dim_of(num_qubits));
    return DensityMatrix(num_qubits, Matrix::Identity(dim, dim) / static_cast<double>(dim));
  }

  int num_qubits() const { return n_; }
  const Matrix& matrix() const { return rho_; }

  DensityMatrix tensor(const DensityMatrix& other) const {
    Matrix m(rho_.rows() * other.rho_.rows(), rho_.cols() * other.rho_.cols());
    for (Eigen::Index i = 0; i < rho_.rows(); ++i) {
      for (Eigen::Index j = 0; j < rho_.cols(); ++j) {
        m.block(i * other.rho_.rows(), j * other.rho_.cols(), other.rho_.rows(), other.rho_.cols()) =
            rho_(i, j) * other.rho_;
      }
    }
    return DensityMatrix(n_ + other.n_, std::move(m));
  }

 private:
  int n_;
  Matrix rho_;
};

/// Completely positive trace-preserving map in operator-sum form.
class KrausChannel {
 public:
  KrausChannel(int num_qubits, std::vector<Matrix> operators) : n_(num_qubits), ops_(std::move(operators)) {
    detail::check_qubit_count(n_, "KrausChannel");
    if (ops_.empty()) throw std::invalid_argument("KrausChannel: no operators");
    const auto dim = static_cast<Eigen::Index>(detail::dim_of(n_));
    Matrix sum = Matrix::Zero(dim, dim);
    for (const Matrix& k : ops_) {
      if (k.rows() != dim || k.cols() != dim) throw std::invalid_argument("KrausChannel: wrong operator dimension");
      sum += k.adjoint() * k;
    }
    if ((sum - Matrix::Identity(dim, dim)).cwiseAbs().maxCoeff() > kStateTolerance) {
      throw std::invalid_argument("KrausChannel: operators are not complete (sum K^dag K != 1)");
    }
  }

  static KrausChannel identity(int num_qubits) {
    const auto dim = static_cast<Eigen::Index>(detail::dim_of(num_qubits));
    return KrausChannel(num_qubits, {Matrix::Identity(dim, dim)});
  }

  static KrausChannel unitary(int num_qubits, const Matrix& u) { return KrausChannel(num_qubits, {u}); }

  int num_qubits() const { return n_; }
  const std::vector<Matrix>& operators() const { return ops_; }

  /// `second` after `first`.
  static KrausChannel compose(const KrausChannel& first, const KrausChannel& second) {
    if (first.n_ != second.n_) throw std::invalid_argument("KrausChannel::compose: dimension mismatch");
    std::vector<Matrix> ops;
    ops.reserve(first.ops_.size() * second.ops_.size());
    for (const Matrix& b : second.ops_) {
      for (const Matrix& a : first.ops_) ops.push_back(b * a);
    }
    return KrausChannel(first.n_, std::move(ops));
  }

 private:
  int n_;
  std::vector<Matrix> ops_;
};

inline StateVector apply_unitary(const StateVector& psi, const Matrix& u, std::span<const int> targets) {
  detail::check_targets(targets, psi.num_qubits(), "apply_unitary");
  if (u.rows() != static_cast<Eigen::Index>(detail::dim_of(static_cast<int>(targets.size())))) {
    throw std::invalid_argument("apply_unitary: matrix size does not match target count");
  }
  if (!detail::is_unitary(u)) throw std::invalid_argument("apply_unitary: matrix is not unitary");
  Vector v = detail::embed_operator(u, targets, psi.num_qubits()) * psi.amplitudes();
  return StateVector(psi.num_qubits(), std::move(v));
}

inline DensityMatrix apply_unitary(const DensityMatrix& rho, const Matrix& u, std::span<const int> targets) {
  detail::check_targets(targets, rho.num_qubits(), "apply_unitary");
  if (u.rows() != static_cast<Eigen::Index>(detail::dim_of(static_cast<int>(targets.size())))) {
    throw std::invalid_argument("apply_unitary: matrix size does not match target count");
  }
  if (!detail::is_unitary(u)) throw std::invalid_argument("apply_unitary: matrix is not unitary");
  const Matrix full = detail::embed_operator(u, targets, rho.num_qubits());
  return DensityMatrix(rho.num_qubits(), full * rho.matrix() * full.adjoint());
}

inline DensityMatrix apply_channel(const DensityMatrix& rho, const KrausChannel& ch) {
  if (rho.num_qubits() != ch.num_qubits()) throw std::invalid_argument("apply_channel: dimension mismatch");
  Matrix out = Matrix::Zero(rho.matrix().rows(), rho.matrix().cols());
  for (const Matrix& k : ch.operators()) out += k * rho.matrix() * k.adjoint();
  return DensityMatrix(rho.num_qubits(), std::move(out));
}

/// Applies `ch` to the listed qubits of a larger state.
inline DensityMatrix apply_channel(const DensityMatrix& rho, const KrausChannel& ch, std::span<const int> targets) {
  detail::check_targets(targets, rho.num_qubits(), "apply_channel");
  if (static_cast<int>(targets.size()) != ch.num_qubits()) {
    throw std::invalid_argument("apply_channel: target count does not match channel size");
  }
  Matrix out = Matrix::Zero(rho.matrix().rows(), rho.matrix().cols());
  for (const Matrix& k : ch.operators()) {
    const Matrix full = detail::embed_operator(k, targets, rho.num_qubits());
    out += full * rho.matrix() * full.adjoint();
  }
  return DensityMatrix(rho.num_qubits(), std::move(out));
}

/// Reduced state on `keep` (listed order becomes the new qubit order).
inline DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const int> keep) {
  detail::check_targets(keep, rho.num_qubits(), "partial_trace");
  return DensityMatrix(static_cast<int>(keep.size()), detail::partial_trace(rho.matrix(), rho.num_qubits(), keep));
}

/// <psi|rho|psi>, clamped into [0, 1] after a tolerance check.
inline double fidelity_pure(const StateVector& psi, const DensityMatrix& rho) {
  if (psi.num_qubits() != rho.num_qubits()) throw std::invalid_argument("fidelity_pure: dimension mismatch");
  const Complex f = psi.amplitudes().dot(rho.matrix() * psi.amplitudes());
  if (std::abs(f.imag()) > kStateTolerance) throw std::runtime_error("fidelity_pure: overlap is not real");
  if (f.real() < -kStateTolerance || f.real() > 1 + kStateTolerance) {
    throw std::runtime_error("fidelity_pure: overlap outside [0, 1]");
  }
  return std::clamp(f.real(), 0.0, 1.0);
}

enum class BellVariant { kPhiPlus, kPhiMinus, kPsiPlus, kPsiMinus };

/// Maximally entangled pair between `data_qubit` and an appended reference
/// qubit n+1; every other qubit sits in |rest_bit>.
inline StateVector bell_with_reference(int num_qubits, int data_qubit, BellVariant variant = BellVariant::kPhiPlus,
                                       int rest_bit = 0) {
  const int total = num_qubits + 1;
  detail::check_qubit_count(total, "bell_with_reference");
  if (data_qubit < 1 || data_qubit > num_qubits) throw std::invalid_argument("bell_with_reference: bad data qubit");
  std::uint32_t rest = 0;
  if (rest_bit) {
    for (int q = 1; q <= num_qubits; ++q) {
      if (q != data_qubit) rest |= 1u << (total - q);
    }
  }
  const std::uint32_t d = 1u << (total - data_qubit);
  const std::uint32_t r = 1u;
  const double s = 1.0 / std::sqrt(2.0);
  Vector v = Vector::Zero(detail::dim_of(total));
  switch (variant) {
    case BellVariant::kPhiPlus: v(rest) = s; v(rest | d | r) = s; break;
    case BellVariant::kPhiMinus: v(rest) = s; v(rest | d | r) = -s; break;
    case BellVariant::kPsiPlus: v(rest | d) = s; v(rest | r) = s; break;
    case BellVariant::kPsiMinus: v(rest | d) = s; v(rest | r) = -s; break;
  }
  return StateVector(total, std::move(v));
}

/// Plain-text complex grid for debugging.
inline void dump_matrix(std::ostream& os, const Matrix& m, int precision = 6) {
  os << std::setprecision(precision) << std::fixed;
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      if (c) os << ' ';
      os << '(' << m(r, c).real() << ',' << m(r, c).imag() << ')';
    }
    os << '\n';
  }
}

/// A fixed sequence of unitaries and channels on qubits 1..n. It can act on
/// states carrying extra trailing qubits (the entanglement reference), which
/// it leaves untouched.
class Pipeline {
 public:
  struct UnitaryStep {
    Matrix u;
    std::vector<int> targets;
  };
  struct KrausStep {
    KrausChannel channel;
    std::vector<int> targets;
  };
  struct PauliMixStep {
    std::vector<std::pair<double, PauliString>> terms;
  };
  using Step = std::variant<UnitaryStep, KrausStep, PauliMixStep>;

  explicit Pipeline(int num_qubits) : n_(num_qubits) { detail::check_qubit_count(n_, "Pipeline"); }

  int num_qubits() const { return n_; }
  const std::vector<Step>& steps() const { return steps_; }

  Pipeline& unitary(Matrix u, std::vector<int> targets) {
    detail::check_targets(targets, n_, "Pipeline::unitary");
    if (!detail::is_unitary(u)) throw std::invalid_argument("Pipeline::unitary: matrix is not unitary");
    steps_.emplace_back(UnitaryStep{std::move(u), std::move(targets)});
    return *this;
  }
  Pipeline& unitary_all(Matrix u) {
    std::vector<int> t(n_);
    for (int q = 0; q < n_; ++q) t[q] = q + 1;
    return unitary(std::move(u), std::move(t));
  }
  Pipeline& channel(KrausChannel ch, std::vector<int> targets) {
    detail::check_targets(targets, n_, "Pipeline::channel");
    if (static_cast<int>(targets.size()) != ch.num_qubits()) {
      throw std::invalid_argument("Pipeline::channel: target count does not match channel size");
    }
    steps_.emplace_back(KrausStep{std::move(ch), std::move(targets)});
    return *this;
  }
  Pipeline& pauli_mixture(std::vector<std::pair<double, PauliString>> terms) {
    for (const auto& [w, p] : terms) {
      if (p.num_qubits() > n_) throw std::invalid_argument("Pipeline::pauli_mixture: Pauli larger than pipeline");
      if (w < 0) throw std::invalid_argument("Pipeline::pauli_mixture: negative weight");
    }
    steps_.emplace_back(PauliMixStep{std::move(terms)});
    return *this;
  }
  Pipeline& pauli(const PauliString& p) { return pauli_mixture({{1.0, p}}); }

  /// Linear action on an arbitrary operator over `total_qubits` >= n qubits.
  Matrix apply_operator(const Matrix& op, int total_qubits) const {
    if (total_qubits < n_) throw std::invalid_argument("Pipeline: state smaller than pipeline");
    Matrix m = op;
    for (const Step& step : steps_) {
      if (const auto* s = std::get_if<UnitaryStep>(&step)) {
        const Matrix full = detail::embed_operator(s->u, s->targets, total_qubits);
        m = full * m * full.adjoint();
      } else if (const auto* s = std::get_if<KrausStep>(&step)) {
        Matrix out = Matrix::Zero(m.rows(), m.cols());
        for (const Matrix& k : s->channel.operators()) {
          const Matrix full = detail::embed_operator(k, s->targets, total_qubits);
          out += full * m * full.adjoint();
        }
        m = std::move(out);
      } else {
        const auto& mix = std::get<PauliMixStep>(step);
        Matrix out = Matrix::Zero(m.rows(), m.cols());
        for (const auto& [w, p] : mix.terms) {
          if (w == 0) continue;
          out += w * detail::conjugate_by_pauli(m, p, total_qubits);
        }
        m = std::move(out);
      }
    }
    return m;
  }

  DensityMatrix apply(const DensityMatrix& rho) const {
    return DensityMatrix(rho.num_qubits(), apply_operator(rho.matrix(), rho.num_qubits()));
  }

 private:
  int n_;
  std::vector<Step> steps_;
};

}  // namespace qec5
