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

#pragma once

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "qec5/dense.hpp"
#include "qec5/pauli.hpp"

namespace qec5 {

enum class Gate { kH, kS, kSdg, kX, kY, kZ, kCX, kSwap };

inline const char* gate_name(Gate g) {
  switch (g) {
    case Gate::kH: return "H";
    case Gate::kS: return "S";
    case Gate::kSdg: return "S_DAG";
    case Gate::kX: return "X";
    case Gate::kY: return "Y";
    case Gate::kZ: return "Z";
    case Gate::kCX: return "CX";
    case Gate::kSwap: return "SWAP";
  }
  return "?";
}

inline bool is_two_qubit(Gate g) { return g == Gate::kCX || g == Gate::kSwap; }

inline Gate inverse_gate(Gate g) {
  if (g == Gate::kS) return Gate::kSdg;
  if (g == Gate::kSdg) return Gate::kS;
  return g;
}

struct GateOp {
  Gate gate;
  int q0;       // 1-based; control for CX
  int q1 = 0;   // target for two-qubit gates
};

/// Small dense matrix of a gate; for CX the first qubit is the control.
inline Matrix gate_matrix(Gate g) {
  const double s = 1.0 / std::sqrt(2.0);
  const Complex i(0, 1);
  Matrix m;
  switch (g) {
    case Gate::kH: m.resize(2, 2); m << s, s, s, -s; break;
    case Gate::kS: m.resize(2, 2); m << 1, 0, 0, i; break;
    case Gate::kSdg: m.resize(2, 2); m << 1, 0, 0, -i; break;
    case Gate::kX: m.resize(2, 2); m << 0, 1, 1, 0; break;
    case Gate::kY: m.resize(2, 2); m << 0, -i, i, 0; break;
    case Gate::kZ: m.resize(2, 2); m << 1, 0, 0, -1; break;
    case Gate::kCX:
      m = Matrix::Zero(4, 4);
      m(0, 0) = m(1, 1) = m(2, 3) = m(3, 2) = 1;
      break;
    case Gate::kSwap:
      m = Matrix::Zero(4, 4);
      m(0, 0) = m(1, 2) = m(2, 1) = m(3, 3) = 1;
      break;
  }
  return m;
}

/// G P G^dagger, computed on the bits.
inline PauliString conjugate(const GateOp& op, const PauliString& p) {
  std::uint32_t x = p.x_bits();
  std::uint32_t z = p.z_bits();
  int k = phase_exponent(p.phase());
  const std::uint32_t a = 1u << (op.q0 - 1);
  const bool xa = x & a;
  const bool za = z & a;
  switch (op.gate) {
    case Gate::kH:
      if (xa && za) k += 2;
      x = (x & ~a) | (za ? a : 0);
      z = (z & ~a) | (xa ? a : 0);
      break;
    case Gate::kS:
      if (xa && za) k += 2;
      if (xa) z ^= a;
      break;
    case Gate::kSdg:
      if (xa && !za) k += 2;
      if (xa) z ^= a;
      break;
    case Gate::kX:
      if (za) k += 2;
      break;
    case Gate::kY:
      if (xa != za) k += 2;
      break;
    case Gate::kZ:
      if (xa) k += 2;
      break;
    case Gate::kCX: {
      const std::uint32_t b = 1u << (op.q1 - 1);
      const bool xb = x & b;
      const bool zb = z & b;
      if (xa && zb && (xb == za)) k += 2;
      if (xa) x ^= b;
      if (zb) z ^= a;
      break;
    }
    case Gate::kSwap: {
      const std::uint32_t b = 1u << (op.q1 - 1);
      const bool xb = x & b;
      const bool zb = z & b;
      x = (x & ~(a | b)) | (xa ? b : 0) | (xb ? a : 0);
      z = (z & ~(a | b)) | (za ? b : 0) | (zb ? a : 0);
      break;
    }
  }
  return PauliString(p.num_qubits(), x, z, phase_from_exponent(k));
}

/// Images of X_q and Z_q under conjugation by a Clifford unitary.
class Tableau {
 public:
  explicit Tableau(int num_qubits) : n_(num_qubits) {
    for (int q = 1; q <= n_; ++q) {
      xs_.push_back(PauliString::single(n_, q, 'X'));
      zs_.push_back(PauliString::single(n_, q, 'Z'));
    }
  }

  Tableau(std::vector<PauliString> x_images, std::vector<PauliString> z_images)
      : n_(static_cast<int>(x_images.size())), xs_(std::move(x_images)), zs_(std::move(z_images)) {
    if (zs_.size() != xs_.size()) throw std::invalid_argument("Tableau: image count mismatch");
    for (int i = 0; i < n_; ++i) {
      if (xs_[i].num_qubits() != n_ || zs_[i].num_qubits() != n_) {
        throw std::invalid_argument("Tableau: image size mismatch");
      }
      if (!xs_[i].is_hermitian() || !zs_[i].is_hermitian()) {
        throw std::invalid_argument("Tableau: images must be Hermitian");
      }
    }
    for (int i = 0; i < n_; ++i) {
      for (int j = 0; j < n_; ++j) {
        const bool anti_expected = i == j;
        if (commutes(xs_[i], zs_[j]) == anti_expected ||
            (i != j && (!commutes(xs_[i], xs_[j]) || !commutes(zs_[i], zs_[j])))) {
          throw std::invalid_argument("Tableau: images violate the Pauli commutation relations at qubit " +
                                      std::to_string(i + 1));
        }
      }
    }
  }

  int num_qubits() const { return n_; }
  const PauliString& x_image(int qubit) const { return xs_.at(qubit - 1); }
  const PauliString& z_image(int qubit) const { return zs_.at(qubit - 1); }

  /// U P U^dagger.
  PauliString conjugate(const PauliString& p) const {
    if (p.num_qubits() != n_) throw std::invalid_argument("Tableau::conjugate: size mismatch");
    PauliString out(n_);
    int k = phase_exponent(p.phase());
    for (int q = 1; q <= n_; ++q) {
      const char c = p.at(q);
      if (c == 'X' || c == 'Y') out = out * xs_[q - 1];
      if (c == 'Z' || c == 'Y') out = out * zs_[q - 1];
      if (c == 'Y') k += 1;  // Y = i X Z
    }
    return out.with_phase(phase_from_exponent(phase_exponent(out.phase()) + k));
  }

  void apply(const GateOp& op) {
    for (auto& p : xs_) p = qec5::conjugate(op, p);
    for (auto& p : zs_) p = qec5::conjugate(op, p);
  }

  friend bool operator==(const Tableau& a, const Tableau& b) { return a.xs_ == b.xs_ && a.zs_ == b.zs_; }

 private:
  int n_;
  std::vector<PauliString> xs_;
  std::vector<PauliString> zs_;
};

class Circuit {
 public:
  explicit Circuit(int num_qubits) : n_(num_qubits) {}

  int num_qubits() const { return n_; }
  const std::vector<GateOp>& ops() const { return ops_; }

  Circuit& append(Gate g, int q0, int q1 = 0) {
    if (q0 < 1 || q0 > n_ || (is_two_qubit(g) && (q1 < 1 || q1 > n_ || q1 == q0))) {
      throw std::invalid_argument(std::string("Circuit: bad qubits for ") + gate_name(g));
    }
    ops_.push_back({g, q0, q1});
    return *this;
  }

  Circuit inverse() const {
    Circuit c(n_);
    for (auto it = ops_.rbegin(); it != ops_.rend(); ++it) c.ops_.push_back({inverse_gate(it->gate), it->q0, it->q1});
    return c;
  }

  PauliString conjugate(const PauliString& p) const {
    PauliString out = p;
    for (const GateOp& op : ops_) out = qec5::conjugate(op, out);
    return out;
  }

  Tableau tableau() const {
    Tableau t(n_);
    for (const GateOp& op : ops_) t.apply(op);
    return t;
  }

  Matrix unitary() const {
    const auto dim = static_cast<Eigen::Index>(std::size_t{1} << n_);
    Matrix u = Matrix::Identity(dim, dim);
    for (const GateOp& op : ops_) {
      std::vector<int> targets{op.q0};
      if (is_two_qubit(op.gate)) targets.push_back(op.q1);
      u = detail::embed_operator(gate_matrix(op.gate), targets, n_) * u;
    }
    return u;
  }

  std::string str() const {
    std::ostringstream os;
    for (const GateOp& op : ops_) {
      os << gate_name(op.gate) << ' ' << op.q0;
      if (is_two_qubit(op.gate)) os << ' ' << op.q1;
      os << '\n';
    }
    return os.str();
  }

 private:
  int n_;
  std::vector<GateOp> ops_;
};

/// Decomposes a tableau into H / S / CX / SWAP / Pauli gates whose circuit
/// reproduces it exactly, signs included.
///
/// Column by column, gates on qubits >= col reduce the image of X_col to
/// +-X_col and then the image of Z_col to +-Z_col; remaining signs are fixed
/// by Paulis. The recorded gates reduce the tableau to the identity, so the
/// circuit is their inverse in reverse order.
inline Circuit synthesize(const Tableau& target) {
  const int n = target.num_qubits();
  Tableau t = target;
  std::vector<GateOp> reduction;
  auto act = [&](Gate g, int q0, int q1 = 0) {
    const GateOp op{g, q0, q1};
    t.apply(op);
    reduction.push_back(op);
  };
  auto xbit = [](const PauliString& p, int q) { return ((p.x_bits() >> (q - 1)) & 1u) != 0; };
  auto zbit = [](const PauliString& p, int q) { return ((p.z_bits() >> (q - 1)) & 1u) != 0; };

  for (int col = 1; col <= n; ++col) {
    int pivot = 0;
    for (int q = col; q <= n && !pivot; ++q) {
      if (xbit(t.x_image(col), q)) pivot = q;
    }
    if (!pivot) {
      for (int q = col; q <= n && !pivot; ++q) {
        if (zbit(t.x_image(col), q)) pivot = q;
      }
      if (!pivot) throw std::logic_error("synthesize: X image lost support");
      act(Gate::kH, pivot);
    }
    if (pivot != col) act(Gate::kSwap, pivot, col);
    for (int q = col + 1; q <= n; ++q) {
      if (xbit(t.x_image(col), q)) act(Gate::kCX, col, q);
    }
    if (zbit(t.x_image(col), col)) act(Gate::kS, col);
    for (int q = col + 1; q <= n; ++q) {
      if (zbit(t.x_image(col), q)) {
        act(Gate::kH, q);
        act(Gate::kCX, col, q);
      }
    }

    if (xbit(t.z_image(col), col)) {
      act(Gate::kH, col);
      act(Gate::kS, col);
      act(Gate::kH, col);
    }
    for (int q = col + 1; q <= n; ++q) {
      const char c = t.z_image(col).at(q);
      if (c == 'I') continue;
      if (c == 'X') act(Gate::kH, q);
      if (c == 'Y') {
        act(Gate::kS, q);
        act(Gate::kH, q);
      }
      act(Gate::kCX, q, col);
    }
  }
  for (int q = 1; q <= n; ++q) {
    if (t.x_image(q).phase() == Phase::kMinusOne) act(Gate::kZ, q);
    if (t.z_image(q).phase() == Phase::kMinusOne) act(Gate::kX, q);
  }
  if (!(t == Tableau(n))) throw std::logic_error("synthesize: reduction did not reach the identity");

  Circuit c(n);
  for (auto it = reduction.rbegin(); it != reduction.rend(); ++it) c.append(inverse_gate(it->gate), it->q0, it->q1);
  return c;
}

}  // namespace qec5
