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

#include <bit>
#include <cctype>
#include <complex>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace qec5 {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Scalar prefactor of a Pauli product, stored as an exponent of i.
enum class Phase : std::uint8_t { kPlusOne = 0, kPlusI = 1, kMinusOne = 2, kMinusI = 3 };

inline Phase phase_from_exponent(int k) { return static_cast<Phase>(((k % 4) + 4) % 4); }
inline int phase_exponent(Phase p) { return static_cast<int>(p); }

inline Complex phase_value(Phase p) {
  switch (p) {
    case Phase::kPlusOne: return {1, 0};
    case Phase::kPlusI: return {0, 1};
    case Phase::kMinusOne: return {-1, 0};
    case Phase::kMinusI: return {0, -1};
  }
  return {1, 0};
}

/// An n-qubit Pauli product with an exact phase.
///
/// Qubits are numbered 1..n. Bit (k-1) of `x_bits` / `z_bits` belongs to
/// qubit k. A qubit with both bits set carries Y itself (Y = i*X*Z), so the
/// operator is `phase * P_1 (x) ... (x) P_n` with every P_k in {I, X, Y, Z}
/// Hermitian. Hence the operator is Hermitian iff the phase is +1 or -1.
class PauliString {
 public:
  static constexpr int kMaxQubits = 8;

  PauliString() : PauliString(1) {}

  /// Identity on `num_qubits` qubits.
  explicit PauliString(int num_qubits) : PauliString(num_qubits, 0, 0, Phase::kPlusOne) {}

  PauliString(int num_qubits, std::uint32_t x_bits, std::uint32_t z_bits,
              Phase phase = Phase::kPlusOne)
      : n_(num_qubits), x_(x_bits), z_(z_bits), phase_(phase) {
    if (n_ < 1 || n_ > kMaxQubits) {
      throw std::invalid_argument("PauliString: qubit count must be in 1..8, got " +
                                  std::to_string(n_));
    }
    if ((x_ | z_) >> n_) {
      throw std::invalid_argument("PauliString: bits set beyond qubit " + std::to_string(n_));
    }
  }

  /// A single-qubit Pauli ('I', 'X', 'Y' or 'Z') acting on `qubit` (1-based).
  static PauliString single(int num_qubits, int qubit, char pauli) {
    PauliString p(num_qubits);
    p.set(qubit, pauli);
    return p;
  }

  /// Parses the report format ("+X1·Z2·X3·Z4", "-iY3", "+I") or a dense
  /// letter string of length n ("IZYYX", optionally signed).
  static PauliString parse(std::string_view text, int num_qubits);

  int num_qubits() const { return n_; }
  std::uint32_t x_bits() const { return x_; }
  std::uint32_t z_bits() const { return z_; }
  Phase phase() const { return phase_; }

  /// 'I', 'X', 'Y' or 'Z' on `qubit` (1-based).
  char at(int qubit) const {
    check_qubit(qubit);
    const int b = qubit - 1;
    const bool x = (x_ >> b) & 1u;
    const bool z = (z_ >> b) & 1u;
    return x ? (z ? 'Y' : 'X') : (z ? 'Z' : 'I');
  }

  void set(int qubit, char pauli) {
    check_qubit(qubit);
    const std::uint32_t m = 1u << (qubit - 1);
    x_ &= ~m;
    z_ &= ~m;
    switch (std::toupper(static_cast<unsigned char>(pauli))) {
      case 'I': break;
      case 'X': x_ |= m; break;
      case 'Y': x_ |= m; z_ |= m; break;
      case 'Z': z_ |= m; break;
      default: throw std::invalid_argument(std::string("PauliString: bad Pauli letter '") + pauli + "'");
    }
  }

  int weight() const { return std::popcount(x_ | z_); }
  bool is_identity() const { return x_ == 0 && z_ == 0 && phase_ == Phase::kPlusOne; }
  bool is_trivial() const { return x_ == 0 && z_ == 0; }
  bool is_hermitian() const { return (phase_exponent(phase_) & 1) == 0; }

  PauliString with_phase(Phase p) const { return PauliString(n_, x_, z_, p); }
  PauliString without_phase() const { return with_phase(Phase::kPlusOne); }
  PauliString negated() const { return with_phase(phase_from_exponent(phase_exponent(phase_) + 2)); }

  /// Same operator viewed on `num_qubits` >= n qubits (identity on the new ones).
  PauliString resized(int num_qubits) const {
    if (num_qubits < n_) {
      if ((x_ | z_) >> num_qubits) throw std::invalid_argument("PauliString::resized: would drop support");
    }
    return PauliString(num_qubits, x_, z_, phase_);
  }

  /// The single-qubit factor on `qubit`, as a one-qubit PauliString with phase +1.
  PauliString restricted_to(int qubit) const { return single(1, 1, at(qubit)); }

  /// Key ignoring the phase, unique per (x_bits, z_bits).
  std::uint32_t key() const { return (x_ << kMaxQubits) | z_; }

  /// "+X1·Z2·X3·Z4"; identity renders as "+I".
  std::string str() const;
  /// Dense letters without phase, e.g. "IZYYX".
  std::string letters() const {
    std::string s;
    for (int q = 1; q <= n_; ++q) s.push_back(at(q));
    return s;
  }

  friend bool operator==(const PauliString& a, const PauliString& b) {
    return a.n_ == b.n_ && a.x_ == b.x_ && a.z_ == b.z_ && a.phase_ == b.phase_;
  }

 private:
  void check_qubit(int qubit) const {
    if (qubit < 1 || qubit > n_) {
      throw std::out_of_range("PauliString: qubit " + std::to_string(qubit) + " out of range 1.." +
                              std::to_string(n_));
    }
  }

  int n_;
  std::uint32_t x_;
  std::uint32_t z_;
  Phase phase_;
};

inline std::ostream& operator<<(std::ostream& os, const PauliString& p) { return os << p.str(); }

namespace detail {

// Exponent of i in sigma_a * sigma_b, indices I=0, X=1, Y=2, Z=3.
inline constexpr int kProductPhase[4][4] = {
    {0, 0, 0, 0},
    {0, 0, 1, 3},
    {0, 3, 0, 1},
    {0, 1, 3, 0},
};

inline int letter_index(bool x, bool z) { return x ? (z ? 2 : 1) : (z ? 3 : 0); }

inline void require_same_size(const PauliString& a, const PauliString& b, const char* what) {
  if (a.num_qubits() != b.num_qubits()) {
    throw std::invalid_argument(std::string(what) + ": size mismatch (" + std::to_string(a.num_qubits()) +
                                " vs " + std::to_string(b.num_qubits()) + ")");
  }
}

}  // namespace detail

/// Operator product a*b with exact phase.
inline PauliString multiply(const PauliString& a, const PauliString& b) {
  detail::require_same_size(a, b, "multiply");
  int k = phase_exponent(a.phase()) + phase_exponent(b.phase());
  for (int q = 0; q < a.num_qubits(); ++q) {
    const int ia = detail::letter_index((a.x_bits() >> q) & 1u, (a.z_bits() >> q) & 1u);
    const int ib = detail::letter_index((b.x_bits() >> q) & 1u, (b.z_bits() >> q) & 1u);
    k += detail::kProductPhase[ia][ib];
  }
  return PauliString(a.num_qubits(), a.x_bits() ^ b.x_bits(), a.z_bits() ^ b.z_bits(), phase_from_exponent(k));
}

inline PauliString operator*(const PauliString& a, const PauliString& b) { return multiply(a, b); }

/// Symplectic inner product parity.
inline bool commutes(const PauliString& a, const PauliString& b) {
  detail::require_same_size(a, b, "commutes");
  const std::uint32_t overlap = (a.x_bits() & b.z_bits()) ^ (a.z_bits() & b.x_bits());
  return (std::popcount(overlap) & 1) == 0;
}

inline int weight(const PauliString& p) { return p.weight(); }

namespace detail {

// Qubit k (1-based) is bit (n - k) of a computational-basis index.
inline std::uint32_t basis_mask(std::uint32_t bits, int n) {
  std::uint32_t m = 0;
  for (int q = 0; q < n; ++q) {
    if ((bits >> q) & 1u) m |= 1u << (n - 1 - q);
  }
  return m;
}

}  // namespace detail

/// Dense 2^n x 2^n matrix of `p`, qubit 1 being the most significant bit.
inline Matrix to_matrix(const PauliString& p) {
  const int n = p.num_qubits();
  const std::size_t dim = std::size_t{1} << n;
  const std::uint32_t xm = detail::basis_mask(p.x_bits(), n);
  const std::uint32_t zm = detail::basis_mask(p.z_bits(), n);
  const int ys = std::popcount(p.x_bits() & p.z_bits());
  Matrix m = Matrix::Zero(dim, dim);
  for (std::uint32_t b = 0; b < dim; ++b) {
    const int k = phase_exponent(p.phase()) + ys + 2 * std::popcount(b & zm);
    m(b ^ xm, b) = phase_value(phase_from_exponent(k));
  }
  return m;
}

/// Identity first, then X, Y, Z on each qubit in ascending order; 3n+1 entries.
inline std::vector<PauliString> enumerate_correctable_errors(int num_qubits) {
  std::vector<PauliString> out;
  out.reserve(3 * num_qubits + 1);
  out.emplace_back(num_qubits);
  for (int q = 1; q <= num_qubits; ++q) {
    for (char c : {'X', 'Y', 'Z'}) out.push_back(PauliString::single(num_qubits, q, c));
  }
  return out;
}

/// All 4^n Pauli products with phase +1, ordered by key().
inline std::vector<PauliString> enumerate_all_paulis(int num_qubits) {
  std::vector<PauliString> out;
  const std::uint32_t lim = 1u << num_qubits;
  out.reserve(std::size_t{lim} * lim);
  for (std::uint32_t x = 0; x < lim; ++x) {
    for (std::uint32_t z = 0; z < lim; ++z) out.emplace_back(num_qubits, x, z);
  }
  return out;
}

inline std::string PauliString::str() const {
  static constexpr std::string_view kDot = "\xC2\xB7";
  std::string s;
  switch (phase_) {
    case Phase::kPlusOne: s = "+"; break;
    case Phase::kPlusI: s = "+i"; break;
    case Phase::kMinusOne: s = "-"; break;
    case Phase::kMinusI: s = "-i"; break;
  }
  bool first = true;
  for (int q = 1; q <= n_; ++q) {
    const char c = at(q);
    if (c == 'I') continue;
    if (!first) s += kDot;
    s.push_back(c);
    s += std::to_string(q);
    first = false;
  }
  if (first) s.push_back('I');
  return s;
}

inline PauliString PauliString::parse(std::string_view text, int num_qubits) {
  auto fail = [&](const std::string& why) {
    throw std::invalid_argument("PauliString::parse(\"" + std::string(text) + "\"): " + why);
  };
  std::size_t i = 0;
  auto skip_space = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  skip_space();
  int k = 0;
  if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
    if (text[i] == '-') k += 2;
    ++i;
  }
  if (i < text.size() && text[i] == 'i') {
    k += 1;
    ++i;
  }
  std::string_view body = text.substr(i);
  while (!body.empty() && std::isspace(static_cast<unsigned char>(body.back()))) body.remove_suffix(1);
  if (body.empty()) fail("empty operator");

  PauliString p(num_qubits);
  const bool has_digit = body.find_first_of("0123456789") != std::string_view::npos;
  if (!has_digit) {
    if (body == "I" || body == "_") return p.with_phase(phase_from_exponent(k));
    if (static_cast<int>(body.size()) != num_qubits) fail("dense form needs exactly n letters");
    for (int q = 1; q <= num_qubits; ++q) {
      const char c = body[q - 1] == '_' ? 'I' : body[q - 1];
      if (std::string_view("IXYZ").find(c) == std::string_view::npos) fail("bad letter");
      p.set(q, c);
    }
    return p.with_phase(phase_from_exponent(k));
  }

  std::uint32_t seen = 0;
  std::size_t j = 0;
  while (j < body.size()) {
    const unsigned char c = static_cast<unsigned char>(body[j]);
    if (std::isspace(c) || c == '*') {
      ++j;
      continue;
    }
    if (body.substr(j, 2) == "\xC2\xB7") {
      j += 2;
      continue;
    }
    const char letter = static_cast<char>(c);
    if (std::string_view("IXYZ").find(letter) == std::string_view::npos) fail("expected I, X, Y or Z");
    ++j;
    std::size_t start = j;
    while (j < body.size() && std::isdigit(static_cast<unsigned char>(body[j]))) ++j;
    if (start == j) {
      if (letter == 'I') continue;
      fail("missing qubit index");
    }
    const int q = std::stoi(std::string(body.substr(start, j - start)));
    if (q < 1 || q > num_qubits) fail("qubit index out of range");
    const std::uint32_t m = 1u << (q - 1);
    if (seen & m) fail("qubit " + std::to_string(q) + " repeated");
    seen |= m;
    p.set(q, letter);
  }
  return p.with_phase(phase_from_exponent(k));
}

}  // namespace qec5
