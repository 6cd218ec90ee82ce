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

#include <algorithm>
#include <array>
#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "qec5/clifford.hpp"
#include "qec5/dense.hpp"
#include "qec5/pauli.hpp"

namespace qec5 {

inline constexpr int kCodeQubits = 5;
inline constexpr int kNumGenerators = 4;
inline constexpr int kDataQubit = 2;
inline constexpr std::array<int, 4> kSyndromeQubits = {1, 3, 4, 5};

/// Four anticommutation bits; bit (i-1) belongs to generator i.
struct Syndrome {
  std::uint8_t bits = 0;

  bool test(int generator) const { return (bits >> (generator - 1)) & 1u; }
  int index() const { return bits; }

  /// Generator 1 first, e.g. "0100".
  std::string str() const {
    std::string s;
    for (int i = 1; i <= kNumGenerators; ++i) s.push_back(test(i) ? '1' : '0');
    return s;
  }

  static Syndrome parse(std::string_view s) {
    if (s.size() != kNumGenerators) throw std::invalid_argument("Syndrome::parse: need 4 bits");
    Syndrome out;
    for (int i = 0; i < kNumGenerators; ++i) {
      if (s[i] != '0' && s[i] != '1') throw std::invalid_argument("Syndrome::parse: bits must be 0/1");
      if (s[i] == '1') out.bits |= static_cast<std::uint8_t>(1u << i);
    }
    return out;
  }

  friend bool operator==(Syndrome a, Syndrome b) { return a.bits == b.bits; }
};

/// Z2·Y3·Y4·X5, Z1·Y2·Y3·X4, Y2·Z3·Z4·Z5, X1·Z2·X3·Z4.
inline std::array<PauliString, 4> standard_generators() {
  return {PauliString::parse("IZYYX", kCodeQubits), PauliString::parse("ZYYXI", kCodeQubits),
          PauliString::parse("IYZZZ", kCodeQubits), PauliString::parse("XZXZI", kCodeQubits)};
}

/// GF(2) independence of the phaseless generators.
inline bool generators_independent(std::span<const PauliString> gens) {
  std::vector<std::uint32_t> rows;
  for (const auto& g : gens) rows.push_back(g.key());
  int rank = 0;
  for (int bit = 31; bit >= 0 && rank < static_cast<int>(rows.size()); --bit) {
    auto it = std::find_if(rows.begin() + rank, rows.end(), [&](std::uint32_t r) { return (r >> bit) & 1u; });
    if (it == rows.end()) continue;
    std::swap(*it, rows[rank]);
    for (std::size_t j = 0; j < rows.size(); ++j) {
      if (static_cast<int>(j) != rank && ((rows[j] >> bit) & 1u)) rows[j] ^= rows[rank];
    }
    ++rank;
  }
  return rank == static_cast<int>(rows.size());
}

struct DistanceReport {
  int checked = 0;
  std::vector<PauliString> violations;  // weight 1-2 products commuting with every generator
  bool ok() const { return violations.empty(); }
};

/// Checks that every Pauli product of weight 1 or 2 anticommutes with at
/// least one generator.
inline DistanceReport verify_distance(std::span<const PauliString> gens) {
  if (gens.empty()) throw std::invalid_argument("verify_distance: no generators");
  const int n = gens.front().num_qubits();
  DistanceReport report;
  for (const PauliString& p : enumerate_all_paulis(n)) {
    const int w = p.weight();
    if (w < 1 || w > 2) continue;
    ++report.checked;
    const bool detected = std::any_of(gens.begin(), gens.end(), [&](const PauliString& g) { return !commutes(p, g); });
    if (!detected) report.violations.push_back(p);
  }
  return report;
}

/// The five-qubit code with data qubit 2 and syndrome qubits 1, 3, 4, 5.
///
/// The code space is the joint eigenspace where generator i has eigenvalue
/// signs[i]. Syndrome qubit kSyndromeQubits[i] is paired with generator i:
/// the encoder maps -Z on it (the |1> initial state) to signs[i]*g_i, and Z / X
/// on the data qubit to logical_z / logical_x.
class StabilizerCode {
 public:
  struct Logicals {
    PauliString x;
    PauliString z;
  };

  static StabilizerCode five_qubit(std::array<int, 4> signs = {1, 1, 1, 1}) {
    return StabilizerCode(standard_generators(), signs, std::nullopt);
  }

  StabilizerCode(std::array<PauliString, 4> generators, std::array<int, 4> signs,
                 std::optional<Logicals> logicals = std::nullopt)
      : gens_(std::move(generators)), signs_(signs), lx_(kCodeQubits), lz_(kCodeQubits),
        encoder_(kCodeQubits), decoder_(kCodeQubits) {
    validate_generators();
    if (logicals) {
      lx_ = logicals->x;
      lz_ = logicals->z;
      validate_logicals();
    } else {
      choose_logicals();
    }
    synthesize_encoder();
    build_correction_table();
  }

  const std::array<PauliString, 4>& generators() const { return gens_; }
  const std::array<int, 4>& signs() const { return signs_; }
  /// s_i * g_i.
  PauliString signed_generator(int i) const { return signs_.at(i - 1) < 0 ? gens_[i - 1].negated() : gens_[i - 1]; }
  int data_qubit() const { return kDataQubit; }
  const std::array<int, 4>& syndrome_qubits() const { return kSyndromeQubits; }
  const PauliString& logical_x() const { return lx_; }
  const PauliString& logical_z() const { return lz_; }
  const std::array<PauliString, 4>& destabilizers() const { return destab_; }

  const Tableau& encoder_tableau() const { return target_; }
  const Circuit& encoder() const { return encoder_; }
  const Circuit& decoder() const { return decoder_; }

  Syndrome syndrome_of(const PauliString& error) const {
    if (error.num_qubits() != kCodeQubits) throw std::invalid_argument("syndrome_of: error must act on 5 qubits");
    Syndrome s;
    for (int i = 0; i < kNumGenerators; ++i) {
      if (!commutes(error, gens_[i])) s.bits |= static_cast<std::uint8_t>(1u << i);
    }
    return s;
  }

  /// U^dagger P U for the synthesized encoder U.
  PauliString decoded(const PauliString& p) const { return decoder_.conjugate(p); }

  /// Syndrome as read by the correction network from a decoded Pauli: syndrome
  /// qubit i is flipped away from |1> iff the decoded Pauli has X or Y there.
  static Syndrome syndrome_from_decoded(const PauliString& decoded_pauli) {
    Syndrome s;
    for (int i = 0; i < kNumGenerators; ++i) {
      if ((decoded_pauli.x_bits() >> (kSyndromeQubits[i] - 1)) & 1u) s.bits |= static_cast<std::uint8_t>(1u << i);
    }
    return s;
  }

  /// One-qubit Pauli applied to the data qubit for this syndrome.
  const PauliString& correction_for(Syndrome s) const { return table_.at(s.index()); }
  const std::array<PauliString, 16>& correction_table() const { return table_; }

  /// sigma(P): residual one-qubit Pauli on the data qubit after decoding and
  /// syndrome-conditioned correction, phase dropped.
  PauliString expected_logical_action(const PauliString& p) const {
    if (p.num_qubits() != kCodeQubits) throw std::invalid_argument("expected_logical_action: need 5 qubits");
    const PauliString d = decoded(p);
    return (d.restricted_to(kDataQubit) * correction_for(syndrome_from_decoded(d))).without_phase();
  }

  Matrix encoder_unitary() const { return encoder_.unitary(); }
  Matrix decoder_unitary() const { return encoder_unitary().adjoint(); }

  /// Block-diagonal unitary applying correction_for(s) on the data qubit when
  /// the syndrome qubits hold |1111 xor s>.
  Matrix correction_unitary() const {
    const std::size_t dim = std::size_t{1} << kCodeQubits;
    const std::uint32_t data_bit = 1u << (kCodeQubits - kDataQubit);
    Matrix c = Matrix::Zero(dim, dim);
    for (std::uint32_t b = 0; b < dim; ++b) {
      Syndrome s;
      for (int i = 0; i < kNumGenerators; ++i) {
        const bool one = (b >> (kCodeQubits - kSyndromeQubits[i])) & 1u;
        if (!one) s.bits |= static_cast<std::uint8_t>(1u << i);
      }
      const Matrix sigma = to_matrix(correction_for(s));
      const int d = (b & data_bit) ? 1 : 0;
      for (int d2 = 0; d2 < 2; ++d2) {
        const std::uint32_t out = d2 ? (b | data_bit) : (b & ~data_bit);
        c(out, b) = sigma(d2, d);
      }
    }
    return c;
  }

  /// prod_i (1 + s_i g_i) / 2.
  Matrix codespace_projector() const {
    const auto dim = static_cast<Eigen::Index>(std::size_t{1} << kCodeQubits);
    Matrix p = Matrix::Identity(dim, dim);
    for (int i = 1; i <= kNumGenerators; ++i) {
      p = p * (Matrix::Identity(dim, dim) + to_matrix(signed_generator(i))) / 2.0;
    }
    return p;
  }

  /// Projector onto data-arbitrary, syndrome qubits in |1111>.
  Matrix input_projector() const {
    const auto dim = static_cast<Eigen::Index>(std::size_t{1} << kCodeQubits);
    Matrix p = Matrix::Identity(dim, dim);
    for (int q : kSyndromeQubits) {
      p = p * (Matrix::Identity(dim, dim) - to_matrix(PauliString::single(kCodeQubits, q, 'Z'))) / 2.0;
    }
    return p;
  }

  /// Plain-text definition; see write_definition.
  static StabilizerCode read_definition(std::istream& in);
  void write_definition(std::ostream& out) const;
  void write_correction_csv(std::ostream& out) const;

 private:
  void validate_generators() const {
    for (int i = 0; i < kNumGenerators; ++i) {
      const PauliString& g = gens_[i];
      const std::string name = "generator " + std::to_string(i + 1) + " (" + g.str() + ")";
      if (g.num_qubits() != kCodeQubits) throw std::invalid_argument(name + " must act on 5 qubits");
      if (g.phase() != Phase::kPlusOne) throw std::invalid_argument(name + " must carry phase +1; use signs");
      if (signs_[i] != 1 && signs_[i] != -1) {
        throw std::invalid_argument(name + ": sign must be +1 or -1, got " + std::to_string(signs_[i]));
      }
      for (int j = i + 1; j < kNumGenerators; ++j) {
        if (!commutes(g, gens_[j])) {
          throw std::invalid_argument(name + " anticommutes with generator " + std::to_string(j + 1));
        }
      }
    }
    if (!generators_independent(gens_)) throw std::invalid_argument("generators are not independent");
  }

  bool in_stabilizer_group(const PauliString& p) const {
    for (std::uint32_t mask = 0; mask < 16; ++mask) {
      PauliString s(kCodeQubits);
      for (int i = 0; i < kNumGenerators; ++i) {
        if ((mask >> i) & 1u) s = s * gens_[i];
      }
      if (s.key() == p.key()) return true;
    }
    return false;
  }

  bool commutes_with_all(const PauliString& p) const {
    return std::all_of(gens_.begin(), gens_.end(), [&](const PauliString& g) { return commutes(p, g); });
  }

  // Candidates in canonical order: weight ascending, then key() ascending.
  static std::vector<PauliString> canonical_candidates() {
    auto all = enumerate_all_paulis(kCodeQubits);
    std::stable_sort(all.begin(), all.end(),
                     [](const PauliString& a, const PauliString& b) { return a.weight() < b.weight(); });
    return all;
  }

  void choose_logicals() {
    const auto candidates = canonical_candidates();
    auto z = std::find_if(candidates.begin(), candidates.end(), [&](const PauliString& p) {
      return !p.is_trivial() && commutes_with_all(p) && !in_stabilizer_group(p);
    });
    if (z == candidates.end()) throw std::logic_error("no logical Z operator found");
    lz_ = *z;
    auto x = std::find_if(candidates.begin(), candidates.end(),
                          [&](const PauliString& p) { return commutes_with_all(p) && !commutes(p, lz_); });
    if (x == candidates.end()) throw std::logic_error("no logical X operator found");
    lx_ = *x;
  }

  void validate_logicals() const {
    for (const PauliString* l : {&lx_, &lz_}) {
      if (l->num_qubits() != kCodeQubits || !l->is_hermitian()) {
        throw std::invalid_argument("logical operator " + l->str() + " must be a Hermitian 5-qubit Pauli");
      }
      for (int i = 0; i < kNumGenerators; ++i) {
        if (!commutes(*l, gens_[i])) {
          throw std::invalid_argument("logical operator " + l->str() + " anticommutes with generator " +
                                      std::to_string(i + 1));
        }
      }
    }
    if (commutes(lx_, lz_)) throw std::invalid_argument("logical X and Z must anticommute");
  }

  void synthesize_encoder() {
    const auto candidates = canonical_candidates();
    for (int i = 0; i < kNumGenerators; ++i) {
      auto d = std::find_if(candidates.begin(), candidates.end(), [&](const PauliString& p) {
        for (int j = 0; j < kNumGenerators; ++j) {
          if (commutes(p, gens_[j]) == (i == j)) return false;
        }
        if (!commutes(p, lx_) || !commutes(p, lz_)) return false;
        for (int j = 0; j < i; ++j) {
          if (!commutes(p, destab_[j])) return false;
        }
        return true;
      });
      if (d == candidates.end()) {
        throw std::invalid_argument("encoder synthesis failed: no destabilizer for generator " + std::to_string(i + 1));
      }
      destab_[i] = *d;
    }
    std::vector<PauliString> xs(kCodeQubits, PauliString(kCodeQubits));
    std::vector<PauliString> zs(kCodeQubits, PauliString(kCodeQubits));
    xs[kDataQubit - 1] = lx_;
    zs[kDataQubit - 1] = lz_;
    for (int i = 0; i < kNumGenerators; ++i) {
      xs[kSyndromeQubits[i] - 1] = destab_[i];
      zs[kSyndromeQubits[i] - 1] = signed_generator(i + 1).negated();
    }
    target_ = Tableau(std::move(xs), std::move(zs));
    encoder_ = synthesize(target_);
    if (!(encoder_.tableau() == target_)) throw std::logic_error("encoder synthesis: circuit does not match tableau");
    decoder_ = encoder_.inverse();
  }

  void build_correction_table() {
    std::array<bool, 16> filled{};
    for (const PauliString& e : enumerate_correctable_errors(kCodeQubits)) {
      const Syndrome s = syndrome_of(e);
      if (filled[s.index()]) {
        throw std::invalid_argument("correctable errors share syndrome " + s.str() + " (" + e.str() + ")");
      }
      filled[s.index()] = true;
      table_[s.index()] = decoded(e).restricted_to(kDataQubit);
    }
  }

  std::array<PauliString, 4> gens_;
  std::array<int, 4> signs_;
  PauliString lx_;
  PauliString lz_;
  std::array<PauliString, 4> destab_{PauliString(kCodeQubits), PauliString(kCodeQubits), PauliString(kCodeQubits),
                                     PauliString(kCodeQubits)};
  Tableau target_{kCodeQubits};
  Circuit encoder_;
  Circuit decoder_;
  std::array<PauliString, 16> table_;
};

// Format:
//   # comment
//   qubits 5
//   generator <+1|-1> <pauli>
//   logical_x <pauli>      (optional, with logical_z)
//   logical_z <pauli>
inline void StabilizerCode::write_definition(std::ostream& out) const {
  out << "# five-qubit stabilizer code\n";
  out << "qubits " << kCodeQubits << '\n';
  for (int i = 0; i < kNumGenerators; ++i) {
    out << "generator " << (signs_[i] > 0 ? "+1" : "-1") << ' ' << gens_[i].str() << '\n';
  }
  out << "logical_x " << lx_.str() << '\n';
  out << "logical_z " << lz_.str() << '\n';
}

inline StabilizerCode StabilizerCode::read_definition(std::istream& in) {
  std::vector<PauliString> gens;
  std::vector<int> signs;
  std::optional<PauliString> lx;
  std::optional<PauliString> lz;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string key;
    if (!(ls >> key)) continue;
    auto fail = [&](const std::string& why) {
      throw std::invalid_argument("code definition line " + std::to_string(line_no) + ": " + why);
    };
    std::string rest;
    if (key == "qubits") {
      int n = 0;
      if (!(ls >> n) || n != kCodeQubits) fail("only 5-qubit codes are supported");
    } else if (key == "generator") {
      std::string sign;
      if (!(ls >> sign >> rest)) fail("expected: generator <sign> <pauli>");
      if (sign != "+1" && sign != "-1" && sign != "1") fail("sign must be +1 or -1");
      signs.push_back(sign == "-1" ? -1 : 1);
      gens.push_back(PauliString::parse(rest, kCodeQubits));
    } else if (key == "logical_x" || key == "logical_z") {
      if (!(ls >> rest)) fail("missing operator");
      (key == "logical_x" ? lx : lz) = PauliString::parse(rest, kCodeQubits);
    } else {
      fail("unknown key '" + key + "'");
    }
  }
  if (gens.size() != kNumGenerators) throw std::invalid_argument("code definition: need exactly 4 generators");
  if (lx.has_value() != lz.has_value()) throw std::invalid_argument("code definition: give both logicals or neither");
  std::optional<Logicals> logicals;
  if (lx) logicals = Logicals{*lx, *lz};
  return StabilizerCode({gens[0], gens[1], gens[2], gens[3]}, {signs[0], signs[1], signs[2], signs[3]}, logicals);
}

inline void StabilizerCode::write_correction_csv(std::ostream& out) const {
  out << "syndrome,correction\n";
  for (int s = 0; s < 16; ++s) {
    const Syndrome syn{static_cast<std::uint8_t>(s)};
    out << syn.str() << ',' << table_[s].at(1) << '\n';
  }
}

}  // namespace qec5
