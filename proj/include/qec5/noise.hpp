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
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "qec5/dense.hpp"
#include "qec5/pauli.hpp"

namespace qec5 {

inline constexpr double kProbabilityTolerance = 1e-12;

/// A mixture of Pauli products. Phases are dropped (they cancel in P rho P^dag)
/// and equal products are merged; terms are kept ordered by PauliString::key().
class PauliChannel {
 public:
  struct Term {
    double probability;
    PauliString pauli;
  };

  PauliChannel(int num_qubits, const std::vector<Term>& terms) : n_(num_qubits) {
    if (n_ < 1 || n_ > PauliString::kMaxQubits) throw std::invalid_argument("PauliChannel: bad qubit count");
    std::map<std::uint32_t, double> merged;
    double total = 0;
    for (const Term& t : terms) {
      if (t.pauli.num_qubits() != n_) throw std::invalid_argument("PauliChannel: term size mismatch");
      if (!(t.probability >= 0)) {
        throw std::invalid_argument("PauliChannel: negative probability for " + t.pauli.str());
      }
      merged[t.pauli.key()] += t.probability;
      total += t.probability;
    }
    if (std::abs(total - 1.0) > kProbabilityTolerance) {
      throw std::invalid_argument("PauliChannel: probabilities sum to " + std::to_string(total));
    }
    for (const auto& [key, w] : merged) {
      if (w == 0) continue;
      terms_.push_back({w, PauliString(n_, key >> PauliString::kMaxQubits, key & ((1u << PauliString::kMaxQubits) - 1))});
    }
  }

  static PauliChannel identity(int num_qubits) { return PauliChannel(num_qubits, {{1.0, PauliString(num_qubits)}}); }

  int num_qubits() const { return n_; }
  const std::vector<Term>& terms() const { return terms_; }

  double probability_of(const PauliString& p) const {
    for (const Term& t : terms_) {
      if (t.pauli.key() == p.key()) return t.probability;
    }
    return 0;
  }
  double identity_probability() const { return probability_of(PauliString(n_)); }

  /// `second` after `first`: discrete convolution over the Pauli group.
  static PauliChannel compose(const PauliChannel& first, const PauliChannel& second) {
    if (first.n_ != second.n_) throw std::invalid_argument("PauliChannel::compose: size mismatch");
    std::vector<Term> out;
    out.reserve(first.terms_.size() * second.terms_.size());
    for (const Term& a : first.terms_) {
      for (const Term& b : second.terms_) out.push_back({a.probability * b.probability, b.pauli * a.pauli});
    }
    return PauliChannel(first.n_, out);
  }

  KrausChannel to_kraus() const {
    std::vector<Matrix> ops;
    for (const Term& t : terms_) ops.push_back(std::sqrt(t.probability) * to_matrix(t.pauli));
    return KrausChannel(n_, std::move(ops));
  }

  std::vector<std::pair<double, PauliString>> mixture() const {
    std::vector<std::pair<double, PauliString>> m;
    for (const Term& t : terms_) m.emplace_back(t.probability, t.pauli);
    return m;
  }

  DensityMatrix apply(const DensityMatrix& rho) const {
    if (rho.num_qubits() < n_) throw std::invalid_argument("PauliChannel::apply: state too small");
    Matrix out = Matrix::Zero(rho.matrix().rows(), rho.matrix().cols());
    for (const Term& t : terms_) out += t.probability * detail::conjugate_by_pauli(rho.matrix(), t.pauli, rho.num_qubits());
    return DensityMatrix(rho.num_qubits(), std::move(out));
  }

  template <class Rng>
  const PauliString& sample(Rng& rng) const {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double r = u(rng);
    for (const Term& t : terms_) {
      if (r < t.probability) return t.pauli;
      r -= t.probability;
    }
    return terms_.back().pauli;
  }

 private:
  int n_;
  std::vector<Term> terms_;
};

namespace detail {

inline void check_probability(double p, const char* what) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument(std::string(what) + ": probability " + std::to_string(p) + " outside [0, 1]");
}

}  // namespace detail

/// rho -> (1-p) rho + p I/2 on `qubit`: identity with weight 1-3p/4, X/Y/Z with p/4 each.
inline PauliChannel depolarize_qubit(int qubit, double p, int num_qubits) {
  detail::check_probability(p, "depolarize_qubit");
  std::vector<PauliChannel::Term> terms{{1.0 - 0.75 * p, PauliString(num_qubits)}};
  for (char c : {'X', 'Y', 'Z'}) terms.push_back({0.25 * p, PauliString::single(num_qubits, qubit, c)});
  return PauliChannel(num_qubits, terms);
}

/// Independent depolarization of every qubit.
inline PauliChannel independent_depolarizing(double p, int num_qubits) {
  detail::check_probability(p, "independent_depolarizing");
  PauliChannel ch = PauliChannel::identity(num_qubits);
  for (int q = 1; q <= num_qubits; ++q) ch = PauliChannel::compose(ch, depolarize_qubit(q, p, num_qubits));
  return ch;
}

/// Uniformly chosen qubit, fully depolarized.
inline PauliChannel random_single_qubit_depolarizing(int num_qubits) {
  if (num_qubits < 1) throw std::invalid_argument("random_single_qubit_depolarizing: need at least one qubit");
  std::vector<PauliChannel::Term> terms{{0.25, PauliString(num_qubits)}};
  const double w = 1.0 / (4.0 * num_qubits);
  for (int q = 1; q <= num_qubits; ++q) {
    for (char c : {'X', 'Y', 'Z'}) terms.push_back({w, PauliString::single(num_qubits, q, c)});
  }
  return PauliChannel(num_qubits, terms);
}

inline PauliChannel pauli_injection(const PauliString& p) { return PauliChannel(p.num_qubits(), {{1.0, p}}); }

/// Depolarizing channel on `qubit` whose entanglement fidelity is `fe`.
inline PauliChannel implementation_noise(double fe, int num_qubits = 1, int qubit = 1) {
  if (!(fe >= 0.25 && fe <= 1.0)) {
    throw std::invalid_argument("implementation_noise: fidelity " + std::to_string(fe) + " outside [1/4, 1]");
  }
  const double p = std::min(1.0, 4.0 / 3.0 * (1.0 - fe));
  return depolarize_qubit(qubit, p, num_qubits);
}

/// Evenly spaced strengths 0, 0.01, ..., 1.
inline std::vector<double> demonic_strength_grid(int points = 101) {
  std::vector<double> g(points);
  for (int i = 0; i < points; ++i) g[i] = static_cast<double>(i) / (points - 1);
  return g;
}

struct DemonicChoice {
  int qubit;
  double strength;
  PauliChannel channel;
  double fidelity;
};

/// Worst one-qubit depolarizing error for a storage scheme, judged by
/// `evaluate` (entanglement fidelity of the stored qubit under a channel).
/// Ties keep the earliest candidate (qubit ascending, then strength order).
inline DemonicChoice demonic(int num_qubits, const std::function<double(const PauliChannel&)>& evaluate,
                             std::span<const double> strengths = {}, std::span<const int> qubits = {}) {
  static constexpr double kFull[] = {1.0};
  if (strengths.empty()) strengths = kFull;
  std::vector<int> all;
  if (qubits.empty()) {
    for (int q = 1; q <= num_qubits; ++q) all.push_back(q);
    qubits = all;
  }
  std::optional<DemonicChoice> best;
  for (int q : qubits) {
    for (double s : strengths) {
      PauliChannel ch = depolarize_qubit(q, s, num_qubits);
      const double f = evaluate(ch);
      if (!best || f < best->fidelity) best = DemonicChoice{q, s, std::move(ch), f};
    }
  }
  return *best;
}

/// Pauli twirl: the average of Q^dag E(Q rho Q^dag) Q over all Pauli products
/// Q, which keeps only the diagonal of the process matrix in the Pauli basis.
inline PauliChannel pauli_twirl(const KrausChannel& ch) {
  const int n = ch.num_qubits();
  const double d = static_cast<double>(std::size_t{1} << n);
  std::vector<PauliChannel::Term> terms;
  for (const PauliString& p : enumerate_all_paulis(n)) {
    const Matrix pm = to_matrix(p);
    double w = 0;
    for (const Matrix& k : ch.operators()) w += std::norm((pm.adjoint() * k).trace());
    w /= d * d;
    terms.push_back({w, p});
  }
  return PauliChannel(n, terms);
}

/// Empirical channel from `shots` seeded draws of `base`.
inline PauliChannel sampled_channel(const PauliChannel& base, int shots, std::uint64_t seed) {
  if (shots < 1) throw std::invalid_argument("sampled_channel: shots must be positive");
  std::mt19937_64 rng(seed);
  std::vector<PauliChannel::Term> terms;
  terms.reserve(shots);
  for (int i = 0; i < shots; ++i) terms.push_back({1.0 / shots, base.sample(rng)});
  double total = 0;
  for (const auto& t : terms) total += t.probability;
  for (auto& t : terms) t.probability /= total;
  return PauliChannel(base.num_qubits(), terms);
}

/// Builds a channel from its JSON description.
///
///   {"kind": "identity"}
///   {"kind": "depolarize", "qubit": k, "p": p}
///   {"kind": "independent", "p": p}
///   {"kind": "random_single"}
///   {"kind": "pauli", "pauli": "+X1·Z3"}
///   {"kind": "implementation", "fe": fe, "qubit": k}
///   {"kind": "compose", "channels": [ ... ]}          (applied in list order)
///   {"kind": "sampled", "base": { ... }, "shots": N, "seed": s}
inline PauliChannel channel_from_json(const nlohmann::json& spec, int num_qubits) {
  if (!spec.is_object() || !spec.contains("kind")) throw std::invalid_argument("channel spec: missing \"kind\"");
  const std::string kind = spec.at("kind").get<std::string>();
  auto need = [&](const char* key) -> const nlohmann::json& {
    if (!spec.contains(key)) throw std::invalid_argument("channel spec '" + kind + "': missing \"" + key + "\"");
    return spec.at(key);
  };
  if (kind == "identity") return PauliChannel::identity(num_qubits);
  if (kind == "depolarize") return depolarize_qubit(need("qubit").get<int>(), need("p").get<double>(), num_qubits);
  if (kind == "independent") return independent_depolarizing(need("p").get<double>(), num_qubits);
  if (kind == "random_single") return random_single_qubit_depolarizing(num_qubits);
  if (kind == "pauli") return pauli_injection(PauliString::parse(need("pauli").get<std::string>(), num_qubits));
  if (kind == "implementation") {
    return implementation_noise(need("fe").get<double>(), num_qubits, spec.value("qubit", 1));
  }
  if (kind == "compose") {
    PauliChannel ch = PauliChannel::identity(num_qubits);
    for (const auto& sub : need("channels")) ch = PauliChannel::compose(ch, channel_from_json(sub, num_qubits));
    return ch;
  }
  if (kind == "sampled") {
    return sampled_channel(channel_from_json(need("base"), num_qubits), need("shots").get<int>(),
                           need("seed").get<std::uint64_t>());
  }
  throw std::invalid_argument("channel spec: unknown kind '" + kind + "'");
}

}  // namespace qec5
