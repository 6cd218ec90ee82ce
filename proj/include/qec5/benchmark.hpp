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
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "qec5/code5.hpp"
#include "qec5/dense.hpp"
#include "qec5/fidelity.hpp"
#include "qec5/noise.hpp"
#include "qec5/pauli.hpp"

namespace qec5 {

inline constexpr double kEngineTolerance = 1e-9;
inline constexpr int kGridErrors = 16;
inline constexpr int kGridRecords = 48;

enum class Engine { kDense, kPauli, kBoth };

inline const char* engine_name(Engine e) {
  switch (e) {
    case Engine::kDense: return "dense";
    case Engine::kPauli: return "pauli";
    case Engine::kBoth: return "both";
  }
  return "?";
}

inline Engine parse_engine(std::string_view s) {
  if (s == "dense") return Engine::kDense;
  if (s == "pauli") return Engine::kPauli;
  if (s == "both") return Engine::kBoth;
  throw std::invalid_argument("engine must be dense, pauli or both, got '" + std::string(s) + "'");
}

/// Noise around the ideal pipeline: a syndrome-independent depolarizing error
/// of entanglement fidelity `fe` on the data qubit after correction, plus an
/// optional Pauli channel on the five code qubits during storage.
struct NoiseConfig {
  double fe = 1.0;
  std::optional<nlohmann::json> extra;

  PauliChannel extra_channel() const {
    return extra ? channel_from_json(*extra, kCodeQubits) : PauliChannel::identity(kCodeQubits);
  }

  nlohmann::json to_json() const {
    nlohmann::json j{{"fe", fe}};
    j["extra"] = extra ? *extra : nlohmann::json(nullptr);
    return j;
  }
};

// ---------------------------------------------------------------------------
// Engines

/// prepare -> encode -> storage (injected Pauli, extra noise) -> decode ->
/// correct -> [logical fix] -> implementation noise, on the five code qubits.
inline Pipeline dense_pipeline(const StabilizerCode& code, const PauliString& injected, const NoiseConfig& cfg,
                               const std::optional<PauliString>& logical_fix = std::nullopt) {
  Pipeline p(kCodeQubits);
  p.unitary_all(code.encoder_unitary());
  p.pauli(injected);
  if (cfg.extra) p.pauli_mixture(cfg.extra_channel().mixture());
  p.unitary_all(code.correction_unitary() * code.decoder_unitary());
  if (logical_fix) p.pauli(PauliString::single(kCodeQubits, kDataQubit, logical_fix->at(1)));
  if (cfg.fe < 1.0) p.pauli_mixture(implementation_noise(cfg.fe, kCodeQubits, kDataQubit).mixture());
  return p;
}

/// Same pipeline by Pauli propagation: the one-qubit Pauli channel left on the data qubit.
inline PauliChannel logical_channel(const StabilizerCode& code, const PauliString& injected, const NoiseConfig& cfg,
                                    const std::optional<PauliString>& logical_fix = std::nullopt) {
  std::vector<PauliChannel::Term> terms;
  const PauliChannel extra = cfg.extra_channel();
  for (const auto& t : extra.terms()) {
    PauliString r = code.expected_logical_action(t.pauli * injected);
    if (logical_fix) r = r * *logical_fix;
    terms.push_back({t.probability, r.without_phase()});
  }
  PauliChannel ch(1, terms);
  if (cfg.fe < 1.0) ch = PauliChannel::compose(ch, implementation_noise(cfg.fe));
  return ch;
}

/// P(E,u) of a one-qubit Pauli channel.
inline double pauli_polarization(const PauliChannel& ch, Axis u) {
  const PauliString s = axis_pauli(u);
  double p = 0;
  for (const auto& t : ch.terms()) p += commutes(t.pauli, s) ? t.probability : -t.probability;
  return p;
}

/// Seeded Monte Carlo estimate of the logical identity probability.
inline double monte_carlo_logical_fidelity(const StabilizerCode& code, const PauliString& injected,
                                           const NoiseConfig& cfg, int shots, std::uint64_t seed) {
  if (shots < 1) throw std::invalid_argument("monte_carlo_logical_fidelity: shots must be positive");
  std::mt19937_64 rng(seed);
  const PauliChannel extra = cfg.extra_channel();
  const PauliChannel impl = implementation_noise(cfg.fe);
  int hits = 0;
  for (int i = 0; i < shots; ++i) {
    const PauliString r = code.expected_logical_action(extra.sample(rng) * injected) * impl.sample(rng);
    if (r.is_trivial()) ++hits;
  }
  return static_cast<double>(hits) / shots;
}

// ---------------------------------------------------------------------------
// Error grid and report

struct ExperimentRecord {
  std::string error_label;
  Axis input_axis;
  double polarization;
};

struct ErrorFidelity {
  std::string error_label;
  Syndrome syndrome;
  double fidelity;
};

struct BenchmarkReport {
  std::vector<ExperimentRecord> records;
  std::vector<ErrorFidelity> per_error_fidelity;  // canonical error order
  double aggregate_e2 = 0;
  double demonic_min = 0;
  int demonic_qubit = 0;
  std::string engine = "dense";
  NoiseConfig noise;
  std::uint64_t seed = 0;
};

class EngineMismatch : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Fills the derived fields from 48 records (any order).
///
/// F_e per error is (P_x + P_y + P_z + 1)/4. The E2 aggregate weights the
/// identity row 1/4 and each single-qubit row 1/20. The demonic minimum is the
/// smallest full-strength single-qubit depolarization average
/// (F_I + F_Xq + F_Yq + F_Zq)/4 over qubits q.
inline BenchmarkReport assemble_report(std::vector<ExperimentRecord> records,
                                       const StabilizerCode& code = StabilizerCode::five_qubit()) {
  const auto errors = enumerate_correctable_errors(kCodeQubits);
  std::map<std::uint32_t, std::size_t> row_of;
  for (std::size_t i = 0; i < errors.size(); ++i) row_of[errors[i].key()] = i;
  std::vector<std::array<std::optional<double>, 3>> pol(errors.size());
  for (const auto& r : records) {
    const PauliString e = PauliString::parse(r.error_label, kCodeQubits);
    const auto it = row_of.find(e.key());
    if (it == row_of.end() || !e.is_hermitian()) {
      throw std::invalid_argument("report: '" + r.error_label + "' is not a correctable error");
    }
    auto& slot = pol[it->second][static_cast<int>(r.input_axis)];
    if (slot) throw std::invalid_argument("report: duplicate record for " + r.error_label);
    if (!(r.polarization >= -1.0 - kFidelityClamp && r.polarization <= 1.0 + kFidelityClamp)) {
      throw std::invalid_argument("report: polarization outside [-1, 1]");
    }
    slot = std::clamp(r.polarization, -1.0, 1.0);
  }
  BenchmarkReport rep;
  for (std::size_t i = 0; i < errors.size(); ++i) {
    for (Axis a : kAxes) {
      if (!pol[i][static_cast<int>(a)]) {
        throw std::invalid_argument("report: missing record for " + errors[i].str() + " axis " + axis_name(a));
      }
    }
    const double f = transfer_entanglement_fidelity(*pol[i][0], *pol[i][1], *pol[i][2]).value;
    rep.per_error_fidelity.push_back({errors[i].str(), code.syndrome_of(errors[i]), f});
  }
  rep.aggregate_e2 = rep.per_error_fidelity[0].fidelity / 4.0;
  for (std::size_t i = 1; i < errors.size(); ++i) rep.aggregate_e2 += rep.per_error_fidelity[i].fidelity / 20.0;
  rep.demonic_min = 2.0;
  for (int q = 1; q <= kCodeQubits; ++q) {
    double avg = rep.per_error_fidelity[0].fidelity;
    for (int j = 0; j < 3; ++j) avg += rep.per_error_fidelity[3 * (q - 1) + 1 + j].fidelity;
    avg /= 4.0;
    if (avg < rep.demonic_min) {
      rep.demonic_min = avg;
      rep.demonic_qubit = q;
    }
  }
  std::sort(records.begin(), records.end(), [&](const ExperimentRecord& a, const ExperimentRecord& b) {
    const auto ra = row_of.at(PauliString::parse(a.error_label, kCodeQubits).key());
    const auto rb = row_of.at(PauliString::parse(b.error_label, kCodeQubits).key());
    return ra != rb ? ra < rb : a.input_axis < b.input_axis;
  });
  rep.records = std::move(records);
  return rep;
}

/// The 16 x 3 experiment grid: every correctable error injected during
/// storage, every input axis.
inline BenchmarkReport run_error_grid(const StabilizerCode& code, const NoiseConfig& cfg, Engine engine,
                                      std::uint64_t seed = 0) {
  std::vector<ExperimentRecord> records;
  for (const PauliString& e : enumerate_correctable_errors(kCodeQubits)) {
    std::array<double, 3> dense{};
    std::array<double, 3> pauli{};
    if (engine != Engine::kPauli) {
      const Process proc = process_from_pipeline(dense_pipeline(code, e, cfg), kDataQubit, 1);
      for (Axis a : kAxes) dense[static_cast<int>(a)] = transfer_coefficient(proc, a);
    }
    if (engine != Engine::kDense) {
      const PauliChannel ch = logical_channel(code, e, cfg);
      for (Axis a : kAxes) pauli[static_cast<int>(a)] = pauli_polarization(ch, a);
    }
    for (Axis a : kAxes) {
      const int i = static_cast<int>(a);
      if (engine == Engine::kBoth && std::abs(dense[i] - pauli[i]) > kEngineTolerance) {
        throw EngineMismatch("engines disagree on " + e.str() + " axis " + axis_name(a) + ": dense " +
                             std::to_string(dense[i]) + " vs pauli " + std::to_string(pauli[i]));
      }
      records.push_back({e.str(), a, engine == Engine::kPauli ? pauli[i] : dense[i]});
    }
  }
  BenchmarkReport rep = assemble_report(std::move(records), code);
  rep.engine = engine_name(engine);
  rep.noise = cfg;
  rep.seed = seed;
  return rep;
}

// ---------------------------------------------------------------------------
// Curves and crossover

inline double unencoded_curve(double p) {
  detail::check_probability(p, "unencoded_curve");
  return 1.0 - 0.75 * p;
}

namespace detail {

inline void check_fe(double fe, const char* what) {
  if (!(fe >= 0.25 && fe <= 1.0)) throw std::invalid_argument(std::string(what) + ": fe outside [1/4, 1]");
}

inline double encoded_curve_unchecked(double p, double fe) {
  return (4.0 * fe * (p - 1) * (p - 1) * (p - 1) * (-2.0 - 6.0 * p + 3.0 * p * p) +
          p * p * (15.0 - 25.0 * p + 15.0 * p * p - 3.0 * p * p * p)) /
         8.0;
}

inline double encoded_slope(double p, double fe) {
  const double q = p - 1;
  const double poly = 3 * q * q * (3 * p * p - 6 * p - 2) + 6 * q * q * q * q;
  return (4.0 * fe * poly + 30 * p - 75 * p * p + 60 * p * p * p - 15 * p * p * p * p) / 8.0;
}

}  // namespace detail

/// Entanglement fidelity of the encoded qubit under independent depolarization
/// p with a syndrome-independent implementation error of fidelity fe.
inline double encoded_curve(double p, double fe) {
  detail::check_probability(p, "encoded_curve");
  detail::check_fe(fe, "encoded_curve");
  return detail::encoded_curve_unchecked(p, fe);
}

inline double encoded_curve_slope(double p, double fe) { return detail::encoded_slope(p, fe); }

/// Interval of p where the encoded curve is at or above 1 - 3p/4.
struct Crossover {
  bool found = false;
  double lower = 0;
  double upper = 0;
  bool tangent = false;  // the curves touch without crossing (lower == upper)
  /// The break-even point: past it encoding no longer helps.
  double point() const { return upper; }
};

inline constexpr double kTangencyTolerance = 1e-12;

/// Finds the first region of (0, 1) where encoding helps. Local maxima of
/// encoded - unencoded are located by bisection on the slope; a maximum within
/// kTangencyTolerance of zero is a tangency, otherwise the region ends are
/// bisected on the difference itself, all to 1e-12.
inline Crossover find_crossover(double fe) {
  detail::check_fe(fe, "find_crossover");
  auto gap = [fe](double p) { return detail::encoded_curve_unchecked(p, fe) - (1.0 - 0.75 * p); };
  auto slope = [fe](double p) { return detail::encoded_slope(p, fe) + 0.75; };
  auto bisect = [](auto&& f, double a, double b) {
    const bool fa_neg = f(a) < 0;
    while (b - a > 1e-13) {
      const double m = 0.5 * (a + b);
      ((f(m) < 0) == fa_neg ? a : b) = m;
    }
    return 0.5 * (a + b);
  };
  constexpr int kGrid = 2000;
  std::vector<double> grid(kGrid + 1);
  for (int i = 0; i <= kGrid; ++i) grid[i] = static_cast<double>(i) / kGrid;

  std::vector<double> maxima;
  if (gap(0.0) >= -kTangencyTolerance && slope(0.0) <= 0) maxima.push_back(0.0);
  for (int i = 0; i < kGrid; ++i) {
    if (slope(grid[i]) > 0 && slope(grid[i + 1]) <= 0) maxima.push_back(bisect(slope, grid[i], grid[i + 1]));
  }
  for (double pm : maxima) {
    const double g = gap(pm);
    if (pm >= 1.0 || g < -kTangencyTolerance) continue;
    Crossover c;
    c.found = true;
    if (g <= kTangencyTolerance) {
      c.lower = c.upper = pm;
      c.tangent = true;
      return c;
    }
    int below = -1;
    for (int i = 0; i <= kGrid && grid[i] < pm; ++i) {
      if (gap(grid[i]) < 0) below = i;
    }
    c.lower = below < 0 ? 0.0 : bisect(gap, grid[below], pm);
    int above = -1;
    for (int i = kGrid; i >= 0 && grid[i] > pm; --i) {
      if (grid[i] < 1.0 && gap(grid[i]) < 0) above = i;
    }
    c.upper = above < 0 ? 1.0 : bisect(gap, pm, grid[above]);
    return c;
  }
  return {};
}

// ---------------------------------------------------------------------------
// Goals

struct GoalResult {
  int goal;
  std::string name;
  double measured;
  double threshold;
  double margin;
  bool passed;
  std::string note;
};

inline constexpr std::array<double, 4> kGoalThresholds = {0.97, 0.85, 0.5, 0.25};

/// Goal 1: fe implied by the identity row > 0.97. Goals 2 and 3: the E2
/// aggregate > 0.85 and > 0.5. Goal 4: demonic minimum > 0.25.
inline std::array<GoalResult, 4> evaluate_goals(const BenchmarkReport& report) {
  if (report.per_error_fidelity.size() != kGridErrors) throw std::invalid_argument("evaluate_goals: incomplete report");
  auto make = [](int goal, std::string name, double measured, std::string note = {}) {
    const double t = kGoalThresholds[goal - 1];
    return GoalResult{goal, std::move(name), measured, t, measured - t, measured > t, std::move(note)};
  };
  const double fe = report.per_error_fidelity[0].fidelity;
  std::string note;
  if (fe >= 0.25) {
    const Crossover c = find_crossover(fe);
    note = c.found ? "improves on 1-3p/4 for p in [" + std::to_string(c.lower) + ", " + std::to_string(c.upper) + "]"
                   : "no crossover with 1-3p/4";
  }
  return {make(1, "improvement under independent depolarization (E1)", fe, note),
          make(2, "improvement under random single-qubit depolarization (E2)", report.aggregate_e2),
          make(3, "preservation of entanglement under E2", report.aggregate_e2),
          make(4, "improvement under demonic single-qubit depolarization (E4)", report.demonic_min,
               "worst qubit " + std::to_string(report.demonic_qubit))};
}

// ---------------------------------------------------------------------------
// Unencoded baselines

/// Entanglement fidelity of a qubit stored bare in `data_qubit` under `ch`.
inline double unencoded_fidelity(const PauliChannel& ch, int data_qubit) {
  double f = 0;
  for (const auto& t : ch.terms()) {
    if (t.pauli.at(data_qubit) == 'I') f += t.probability;
  }
  return f;
}

// ---------------------------------------------------------------------------
// Randomized stabilizer verification

struct VerificationResult {
  double mean = 0;
  double half_width = 0;  // 95% binomial-style: 1.96 sqrt(m(1-m)/n)
  double stddev = 0;
  int samples = 0;
  std::uint64_t seed = 0;
  std::string engine;
};

/// F_e with Pauli P applied during storage and sigma(P) applied to the output.
inline double verification_fidelity(const StabilizerCode& code, const NoiseConfig& cfg, const PauliString& p,
                                    Engine engine) {
  const PauliString fix = code.expected_logical_action(p);
  if (engine == Engine::kPauli) return logical_channel(code, p, cfg, fix).identity_probability();
  const double dense = reference_entanglement_fidelity(dense_pipeline(code, p, cfg, fix), kDataQubit, 1).value;
  if (engine == Engine::kBoth) {
    const double sym = logical_channel(code, p, cfg, fix).identity_probability();
    if (std::abs(dense - sym) > kEngineTolerance) throw EngineMismatch("verification engines disagree on " + p.str());
  }
  return dense;
}

namespace detail {

inline VerificationResult summarize(const std::vector<double>& values, std::uint64_t seed, Engine engine) {
  VerificationResult r;
  r.samples = static_cast<int>(values.size());
  r.seed = seed;
  r.engine = engine_name(engine);
  double sum = 0;
  for (double v : values) sum += v;
  r.mean = sum / r.samples;
  double ss = 0;
  for (double v : values) ss += (v - r.mean) * (v - r.mean);
  r.stddev = r.samples > 1 ? std::sqrt(ss / (r.samples - 1)) : 0.0;
  const double m = std::clamp(r.mean, 0.0, 1.0);
  r.half_width = 1.96 * std::sqrt(m * (1 - m) / r.samples);
  return r;
}

}  // namespace detail

/// Mean over all 4^5 Pauli products.
inline VerificationResult exhaustive_verification(const StabilizerCode& code, const NoiseConfig& cfg, Engine engine) {
  std::vector<double> values;
  for (const PauliString& p : enumerate_all_paulis(kCodeQubits)) values.push_back(verification_fidelity(code, cfg, p, engine));
  return detail::summarize(values, 0, engine);
}

/// `samples` uniform draws of P from one mt19937_64 stream seeded with `seed`.
inline VerificationResult randomized_verification(const StabilizerCode& code, const NoiseConfig& cfg, int samples,
                                                  std::uint64_t seed, Engine engine = Engine::kPauli) {
  if (samples < 1) throw std::invalid_argument("randomized_verification: samples must be >= 1");
  const auto all = enumerate_all_paulis(kCodeQubits);
  std::mt19937_64 rng(seed);
  std::vector<double> values;
  values.reserve(samples);
  for (int i = 0; i < samples; ++i) {
    const auto idx = static_cast<std::size_t>(rng() % all.size());
    values.push_back(verification_fidelity(code, cfg, all[idx], engine));
  }
  return detail::summarize(values, seed, engine);
}

// ---------------------------------------------------------------------------
// Histogram

struct HistogramBin {
  double low;
  double high;
  int count;
};

/// Contiguous bins [k w, (k+1) w) spanning every record; values within 1e-9
/// below a bin edge are counted in the upper bin.
inline std::vector<HistogramBin> polarization_histogram(const BenchmarkReport& report, double bin_width) {
  if (!(bin_width > 0)) throw std::invalid_argument("polarization_histogram: bin width must be positive");
  if (report.records.empty()) return {};
  std::map<long, int> counts;
  for (const auto& r : report.records) ++counts[static_cast<long>(std::floor(r.polarization / bin_width + 1e-9))];
  std::vector<HistogramBin> bins;
  for (long k = counts.begin()->first; k <= counts.rbegin()->first; ++k) {
    const auto it = counts.find(k);
    bins.push_back({k * bin_width, (k + 1) * bin_width, it == counts.end() ? 0 : it->second});
  }
  return bins;
}

}  // namespace qec5
