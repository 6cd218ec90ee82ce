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


#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include <gtest/gtest.h>

#include "qec5/benchmark.hpp"

namespace qec5 {
namespace {

const StabilizerCode& code() {
  static const StabilizerCode c = StabilizerCode::five_qubit();
  return c;
}

// Ideal-code identity probability under independent depolarization, derived
// separately with a computer-algebra system.
double ideal_encoded(double p) {
  return 1 - 45 * std::pow(p, 2) / 8 + 75 * std::pow(p, 3) / 8 - 45 * std::pow(p, 4) / 8 + 9 * std::pow(p, 5) / 8;
}

BenchmarkReport uniform_report(double polarization) {
  std::vector<ExperimentRecord> records;
  for (const auto& e : enumerate_correctable_errors(5)) {
    for (Axis a : kAxes) records.push_back({e.str(), a, polarization});
  }
  return assemble_report(records);
}

TEST(Curves, Unencoded) {
  EXPECT_EQ(unencoded_curve(0), 1.0);
  EXPECT_EQ(unencoded_curve(1), 0.25);
  EXPECT_NEAR(unencoded_curve(0.08713), 0.9346525, 1e-15);
  EXPECT_THROW(unencoded_curve(1.5), std::invalid_argument);
  EXPECT_THROW(unencoded_curve(-0.1), std::invalid_argument);
}

TEST(Curves, EncodedAtZeroIsFeExactly) {
  for (double fe : {0.25, 0.5, 0.9, 0.97, 0.999, 1.0}) EXPECT_EQ(encoded_curve(0, fe), fe);
  EXPECT_THROW(encoded_curve(0.1, 0.2), std::invalid_argument);
  EXPECT_THROW(encoded_curve(1.1, 0.9), std::invalid_argument);
}

TEST(Curves, EncodedMatchesClosedForms) {
  for (int i = 0; i <= 100; ++i) {
    const double p = i / 100.0;
    const double pid = ideal_encoded(p);
    EXPECT_NEAR(encoded_curve(p, 1.0), pid, 1e-14);
    for (double fe : {0.25, 0.6, 0.97}) EXPECT_NEAR(encoded_curve(p, fe), fe * pid + (1 - fe) * (1 - pid) / 3, 1e-14);
  }
}

TEST(Curves, EncodedMatchesDensePipeline) {
  for (double p : {0.0, 0.05, 0.3, 0.75, 1.0}) {
    for (double fe : {1.0, 0.9}) {
      const NoiseConfig cfg{fe, nlohmann::json{{"kind", "independent"}, {"p", p}}};
      const double dense = reference_entanglement_fidelity(dense_pipeline(code(), PauliString(5), cfg), kDataQubit, 1).value;
      EXPECT_NEAR(dense, encoded_curve(p, fe), 1e-10) << p << " " << fe;
      EXPECT_NEAR(logical_channel(code(), PauliString(5), cfg).identity_probability(), encoded_curve(p, fe), 1e-12);
    }
  }
}

TEST(Curves, SlopeMatchesFiniteDifference) {
  for (double fe : {0.5, 0.97, 1.0}) {
    for (double p : {0.01, 0.2, 0.5, 0.9}) {
      const double h = 1e-6;
      const double fd = (encoded_curve(p + h, fe) - encoded_curve(p - h, fe)) / (2 * h);
      EXPECT_NEAR(encoded_curve_slope(p, fe), fd, 1e-7);
    }
  }
}

TEST(Crossover, IdealCodeClosedForm) {
  const Crossover c = find_crossover(1.0);
  ASSERT_TRUE(c.found);
  EXPECT_FALSE(c.tangent);
  EXPECT_EQ(c.lower, 0.0);
  EXPECT_NEAR(c.point(), 1 - std::sqrt(6.0) / 3, 1e-12);
}

TEST(Crossover, TangentAtThreshold) {
  const Crossover c = find_crossover(0.97);
  ASSERT_TRUE(c.found);
  EXPECT_TRUE(c.tangent);
  EXPECT_NEAR(c.point(), 0.08713, 1e-4);
  EXPECT_NEAR(c.point(), 0.0871290708247231, 1e-9);
  EXPECT_NEAR(encoded_curve(0.08713, 0.97), unencoded_curve(0.08713), 1e-4);
}

TEST(Crossover, AboveAndBelowThreshold) {
  const Crossover hi = find_crossover(0.98);
  ASSERT_TRUE(hi.found);
  EXPECT_FALSE(hi.tangent);
  EXPECT_GT(hi.lower, 0.0);
  EXPECT_LT(hi.lower, 0.08713);
  EXPECT_GT(hi.upper, 0.08713);
  EXPECT_NEAR(encoded_curve(hi.lower, 0.98), unencoded_curve(hi.lower), 1e-12);
  EXPECT_NEAR(encoded_curve(hi.upper, 0.98), unencoded_curve(hi.upper), 1e-12);
  EXPECT_FALSE(find_crossover(0.96).found);
  EXPECT_FALSE(find_crossover(0.25).found);
  EXPECT_THROW(find_crossover(0.1), std::invalid_argument);
}

// Ideal code beats the bare qubit on (0, p*) and loses on (p*, 1).
TEST(Crossover, IdealCurveOrdering) {
  const double ps = find_crossover(1.0).point();
  for (int i = 1; i < 1000; ++i) {
    const double p = i / 1000.0;
    const double gap = encoded_curve(p, 1.0) - unencoded_curve(p);
    if (p < ps) {
      EXPECT_GT(gap, 0) << p;
    } else {
      EXPECT_LT(gap, 0) << p;
    }
  }
}

TEST(Grid, NoiselessPolarizationsAreOne) {
  const BenchmarkReport rep = run_error_grid(code(), NoiseConfig{}, Engine::kBoth);
  ASSERT_EQ(rep.records.size(), 48u);
  for (const auto& r : rep.records) EXPECT_NEAR(r.polarization, 1.0, 1e-10);
  for (const auto& g : evaluate_goals(rep)) EXPECT_TRUE(g.passed) << g.goal;
}

TEST(Grid, ImplementationNoiseSetsEveryRow) {
  const BenchmarkReport rep = run_error_grid(code(), NoiseConfig{0.97, std::nullopt}, Engine::kBoth);
  for (const auto& f : rep.per_error_fidelity) EXPECT_NEAR(f.fidelity, 0.97, 1e-12);
  EXPECT_EQ(rep.engine, "both");
}

TEST(Grid, FullyDepolarizingFailsEveryGoal) {
  const BenchmarkReport rep = run_error_grid(code(), NoiseConfig{0.25, std::nullopt}, Engine::kPauli);
  for (const auto& g : evaluate_goals(rep)) EXPECT_FALSE(g.passed) << g.goal;
}

TEST(Grid, EnginesAgreeUnderExtraNoise) {
  const nlohmann::json extra = {
      {"kind", "compose"},
      {"channels", nlohmann::json::array({nlohmann::json{{"kind", "independent"}, {"p", 0.07}},
                                          nlohmann::json{{"kind", "depolarize"}, {"qubit", 4}, {"p", 0.3}}})}};
  const NoiseConfig cfg{0.9, extra};
  const BenchmarkReport d = run_error_grid(code(), cfg, Engine::kDense);
  const BenchmarkReport s = run_error_grid(code(), cfg, Engine::kPauli);
  for (std::size_t i = 0; i < d.records.size(); ++i) {
    EXPECT_EQ(d.records[i].error_label, s.records[i].error_label);
    EXPECT_NEAR(d.records[i].polarization, s.records[i].polarization, 1e-9);
  }
}

TEST(Grid, AggregateMatchesDenseMixture) {
  for (double fe : {1.0, 0.8}) {
    const BenchmarkReport rep = run_error_grid(code(), NoiseConfig{fe, std::nullopt}, Engine::kPauli);
    const NoiseConfig e2{fe, nlohmann::json{{"kind", "random_single"}}};
    const double direct = reference_entanglement_fidelity(dense_pipeline(code(), PauliString(5), e2), kDataQubit, 1).value;
    EXPECT_NEAR(rep.aggregate_e2, direct, 1e-9);
  }
}

TEST(Report, UniformPolarization) {
  const BenchmarkReport rep = uniform_report(0.67);
  EXPECT_NEAR(rep.aggregate_e2, 0.7525, 1e-12);
  const auto goals = evaluate_goals(rep);
  EXPECT_FALSE(goals[1].passed);
  EXPECT_TRUE(goals[2].passed);
  EXPECT_NEAR(goals[2].margin, 0.2525, 1e-12);
}

TEST(Report, WeightsAndDemonicQubit) {
  std::vector<ExperimentRecord> records;
  for (const auto& e : enumerate_correctable_errors(5)) {
    const bool on3 = !e.is_trivial() && e.at(3) != 'I';
    for (Axis a : kAxes) records.push_back({e.str(), a, on3 ? 0.0 : 1.0});
  }
  const BenchmarkReport rep = assemble_report(records);
  EXPECT_NEAR(rep.aggregate_e2, 0.25 + 12 * 0.05 + 3 * 0.05 * 0.25, 1e-14);
  EXPECT_EQ(rep.demonic_qubit, 3);
  EXPECT_NEAR(rep.demonic_min, (1 + 3 * 0.25) / 4, 1e-14);
}

TEST(Report, OrderIndependent) {
  std::mt19937_64 rng(71);
  const BenchmarkReport base = run_error_grid(code(), NoiseConfig{0.8, nlohmann::json{{"kind", "independent"}, {"p", 0.1}}},
                                              Engine::kPauli);
  auto records = base.records;
  std::shuffle(records.begin(), records.end(), rng);
  const BenchmarkReport again = assemble_report(records);
  for (std::size_t i = 0; i < 48; ++i) EXPECT_EQ(again.records[i].polarization, base.records[i].polarization);
  const auto g1 = evaluate_goals(base);
  const auto g2 = evaluate_goals(again);
  for (int i = 0; i < 4; ++i) {
    EXPECT_EQ(g1[i].passed, g2[i].passed);
    EXPECT_EQ(g1[i].measured, g2[i].measured);
  }
}

TEST(Report, RejectsIncompleteGrids) {
  auto records = uniform_report(0.5).records;
  auto dup = records;
  dup.push_back(records[3]);
  EXPECT_THROW(assemble_report(dup), std::invalid_argument);
  auto missing = records;
  missing.pop_back();
  EXPECT_THROW(assemble_report(missing), std::invalid_argument);
  auto foreign = records;
  foreign[0].error_label = "+X1·X2";
  EXPECT_THROW(assemble_report(foreign), std::invalid_argument);
  auto wild = records;
  wild[0].polarization = 1.5;
  EXPECT_THROW(assemble_report(wild), std::invalid_argument);
}

TEST(Baselines, UnencodedMatchesThresholds) {
  EXPECT_NEAR(unencoded_fidelity(random_single_qubit_depolarizing(5), kDataQubit), 0.85, 1e-12);
  const DemonicChoice d = demonic(5, [](const PauliChannel& ch) { return unencoded_fidelity(ch, kDataQubit); });
  EXPECT_EQ(d.qubit, kDataQubit);
  EXPECT_NEAR(d.fidelity, 0.25, 1e-12);
  EXPECT_NEAR(unencoded_fidelity(independent_depolarizing(0.2, 5), 1), unencoded_curve(0.2), 1e-14);
}

TEST(Verification, NoiselessExhaustive) {
  const VerificationResult r = exhaustive_verification(code(), NoiseConfig{}, Engine::kPauli);
  EXPECT_EQ(r.samples, 1024);
  EXPECT_NEAR(r.mean, 1.0, 1e-12);
  EXPECT_EQ(r.stddev, 0.0);
}

TEST(Verification, DenseAgreesOnSample) {
  const VerificationResult r = randomized_verification(code(), NoiseConfig{0.9, std::nullopt}, 24, 5, Engine::kBoth);
  EXPECT_NEAR(r.mean, 0.9, 1e-10);
}

TEST(Verification, SeededAndWithinInterval) {
  const NoiseConfig cfg{1.0, nlohmann::json{{"kind", "independent"}, {"p", 0.05}}};
  const VerificationResult a = randomized_verification(code(), cfg, 4096, 99);
  const VerificationResult b = randomized_verification(code(), cfg, 4096, 99);
  EXPECT_EQ(a.mean, b.mean);
  EXPECT_EQ(a.seed, 99u);
  const VerificationResult ex = exhaustive_verification(code(), cfg, Engine::kPauli);
  EXPECT_LT(ex.mean, 1.0);
  EXPECT_LE(std::abs(a.mean - ex.mean), a.half_width + 1e-15);
  EXPECT_THROW(randomized_verification(code(), cfg, 0, 1), std::invalid_argument);
}

TEST(MonteCarlo, ConvergesToExact) {
  const NoiseConfig cfg{0.95, nlohmann::json{{"kind", "independent"}, {"p", 0.1}}};
  const double exact = logical_channel(code(), PauliString(5), cfg).identity_probability();
  const double mc = monte_carlo_logical_fidelity(code(), PauliString(5), cfg, 40000, 3);
  EXPECT_NEAR(mc, exact, 5 * std::sqrt(exact * (1 - exact) / 40000));
  EXPECT_EQ(mc, monte_carlo_logical_fidelity(code(), PauliString(5), cfg, 40000, 3));
}

TEST(Histogram, Bins) {
  const auto one = polarization_histogram(uniform_report(1.0), 0.1);
  ASSERT_EQ(one.size(), 1u);
  EXPECT_EQ(one[0].count, 48);
  EXPECT_NEAR(one[0].low, 1.0, 1e-12);
  const auto mid = polarization_histogram(uniform_report(0.67), 0.05);
  ASSERT_EQ(mid.size(), 1u);
  EXPECT_EQ(mid[0].count, 48);
  EXPECT_LE(mid[0].low, 0.67);
  EXPECT_GT(mid[0].high, 0.67);
  const auto rep = run_error_grid(code(), NoiseConfig{0.9, nlohmann::json{{"kind", "independent"}, {"p", 0.2}}}, Engine::kPauli);
  const auto bins = polarization_histogram(rep, 0.02);
  int total = 0;
  for (std::size_t i = 0; i < bins.size(); ++i) {
    total += bins[i].count;
    if (i) EXPECT_NEAR(bins[i].low, bins[i - 1].high, 1e-12);
  }
  EXPECT_EQ(total, 48);
  EXPECT_THROW(polarization_histogram(rep, 0), std::invalid_argument);
}

TEST(Engine, Names) {
  EXPECT_EQ(parse_engine("both"), Engine::kBoth);
  EXPECT_STREQ(engine_name(Engine::kDense), "dense");
  EXPECT_THROW(parse_engine("fast"), std::invalid_argument);
}

}  // namespace
}  // namespace qec5
