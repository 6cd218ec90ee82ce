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


#include <random>
#include <set>
#include <sstream>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "qec5/code5.hpp"
#include "qec5/fidelity.hpp"

namespace qec5 {
namespace {

using testing::max_abs;

const StabilizerCode& code() {
  static const StabilizerCode c = StabilizerCode::five_qubit();
  return c;
}

TEST(Code5, GeneratorsCommuteAndAreIndependent) {
  const auto g = standard_generators();
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) EXPECT_TRUE(commutes(g[i], g[j]));
  }
  EXPECT_TRUE(generators_independent(g));
  // Dense check of the same fact.
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) {
      const Matrix a = testing::kron_letters(g[i].letters());
      const Matrix b = testing::kron_letters(g[j].letters());
      EXPECT_LT(max_abs(a * b - b * a), 1e-12);
    }
  }
}

TEST(Code5, DetectsEveryWeightOneAndTwoError) {
  const auto g = standard_generators();
  const DistanceReport r = verify_distance(g);
  EXPECT_EQ(r.checked, 15 + 90);
  EXPECT_TRUE(r.ok());
}

TEST(Code5, CorrectableErrorsHaveDistinctSyndromes) {
  std::set<int> seen;
  for (const auto& e : enumerate_correctable_errors(5)) seen.insert(code().syndrome_of(e).index());
  EXPECT_EQ(seen.size(), 16u);
}

TEST(Code5, SyndromeBitOrder) {
  // X1 meets Z1 only in the second generator.
  EXPECT_EQ(code().syndrome_of(PauliString::parse("X1", 5)).str(), "0100");
  EXPECT_EQ(code().syndrome_of(PauliString(5)).str(), "0000");
  EXPECT_EQ(Syndrome::parse("0100").bits, 2);
  EXPECT_EQ(Syndrome::parse("1011").str(), "1011");
  EXPECT_THROW(Syndrome::parse("10"), std::invalid_argument);
  EXPECT_THROW(Syndrome::parse("10a1"), std::invalid_argument);
}

TEST(Code5, CanonicalLogicals) {
  EXPECT_EQ(code().logical_z().str(), "+Z1·Z3·Z4");
  EXPECT_EQ(code().logical_x().str(), "+Y1·Z3·Z5");
  EXPECT_FALSE(commutes(code().logical_x(), code().logical_z()));
}

TEST(Code5, EncoderMapsInputSpaceOntoCodeSpaceForEverySignChoice) {
  for (int mask = 0; mask < 16; ++mask) {
    std::array<int, 4> signs{};
    for (int i = 0; i < 4; ++i) signs[i] = ((mask >> i) & 1) ? -1 : 1;
    const StabilizerCode c = StabilizerCode::five_qubit(signs);
    const Matrix u = c.encoder_unitary();
    EXPECT_TRUE(detail::is_unitary(u));
    EXPECT_LT(max_abs(u * c.input_projector() * u.adjoint() - c.codespace_projector()), 1e-10) << mask;
    // Each signed generator stabilizes the encoded space.
    const Matrix pc = c.codespace_projector();
    for (int i = 1; i <= 4; ++i) EXPECT_LT(max_abs(to_matrix(c.signed_generator(i)) * pc - pc), 1e-10);
  }
}

TEST(Code5, EncoderCarriesDataPaulisToLogicals) {
  const Matrix u = code().encoder_unitary();
  const Matrix pin = code().input_projector();
  for (char c : {'X', 'Z'}) {
    const Matrix data = to_matrix(PauliString::single(5, kDataQubit, c));
    const Matrix logical = to_matrix(c == 'X' ? code().logical_x() : code().logical_z());
    EXPECT_LT(max_abs(u * data * pin * u.adjoint() - logical * u * pin * u.adjoint()), 1e-10);
  }
}

TEST(Code5, CorrectionUnitaryIsUnitary) {
  EXPECT_TRUE(detail::is_unitary(code().correction_unitary()));
  EXPECT_LT(max_abs(code().decoder_unitary() * code().encoder_unitary() - Matrix::Identity(32, 32)), 1e-10);
}

TEST(Code5, CorrectableErrorsLeaveNoLogicalAction) {
  for (const auto& e : enumerate_correctable_errors(5)) EXPECT_TRUE(code().expected_logical_action(e).is_trivial()) << e;
  for (int mask = 0; mask < 16; ++mask) {
    PauliString s(5);
    for (int i = 0; i < 4; ++i) {
      if ((mask >> i) & 1) s = s * code().generators()[i];
    }
    EXPECT_TRUE(code().expected_logical_action(s).is_trivial()) << s;
  }
  EXPECT_EQ(code().expected_logical_action(code().logical_x()).letters(), "X");
  EXPECT_EQ(code().expected_logical_action(code().logical_z()).letters(), "Z");
}

TEST(Code5, WeightTwoErrorsAreMiscorrected) {
  int count = 0;
  for (const auto& p : enumerate_all_paulis(5)) {
    if (p.weight() != 2) continue;
    ++count;
    EXPECT_FALSE(code().expected_logical_action(p).is_trivial()) << p;
  }
  EXPECT_EQ(count, 90);
}

// Dense oracle: run decode + correct on a Bell pair and read the residual
// Pauli off the reduced state.
TEST(Code5, LogicalActionMatchesDenseSimulation) {
  std::mt19937_64 rng(41);
  const auto all = enumerate_all_paulis(5);
  const Matrix dc = code().correction_unitary() * code().decoder_unitary();
  for (int trial = 0; trial < 48; ++trial) {
    const PauliString p = all[rng() % all.size()];
    Pipeline pipe(5);
    pipe.unitary_all(code().encoder_unitary()).pauli(p).unitary_all(dc);
    const PauliString sigma = code().expected_logical_action(p);
    pipe.pauli(PauliString::single(5, kDataQubit, sigma.at(1)));
    EXPECT_NEAR(reference_entanglement_fidelity(pipe, kDataQubit, 1).value, 1.0, 1e-10) << p << " -> " << sigma;
  }
}

TEST(Code5, PerfectCorrectionOnCardinalStates) {
  const Matrix dc = code().correction_unitary() * code().decoder_unitary();
  for (const auto& e : enumerate_correctable_errors(5)) {
    Pipeline pipe(5);
    pipe.unitary_all(code().encoder_unitary()).pauli(e).unitary_all(dc);
    const Process proc = process_from_pipeline(pipe, kDataQubit, 1);
    for (const StateVector& psi : cardinal_states()) EXPECT_NEAR(fidelity_pure(psi, proc(DensityMatrix(psi))), 1.0, 1e-10);
  }
}

TEST(Code5, DefinitionRoundTrip) {
  const StabilizerCode c = StabilizerCode::five_qubit({1, -1, 1, -1});
  std::stringstream ss;
  c.write_definition(ss);
  const StabilizerCode back = StabilizerCode::read_definition(ss);
  EXPECT_EQ(back.signs(), c.signs());
  EXPECT_EQ(back.generators(), c.generators());
  EXPECT_EQ(back.logical_x(), c.logical_x());
  EXPECT_EQ(back.logical_z(), c.logical_z());
  EXPECT_EQ(back.encoder_tableau(), c.encoder_tableau());
}

TEST(Code5, DefinitionWithoutLogicalsUsesCanonicalChoice) {
  std::istringstream in("# test\nqubits 5\ngenerator +1 IZYYX\ngenerator +1 ZYYXI\ngenerator 1 IYZZZ\ngenerator +1 XZXZI\n");
  EXPECT_EQ(StabilizerCode::read_definition(in).logical_z(), code().logical_z());
}

TEST(Code5, RejectsBadDefinitions) {
  std::istringstream three("qubits 5\ngenerator +1 IZYYX\ngenerator +1 ZYYXI\ngenerator +1 IYZZZ\n");
  EXPECT_THROW(StabilizerCode::read_definition(three), std::invalid_argument);
  std::istringstream qubits("qubits 7\n");
  EXPECT_THROW(StabilizerCode::read_definition(qubits), std::invalid_argument);
  std::istringstream key("frobnicate 1\n");
  EXPECT_THROW(StabilizerCode::read_definition(key), std::invalid_argument);

  auto g = standard_generators();
  EXPECT_THROW(StabilizerCode(g, {1, 2, 1, 1}), std::invalid_argument);
  g[3] = PauliString::parse("XIIII", 5);
  try {
    StabilizerCode bad(g, {1, 1, 1, 1});
    FAIL() << "anticommuting generators accepted";
  } catch (const std::invalid_argument& e) {
    EXPECT_NE(std::string(e.what()).find("generator 2"), std::string::npos) << e.what();
  }
  auto dup = standard_generators();
  dup[3] = dup[0];
  EXPECT_THROW(StabilizerCode(dup, {1, 1, 1, 1}), std::invalid_argument);
  const auto gens = standard_generators();
  EXPECT_THROW(StabilizerCode(gens, {1, 1, 1, 1}, StabilizerCode::Logicals{code().logical_z(), code().logical_z()}),
               std::invalid_argument);
}

TEST(Code5, CorrectionCsv) {
  std::ostringstream os;
  code().write_correction_csv(os);
  std::istringstream in(os.str());
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "syndrome,correction");
  std::getline(in, line);
  EXPECT_EQ(line, "0000,I");
  int rows = 1;
  while (std::getline(in, line)) ++rows;
  EXPECT_EQ(rows, 16);
  EXPECT_NE(os.str().find("\n0100,Y\n"), std::string::npos);
}

}  // namespace
}  // namespace qec5
