// Copyright 2026 The qgame Authors
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

#include "qgame/quantumizer.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "qgame/catalog.h"
#include "qgame/errors.h"
#include "qgame/strategy_space.h"
#include "test_util.h"

namespace qgame {
namespace {

using std::numbers::pi;
using testing::RandomDensity;
using testing::RandomUnitary;

// Random game over an orthonormal measurement basis taken from the columns of
// a random unitary.
QuantumGame RandomQuantumGame(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> n_players(2, 3), n_strategies(2, 3);
  std::uniform_real_distribution<double> value(-5, 5);
  const int n = n_players(rng);
  std::vector<std::string> players;
  std::vector<std::vector<std::string>> sets;
  int plays = 1;
  for (int i = 0; i < n; ++i) {
    players.push_back("P" + std::to_string(i));
    std::vector<std::string> set;
    const int s = n_strategies(rng);
    for (int k = 0; k < s; ++k) set.push_back(std::string(1, static_cast<char>('a' + k)));
    sets.push_back(set);
    plays *= s;
  }
  std::vector<std::vector<double>> payoffs(static_cast<std::size_t>(n));
  for (auto& t : payoffs) {
    for (int k = 0; k < plays; ++k) t.push_back(value(rng));
  }
  ClassicalGame base(players, sets, payoffs);
  const ComplexMatrix u = RandomUnitary(plays, rng);
  std::vector<ComplexVector> vectors;
  for (int k = 0; k < plays; ++k) vectors.push_back(u.col(k));
  MeasurementBasis basis = MeasurementBasis::FromVectors(vectors, base.PlayLabels());
  return QuantumGame(base, DensityMatrix(RandomDensity(plays, rng)), basis);
}

QuantumPlay RandomPlay(const QuantumGame& game, std::mt19937_64& rng) {
  QuantumPlay play;
  for (std::size_t i = 0; i < game.num_players(); ++i) {
    play.locals.emplace_back(RandomUnitary(game.local_dim(i), rng));
  }
  return play;
}

TEST(QuantumGameTest, PayoffOperatorsAreHermitianAndCommute) {
  std::mt19937_64 rng(101);
  for (int trial = 0; trial < 50; ++trial) {
    const QuantumGame game = RandomQuantumGame(rng);
    const auto& ops = game.payoff_operators();
    for (std::size_t i = 0; i < ops.size(); ++i) {
      EXPECT_TRUE(IsHermitian(ops[i], 1e-12));
      // Spectrum is the player's payoff multiset.
      Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(ops[i]);
      std::vector<double> spectrum(solver.eigenvalues().data(),
                                   solver.eigenvalues().data() + solver.eigenvalues().size());
      std::vector<double> values = game.base().payoff_tensors()[i];
      std::sort(values.begin(), values.end());
      for (std::size_t k = 0; k < values.size(); ++k) EXPECT_NEAR(spectrum[k], values[k], 1e-9);
      for (std::size_t j = i + 1; j < ops.size(); ++j) {
        EXPECT_LE(CommutatorNorm(ops[i], ops[j]), 1e-9);
      }
    }
  }
}

TEST(QuantumGameTest, TraceAndOutcomePathsAgree) {
  std::mt19937_64 rng(202);
  for (int trial = 0; trial < 20; ++trial) {
    const QuantumGame game = RandomQuantumGame(rng);
    for (int k = 0; k < 20; ++k) {
      const QuantumPlay play = RandomPlay(game, rng);
      const auto a = ExpectedPayoffsQ(game, play);
      const auto b = ExpectedPayoffsByOutcomes(game, play);
      for (std::size_t i = 0; i < a.size(); ++i) EXPECT_NEAR(a[i], b[i], 1e-9);
      const auto dist = PlayDistribution(game, play);
      double total = 0.0;
      for (double p : dist) total += p;
      EXPECT_NEAR(total, 1.0, 1e-12);
    }
  }
}

TEST(QuantumGameTest, MixedPlayIsAverageOfPurePlays) {
  std::mt19937_64 rng(303);
  const QuantumGame game = RandomQuantumGame(rng);
  std::vector<UnitaryMixture> locals;
  for (std::size_t i = 0; i < game.num_players(); ++i) {
    const int d = game.local_dim(i);
    locals.push_back({{0.3, UnitaryOperator(RandomUnitary(d, rng))},
                      {0.7, UnitaryOperator(RandomUnitary(d, rng))}});
  }
  const auto mixed = ExpectedPayoffsMixed(game, MixedQuantumPlay{locals});
  std::vector<double> average(game.num_players(), 0.0);
  std::vector<std::size_t> choice(game.num_players(), 0);
  while (true) {
    QuantumPlay play;
    double weight = 1.0;
    for (std::size_t i = 0; i < choice.size(); ++i) {
      weight *= locals[i][choice[i]].first;
      play.locals.push_back(locals[i][choice[i]].second);
    }
    const auto payoffs = ExpectedPayoffsQ(game, play);
    for (std::size_t i = 0; i < payoffs.size(); ++i) average[i] += weight * payoffs[i];
    std::size_t pos = choice.size();
    while (pos > 0 && ++choice[pos - 1] == 2) choice[--pos] = 0;
    if (pos == 0) break;
  }
  for (std::size_t i = 0; i < average.size(); ++i) EXPECT_NEAR(mixed[i], average[i], 1e-12);
}

TEST(QuantumGameTest, ConstructorValidation) {
  const ClassicalGame pd = PrisonersDilemmaGame(5, 3, 1);
  EXPECT_THROW(QuantumGame(pd, DensityMatrix::BasisState(3, 0),
                           MeasurementBasis::Computational({"a", "b", "c"})),
               ShapeError);
  EXPECT_THROW(QuantumGame(pd, DensityMatrix::BasisState(4, 0),
                           MeasurementBasis::Computational({"CC", "CD", "DC", "XX"})),
               ShapeError);
  EXPECT_THROW(EwlEtaBasis(PennyFlipGame()), ShapeError);
}

// Independent EWL amplitudes: J = (|00> + i|11>)/sqrt(2), final = (A (x) B) J,
// projected onto the eta vectors written out by hand.
std::vector<double> EwlOutcomeOracle(const ComplexMatrix& a, const ComplexMatrix& b) {
  const Complex i(0, 1);
  const double r = 1 / std::sqrt(2.0);
  Complex psi[2][2] = {};
  for (int x = 0; x < 2; ++x) {
    for (int y = 0; y < 2; ++y) psi[x][y] = r * (a(x, 0) * b(y, 0) + i * a(x, 1) * b(y, 1));
  }
  const Complex eta[4][4] = {{r, 0, 0, i * r}, {0, r, -i * r, 0}, {0, r, i * r, 0},
                             {r, 0, 0, -i * r}};
  std::vector<double> probs;
  for (const auto& e : eta) {
    const Complex amp = std::conj(e[0]) * psi[0][0] + std::conj(e[1]) * psi[0][1] +
                        std::conj(e[2]) * psi[1][0] + std::conj(e[3]) * psi[1][1];
    probs.push_back(std::norm(amp));
  }
  return probs;
}

TEST(EwlTest, OutcomesMatchHandComputedAmplitudes) {
  const QuantumGame game = EwlPrisonersDilemma(5, 3, 1);
  std::mt19937_64 rng(404);
  std::uniform_real_distribution<double> theta(0, pi), phi(0, 2 * pi);
  for (int k = 0; k < 100; ++k) {
    const ComplexMatrix a = ThreeParamMatrix(theta(rng), phi(rng), phi(rng));
    const ComplexMatrix b = ThreeParamMatrix(theta(rng), phi(rng), phi(rng));
    const auto dist = PlayDistribution(game, {{UnitaryOperator(a), UnitaryOperator(b)}});
    const auto oracle = EwlOutcomeOracle(a, b);
    for (int o = 0; o < 4; ++o) EXPECT_NEAR(dist[o], oracle[o], 1e-12);
  }
}

TEST(EwlTest, OneParameterPlaysAreClassicalMixtures) {
  const QuantumGame game = EwlPrisonersDilemma(5, 3, 1);
  for (int x = 0; x < 16; ++x) {
    for (int y = 0; y < 16; ++y) {
      const double ta = pi * x / 15, tb = pi * y / 15;
      const auto dist = PlayDistribution(
          game, {{UnitaryOperator(OneParamMatrix(ta)), UnitaryOperator(OneParamMatrix(tb))}});
      const double pa = std::pow(std::cos(ta / 2), 2), pb = std::pow(std::cos(tb / 2), 2);
      EXPECT_NEAR(dist[0], pa * pb, 1e-9);
      EXPECT_NEAR(dist[1], pa * (1 - pb), 1e-9);
      EXPECT_NEAR(dist[2], (1 - pa) * pb, 1e-9);
      EXPECT_NEAR(dist[3], (1 - pa) * (1 - pb), 1e-9);
    }
  }
}

TEST(EwlTest, NamedProfiles) {
  const double a = 5, b = 3, g = 1;
  const QuantumGame game = EwlPrisonersDilemma(a, b, g);
  const UnitaryOperator c = *NamedOperator("UC"), d = *NamedOperator("UD"),
                        q = *NamedOperator("UQ");
  const auto cc = ExpectedPayoffsQ(game, {{c, c}});
  EXPECT_NEAR(cc[0], -g, 1e-12);
  EXPECT_NEAR(cc[1], -g, 1e-12);
  const auto dd = ExpectedPayoffsQ(game, {{d, d}});
  EXPECT_NEAR(dd[0], -b, 1e-12);
  EXPECT_NEAR(dd[1], -b, 1e-12);
  const auto qd = ExpectedPayoffsQ(game, {{q, d}});
  EXPECT_NEAR(qd[0], 0, 1e-12);
  EXPECT_NEAR(qd[1], -a, 1e-12);
  const auto qq = ExpectedPayoffsQ(game, {{q, q}});
  EXPECT_NEAR(qq[0], -g, 1e-12);
  EXPECT_NEAR(qq[1], -g, 1e-12);
}

TEST(MarinattoWeberTest, ComputationalAndBellBases) {
  const double a = 3, b = 2, g = 1;
  const UnitaryOperator i = *NamedOperator("I"), x = *NamedOperator("X");
  const QuantumGame game = MarinattoWeberBattleOfSexes(a, b, g);
  for (const auto& play : {QuantumPlay{{i, i}}, QuantumPlay{{x, x}}}) {
    const auto p = ExpectedPayoffsQ(game, play);
    EXPECT_NEAR(p[0], (a + b) / 2, 1e-12);
    EXPECT_NEAR(p[1], (a + b) / 2, 1e-12);
  }
  const auto ix = ExpectedPayoffsQ(game, {{i, x}});
  EXPECT_NEAR(ix[0], g, 1e-12);
  const QuantumGame bell = MarinattoWeberBattleOfSexes(a, b, g, true);
  const auto ii = ExpectedPayoffsQ(bell, {{i, i}});
  EXPECT_NEAR(ii[0], a, 1e-12);
  EXPECT_NEAR(ii[1], b, 1e-12);
}

TEST(SequentialTest, PennyFlipClassicalMovesMatchParity) {
  const SequentialQuantumGame game = PennyFlipSequential();
  const UnitaryOperator n = *game.ClassicalMove("N"), f = *game.ClassicalMove("F");
  for (int mask = 0; mask < 8; ++mask) {
    std::vector<UnitaryOperator> moves;
    int flips = 0;
    for (int k = 0; k < 3; ++k) {
      const bool flip = (mask >> k) & 1;
      flips += flip;
      moves.push_back(flip ? f : n);
    }
    const auto payoffs = PlaySequential(game, moves);
    const double q = flips % 2 == 0 ? 1.0 : -1.0;
    EXPECT_EQ(payoffs[0], q);
    EXPECT_EQ(payoffs[1], -q);
  }
}

TEST(SequentialTest, HadamardStrategyAlwaysWins) {
  const SequentialQuantumGame game = PennyFlipSequential();
  const UnitaryOperator h = *NamedOperator("UQstar");
  for (const char* reply : {"N", "F"}) {
    const auto payoffs = PlaySequential(game, {h, *game.ClassicalMove(reply), h});
    EXPECT_NEAR(payoffs[0], 1.0, 1e-12);
    EXPECT_NEAR(payoffs[1], -1.0, 1e-12);
  }
}

TEST(SequentialTest, CyclicShiftComposition) {
  const UnitaryOperator shift(PermutationMatrix({1, 2, 0}));
  const ComplexMatrix cube = (shift * shift * shift).matrix();
  EXPECT_LT((cube - ComplexMatrix::Identity(3, 3)).norm(), 1e-15);
  const SequentialQuantumGame game({"A", "B"}, {"0", "1", "2"}, DensityMatrix::BasisState(3, 0),
                                   {0, 1, 0}, {{"S", shift}},
                                   {{1, 0, 0}, {0, 1, 0}});
  EXPECT_EQ(PlaySequential(game, {shift, shift, shift}), (std::vector<double>{1, 0}));
  EXPECT_EQ(PlaySequential(game, {shift, shift, UnitaryOperator::Identity(3)}),
            (std::vector<double>{0, 0}));
}

TEST(SequentialTest, Validation) {
  const auto rho = DensityMatrix::BasisState(2, 0);
  EXPECT_THROW(SequentialQuantumGame({"A"}, {"H", "T"}, rho, {0},
                                     {{"H", *NamedOperator("H")}}, {{1, -1}}),
               InvariantError);
  EXPECT_THROW(SequentialQuantumGame({"A"}, {"H", "T"}, rho, {1}, {}, {{1, -1}}), ShapeError);
  EXPECT_THROW(SequentialQuantumGame({"A"}, {"H", "T"}, rho, {}, {}, {{1, -1}}), ShapeError);
  EXPECT_THROW(SequentialQuantumGame({"A"}, {"H", "T"}, rho, {0},
                                     {{"N", UnitaryOperator::Identity(2)},
                                      {"N", UnitaryOperator::Identity(2)}},
                                     {{1, -1}}),
               ShapeError);
  EXPECT_FALSE(IsPermutationMatrix(NamedOperator("H")->matrix()));
  EXPECT_TRUE(IsPermutationMatrix(PermutationMatrix({2, 0, 1})));
  EXPECT_THROW(PlaySequential(PennyFlipSequential(), {*NamedOperator("N")}), ShapeError);
}

}  // namespace
}  // namespace qgame
