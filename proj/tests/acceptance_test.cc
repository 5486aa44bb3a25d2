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

// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "qgame/catalog.h"
#include "qgame/classical_game.h"
#include "qgame/equilibrium.h"
#include "qgame/quantum_core.h"
#include "qgame/quantumizer.h"
#include "qgame/strategy_space.h"
#include "test_util.h"

namespace qgame {
namespace {

using std::numbers::pi;
using testing::RandomDensity;
using testing::RandomUnitary;

struct Outcome {
  bool passed = true;
  std::ostringstream detail;

  void Require(bool condition, const std::string& what) {
    if (!condition) {
      passed = false;
      detail << " [failed: " << what << "]";
    }
  }
};

double MaxAbsDiff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

// 1. Hadamard-flip-Hadamard wins for Q against either classical reply.
void SequentialAlwaysWins(Outcome& out) {
  const SequentialQuantumGame game = PennyFlipSequential();
  const UnitaryOperator h = *NamedOperator("UQstar");
  double worst = 0.0;
  for (const char* reply : {"F", "N"}) {
    const auto payoffs = PlaySequential(game, {h, *game.ClassicalMove(reply), h});
    // Players are (Q, C).
    worst = std::max(worst, MaxAbsDiff(payoffs, {1.0, -1.0}));
  }
  out.detail << "max |payoff - (1, -1)| = " << worst;
  out.Require(worst <= 1e-12, "tolerance 1e-12");
}

// 2. Penny flip: no dominant strategy, no pure NE, uniform mixed NE at (0, 0).
void PennyFlipClassical(Outcome& out) {
  const ClassicalGame game = PennyFlipGame();
  const auto dominant = DominantStrategies(game);
  const bool none_dominant = std::none_of(dominant.begin(), dominant.end(),
                                          [](const auto& d) { return d.has_value(); });
  const bool no_pure = PureNash(game).empty();
  const MixedProfile profile{{{0.5, 0.5}, {0.25, 0.25, 0.25, 0.25}}};
  const auto payoffs = ExpectedPayoffs(game, profile);
  const double gain = MaxUnilateralGain(game, profile);
  const double error = MaxAbsDiff(payoffs, {0.0, 0.0});
  out.detail << "dominant: " << (none_dominant ? "none" : "found")
             << ", pure NE: " << (no_pure ? "none" : "found") << ", mixed gain " << gain
             << ", payoff error " << error;
  out.Require(none_dominant, "no dominant strategies");
  out.Require(no_pure, "no pure NE");
  out.Require(gain <= 1e-9, "mixed NE gain within 1e-9");
  out.Require(error <= 1e-9, "payoffs (0, 0) within 1e-9");
}

// 3. One-parameter EWL plays reproduce independent classical mixing.
void OneParameterReduction(Outcome& out) {
  const QuantumGame game = EwlPrisonersDilemma(5, 3, 1);
  double worst = 0.0;
  for (int x = 0; x < 16; ++x) {
    for (int y = 0; y < 16; ++y) {
      const double ta = pi * x / 15;
      const double tb = pi * y / 15;
      const auto dist = PlayDistribution(
          game, {{UnitaryOperator(OneParamMatrix(ta)), UnitaryOperator(OneParamMatrix(tb))}});
      const double pa = std::pow(std::cos(ta / 2), 2);
      const double pb = std::pow(std::cos(tb / 2), 2);
      worst = std::max(worst, MaxAbsDiff(dist, {pa * pb, pa * (1 - pb), (1 - pa) * pb,
                                                (1 - pa) * (1 - pb)}));
    }
  }
  out.detail << "16x16 grid, max probability error " << worst;
  out.Require(worst <= 1e-9, "tolerance 1e-9");
}

// 4. Two-parameter EWL: (U_Q, U_Q) certified, best response to U_D is U_Q.
void TwoParameterEquilibrium(Outcome& out) {
  const QuantumGame game = EwlPrisonersDilemma(5, 3, 1);
  const StrategyFamily family = StrategyFamily::TwoParam();
  SearchConfig cfg;
  cfg.epsilon = 1e-6;
  const auto report = VerifyNash(game, {{0, pi / 2}, {0, pi / 2}}, family, cfg);
  const double payoff_error = MaxAbsDiff(report.payoffs, {-1.0, -1.0});
  const BestResponse br = FindBestResponse(
      game, 0, {UnitaryOperator::Identity(2), ParamUnitary(family, {pi, 0})}, family, cfg);
  const double point_error = MaxAbsDiff(br.point, {0.0, pi / 2});
  out.detail << "gain " << report.max_unilateral_gain << ", payoff error " << payoff_error
             << ", best response (" << br.point[0] << ", " << br.point[1] << ")";
  out.Require(report.certified, "certified at epsilon 1e-6");
  out.Require(payoff_error <= 1e-9, "payoffs (-1, -1)");
  out.Require(point_error <= 1e-9, "best response (0, pi/2)");
}

// 5. Three-parameter EWL: random profiles are refuted; U_D U_opp^dagger is the
// stated witness reaching the responder's maximum payoff 0.
void ThreeParameterNoEquilibrium(Outcome& out) {
  const QuantumGame game = EwlPrisonersDilemma(5, 3, 1);
  const StrategyFamily family = StrategyFamily::ThreeParam();
  const SearchConfig cfg;
  const double player_max = 0.0;
  const ComplexMatrix defect = NamedOperator("UD")->matrix();
  std::mt19937_64 rng(20260501);
  std::uniform_real_distribution<double> theta(0, pi), phase(0, 2 * pi);
  int refuted = 0;
  int gain_ok = 0;
  int witness_ok = 0;
  double witness_worst = 0.0;
  double steering_worst = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const std::vector<ParamPoint> profile = {{theta(rng), phase(rng), phase(rng)},
                                             {theta(rng), phase(rng), phase(rng)}};
    const auto report = VerifyNash(game, profile, family, cfg);
    refuted += report.refuted;
    bool gains = true;
    bool witnesses = true;
    for (std::size_t i = 0; i < 2; ++i) {
      const double gap = player_max - report.payoffs[i];
      gains = gains && report.deviations[i].payoff - report.payoffs[i] >= 0.5 * gap;
      const ComplexMatrix opp = ParamUnitary(family, profile[1 - i]).matrix();
      std::vector<UnitaryOperator> play = {UnitaryOperator(opp), UnitaryOperator(opp)};
      play[i] = UnitaryOperator(defect * opp.adjoint());
      const double witness = ExpectedPayoffsQ(game, {play})[i];
      witness_worst = std::max(witness_worst, std::abs(witness - player_max));
      witnesses = witnesses && std::abs(witness - player_max) <= 1e-9;
      play[i] = EwlSteeringResponse(UnitaryOperator(opp));
      steering_worst =
          std::max(steering_worst, std::abs(ExpectedPayoffsQ(game, {play})[i] - player_max));
    }
    gain_ok += gains;
    witness_ok += witnesses;
  }
  out.detail << "refuted " << refuted << "/20, gain >= half gap " << gain_ok
             << "/20, U_D U_opp^dagger witness at maximum " << witness_ok
             << "/20 (worst shortfall " << witness_worst
             << "); diagnostic: U_D S conj(U_opp) S^dagger worst shortfall " << steering_worst;
  out.Require(refuted == 20, "every profile refuted");
  out.Require(gain_ok == 20, "gain >= 0.5 * gap");
  out.Require(witness_ok == 20, "witness within 1e-9 of maximum");
}

// Criterion 6 and 7 corpus.
std::vector<QuantumGame> RandomCorpus() {
  std::mt19937_64 rng(424242);
  std::uniform_int_distribution<int> n_players(2, 3), n_strategies(1, 3);
  std::uniform_real_distribution<double> value(-10, 10);
  std::vector<QuantumGame> games;
  while (games.size() < 50) {
    const int n = n_players(rng);
    std::vector<std::string> players;
    std::vector<std::vector<std::string>> sets;
    int plays = 1;
    for (int i = 0; i < n; ++i) {
      players.push_back("P" + std::to_string(i));
      std::vector<std::string> set;
      const int s = n_strategies(rng);
      for (int k = 0; k < s; ++k) set.push_back(std::string(1, static_cast<char>('a' + k)));
      sets.push_back(std::move(set));
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
    games.emplace_back(base, DensityMatrix(RandomDensity(plays, rng)),
                       MeasurementBasis::FromVectors(vectors, base.PlayLabels()));
  }
  return games;
}

// 6. Payoff operators commute.
void PayoffOperatorsCommute(Outcome& out, const std::vector<QuantumGame>& corpus) {
  double worst = 0.0;
  for (const QuantumGame& game : corpus) {
    const auto& ops = game.payoff_operators();
    for (std::size_t i = 0; i < ops.size(); ++i) {
      for (std::size_t j = i + 1; j < ops.size(); ++j) {
        worst = std::max(worst, CommutatorNorm(ops[i], ops[j]));
      }
    }
  }
  out.detail << corpus.size() << " games, max commutator norm " << worst;
  out.Require(worst <= 1e-9, "tolerance 1e-9");
}

// 7. Trace route and outcome-sum route agree.
void TwoPathAgreement(Outcome& out, const std::vector<QuantumGame>& corpus) {
  std::mt19937_64 rng(777);
  double worst = 0.0;
  for (const QuantumGame& game : corpus) {
    for (int k = 0; k < 100; ++k) {
      QuantumPlay play;
      for (std::size_t i = 0; i < game.num_players(); ++i) {
        play.locals.emplace_back(RandomUnitary(game.local_dim(i), rng));
      }
      worst = std::max(worst, MaxAbsDiff(ExpectedPayoffsQ(game, play),
                                         ExpectedPayoffsByOutcomes(game, play)));
    }
  }
  out.detail << corpus.size() * 100 << " plays, max discrepancy " << worst;
  out.Require(worst <= 1e-9, "tolerance 1e-9");
}

// 8. Battle of the sexes, classical and with the {I, X} operator set.
void BattleOfSexes(Outcome& out) {
  const double a = 3, b = 2, g = 1;
  const ClassicalGame classical = BattleOfSexesGame(a, b, g);
  // Indifference oracle straight from the payoff table: q makes the row
  // player indifferent, p makes the column player indifferent.
  const auto row = [&](std::size_t r, std::size_t c) { return classical.Payoff(0, {r, c}); };
  const auto col = [&](std::size_t r, std::size_t c) { return classical.Payoff(1, {r, c}); };
  const double q = (row(1, 1) - row(0, 1)) / (row(0, 0) - row(0, 1) - row(1, 0) + row(1, 1));
  const double p = (col(1, 1) - col(1, 0)) / (col(0, 0) - col(0, 1) - col(1, 0) + col(1, 1));
  const double closed_form = (a * b - g * g) / (a + b - 2 * g);
  bool mixed_found = false;
  double mixed_error = 1e300;
  for (const MixedProfile& e : MixedNashTwoPlayer(classical)) {
    if (e.distributions[0][0] <= 0 || e.distributions[0][0] >= 1) continue;
    mixed_found = true;
    const auto payoffs = ExpectedPayoffs(classical, e);
    mixed_error = std::max({MaxAbsDiff(payoffs, {5.0 / 3.0, 5.0 / 3.0}),
                            MaxAbsDiff(payoffs, {closed_form, closed_form}),
                            std::abs(e.distributions[0][0] - p),
                            std::abs(e.distributions[1][0] - q)});
  }
  out.Require(mixed_found && mixed_error <= 1e-9, "classical mixed NE 5/3 within 1e-9");

  const QuantumGame game = MarinattoWeberBattleOfSexes(a, b, g);
  const StrategyFamily set =
      StrategyFamily::FiniteSet({"I", "X"}, {*NamedOperator("I"), *NamedOperator("X")});
  const SearchConfig cfg;
  std::vector<ParetoEntry> entries;
  bool pure_ok = true;
  for (std::size_t k = 0; k < 2; ++k) {
    const double idx = static_cast<double>(k);
    const auto report = VerifyNash(game, {{idx}, {idx}}, set, cfg);
    pure_ok = pure_ok && report.certified &&
              MaxAbsDiff(report.payoffs, {(a + b) / 2, (a + b) / 2}) <= 1e-9;
    entries.push_back({set.labels()[k] + set.labels()[k], report.payoffs});
  }
  out.Require(pure_ok, "(I,I) and (X,X) pay (2.5, 2.5) and certify");
  const auto mixed = VerifyMixedNashFinite(game, {{0.5, 0.5}, {0.5, 0.5}}, set, cfg.epsilon);
  const bool mixed_ok =
      mixed.certified && MaxAbsDiff(mixed.payoffs, {(a + b + 2 * g) / 4, (a + b + 2 * g) / 4}) <= 1e-9;
  out.Require(mixed_ok, "mixed (1/2, 1/2) pays (1.75, 1.75) and certifies");
  entries.push_back({"mixed", mixed.payoffs});
  entries.push_back({"IX", ExpectedPayoffsQ(game, {{set.operators()[0], set.operators()[1]}})});
  entries.push_back({"XI", ExpectedPayoffsQ(game, {{set.operators()[1], set.operators()[0]}})});
  const ParetoReport pareto = BuildParetoReport(entries);
  const bool pareto_ok = pareto.optimal == std::vector<std::size_t>{0, 1};
  out.Require(pareto_ok, "Pareto-optimal set {II, XX}");
  out.detail << "classical mixed payoff error " << mixed_error << ", pure quantum "
             << (pure_ok ? "ok" : "bad") << ", mixed quantum " << mixed.payoffs[0]
             << " gain " << mixed.max_unilateral_gain << ", Pareto optimal {";
  for (std::size_t k = 0; k < pareto.optimal.size(); ++k) {
    out.detail << (k ? ", " : "") << entries[pareto.optimal[k]].label;
  }
  out.detail << "}";
}

// 9. Seeded sampling of each catalog game's equilibrium state.
void SamplingConsistency(Outcome& out) {
  struct Case {
    std::string name;
    DensityMatrix state;
    MeasurementBasis basis;
  };
  std::vector<Case> cases;
  const QuantumGame pd = EwlPrisonersDilemma(5, 3, 1);
  cases.push_back({"prisoners_dilemma (U_Q, U_Q)",
                   FinalState(pd, {{*NamedOperator("UQ"), *NamedOperator("UQ")}}), pd.basis()});
  const QuantumGame bos = MarinattoWeberBattleOfSexes(3, 2, 1);
  const UnitaryMixture half = {{0.5, *NamedOperator("I")}, {0.5, *NamedOperator("X")}};
  cases.push_back({"battle_of_sexes (1/2, 1/2)", FinalState(bos, MixedQuantumPlay{{half, half}}),
                   bos.basis()});
  cases.push_back({"battle_of_sexes (I, I)",
                   FinalState(bos, {{*NamedOperator("I"), *NamedOperator("I")}}), bos.basis()});
  const SequentialQuantumGame penny = PennyFlipSequential();
  const UnitaryOperator h = *NamedOperator("UQstar");
  cases.push_back({"penny_flip after Q's first move", SequentialFinalState(
                                                          penny, {h, UnitaryOperator::Identity(2),
                                                                  UnitaryOperator::Identity(2)}),
                   penny.basis()});
  cases.push_back({"penny_flip final", SequentialFinalState(penny, {h, *penny.ClassicalMove("F"), h}),
                   penny.basis()});
  std::mt19937_64 rng(1234);
  const int samples = 100000;
  double worst = 0.0;
  for (const Case& c : cases) {
    const auto probs = OutcomeProbabilities(c.state.matrix(), c.basis);
    std::vector<int> counts(probs.size(), 0);
    for (int s = 0; s < samples; ++s) ++counts[SampleOutcomeIndex(c.state, c.basis, rng)];
    for (std::size_t k = 0; k < probs.size(); ++k) {
      worst = std::max(worst, std::abs(counts[k] / static_cast<double>(samples) - probs[k]));
    }
  }
  out.detail << cases.size() << " states x " << samples << " samples, max frequency error "
             << worst;
  out.Require(worst <= 0.01, "tolerance 0.01");
}

// 10. pure_nash against an independent brute-force deviation checker.
void PureNashOracle(Outcome& out) {
  std::mt19937_64 rng(10);
  std::uniform_int_distribution<int> n_players(2, 3), n_strategies(1, 3), value(-3, 3);
  int disagreements = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const int n = n_players(rng);
    std::vector<std::string> players;
    std::vector<std::vector<std::string>> sets;
    std::vector<int> sizes;
    int plays = 1;
    for (int i = 0; i < n; ++i) {
      players.push_back("P" + std::to_string(i));
      sizes.push_back(n_strategies(rng));
      std::vector<std::string> set;
      for (int k = 0; k < sizes.back(); ++k) set.push_back("s" + std::to_string(k));
      sets.push_back(set);
      plays *= sizes.back();
    }
    // Payoffs drawn per play in row-major order, last player fastest.
    std::vector<std::vector<double>> payoffs(static_cast<std::size_t>(n));
    for (auto& t : payoffs) {
      for (int k = 0; k < plays; ++k) t.push_back(value(rng));
    }
    const ClassicalGame game(players, sets, payoffs);
    auto flat = [&](const std::vector<int>& play) {
      int index = 0;
      for (int i = 0; i < n; ++i) index = index * sizes[i] + play[i];
      return index;
    };
    std::vector<Play> oracle;
    for (int code = 0; code < plays; ++code) {
      std::vector<int> play(n);
      int rest = code;
      for (int i = n - 1; i >= 0; --i) {
        play[i] = rest % sizes[i];
        rest /= sizes[i];
      }
      bool stable = true;
      for (int i = 0; i < n && stable; ++i) {
        for (int alt = 0; alt < sizes[i]; ++alt) {
          std::vector<int> dev = play;
          dev[i] = alt;
          if (payoffs[i][flat(dev)] > payoffs[i][flat(play)]) stable = false;
        }
      }
      if (stable) oracle.emplace_back(play.begin(), play.end());
    }
    if (PureNash(game) != oracle) ++disagreements;
  }
  out.detail << "200 games, " << disagreements << " disagreements";
  out.Require(disagreements == 0, "zero disagreements");
}

}  // namespace
}  // namespace qgame

int main() {
  using Check = std::function<void(qgame::Outcome&)>;
  const std::vector<qgame::QuantumGame> corpus = qgame::RandomCorpus();
  const std::vector<std::pair<std::string, Check>> criteria = {
      {"sequential always-win", qgame::SequentialAlwaysWins},
      {"penny flip classical solutions", qgame::PennyFlipClassical},
      {"one-parameter classical reduction", qgame::OneParameterReduction},
      {"two-parameter equilibrium", qgame::TwoParameterEquilibrium},
      {"three-parameter profiles refuted", qgame::ThreeParameterNoEquilibrium},
      {"payoff operators commute",
       [&](qgame::Outcome& o) { qgame::PayoffOperatorsCommute(o, corpus); }},
      {"trace and outcome payoffs agree",
       [&](qgame::Outcome& o) { qgame::TwoPathAgreement(o, corpus); }},
      {"battle of the sexes", qgame::BattleOfSexes},
      {"sampling consistency", qgame::SamplingConsistency},
      {"pure NE oracle equivalence", qgame::PureNashOracle},
  };
  int failed = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    qgame::Outcome outcome;
    const auto start = std::chrono::steady_clock::now();
    try {
      criteria[k].second(outcome);
    } catch (const std::exception& e) {
      outcome.Require(false, std::string("exception: ") + e.what());
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    failed += !outcome.passed;
    std::printf("criterion %2zu %s  %s: %s (%.2f s)\n", k + 1, outcome.passed ? "PASS" : "FAIL",
                criteria[k].first.c_str(), outcome.detail.str().c_str(), seconds);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed,
              criteria.size());
  return failed == 0 ? 0 : 1;
}
