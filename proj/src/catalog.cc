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

#include "qgame/catalog.h"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "qgame/errors.h"

namespace qgame {
namespace {

using std::numbers::pi;

double Param(const Parameters& params, const std::string& key) { return params.at(key); }

Parameters MergeParameters(std::string_view name, Parameters defaults,
                           const Parameters& overrides) {
  for (const auto& [key, value] : overrides) {
    const auto it = defaults.find(key);
    if (it == defaults.end()) {
      throw ParameterError("catalog entry '" + std::string(name) +
                           "' has no parameter '" + key + "'");
    }
    if (!std::isfinite(value)) throw ParameterError("parameter '" + key + "' is not finite");
    it->second = value;
  }
  return defaults;
}

std::string Format(double v) {
  std::ostringstream out;
  out.precision(12);
  out << v;
  return out.str();
}

DocumentedSolution Solution(std::string label, SolutionKind kind,
                            std::vector<std::vector<double>> profile,
                            std::vector<double> payoffs, std::string formula,
                            Expectation expectation,
                            FamilyKind family = FamilyKind::kTwoParam) {
  DocumentedSolution s;
  s.label = std::move(label);
  s.kind = kind;
  s.family = family;
  s.profile = std::move(profile);
  s.expected_payoffs = std::move(payoffs);
  s.formula = std::move(formula);
  s.expectation = expectation;
  return s;
}

CatalogEntry MakePrisonersDilemma(const Parameters& params) {
  const double a = Param(params, "alpha");
  const double b = Param(params, "beta");
  const double g = Param(params, "gamma");
  if (!(g < b && b < a)) {
    throw ParameterError("prisoners_dilemma needs gamma < beta < alpha, got (" +
                         Format(a) + ", " + Format(b) + ", " + Format(g) + ")");
  }
  CatalogEntry entry{"prisoners_dilemma", params, PrisonersDilemmaGame(a, b, g),
                     EwlPrisonersDilemma(a, b, g), std::nullopt, std::nullopt, {}, {}};
  const auto pure = SolutionKind::kClassicalPure;
  const auto quantum = SolutionKind::kQuantumParams;
  entry.solutions = {
      Solution("classical dominant (D,D)", pure, {{1}, {1}}, {-b, -b}, "(-beta, -beta)",
               Expectation::kNash),
      Solution("classical Pareto optimum (C,C)", pure, {{0}, {0}}, {-g, -g},
               "(-gamma, -gamma)", Expectation::kNotNash),
      Solution("one_param (U_D, U_D)", quantum, {{pi}, {pi}}, {-b, -b}, "(-beta, -beta)",
               Expectation::kNash, FamilyKind::kOneParam),
      Solution("two_param (U_D, U_D)", quantum, {{pi, 0}, {pi, 0}}, {-b, -b},
               "(-beta, -beta)", Expectation::kNotNash),
      Solution("two_param (U_Q, U_D)", quantum, {{0, pi / 2}, {pi, 0}}, {0, -a},
               "(0, -alpha)", Expectation::kNotNash),
      Solution("two_param (U_Q, U_Q)", quantum, {{0, pi / 2}, {0, pi / 2}}, {-g, -g},
               "(-gamma, -gamma)", Expectation::kNash),
      Solution("three_param (U_Q, U_Q)", quantum, {{0, pi / 2, 0}, {0, pi / 2, 0}},
               {-g, -g}, "(-gamma, -gamma)", Expectation::kNotNash,
               FamilyKind::kThreeParam),
  };
  entry.notes = {
      "EWL initial state (|00> + i|11>)/sqrt(2), eta-basis measurement.",
      "Quantum payoffs are computed from measurement probabilities; the printed "
      "two-parameter closed form pairs beta and gamma with the wrong outcomes.",
      "Three-parameter counter-strategy: the operator steering to the responder's best "
      "outcome is U_D S conj(U) S^dagger with S = diag(1, i); U_D U^dagger does so "
      "only when lambda = -pi/4 (mod pi).",
  };
  return entry;
}

CatalogEntry MakeBattleOfSexes(const Parameters& params) {
  const double a = Param(params, "alpha");
  const double b = Param(params, "beta");
  const double g = Param(params, "gamma");
  if (!(a > b && b > g)) {
    throw ParameterError("battle_of_sexes needs alpha > beta > gamma, got (" +
                         Format(a) + ", " + Format(b) + ", " + Format(g) + ")");
  }
  CatalogEntry entry{"battle_of_sexes", params, BattleOfSexesGame(a, b, g),
                     MarinattoWeberBattleOfSexes(a, b, g), std::nullopt,
                     StrategyFamily::FiniteSet({"I", "X"}, {*NamedOperator("I"),
                                                            *NamedOperator("X")}),
                     {}, {}};
  const double denom = a + b - 2 * g;
  const double p_a = (a - g) / denom;
  const double q_b = (b - g) / denom;
  const double mixed_classical = (a * b - g * g) / denom;
  const double pure_quantum = (a + b) / 2;
  const double mixed_quantum = (a + b + 2 * g) / 4;
  const auto pure = SolutionKind::kClassicalPure;
  const auto mixture = SolutionKind::kQuantumMixture;
  entry.solutions = {
      Solution("classical (O,O)", pure, {{0}, {0}}, {a, b}, "(alpha, beta)",
               Expectation::kNash),
      Solution("classical (T,T)", pure, {{1}, {1}}, {b, a}, "(beta, alpha)",
               Expectation::kNash),
      Solution("classical mixed NE", SolutionKind::kClassicalMixed,
               {{p_a, 1 - p_a}, {q_b, 1 - q_b}}, {mixed_classical, mixed_classical},
               "(alpha beta - gamma^2)/(alpha + beta - 2 gamma)", Expectation::kNash),
      Solution("quantum (I,I)", mixture, {{1, 0}, {1, 0}}, {pure_quantum, pure_quantum},
               "(alpha + beta)/2", Expectation::kNash),
      Solution("quantum (X,X)", mixture, {{0, 1}, {0, 1}}, {pure_quantum, pure_quantum},
               "(alpha + beta)/2", Expectation::kNash),
      Solution("quantum (I,X)", mixture, {{1, 0}, {0, 1}}, {g, g}, "(gamma, gamma)",
               Expectation::kNotNash),
      Solution("quantum mixed NE", mixture, {{0.5, 0.5}, {0.5, 0.5}},
               {mixed_quantum, mixed_quantum}, "(alpha + beta + 2 gamma)/4",
               Expectation::kNash),
  };
  entry.notes = {
      "Initial state Phi+, measured in the computational basis {OO, OT, TO, TT}; the "
      "Bell-basis assignment (Phi+, Psi+, Psi-, Phi-) gives (alpha, beta) at (I, I) "
      "instead of (alpha + beta)/2 and is available as basis \"bell\".",
      "Classical mixed NE probabilities follow from the indifference conditions: "
      "p_A(O) = (alpha - gamma)/(alpha + beta - 2 gamma), q_B(O) = (beta - gamma)/"
      "(alpha + beta - 2 gamma). A denominator of alpha + beta - gamma is "
      "inconsistent with the equilibrium payoff formula.",
      "Against p_A > 1/2 the payoff-maximising reply is p_B = 1 (and 0 for p_A < 1/2); "
      "the players coordinate. The equilibrium at (1/2, 1/2) is unaffected.",
  };
  return entry;
}

CatalogEntry MakePennyFlip() {
  CatalogEntry entry{"penny_flip", {}, PennyFlipGame(), std::nullopt,
                     PennyFlipSequential(),
                     StrategyFamily::FiniteSet({"N", "F"}, {*NamedOperator("N"),
                                                            *NamedOperator("F")}),
                     {}, {}};
  entry.solutions.push_back(Solution("classical mixed NE", SolutionKind::kClassicalMixed,
                                     {{0.5, 0.5}, {0.25, 0.25, 0.25, 0.25}}, {0, 0},
                                     "(0, 0)", Expectation::kNash));
  const std::vector<std::pair<std::string, std::vector<std::string>>> sequences = {
      {"Q wins against F", {"UQstar", "F", "UQstar"}},
      {"Q wins against N", {"UQstar", "N", "UQstar"}},
      {"classical N, F, N", {"N", "F", "N"}},
  };
  for (const auto& [label, moves] : sequences) {
    const bool quantum = moves.front() == "UQstar";
    DocumentedSolution s = Solution(label, SolutionKind::kSequential, {},
                                    quantum ? std::vector<double>{1, -1}
                                            : std::vector<double>{-1, 1},
                                    quantum ? "(1, -1)" : "(-1, 1)", Expectation::kNone);
    s.moves = moves;
    entry.solutions.push_back(std::move(s));
  }
  entry.notes = {"Zero-sum: pi_Q = -pi_C for every play and every move sequence."};
  return entry;
}

UnitaryOperator ResolveMove(const SequentialQuantumGame& game, const std::string& name) {
  if (auto move = game.ClassicalMove(name)) return *move;
  if (auto op = NamedOperator(name)) return *op;
  throw ParameterError("unknown move '" + name + "'");
}

double MaxError(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
  double e = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) e = std::max(e, std::abs(a[k] - b[k]));
  return e;
}

}  // namespace

const char* ToString(SolutionKind kind) {
  switch (kind) {
    case SolutionKind::kClassicalPure:
      return "classical_pure";
    case SolutionKind::kClassicalMixed:
      return "classical_mixed";
    case SolutionKind::kQuantumParams:
      return "quantum_params";
    case SolutionKind::kQuantumMixture:
      return "quantum_mixture";
    case SolutionKind::kSequential:
      return "sequential";
  }
  return "unknown";
}

std::vector<std::string> CatalogNames() {
  return {"penny_flip", "prisoners_dilemma", "battle_of_sexes"};
}

ClassicalGame PrisonersDilemmaGame(double alpha, double beta, double gamma) {
  return ClassicalGame({"A", "B"}, {{"C", "D"}, {"C", "D"}},
                       {{-gamma, -alpha, 0.0, -beta}, {-gamma, 0.0, -alpha, -beta}});
}

ClassicalGame BattleOfSexesGame(double alpha, double beta, double gamma) {
  return ClassicalGame({"A", "B"}, {{"O", "T"}, {"O", "T"}},
                       {{alpha, gamma, gamma, beta}, {beta, gamma, gamma, alpha}});
}

ClassicalGame PennyFlipGame() {
  // C moves second; Q moves first and third. C wins (+1) if the coin ends on
  // tails, i.e. after an odd number of flips.
  std::vector<double> payoff_c;
  std::vector<double> payoff_q;
  for (int c = 0; c < 2; ++c) {
    for (int q = 0; q < 4; ++q) {
      const int flips = c + (q >> 1) + (q & 1);
      const double pc = flips % 2 == 1 ? 1.0 : -1.0;
      payoff_c.push_back(pc);
      payoff_q.push_back(-pc);
    }
  }
  return ClassicalGame({"C", "Q"}, {{"N", "F"}, {"NN", "NF", "FN", "FF"}},
                       {payoff_c, payoff_q});
}

QuantumGame EwlPrisonersDilemma(double alpha, double beta, double gamma) {
  ClassicalGame base = PrisonersDilemmaGame(alpha, beta, gamma);
  MeasurementBasis basis = EwlEtaBasis(base);
  return QuantumGame(std::move(base), DensityMatrix::FromPure(EwlEntangledState()),
                     std::move(basis));
}

QuantumGame MarinattoWeberBattleOfSexes(double alpha, double beta, double gamma,
                                        bool bell_basis) {
  ClassicalGame base = BattleOfSexesGame(alpha, beta, gamma);
  MeasurementBasis basis = bell_basis ? BellBasis(base) : ComputationalPlayBasis(base);
  return QuantumGame(std::move(base), DensityMatrix::FromPure(PhiPlusState()),
                     std::move(basis));
}

SequentialQuantumGame PennyFlipSequential() {
  return SequentialQuantumGame(
      {"Q", "C"}, {"H", "T"}, DensityMatrix::BasisState(2, 0), {0, 1, 0},
      {{"N", UnitaryOperator(PermutationMatrix({0, 1}))},
       {"F", UnitaryOperator(PermutationMatrix({1, 0}))}},
      {{1.0, -1.0}, {-1.0, 1.0}});
}

CatalogEntry LoadCatalogEntry(std::string_view name, const Parameters& overrides,
                              bool verify) {
  CatalogEntry entry = [&] {
    if (name == "penny_flip") return MakePennyFlip();
    const Parameters defaults = name == "prisoners_dilemma"
                                    ? Parameters{{"alpha", 5}, {"beta", 3}, {"gamma", 1}}
                                    : Parameters{{"alpha", 3}, {"beta", 2}, {"gamma", 1}};
    if (name == "prisoners_dilemma") {
      return MakePrisonersDilemma(MergeParameters(name, defaults, overrides));
    }
    if (name == "battle_of_sexes") {
      return MakeBattleOfSexes(MergeParameters(name, defaults, overrides));
    }
    throw ParameterError("unknown catalog entry '" + std::string(name) + "'");
  }();
  if (name == "penny_flip") MergeParameters(name, {}, overrides);
  if (verify) {
    for (const SolutionCheck& check : VerifyDocumentedSolutions(entry)) {
      if (!check.passed) {
        throw InvariantError("documented solution '" + check.label + "' of " +
                             entry.name + " failed to re-verify");
      }
    }
  }
  return entry;
}

std::vector<SolutionCheck> VerifyDocumentedSolutions(const CatalogEntry& entry,
                                                     const SearchConfig& cfg) {
  std::vector<SolutionCheck> checks;
  for (const DocumentedSolution& s : entry.solutions) {
    SolutionCheck check;
    check.label = s.label;
    check.expectation = s.expectation;
    switch (s.kind) {
      case SolutionKind::kClassicalPure: {
        Play play;
        for (const auto& v : s.profile) play.push_back(static_cast<std::size_t>(v.at(0)));
        check.payoffs = entry.classical.Payoffs(play);
        const MixedProfile profile = PureProfile(entry.classical, play);
        check.max_unilateral_gain = MaxUnilateralGain(entry.classical, profile);
        break;
      }
      case SolutionKind::kClassicalMixed: {
        const MixedProfile profile{s.profile};
        check.payoffs = ExpectedPayoffs(entry.classical, profile);
        check.max_unilateral_gain = MaxUnilateralGain(entry.classical, profile);
        break;
      }
      case SolutionKind::kQuantumParams: {
        const EquilibriumReport report = VerifyNash(
            *entry.quantum, s.profile, StrategyFamily::OfKind(s.family), cfg);
        check.payoffs = report.payoffs;
        check.max_unilateral_gain = report.max_unilateral_gain;
        break;
      }
      case SolutionKind::kQuantumMixture: {
        const EquilibriumReport report = VerifyMixedNashFinite(
            *entry.quantum, s.profile, *entry.operator_set, cfg.epsilon);
        check.payoffs = report.payoffs;
        check.max_unilateral_gain = report.max_unilateral_gain;
        break;
      }
      case SolutionKind::kSequential: {
        std::vector<UnitaryOperator> moves;
        for (const auto& m : s.moves) moves.push_back(ResolveMove(*entry.sequential, m));
        check.payoffs = PlaySequential(*entry.sequential, moves);
        break;
      }
    }
    check.payoff_error = MaxError(check.payoffs, s.expected_payoffs);
    bool property_ok = true;
    if (check.max_unilateral_gain) {
      if (s.expectation == Expectation::kNash) {
        property_ok = *check.max_unilateral_gain <= cfg.epsilon;
      }
      if (s.expectation == Expectation::kNotNash) {
        property_ok = *check.max_unilateral_gain > 10 * cfg.epsilon;
      }
    } else {
      property_ok = s.expectation == Expectation::kNone;
    }
    check.passed = check.payoff_error <= 1e-9 && property_ok;
    checks.push_back(std::move(check));
  }
  return checks;
}

}  // namespace qgame
