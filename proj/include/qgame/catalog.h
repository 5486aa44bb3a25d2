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

#ifndef QGAME_CATALOG_H_
#define QGAME_CATALOG_H_

// Canonical games with their known classical and quantum solutions:
//
//   penny_flip         Meyer's coin game; classical table plus the sequential
//                      quantum version where Q plays Hadamard twice.
//   prisoners_dilemma  payoffs -gamma (CC), -alpha/0 (CD/DC), -beta (DD),
//                      gamma < beta < alpha; EWL quantumization.
//   battle_of_sexes    alpha/beta on the diagonal, gamma off it,
//                      alpha > beta > gamma; Marinatto-Weber quantumization
//                      over the operator set {I, X}.
//
// Documented payoffs are computed from the parameters when the entry is
// loaded, then re-verified against the engine.

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qgame/classical_game.h"
#include "qgame/equilibrium.h"
#include "qgame/quantumizer.h"
#include "qgame/strategy_space.h"

namespace qgame {

using Parameters = std::map<std::string, double>;

enum class SolutionKind {
  kClassicalPure,    // profile: one strategy index per player
  kClassicalMixed,   // profile: probability vectors
  kQuantumParams,    // profile: parameter points in `family`
  kQuantumMixture,   // profile: probability vectors over the finite operator set
  kSequential,       // moves: operator names in schedule order
};

const char* ToString(SolutionKind kind);

enum class Expectation { kNash, kNotNash, kNone };

struct DocumentedSolution {
  std::string label;
  SolutionKind kind = SolutionKind::kClassicalPure;
  FamilyKind family = FamilyKind::kTwoParam;
  std::vector<std::vector<double>> profile;
  std::vector<std::string> moves;
  std::vector<double> expected_payoffs;
  // Closed form the expected payoffs were computed from.
  std::string formula;
  Expectation expectation = Expectation::kNone;
};

struct CatalogEntry {
  std::string name;
  Parameters parameters;
  ClassicalGame classical;
  std::optional<QuantumGame> quantum;
  std::optional<SequentialQuantumGame> sequential;
  // Operator set for finite-set quantum plays (BoS: {I, X}; penny: {N, F}).
  std::optional<StrategyFamily> operator_set;
  std::vector<DocumentedSolution> solutions;
  std::vector<std::string> notes;
};

struct SolutionCheck {
  std::string label;
  std::vector<double> payoffs;
  double payoff_error = 0.0;
  Expectation expectation = Expectation::kNone;
  // Largest unilateral gain, when an equilibrium property was checked.
  std::optional<double> max_unilateral_gain;
  bool passed = false;
};

std::vector<std::string> CatalogNames();

// Default parameters: PD (5, 3, 1), BoS (3, 2, 1). Throws ParameterError for
// unknown names or parameters and for ordering violations; throws
// InvariantError if a documented solution fails to re-verify.
CatalogEntry LoadCatalogEntry(std::string_view name, const Parameters& overrides = {},
                              bool verify = true);

std::vector<SolutionCheck> VerifyDocumentedSolutions(const CatalogEntry& entry,
                                                     const SearchConfig& cfg = {});

ClassicalGame PrisonersDilemmaGame(double alpha, double beta, double gamma);
ClassicalGame BattleOfSexesGame(double alpha, double beta, double gamma);
// Players (C, Q); C picks N/F, Q picks NN, NF, FN, FF.
ClassicalGame PennyFlipGame();

QuantumGame EwlPrisonersDilemma(double alpha, double beta, double gamma);
// Phi+ initial state measured in the computational basis by default, or in
// the Bell basis (Phi+, Psi+, Psi-, Phi-) when `bell_basis` is set.
QuantumGame MarinattoWeberBattleOfSexes(double alpha, double beta, double gamma,
                                        bool bell_basis = false);
// Players (Q, C), schedule Q, C, Q, coin starting in H.
SequentialQuantumGame PennyFlipSequential();

}  // namespace qgame

#endif  // QGAME_CATALOG_H_
