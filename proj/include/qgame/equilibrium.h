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

#ifndef QGAME_EQUILIBRIUM_H_
#define QGAME_EQUILIBRIUM_H_

// Best-response search and Nash certification for quantum games.
//
// Continuous families are searched by an exhaustive grid scan followed by
// coordinatewise golden-section refinement around the grid winner. Finite
// operator sets are scanned exactly; against fixed opponent mixtures the
// payoff is linear in the player's own mixture, so a pure operator is always
// among the best responses.

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "qgame/classical_game.h"
#include "qgame/quantumizer.h"
#include "qgame/strategy_space.h"

namespace qgame {

struct SearchConfig {
  int grid_resolution = 64;
  int refinement_iterations = 40;
  // Certification threshold on the largest unilateral gain.
  double epsilon = 1e-6;
  std::uint64_t seed = 0;
};

// Throws RangeError unless epsilon > 0, grid_resolution >= 2 and
// refinement_iterations >= 0.
void ValidateSearchConfig(const SearchConfig& cfg);

struct BestResponse {
  ParamPoint point;
  double payoff = 0.0;
};

// Best response of `player` within `family` while every other player keeps
// their operator in `profile` (the player's own entry is ignored).
// Deterministic: ties on the grid go to the lexicographically lowest point and
// refinement only moves on strict improvement.
BestResponse FindBestResponse(const QuantumGame& game, std::size_t player,
                              const std::vector<UnitaryOperator>& profile,
                              const StrategyFamily& family, const SearchConfig& cfg);

enum class ProfileKind { kParams, kMixture };

struct EquilibriumReport {
  ProfileKind kind = ProfileKind::kParams;
  // Parameter points, or probability vectors over a finite set.
  std::vector<std::vector<double>> profile;
  std::vector<double> payoffs;
  // Best unilateral deviation found for each player.
  std::vector<BestResponse> deviations;
  // Largest improvement any single player can make; never negative.
  double max_unilateral_gain = 0.0;
  // max_unilateral_gain <= epsilon.
  bool certified = false;
  // max_unilateral_gain > 10 * epsilon.
  bool refuted = false;
  // Relation of `payoffs` to each supplied reference payoff vector.
  std::vector<ParetoRelation> pareto_flags;
};

EquilibriumReport VerifyNash(const QuantumGame& game,
                             const std::vector<ParamPoint>& profile,
                             const StrategyFamily& family, const SearchConfig& cfg,
                             const std::vector<std::vector<double>>& reference = {});

// Payoffs when every player mixes over `family`'s operators with the given
// probability vectors.
std::vector<double> MixedFinitePayoffs(const QuantumGame& game,
                                       const std::vector<std::vector<double>>& mixtures,
                                       const StrategyFamily& family);

// Best mixture for `player` against the others' mixtures (the player's own
// entry in `mixtures` is ignored). Ties return the uniform distribution over
// the optimal operators.
std::vector<double> BestResponseMixedFinite(
    const QuantumGame& game, std::size_t player,
    const std::vector<std::vector<double>>& mixtures, const StrategyFamily& family,
    double tol = kDefaultTol);

EquilibriumReport VerifyMixedNashFinite(
    const QuantumGame& game, const std::vector<std::vector<double>>& mixtures,
    const StrategyFamily& family, double epsilon,
    const std::vector<std::vector<double>>& reference = {});

struct ParetoEntry {
  std::string label;
  std::vector<double> payoffs;
};

struct ParetoReport {
  // relations[i][j] compares entry i (as "a") with entry j (as "b").
  std::vector<std::vector<ParetoRelation>> relations;
  // Indices of entries no other entry strictly dominates.
  std::vector<std::size_t> optimal;
};

ParetoReport BuildParetoReport(const std::vector<ParetoEntry>& entries,
                               double tol = kDefaultTol);

// For the entangled state (|00> + i|11>)/sqrt(2): the local operator that,
// played against `opponent`, leaves the pair in the responder's best outcome
// of the eta basis (D against the opponent's C). Equal to
// U_D S conj(opponent) S^dagger with S = diag(1, i).
UnitaryOperator EwlSteeringResponse(const UnitaryOperator& opponent);

}  // namespace qgame

#endif  // QGAME_EQUILIBRIUM_H_
