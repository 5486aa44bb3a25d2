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

#ifndef QGAME_CLASSICAL_GAME_H_
#define QGAME_CLASSICAL_GAME_H_

// Finite n-player normal-form games.
//
// Payoffs are stored as one dense tensor per player. Plays are flattened with
// player 0 as the most significant index, matching the tensor-product order
// used for the quantum versions of a game.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "qgame/quantum_core.h"

namespace qgame {

// One strategy index per player.
using Play = std::vector<std::size_t>;

// Per-player probability vectors over their strategy sets.
struct MixedProfile {
  std::vector<std::vector<double>> distributions;
};

class ClassicalGame {
 public:
  // `payoffs[i]` holds player i's payoffs for every play in flattened order.
  ClassicalGame(std::vector<std::string> players,
                std::vector<std::vector<std::string>> strategy_sets,
                std::vector<std::vector<double>> payoffs);

  std::size_t num_players() const { return players_.size(); }
  const std::vector<std::string>& players() const { return players_; }
  const std::vector<std::vector<std::string>>& strategy_sets() const {
    return strategy_sets_;
  }
  std::size_t num_strategies(std::size_t player) const {
    return strategy_sets_.at(player).size();
  }
  std::size_t num_plays() const { return num_plays_; }
  // Distance in flattened play order between adjacent strategies of `player`.
  std::size_t stride(std::size_t player) const { return strides_.at(player); }
  const std::vector<std::vector<double>>& payoff_tensors() const { return payoffs_; }

  std::size_t PlayIndex(const Play& play) const;
  Play PlayAt(std::size_t index) const;

  double Payoff(std::size_t player, const Play& play) const;
  double PayoffAt(std::size_t player, std::size_t play_index) const {
    return payoffs_[player][play_index];
  }
  std::vector<double> Payoffs(const Play& play) const;

  // Strategy labels concatenated ("CD") when every label is a single
  // character, comma-joined ("N,NF") otherwise.
  std::string PlayLabel(const Play& play) const;
  std::vector<std::string> PlayLabels() const;
  // Inverse of PlayLabel. Throws ShapeError for unknown labels.
  Play ParsePlayLabel(const std::string& label) const;

  std::optional<std::size_t> StrategyIndex(std::size_t player,
                                           const std::string& label) const;

 private:
  std::vector<std::string> players_;
  std::vector<std::vector<std::string>> strategy_sets_;
  std::vector<std::vector<double>> payoffs_;
  std::vector<std::size_t> strides_;
  std::size_t num_plays_ = 0;
};

// Throws ShapeError if `profile` does not match the game or an entry is not
// a probability distribution within `tol`.
void ValidateProfile(const ClassicalGame& game, const MixedProfile& profile,
                     double tol = kDefaultTol);

// Degenerate distributions at `play`.
MixedProfile PureProfile(const ClassicalGame& game, const Play& play);

// Expected payoff of every player under the product distribution.
std::vector<double> ExpectedPayoffs(const ClassicalGame& game,
                                    const MixedProfile& profile);

// Index of a dominant strategy for each player, if any. Weak dominance uses
// >= against every alternative; ties go to the lowest index.
std::vector<std::optional<std::size_t>> DominantStrategies(
    const ClassicalGame& game, bool strict = false, double tol = kDefaultTol);

// All pure equilibria in lexicographic play order.
std::vector<Play> PureNash(const ClassicalGame& game, bool strict = false,
                           double tol = kDefaultTol);

// Largest payoff improvement any single player gets from a pure deviation.
double MaxUnilateralGain(const ClassicalGame& game, const MixedProfile& profile);

// Support enumeration for two-player games with at most four strategies per
// player. Each candidate is the minimum-norm solution of the indifference
// system on its support pair and is kept only if it passes a best-response
// check. Results are deduplicated and returned in enumeration order.
std::vector<MixedProfile> MixedNashTwoPlayer(const ClassicalGame& game,
                                             double tol = kDefaultTol);

enum class ParetoRelation { kADominates, kBDominates, kEqual, kIncomparable };

const char* ToString(ParetoRelation relation);

ParetoRelation CompareParetoPayoffs(const std::vector<double>& a,
                                    const std::vector<double>& b,
                                    double tol = kDefaultTol);

// Plays whose payoff vector no other play strictly dominates.
std::vector<Play> ParetoOptimalPlays(const ClassicalGame& game,
                                     double tol = kDefaultTol);

}  // namespace qgame

#endif  // QGAME_CLASSICAL_GAME_H_
