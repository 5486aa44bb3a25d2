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

#include "qgame/classical_game.h"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>

#include "qgame/errors.h"

namespace qgame {

ClassicalGame::ClassicalGame(std::vector<std::string> players,
                             std::vector<std::vector<std::string>> strategy_sets,
                             std::vector<std::vector<double>> payoffs)
    : players_(std::move(players)),
      strategy_sets_(std::move(strategy_sets)),
      payoffs_(std::move(payoffs)) {
  if (players_.size() < 2) throw ShapeError("a game needs at least two players");
  if (strategy_sets_.size() != players_.size()) {
    throw ShapeError("need one strategy set per player");
  }
  if (payoffs_.size() != players_.size()) {
    throw ShapeError("need one payoff tensor per player");
  }
  num_plays_ = 1;
  for (const auto& set : strategy_sets_) {
    if (set.empty()) throw ShapeError("empty strategy set");
    num_plays_ *= set.size();
  }
  strides_.assign(players_.size(), 1);
  for (std::size_t k = players_.size() - 1; k > 0; --k) {
    strides_[k - 1] = strides_[k] * strategy_sets_[k].size();
  }
  for (std::size_t i = 0; i < payoffs_.size(); ++i) {
    if (payoffs_[i].size() != num_plays_) {
      std::ostringstream msg;
      msg << "payoff tensor of player " << i << " has " << payoffs_[i].size()
          << " entries, expected " << num_plays_;
      throw ShapeError(msg.str());
    }
    for (double v : payoffs_[i]) {
      if (!std::isfinite(v)) {
        throw InvariantError("payoff of player " + std::to_string(i) + " is not finite");
      }
    }
  }
}

std::size_t ClassicalGame::PlayIndex(const Play& play) const {
  if (play.size() != players_.size()) throw ShapeError("play has wrong length");
  std::size_t index = 0;
  for (std::size_t k = 0; k < play.size(); ++k) {
    if (play[k] >= strategy_sets_[k].size()) {
      throw ShapeError("strategy index out of range for player " + std::to_string(k));
    }
    index += play[k] * strides_[k];
  }
  return index;
}

Play ClassicalGame::PlayAt(std::size_t index) const {
  if (index >= num_plays_) throw ShapeError("play index out of range");
  Play play(players_.size());
  for (std::size_t k = 0; k < players_.size(); ++k) {
    play[k] = index / strides_[k];
    index %= strides_[k];
  }
  return play;
}

double ClassicalGame::Payoff(std::size_t player, const Play& play) const {
  return payoffs_.at(player)[PlayIndex(play)];
}

std::vector<double> ClassicalGame::Payoffs(const Play& play) const {
  const std::size_t index = PlayIndex(play);
  std::vector<double> out;
  out.reserve(players_.size());
  for (const auto& tensor : payoffs_) out.push_back(tensor[index]);
  return out;
}

std::string ClassicalGame::PlayLabel(const Play& play) const {
  bool single_chars = true;
  for (const auto& set : strategy_sets_) {
    for (const auto& label : set) single_chars = single_chars && label.size() == 1;
  }
  std::string out;
  for (std::size_t k = 0; k < play.size(); ++k) {
    if (!single_chars && k > 0) out += ',';
    out += strategy_sets_.at(k).at(play[k]);
  }
  return out;
}

std::vector<std::string> ClassicalGame::PlayLabels() const {
  std::vector<std::string> labels;
  labels.reserve(num_plays_);
  for (std::size_t i = 0; i < num_plays_; ++i) labels.push_back(PlayLabel(PlayAt(i)));
  return labels;
}

Play ClassicalGame::ParsePlayLabel(const std::string& label) const {
  for (std::size_t i = 0; i < num_plays_; ++i) {
    Play play = PlayAt(i);
    if (PlayLabel(play) == label) return play;
  }
  throw ShapeError("unknown play label '" + label + "'");
}

std::optional<std::size_t> ClassicalGame::StrategyIndex(std::size_t player,
                                                        const std::string& label) const {
  const auto& set = strategy_sets_.at(player);
  const auto it = std::find(set.begin(), set.end(), label);
  if (it == set.end()) return std::nullopt;
  return static_cast<std::size_t>(it - set.begin());
}

// ---------------------------------------------------------------------------

void ValidateProfile(const ClassicalGame& game, const MixedProfile& profile,
                     double tol) {
  if (profile.distributions.size() != game.num_players()) {
    throw ShapeError("profile has wrong number of players");
  }
  for (std::size_t i = 0; i < game.num_players(); ++i) {
    const auto& dist = profile.distributions[i];
    if (dist.size() != game.num_strategies(i)) {
      throw ShapeError("distribution of player " + std::to_string(i) +
                       " has wrong length");
    }
    double sum = 0.0;
    for (double p : dist) {
      if (!(p >= -tol)) {
        throw ShapeError("distribution of player " + std::to_string(i) +
                         " has a negative entry");
      }
      sum += p;
    }
    if (std::abs(sum - 1.0) > tol) {
      throw ShapeError("distribution of player " + std::to_string(i) +
                       " does not sum to 1");
    }
  }
}

MixedProfile PureProfile(const ClassicalGame& game, const Play& play) {
  game.PlayIndex(play);
  MixedProfile profile;
  for (std::size_t i = 0; i < game.num_players(); ++i) {
    std::vector<double> dist(game.num_strategies(i), 0.0);
    dist[play[i]] = 1.0;
    profile.distributions.push_back(std::move(dist));
  }
  return profile;
}

std::vector<double> ExpectedPayoffs(const ClassicalGame& game,
                                    const MixedProfile& profile) {
  ValidateProfile(game, profile);
  std::vector<double> totals(game.num_players(), 0.0);
  for (std::size_t index = 0; index < game.num_plays(); ++index) {
    const Play play = game.PlayAt(index);
    double weight = 1.0;
    for (std::size_t k = 0; k < play.size() && weight != 0.0; ++k) {
      weight *= profile.distributions[k][play[k]];
    }
    if (weight == 0.0) continue;
    for (std::size_t i = 0; i < totals.size(); ++i) {
      totals[i] += weight * game.PayoffAt(i, index);
    }
  }
  return totals;
}

namespace {

// Expected payoff of `player` switching to pure `strategy` while everyone else
// keeps their distribution.
double DeviationPayoff(const ClassicalGame& game, const MixedProfile& profile,
                       std::size_t player, std::size_t strategy) {
  MixedProfile deviated = profile;
  std::fill(deviated.distributions[player].begin(),
            deviated.distributions[player].end(), 0.0);
  deviated.distributions[player][strategy] = 1.0;
  return ExpectedPayoffs(game, deviated)[player];
}

// Rows of a two-player payoff tensor as a dense matrix.
Eigen::MatrixXd AsMatrix(const ClassicalGame& game, std::size_t player) {
  const auto rows = static_cast<Eigen::Index>(game.num_strategies(0));
  const auto cols = static_cast<Eigen::Index>(game.num_strategies(1));
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    for (Eigen::Index c = 0; c < cols; ++c) {
      m(r, c) = game.PayoffAt(player, static_cast<std::size_t>(r * cols + c));
    }
  }
  return m;
}

std::vector<Eigen::Index> MaskIndices(unsigned mask, Eigen::Index n) {
  std::vector<Eigen::Index> out;
  for (Eigen::Index k = 0; k < n; ++k) {
    if (mask & (1u << k)) out.push_back(k);
  }
  return out;
}

// Minimum-norm distribution x over `support` (of `n` entries) making the
// opponent indifferent across `rivals`: payoff(r, x) equal for all r. The
// opponent's payoffs are payoff_of(r, s). Returns nullopt if inconsistent or
// negative.
template <typename PayoffOf>
std::optional<std::vector<double>> IndifferentMix(
    const std::vector<Eigen::Index>& support, const std::vector<Eigen::Index>& rivals,
    Eigen::Index n, PayoffOf payoff_of, double tol) {
  const auto unknowns = static_cast<Eigen::Index>(support.size());
  const auto equations = static_cast<Eigen::Index>(rivals.size());
  Eigen::MatrixXd system(equations, unknowns);
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(equations);
  for (Eigen::Index e = 1; e < equations; ++e) {
    for (Eigen::Index u = 0; u < unknowns; ++u) {
      system(e - 1, u) = payoff_of(rivals[e], support[u]) - payoff_of(rivals[0], support[u]);
    }
  }
  system.row(equations - 1).setOnes();
  rhs(equations - 1) = 1.0;
  const Eigen::VectorXd x = system.completeOrthogonalDecomposition().solve(rhs);
  if ((system * x - rhs).cwiseAbs().maxCoeff() > tol) return std::nullopt;
  std::vector<double> dist(static_cast<std::size_t>(n), 0.0);
  double sum = 0.0;
  for (Eigen::Index u = 0; u < unknowns; ++u) {
    if (x(u) < -tol) return std::nullopt;
    const double p = std::max(0.0, x(u));
    dist[static_cast<std::size_t>(support[u])] = p;
    sum += p;
  }
  if (sum <= 0.0) return std::nullopt;
  for (double& p : dist) p /= sum;
  return dist;
}

bool SameProfile(const MixedProfile& a, const MixedProfile& b, double tol) {
  for (std::size_t i = 0; i < a.distributions.size(); ++i) {
    for (std::size_t k = 0; k < a.distributions[i].size(); ++k) {
      if (std::abs(a.distributions[i][k] - b.distributions[i][k]) > tol) return false;
    }
  }
  return true;
}

}  // namespace

std::vector<std::optional<std::size_t>> DominantStrategies(const ClassicalGame& game,
                                                           bool strict, double tol) {
  std::vector<std::optional<std::size_t>> result(game.num_players());
  for (std::size_t player = 0; player < game.num_players(); ++player) {
    const std::size_t options = game.num_strategies(player);
    for (std::size_t candidate = 0; candidate < options && !result[player]; ++candidate) {
      bool dominant = true;
      for (std::size_t index = 0; index < game.num_plays() && dominant; ++index) {
        Play play = game.PlayAt(index);
        if (play[player] != candidate) continue;
        const double own = game.PayoffAt(player, index);
        for (std::size_t alt = 0; alt < options && dominant; ++alt) {
          if (alt == candidate) continue;
          play[player] = alt;
          const double other = game.Payoff(player, play);
          dominant = strict ? own > other + tol : own >= other - tol;
        }
      }
      if (dominant) result[player] = candidate;
    }
  }
  return result;
}

std::vector<Play> PureNash(const ClassicalGame& game, bool strict, double tol) {
  std::vector<Play> equilibria;
  for (std::size_t index = 0; index < game.num_plays(); ++index) {
    const Play play = game.PlayAt(index);
    bool stable = true;
    for (std::size_t player = 0; player < game.num_players() && stable; ++player) {
      const double own = game.PayoffAt(player, index);
      // Deviations of `player` move along one axis of the flattened tensor.
      const std::size_t axis_start = index - play[player] * game.stride(player);
      for (std::size_t alt = 0; alt < game.num_strategies(player) && stable; ++alt) {
        if (alt == play[player]) continue;
        const double other = game.PayoffAt(player, axis_start + alt * game.stride(player));
        stable = strict ? own > other + tol : own >= other - tol;
      }
    }
    if (stable) equilibria.push_back(play);
  }
  return equilibria;
}

double MaxUnilateralGain(const ClassicalGame& game, const MixedProfile& profile) {
  const std::vector<double> current = ExpectedPayoffs(game, profile);
  double gain = -std::numeric_limits<double>::infinity();
  for (std::size_t player = 0; player < game.num_players(); ++player) {
    for (std::size_t s = 0; s < game.num_strategies(player); ++s) {
      gain = std::max(gain, DeviationPayoff(game, profile, player, s) - current[player]);
    }
  }
  return gain;
}

std::vector<MixedProfile> MixedNashTwoPlayer(const ClassicalGame& game, double tol) {
  if (game.num_players() != 2) {
    throw UnsupportedError("mixed equilibrium search supports two players only");
  }
  const auto rows = static_cast<Eigen::Index>(game.num_strategies(0));
  const auto cols = static_cast<Eigen::Index>(game.num_strategies(1));
  if (rows > 4 || cols > 4) {
    throw UnsupportedError("mixed equilibrium search supports at most 4 strategies");
  }
  const Eigen::MatrixXd a = AsMatrix(game, 0);
  const Eigen::MatrixXd b = AsMatrix(game, 1);
  const double scale = std::max({1.0, a.cwiseAbs().maxCoeff(), b.cwiseAbs().maxCoeff()});
  const double check_tol = tol * scale;

  std::vector<MixedProfile> found;
  for (unsigned row_mask = 1; row_mask < (1u << rows); ++row_mask) {
    const auto row_support = MaskIndices(row_mask, rows);
    for (unsigned col_mask = 1; col_mask < (1u << cols); ++col_mask) {
      const auto col_support = MaskIndices(col_mask, cols);
      // Column mix makes the row player indifferent over the row support.
      const auto q = IndifferentMix(
          col_support, row_support, cols,
          [&](Eigen::Index r, Eigen::Index c) { return a(r, c); }, check_tol);
      if (!q) continue;
      const auto p = IndifferentMix(
          row_support, col_support, rows,
          [&](Eigen::Index c, Eigen::Index r) { return b(r, c); }, check_tol);
      if (!p) continue;
      MixedProfile candidate{{*p, *q}};
      if (MaxUnilateralGain(game, candidate) > check_tol) continue;
      const bool duplicate = std::any_of(found.begin(), found.end(), [&](const auto& f) {
        return SameProfile(f, candidate, 1e-7);
      });
      if (!duplicate) found.push_back(std::move(candidate));
    }
  }
  return found;
}

const char* ToString(ParetoRelation relation) {
  switch (relation) {
    case ParetoRelation::kADominates:
      return "a_dominates";
    case ParetoRelation::kBDominates:
      return "b_dominates";
    case ParetoRelation::kEqual:
      return "equal";
    case ParetoRelation::kIncomparable:
      return "incomparable";
  }
  return "unknown";
}

ParetoRelation CompareParetoPayoffs(const std::vector<double>& a,
                                    const std::vector<double>& b, double tol) {
  if (a.size() != b.size()) throw ShapeError("payoff vectors differ in length");
  bool a_ge = true;
  bool b_ge = true;
  bool all_equal = true;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double diff = a[k] - b[k];
    if (std::abs(diff) > tol) all_equal = false;
    if (diff < -tol) a_ge = false;
    if (diff > tol) b_ge = false;
  }
  if (all_equal) return ParetoRelation::kEqual;
  if (a_ge) return ParetoRelation::kADominates;
  if (b_ge) return ParetoRelation::kBDominates;
  return ParetoRelation::kIncomparable;
}

std::vector<Play> ParetoOptimalPlays(const ClassicalGame& game, double tol) {
  std::vector<std::vector<double>> vectors;
  vectors.reserve(game.num_plays());
  for (std::size_t i = 0; i < game.num_plays(); ++i) {
    vectors.push_back(game.Payoffs(game.PlayAt(i)));
  }
  std::vector<Play> optimal;
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    const bool dominated = std::any_of(vectors.begin(), vectors.end(), [&](const auto& v) {
      return CompareParetoPayoffs(v, vectors[i], tol) == ParetoRelation::kADominates;
    });
    if (!dominated) optimal.push_back(game.PlayAt(i));
  }
  return optimal;
}

}  // namespace qgame
