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

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "qgame/errors.h"

namespace qgame {
namespace {

ComplexMatrix Diagonal(const std::vector<double>& values) {
  const auto n = static_cast<Eigen::Index>(values.size());
  ComplexMatrix m = ComplexMatrix::Zero(n, n);
  for (Eigen::Index k = 0; k < n; ++k) m(k, k) = values[static_cast<std::size_t>(k)];
  return m;
}

// Tr[rho A] for square matrices of equal size.
double TraceProduct(const ComplexMatrix& rho, const ComplexMatrix& a) {
  return rho.transpose().cwiseProduct(a).sum().real();
}

void Require2x2(const ClassicalGame& game, const char* basis) {
  if (game.num_players() != 2 || game.num_strategies(0) != 2 ||
      game.num_strategies(1) != 2) {
    throw ShapeError(std::string(basis) + " basis needs a 2-player 2x2 game");
  }
}

std::vector<std::string> TwoByTwoLabels(const ClassicalGame& game) {
  return {game.PlayLabel({0, 0}), game.PlayLabel({0, 1}), game.PlayLabel({1, 0}),
          game.PlayLabel({1, 1})};
}

ComplexVector Ket4(Complex a00, Complex a01, Complex a10, Complex a11) {
  ComplexVector v(4);
  v << a00, a01, a10, a11;
  return v / std::sqrt(2.0);
}

}  // namespace

QuantumGame::QuantumGame(ClassicalGame base, DensityMatrix initial,
                         MeasurementBasis basis, double tol)
    : base_(std::move(base)), initial_(std::move(initial)), basis_(std::move(basis)) {
  const auto plays = static_cast<int>(base_.num_plays());
  if (initial_.dim() != plays) {
    throw ShapeError("initial state dimension " + std::to_string(initial_.dim()) +
                     " differs from the number of plays " + std::to_string(plays));
  }
  if (basis_.dim() != plays || static_cast<int>(basis_.size()) != plays) {
    throw ShapeError("measurement basis must have one projector per play");
  }
  std::map<std::string, std::size_t> play_of_label;
  for (std::size_t i = 0; i < base_.num_plays(); ++i) {
    play_of_label[base_.PlayLabel(base_.PlayAt(i))] = i;
  }
  std::set<std::size_t> covered;
  for (const std::string& label : basis_.labels()) {
    const auto it = play_of_label.find(label);
    if (it == play_of_label.end()) {
      throw ShapeError("basis label '" + label + "' is not a play of the game");
    }
    outcome_play_.push_back(it->second);
    covered.insert(it->second);
  }
  if (covered.size() != base_.num_plays()) {
    throw ShapeError("basis labels do not cover every play");
  }
  for (std::size_t player = 0; player < base_.num_players(); ++player) {
    ComplexMatrix op = ComplexMatrix::Zero(plays, plays);
    for (std::size_t k = 0; k < basis_.size(); ++k) {
      op += base_.PayoffAt(player, outcome_play_[k]) * basis_.projectors()[k];
    }
    if (!IsHermitian(op, tol)) {
      throw InvariantError("payoff operator of player " + std::to_string(player) +
                           " is not Hermitian");
    }
    payoff_operators_.push_back(std::move(op));
  }
  const double scale = std::max(1.0, [&] {
    double m = 0.0;
    for (const auto& t : base_.payoff_tensors()) {
      for (double v : t) m = std::max(m, std::abs(v));
    }
    return m;
  }());
  for (std::size_t i = 0; i < payoff_operators_.size(); ++i) {
    for (std::size_t j = i + 1; j < payoff_operators_.size(); ++j) {
      if (CommutatorNorm(payoff_operators_[i], payoff_operators_[j]) > tol * scale * scale) {
        throw InvariantError("payoff operators do not commute");
      }
    }
  }
}

MeasurementBasis ComputationalPlayBasis(const ClassicalGame& game) {
  return MeasurementBasis::Computational(game.PlayLabels());
}

PureState EwlEntangledState() { return PureState(Ket4(1, 0, 0, Complex(0, 1))); }

PureState PhiPlusState() { return PureState(Ket4(1, 0, 0, 1)); }

MeasurementBasis EwlEtaBasis(const ClassicalGame& game) {
  Require2x2(game, "eta");
  const Complex i(0, 1);
  return MeasurementBasis::FromVectors(
      {Ket4(1, 0, 0, i), Ket4(0, 1, -i, 0), Ket4(0, 1, i, 0), Ket4(1, 0, 0, -i)},
      TwoByTwoLabels(game));
}

MeasurementBasis BellBasis(const ClassicalGame& game) {
  Require2x2(game, "Bell");
  return MeasurementBasis::FromVectors(
      {Ket4(1, 0, 0, 1), Ket4(0, 1, 1, 0), Ket4(0, 1, -1, 0), Ket4(1, 0, 0, -1)},
      TwoByTwoLabels(game));
}

ComplexMatrix CombinedUnitary(const QuantumGame& game, const QuantumPlay& play) {
  if (play.locals.size() != game.num_players()) {
    throw ShapeError("quantum play needs one operator per player");
  }
  std::vector<ComplexMatrix> factors;
  factors.reserve(play.locals.size());
  for (std::size_t i = 0; i < play.locals.size(); ++i) {
    if (play.locals[i].dim() != game.local_dim(i)) {
      throw ShapeError("operator of player " + std::to_string(i) + " has dimension " +
                       std::to_string(play.locals[i].dim()) + ", expected " +
                       std::to_string(game.local_dim(i)));
    }
    factors.push_back(play.locals[i].matrix());
  }
  return TensorProduct(factors);
}

DensityMatrix FinalState(const QuantumGame& game, const QuantumPlay& play) {
  const ComplexMatrix u = CombinedUnitary(game, play);
  return DensityMatrix(u * game.initial_state().matrix() * u.adjoint());
}

DensityMatrix FinalState(const QuantumGame& game, const MixedQuantumPlay& play) {
  if (play.locals.size() != game.num_players()) {
    throw ShapeError("mixed quantum play needs one mixture per player");
  }
  // Product channel: one Kraus term per combination of local choices.
  std::vector<ComplexMatrix> kraus{ComplexMatrix::Ones(1, 1)};
  for (std::size_t i = 0; i < play.locals.size(); ++i) {
    const UnitaryMixture& mixture = play.locals[i];
    double total = 0.0;
    for (const auto& [p, u] : mixture) {
      if (!(p >= -kDefaultTol)) {
        throw ShapeError("mixture of player " + std::to_string(i) +
                         " has a negative probability");
      }
      if (u.dim() != game.local_dim(i)) {
        throw ShapeError("operator of player " + std::to_string(i) +
                         " has the wrong dimension");
      }
      total += p;
    }
    if (mixture.empty() || std::abs(total - 1.0) > kDefaultTol) {
      throw ShapeError("mixture of player " + std::to_string(i) + " does not sum to 1");
    }
    std::vector<ComplexMatrix> next;
    for (const ComplexMatrix& prefix : kraus) {
      for (const auto& [p, u] : mixture) {
        if (p <= 0.0) continue;
        next.push_back(TensorProduct(prefix, std::sqrt(p) * u.matrix()));
      }
    }
    kraus = std::move(next);
  }
  return ApplyChannel(game.initial_state(), KrausChannel(std::move(kraus)));
}

std::vector<double> PayoffsOfState(const QuantumGame& game, const ComplexMatrix& rho) {
  std::vector<double> out;
  out.reserve(game.num_players());
  for (const ComplexMatrix& op : game.payoff_operators()) {
    out.push_back(TraceProduct(rho, op));
  }
  return out;
}

std::vector<double> ExpectedPayoffsQ(const QuantumGame& game, const QuantumPlay& play) {
  const ComplexMatrix u = CombinedUnitary(game, play);
  return PayoffsOfState(game, u * game.initial_state().matrix() * u.adjoint());
}

std::vector<double> PlayDistribution(const QuantumGame& game, const QuantumPlay& play) {
  const DensityMatrix rho = FinalState(game, play);
  const auto outcomes = Measure(rho, game.basis());
  std::vector<double> dist(game.base().num_plays(), 0.0);
  for (std::size_t k = 0; k < outcomes.size(); ++k) {
    dist[game.outcome_play(k)] = outcomes[k].probability;
  }
  return dist;
}

std::vector<double> ExpectedPayoffsByOutcomes(const QuantumGame& game,
                                              const QuantumPlay& play) {
  const std::vector<double> dist = PlayDistribution(game, play);
  std::vector<double> out(game.num_players(), 0.0);
  for (std::size_t index = 0; index < dist.size(); ++index) {
    for (std::size_t player = 0; player < out.size(); ++player) {
      out[player] += dist[index] * game.base().PayoffAt(player, index);
    }
  }
  return out;
}

std::vector<double> ExpectedPayoffsMixed(const QuantumGame& game,
                                         const MixedQuantumPlay& play) {
  return PayoffsOfState(game, FinalState(game, play).matrix());
}

// ---------------------------------------------------------------------------

ComplexMatrix PermutationMatrix(const std::vector<std::size_t>& perm) {
  const auto n = static_cast<Eigen::Index>(perm.size());
  if (n == 0) throw ShapeError("empty permutation");
  std::vector<bool> seen(perm.size(), false);
  ComplexMatrix m = ComplexMatrix::Zero(n, n);
  for (std::size_t j = 0; j < perm.size(); ++j) {
    if (perm[j] >= perm.size() || seen[perm[j]]) {
      throw ShapeError("move is not a permutation of the state labels");
    }
    seen[perm[j]] = true;
    m(static_cast<Eigen::Index>(perm[j]), static_cast<Eigen::Index>(j)) = 1.0;
  }
  return m;
}

bool IsPermutationMatrix(const ComplexMatrix& m, double tol) {
  if (m.rows() != m.cols() || m.rows() == 0) return false;
  std::vector<int> row_hits(static_cast<std::size_t>(m.rows()), 0);
  for (Eigen::Index c = 0; c < m.cols(); ++c) {
    int hits = 0;
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      const Complex z = m(r, c);
      if (std::abs(z - Complex(1.0, 0.0)) <= tol) {
        ++hits;
        ++row_hits[static_cast<std::size_t>(r)];
      } else if (std::abs(z) > tol) {
        return false;
      }
    }
    if (hits != 1) return false;
  }
  return std::all_of(row_hits.begin(), row_hits.end(), [](int h) { return h == 1; });
}

SequentialQuantumGame::SequentialQuantumGame(
    std::vector<std::string> players, std::vector<std::string> state_labels,
    DensityMatrix initial, std::vector<std::size_t> schedule,
    std::vector<std::pair<std::string, UnitaryOperator>> classical_moves,
    std::vector<std::vector<double>> payoffs, double tol)
    : players_(std::move(players)),
      state_labels_(std::move(state_labels)),
      initial_(std::move(initial)),
      schedule_(std::move(schedule)),
      classical_moves_(std::move(classical_moves)),
      payoffs_(std::move(payoffs)),
      basis_(MeasurementBasis::Computational(state_labels_)) {
  const auto k = static_cast<int>(state_labels_.size());
  if (initial_.dim() != k) {
    throw ShapeError("initial state dimension differs from the number of states");
  }
  if (players_.empty()) throw ShapeError("sequential game has no players");
  if (schedule_.empty()) throw ShapeError("move schedule is empty");
  for (std::size_t p : schedule_) {
    if (p >= players_.size()) {
      throw ShapeError("schedule refers to unknown player " + std::to_string(p));
    }
  }
  std::set<std::string> names;
  for (const auto& [name, move] : classical_moves_) {
    if (!names.insert(name).second) throw ShapeError("duplicate move name '" + name + "'");
    if (move.dim() != k) throw ShapeError("move '" + name + "' has the wrong dimension");
    if (!IsPermutationMatrix(move.matrix(), tol)) {
      throw InvariantError("classical move '" + name + "' is not a permutation");
    }
  }
  if (payoffs_.size() != players_.size()) {
    throw ShapeError("need one payoff vector per player");
  }
  for (std::size_t i = 0; i < payoffs_.size(); ++i) {
    if (payoffs_[i].size() != state_labels_.size()) {
      throw ShapeError("payoff vector of player " + std::to_string(i) +
                       " needs one value per state");
    }
    for (double v : payoffs_[i]) {
      if (!std::isfinite(v)) throw InvariantError("payoff is not finite");
    }
    payoff_operators_.push_back(Diagonal(payoffs_[i]));
  }
}

std::optional<UnitaryOperator> SequentialQuantumGame::ClassicalMove(
    const std::string& name) const {
  for (const auto& [n, move] : classical_moves_) {
    if (n == name) return move;
  }
  return std::nullopt;
}

DensityMatrix SequentialFinalState(const SequentialQuantumGame& game,
                                   const std::vector<UnitaryOperator>& moves) {
  if (moves.size() != game.schedule().size()) {
    throw ShapeError("expected " + std::to_string(game.schedule().size()) +
                     " moves, got " + std::to_string(moves.size()));
  }
  ComplexMatrix total = ComplexMatrix::Identity(game.dim(), game.dim());
  for (const UnitaryOperator& move : moves) {
    if (move.dim() != game.dim()) throw ShapeError("move has the wrong dimension");
    total = move.matrix() * total;
  }
  return DensityMatrix(total * game.initial_state().matrix() * total.adjoint());
}

std::vector<double> PlaySequential(const SequentialQuantumGame& game,
                                   const std::vector<UnitaryOperator>& moves) {
  const DensityMatrix rho = SequentialFinalState(game, moves);
  std::vector<double> out;
  for (const ComplexMatrix& op : game.payoff_operators()) {
    out.push_back(TraceProduct(rho.matrix(), op));
  }
  return out;
}

}  // namespace qgame
