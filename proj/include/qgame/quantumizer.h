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

#ifndef QGAME_QUANTUMIZER_H_
#define QGAME_QUANTUMIZER_H_

// Turning classical games into quantum games.
//
// Parallel protocol: every player owns a subsystem of dimension |S_i|, a judge
// prepares a (possibly entangled, possibly mixed) joint state, the players act
// locally, and the judge measures in a basis whose outcomes are the plays of
// the classical game. Player i's payoff operator is
//
//   pi_i = sum_P pi_i(P) Pi_P,
//
// so the expected payoff of a play U = U_1 (x) ... (x) U_n is
// Tr[U rho U^dagger pi_i].
//
// Sequential protocol: players take turns applying unitaries to one shared
// system whose basis states are the classical states of the game; payoffs are
// diagonal in that basis.

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qgame/classical_game.h"
#include "qgame/quantum_core.h"

namespace qgame {

class QuantumGame {
 public:
  // Requires dim(initial) == number of plays and basis labels equal to the
  // game's play labels (any order). Throws ShapeError / InvariantError.
  QuantumGame(ClassicalGame base, DensityMatrix initial, MeasurementBasis basis,
              double tol = kDefaultTol);

  const ClassicalGame& base() const { return base_; }
  const DensityMatrix& initial_state() const { return initial_; }
  const MeasurementBasis& basis() const { return basis_; }
  const std::vector<ComplexMatrix>& payoff_operators() const { return payoff_operators_; }
  std::size_t num_players() const { return base_.num_players(); }
  // Subsystem dimension of each player.
  int local_dim(std::size_t player) const {
    return static_cast<int>(base_.num_strategies(player));
  }
  // Flattened play index of basis outcome `outcome`.
  std::size_t outcome_play(std::size_t outcome) const { return outcome_play_[outcome]; }

 private:
  ClassicalGame base_;
  DensityMatrix initial_;
  MeasurementBasis basis_;
  std::vector<std::size_t> outcome_play_;
  std::vector<ComplexMatrix> payoff_operators_;
};

inline QuantumGame BuildEwl(ClassicalGame base, DensityMatrix initial,
                            MeasurementBasis basis, double tol = kDefaultTol) {
  return QuantumGame(std::move(base), std::move(initial), std::move(basis), tol);
}

// |k><k| labelled by the k-th play in lexicographic order.
MeasurementBasis ComputationalPlayBasis(const ClassicalGame& game);

// (|00> + i|11>)/sqrt(2).
PureState EwlEntangledState();
// (|00> + |11>)/sqrt(2).
PureState PhiPlusState();

// For 2x2 games. Outcome (a, b) is labelled with the play label of strategy
// indices (a, b):
//   eta basis: (0,0) (|00>+i|11>)/r2, (0,1) (|01>-i|10>)/r2,
//              (1,0) (|01>+i|10>)/r2, (1,1) (|00>-i|11>)/r2
//   Bell basis: (0,0) Phi+, (0,1) Psi+, (1,0) Psi-, (1,1) Phi-
MeasurementBasis EwlEtaBasis(const ClassicalGame& game);
MeasurementBasis BellBasis(const ClassicalGame& game);

// One local unitary per player.
struct QuantumPlay {
  std::vector<UnitaryOperator> locals;
};

using UnitaryMixture = std::vector<std::pair<double, UnitaryOperator>>;

// Per-player probabilistic mixtures of unitaries.
struct MixedQuantumPlay {
  std::vector<UnitaryMixture> locals;
};

// U_1 (x) ... (x) U_n after checking local dimensions.
ComplexMatrix CombinedUnitary(const QuantumGame& game, const QuantumPlay& play);

DensityMatrix FinalState(const QuantumGame& game, const QuantumPlay& play);
DensityMatrix FinalState(const QuantumGame& game, const MixedQuantumPlay& play);

// Tr[rho pi_i] for every player, no validation of `rho`.
std::vector<double> PayoffsOfState(const QuantumGame& game, const ComplexMatrix& rho);

// Tr[U rho U^dagger pi_i].
std::vector<double> ExpectedPayoffsQ(const QuantumGame& game, const QuantumPlay& play);

// Probability of each classical play (flattened play order) after `play`.
std::vector<double> PlayDistribution(const QuantumGame& game, const QuantumPlay& play);

// sum_P p(P) pi_i(P) with p from the judge's measurement. Independent of the
// payoff operators; agrees with ExpectedPayoffsQ.
std::vector<double> ExpectedPayoffsByOutcomes(const QuantumGame& game,
                                              const QuantumPlay& play);

// Applies the product channel of the per-player mixtures, then Tr[rho_f pi_i].
std::vector<double> ExpectedPayoffsMixed(const QuantumGame& game,
                                         const MixedQuantumPlay& play);

// U with U|j> = |perm[j]>. Throws ShapeError if `perm` is not a permutation.
ComplexMatrix PermutationMatrix(const std::vector<std::size_t>& perm);

bool IsPermutationMatrix(const ComplexMatrix& m, double tol = kDefaultTol);

class SequentialQuantumGame {
 public:
  // `payoffs[i][j]` is player i's payoff when the system ends in state j.
  SequentialQuantumGame(std::vector<std::string> players,
                        std::vector<std::string> state_labels, DensityMatrix initial,
                        std::vector<std::size_t> schedule,
                        std::vector<std::pair<std::string, UnitaryOperator>> classical_moves,
                        std::vector<std::vector<double>> payoffs,
                        double tol = kDefaultTol);

  const std::vector<std::string>& players() const { return players_; }
  std::size_t num_players() const { return players_.size(); }
  const std::vector<std::string>& state_labels() const { return state_labels_; }
  const DensityMatrix& initial_state() const { return initial_; }
  const std::vector<std::size_t>& schedule() const { return schedule_; }
  const std::vector<std::pair<std::string, UnitaryOperator>>& classical_moves() const {
    return classical_moves_;
  }
  const std::vector<std::vector<double>>& payoff_values() const { return payoffs_; }
  const std::vector<ComplexMatrix>& payoff_operators() const { return payoff_operators_; }
  const MeasurementBasis& basis() const { return basis_; }
  int dim() const { return initial_.dim(); }

  std::optional<UnitaryOperator> ClassicalMove(const std::string& name) const;

 private:
  std::vector<std::string> players_;
  std::vector<std::string> state_labels_;
  DensityMatrix initial_;
  std::vector<std::size_t> schedule_;
  std::vector<std::pair<std::string, UnitaryOperator>> classical_moves_;
  std::vector<std::vector<double>> payoffs_;
  std::vector<ComplexMatrix> payoff_operators_;
  MeasurementBasis basis_;
};

inline SequentialQuantumGame BuildSequential(
    std::vector<std::string> players, std::vector<std::string> state_labels,
    DensityMatrix initial, std::vector<std::size_t> schedule,
    std::vector<std::pair<std::string, UnitaryOperator>> classical_moves,
    std::vector<std::vector<double>> payoffs) {
  return SequentialQuantumGame(std::move(players), std::move(state_labels),
                               std::move(initial), std::move(schedule),
                               std::move(classical_moves), std::move(payoffs));
}

// `moves[k]` is played at turn k; the total operator is moves[last] ... moves[0].
DensityMatrix SequentialFinalState(const SequentialQuantumGame& game,
                                   const std::vector<UnitaryOperator>& moves);

std::vector<double> PlaySequential(const SequentialQuantumGame& game,
                                   const std::vector<UnitaryOperator>& moves);

}  // namespace qgame

#endif  // QGAME_QUANTUMIZER_H_
