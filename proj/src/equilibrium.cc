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

#include "qgame/equilibrium.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <thread>

#include "qgame/errors.h"

namespace qgame {
namespace {

constexpr double kInvGolden = 0.6180339887498949;

// Runs fn(i) for i in [0, n) across hardware threads; results land in
// caller-owned slots so the outcome does not depend on scheduling.
template <typename Fn>
void ParallelFor(std::size_t n, Fn fn) {
  const std::size_t workers =
      std::min<std::size_t>(std::max(1u, std::thread::hardware_concurrency()), n / 256 + 1);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::jthread> threads;
  const std::size_t chunk = (n + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t begin = w * chunk;
    const std::size_t end = std::min(n, begin + chunk);
    threads.emplace_back([begin, end, &fn] {
      for (std::size_t i = begin; i < end; ++i) fn(i);
    });
  }
}

ComplexMatrix FamilyMatrix(const StrategyFamily& family, const ParamPoint& p) {
  switch (family.kind()) {
    case FamilyKind::kOneParam:
      return OneParamMatrix(p[0]);
    case FamilyKind::kTwoParam:
      return TwoParamMatrix(p[0], p[1]);
    case FamilyKind::kThreeParam:
      return ThreeParamMatrix(p[0], p[1], p[2]);
    case FamilyKind::kFiniteSet:
      return family.operators()[static_cast<std::size_t>(std::lround(p[0]))].matrix();
  }
  return {};
}

// Payoff of one player as a function of their own local operator.
class PayoffOracle {
 public:
  PayoffOracle(const QuantumGame& game, std::size_t player,
               const std::vector<UnitaryOperator>& profile)
{
    if (player >= game.num_players()) throw ShapeError("player index out of range");
    if (profile.size() != game.num_players()) {
      throw ShapeError("profile needs one operator per player");
    }
    for (std::size_t i = 0; i < profile.size(); ++i) {
      if (i != player && profile[i].dim() != game.local_dim(i)) {
        throw ShapeError("operator of player " + std::to_string(i) +
                         " has the wrong dimension");
      }
    }
    // Kronecker products of the operators left and right of the player.
    ComplexMatrix left = ComplexMatrix::Ones(1, 1);
    for (std::size_t i = 0; i < player; ++i) left = TensorProduct(left, profile[i].matrix());
    ComplexMatrix right = ComplexMatrix::Ones(1, 1);
    for (std::size_t i = player + 1; i < profile.size(); ++i) {
      right = TensorProduct(right, profile[i].matrix());
    }
    // The payoff is the Hermitian form v^H G v in v = vec(local), with
    // G[cd, ab] = Tr[K_ab rho K_cd^H pi] and K_ab = left (x) E_ab (x) right.
    const int d = game.local_dim(player);
    const auto dim = static_cast<Eigen::Index>(game.initial_state().dim());
    ComplexMatrix a_cols(dim * dim, d * d);
    ComplexMatrix c_cols(dim * dim, d * d);
    for (int col = 0; col < d; ++col) {
      for (int row = 0; row < d; ++row) {
        ComplexMatrix unit = ComplexMatrix::Zero(d, d);
        unit(row, col) = 1.0;
        const ComplexMatrix k = TensorProduct(TensorProduct(left, unit), right);
        const ComplexMatrix a = k * game.initial_state().matrix();
        const ComplexMatrix c = game.payoff_operators()[player] * k;
        a_cols.col(col * d + row) = Eigen::Map<const ComplexVector>(a.data(), a.size());
        c_cols.col(col * d + row) = Eigen::Map<const ComplexVector>(c.data(), c.size());
      }
    }
    form_ = c_cols.adjoint() * a_cols;
  }

  double operator()(const ComplexMatrix& local) const {
    const Eigen::Map<const ComplexVector> v(local.data(), local.size());
    return (v.adjoint() * form_ * v)(0, 0).real();
  }

 private:
  ComplexMatrix form_;
};

double WrapOrClamp(double value, const ParamRange& r) {
  if (r.half_open) {
    const double span = r.hi - r.lo;
    double v = std::fmod(value - r.lo, span);
    if (v < 0) v += span;
    // fmod can land exactly on span after the shift.
    if (r.lo + v >= r.hi) v = 0.0;
    return r.lo + v;
  }
  return std::clamp(value, r.lo, r.hi);
}

// Golden-section maximisation of f on [a, b], endpoints included.
template <typename F>
std::pair<double, double> GoldenMaximize(F f, double a, double b) {
  double best_x = a;
  double best_f = f(a);
  const double fb = f(b);
  if (fb > best_f) {
    best_x = b;
    best_f = fb;
  }
  double u = b - kInvGolden * (b - a);
  double v = a + kInvGolden * (b - a);
  double fu = f(u);
  double fv = f(v);
  for (int it = 0; it < 60 && (b - a) > 1e-12; ++it) {
    if (fu < fv) {
      a = u;
      u = v;
      fu = fv;
      v = a + kInvGolden * (b - a);
      fv = f(v);
    } else {
      b = v;
      v = u;
      fv = fu;
      u = b - kInvGolden * (b - a);
      fu = f(u);
    }
  }
  for (const auto& [x, fx] : {std::pair{u, fu}, std::pair{v, fv}}) {
    if (fx > best_f) {
      best_x = x;
      best_f = fx;
    }
  }
  return {best_x, best_f};
}

double TieTolerance(double value) { return 1e-12 * std::max(1.0, std::abs(value)); }

std::vector<UnitaryOperator> ProfileOperators(const std::vector<ParamPoint>& profile,
                                              const StrategyFamily& family) {
  std::vector<UnitaryOperator> ops;
  ops.reserve(profile.size());
  for (const ParamPoint& p : profile) ops.push_back(ParamUnitary(family, p));
  return ops;
}

std::vector<ParetoRelation> Flags(const std::vector<double>& payoffs,
                                  const std::vector<std::vector<double>>& reference) {
  std::vector<ParetoRelation> flags;
  for (const auto& r : reference) flags.push_back(CompareParetoPayoffs(payoffs, r));
  return flags;
}

void RequireFiniteFamily(const StrategyFamily& family) {
  if (family.kind() != FamilyKind::kFiniteSet) {
    throw UnsupportedError("mixed best responses need a finite_set family");
  }
}

UnitaryMixture ToMixture(const std::vector<double>& probs, const StrategyFamily& family) {
  if (probs.size() != family.operators().size()) {
    throw ShapeError("mixture length differs from the operator set size");
  }
  UnitaryMixture mixture;
  for (std::size_t k = 0; k < probs.size(); ++k) {
    mixture.emplace_back(probs[k], family.operators()[k]);
  }
  return mixture;
}

template <typename Oracle>
BestResponse Refine(const Oracle& oracle, const StrategyFamily& family,
                    const SearchConfig& cfg, BestResponse best) {
  std::vector<double> half_width;
  for (const ParamRange& r : family.ranges()) {
    half_width.push_back((r.hi - r.lo) /
                         (r.half_open ? cfg.grid_resolution : cfg.grid_resolution - 1));
  }
  for (int sweep = 0; sweep < cfg.refinement_iterations; ++sweep) {
    bool moved = false;
    for (std::size_t k = 0; k < family.arity(); ++k) {
      const ParamRange& r = family.ranges()[k];
      ParamPoint trial = best.point;
      auto along = [&](double t) {
        trial[k] = WrapOrClamp(t, r);
        return oracle(FamilyMatrix(family, trial));
      };
      double lo = best.point[k] - half_width[k];
      double hi = best.point[k] + half_width[k];
      if (!r.half_open) {
        lo = std::max(lo, r.lo);
        hi = std::min(hi, r.hi);
      }
      const auto [x, fx] = GoldenMaximize(along, lo, hi);
      if (fx > best.payoff + TieTolerance(best.payoff)) {
        best.point[k] = WrapOrClamp(x, r);
        best.payoff = fx;
        moved = true;
      }
    }
    if (!moved) {
      for (double& h : half_width) h = std::max(0.5 * h, 1e-12);
    }
  }
  return best;
}

}  // namespace

void ValidateSearchConfig(const SearchConfig& cfg) {
  if (!(cfg.epsilon > 0.0)) throw RangeError("epsilon must be positive");
  if (cfg.grid_resolution < 2) throw RangeError("grid resolution must be at least 2");
  if (cfg.refinement_iterations < 0) {
    throw RangeError("refinement iterations must be nonnegative");
  }
}

BestResponse FindBestResponse(const QuantumGame& game, std::size_t player,
                              const std::vector<UnitaryOperator>& profile,
                              const StrategyFamily& family, const SearchConfig& cfg) {
  ValidateSearchConfig(cfg);
  if (family.dim() != game.local_dim(player)) {
    throw ShapeError("strategy family dimension differs from the player's subsystem");
  }
  const PayoffOracle oracle(game, player, profile);
  const std::vector<ParamPoint> grid = ParameterGrid(family, cfg.grid_resolution);
  if (grid.empty()) throw ShapeError("empty strategy family");

  std::vector<double> values(grid.size());
  ParallelFor(grid.size(), [&](std::size_t i) {
    values[i] = oracle(FamilyMatrix(family, grid[i]));
  });
  const double grid_max = *std::max_element(values.begin(), values.end());
  std::size_t winner = 0;
  while (values[winner] < grid_max - TieTolerance(grid_max)) ++winner;

  BestResponse best{grid[winner], values[winner]};
  if (family.kind() == FamilyKind::kFiniteSet) return best;

  // On a closed boundary (theta = 0 or pi) some phases drop out of the
  // operator, and coordinate moves from there cannot find the direction that
  // leaves the boundary. The best strictly interior grid point is refined as
  // a second start.
  std::optional<std::size_t> interior;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    bool inside = true;
    for (std::size_t k = 0; k < family.arity() && inside; ++k) {
      const ParamRange& r = family.ranges()[k];
      inside = r.half_open || (grid[i][k] > r.lo && grid[i][k] < r.hi);
    }
    if (inside && (!interior || values[i] > values[*interior] + TieTolerance(values[*interior]))) {
      interior = i;
    }
  }
  best = Refine(oracle, family, cfg, best);
  if (interior && *interior != winner) {
    const BestResponse other = Refine(oracle, family, cfg, {grid[*interior], values[*interior]});
    if (other.payoff > best.payoff + TieTolerance(best.payoff)) best = other;
  }
  return best;
}

EquilibriumReport VerifyNash(const QuantumGame& game,
                             const std::vector<ParamPoint>& profile,
                             const StrategyFamily& family, const SearchConfig& cfg,
                             const std::vector<std::vector<double>>& reference) {
  ValidateSearchConfig(cfg);
  if (profile.size() != game.num_players()) {
    throw ShapeError("profile needs one parameter point per player");
  }
  const std::vector<UnitaryOperator> ops = ProfileOperators(profile, family);
  EquilibriumReport report;
  report.kind = ProfileKind::kParams;
  report.profile = profile;
  report.payoffs = ExpectedPayoffsQ(game, QuantumPlay{ops});
  report.max_unilateral_gain = 0.0;
  for (std::size_t player = 0; player < game.num_players(); ++player) {
    BestResponse br = FindBestResponse(game, player, ops, family, cfg);
    report.max_unilateral_gain =
        std::max(report.max_unilateral_gain, br.payoff - report.payoffs[player]);
    report.deviations.push_back(std::move(br));
  }
  report.certified = report.max_unilateral_gain <= cfg.epsilon;
  report.refuted = report.max_unilateral_gain > 10 * cfg.epsilon;
  report.pareto_flags = Flags(report.payoffs, reference);
  return report;
}

std::vector<double> MixedFinitePayoffs(const QuantumGame& game,
                                       const std::vector<std::vector<double>>& mixtures,
                                       const StrategyFamily& family) {
  RequireFiniteFamily(family);
  if (mixtures.size() != game.num_players()) {
    throw ShapeError("need one mixture per player");
  }
  MixedQuantumPlay play;
  for (const auto& probs : mixtures) play.locals.push_back(ToMixture(probs, family));
  return ExpectedPayoffsMixed(game, play);
}

std::vector<double> BestResponseMixedFinite(
    const QuantumGame& game, std::size_t player,
    const std::vector<std::vector<double>>& mixtures, const StrategyFamily& family,
    double tol) {
  RequireFiniteFamily(family);
  if (player >= game.num_players()) throw ShapeError("player index out of range");
  if (mixtures.size() != game.num_players()) {
    throw ShapeError("need one mixture per player");
  }
  const std::size_t options = family.operators().size();
  std::vector<double> values;
  for (std::size_t k = 0; k < options; ++k) {
    std::vector<std::vector<double>> trial = mixtures;
    trial[player].assign(options, 0.0);
    trial[player][k] = 1.0;
    values.push_back(MixedFinitePayoffs(game, trial, family)[player]);
  }
  const double best = *std::max_element(values.begin(), values.end());
  std::vector<double> response(options, 0.0);
  std::size_t ties = 0;
  for (std::size_t k = 0; k < options; ++k) {
    if (values[k] >= best - tol) {
      response[k] = 1.0;
      ++ties;
    }
  }
  for (double& p : response) p /= static_cast<double>(ties);
  return response;
}

EquilibriumReport VerifyMixedNashFinite(
    const QuantumGame& game, const std::vector<std::vector<double>>& mixtures,
    const StrategyFamily& family, double epsilon,
    const std::vector<std::vector<double>>& reference) {
  if (!(epsilon > 0.0)) throw RangeError("epsilon must be positive");
  EquilibriumReport report;
  report.kind = ProfileKind::kMixture;
  report.profile = mixtures;
  report.payoffs = MixedFinitePayoffs(game, mixtures, family);
  report.max_unilateral_gain = 0.0;
  const std::size_t options = family.operators().size();
  for (std::size_t player = 0; player < game.num_players(); ++player) {
    BestResponse best{{}, -std::numeric_limits<double>::infinity()};
    for (std::size_t k = 0; k < options; ++k) {
      std::vector<std::vector<double>> trial = mixtures;
      trial[player].assign(options, 0.0);
      trial[player][k] = 1.0;
      const double value = MixedFinitePayoffs(game, trial, family)[player];
      if (k == 0 || value > best.payoff + TieTolerance(best.payoff)) {
        best = {{static_cast<double>(k)}, value};
      }
    }
    report.max_unilateral_gain =
        std::max(report.max_unilateral_gain, best.payoff - report.payoffs[player]);
    report.deviations.push_back(std::move(best));
  }
  report.certified = report.max_unilateral_gain <= epsilon;
  report.refuted = report.max_unilateral_gain > 10 * epsilon;
  report.pareto_flags = Flags(report.payoffs, reference);
  return report;
}

ParetoReport BuildParetoReport(const std::vector<ParetoEntry>& entries, double tol) {
  ParetoReport report;
  for (const ParetoEntry& e : entries) {
    if (e.payoffs.size() != entries.front().payoffs.size()) {
      throw ShapeError("entry '" + e.label + "' has a payoff vector of different length");
    }
  }
  report.relations.assign(entries.size(), {});
  for (std::size_t i = 0; i < entries.size(); ++i) {
    for (std::size_t j = 0; j < entries.size(); ++j) {
      report.relations[i].push_back(
          CompareParetoPayoffs(entries[i].payoffs, entries[j].payoffs, tol));
    }
  }
  for (std::size_t i = 0; i < entries.size(); ++i) {
    bool dominated = false;
    for (std::size_t j = 0; j < entries.size() && !dominated; ++j) {
      dominated = report.relations[j][i] == ParetoRelation::kADominates;
    }
    if (!dominated) report.optimal.push_back(i);
  }
  return report;
}

UnitaryOperator EwlSteeringResponse(const UnitaryOperator& opponent) {
  if (opponent.dim() != 2) throw ShapeError("steering response needs a qubit operator");
  ComplexMatrix s = ComplexMatrix::Identity(2, 2);
  s(1, 1) = Complex(0.0, 1.0);
  const ComplexMatrix defect = TwoParamMatrix(std::numbers::pi, 0.0);
  return UnitaryOperator(defect * s * opponent.matrix().conjugate() * s.adjoint());
}

}  // namespace qgame
