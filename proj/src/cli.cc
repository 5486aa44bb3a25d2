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

#include "qgame/cli.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <regex>
#include <sstream>

#include "CLI11.hpp"
#include "qgame/catalog.h"
#include "qgame/classical_game.h"
#include "qgame/equilibrium.h"
#include "qgame/errors.h"
#include "qgame/game_file.h"
#include "qgame/quantumizer.h"
#include "qgame/strategy_space.h"

namespace qgame {

using nlohmann::json;

namespace {

constexpr double kPi = 3.14159265358979323846;

// Thrown when a check the user asked for comes out negative.
struct Refuted {
  json results;
};

std::string FormatNumber(double v) {
  if (v == 0.0) v = 0.0;
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

std::vector<std::string> Split(std::string_view text, char sep) {
  std::vector<std::string> out;
  std::string current;
  for (char c : text) {
    if (c == sep) {
      out.push_back(current);
      current.clear();
    } else {
      current.push_back(c);
    }
  }
  out.push_back(current);
  return out;
}

std::string Trim(std::string s) {
  const auto first = s.find_first_not_of(" \t");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t");
  return s.substr(first, last - first + 1);
}

double ParseNumber(const std::string& token) {
  try {
    std::size_t used = 0;
    const double v = std::stod(token, &used);
    if (used == token.size() && std::isfinite(v)) return v;
  } catch (const std::exception&) {
  }
  throw ParameterError("not a number: '" + token + "'");
}

json ComplexToJson(Complex z) { return json::array({z.real(), z.imag()}); }

std::vector<std::vector<double>> ParseMixtures(const std::string& text) {
  std::vector<std::vector<double>> out;
  for (const auto& part : Split(text, ';')) {
    std::vector<double> probs;
    for (const auto& token : Split(part, ',')) probs.push_back(ParseNumber(Trim(token)));
    out.push_back(std::move(probs));
  }
  return out;
}

// Splits a flat parameter list into one point per player. ';' may separate
// players explicitly.
std::vector<ParamPoint> ParseProfile(const std::string& text, const StrategyFamily& family,
                                     std::size_t players) {
  std::vector<ParamPoint> points;
  if (text.find(';') != std::string::npos) {
    for (const auto& part : Split(text, ';')) {
      ParamPoint p;
      for (const auto& token : Split(part, ',')) p.push_back(ParseAngle(Trim(token)));
      points.push_back(std::move(p));
    }
  } else {
    std::vector<double> flat;
    for (const auto& token : Split(text, ',')) flat.push_back(ParseAngle(Trim(token)));
    const std::size_t arity = family.arity();
    if (flat.size() != arity * players) {
      throw ParameterError("profile needs " + std::to_string(arity * players) +
                           " values (" + std::to_string(arity) + " per player), got " +
                           std::to_string(flat.size()));
    }
    for (std::size_t i = 0; i < players; ++i) {
      points.emplace_back(flat.begin() + static_cast<std::ptrdiff_t>(i * arity),
                          flat.begin() + static_cast<std::ptrdiff_t>((i + 1) * arity));
    }
  }
  if (points.size() != players) {
    throw ParameterError("profile has " + std::to_string(points.size()) +
                         " players, game has " + std::to_string(players));
  }
  for (std::size_t i = 0; i < players; ++i) {
    if (!family.Contains(points[i])) {
      throw RangeError("profile point of player " + std::to_string(i) +
                       " lies outside the " + ToString(family.kind()) + " ranges");
    }
  }
  return points;
}

json PointsToJson(const std::vector<ParamPoint>& points) {
  json out = json::array();
  for (const auto& p : points) out.push_back(p);
  return out;
}

std::vector<std::string> Names(const std::vector<Play>& plays, const ClassicalGame& game) {
  std::vector<std::string> out;
  for (const auto& p : plays) out.push_back(game.PlayLabel(p));
  return out;
}

struct Options {
  std::string command;
  std::vector<std::string> argv;
  double tol = kDefaultTol;
  SearchConfig cfg;
  std::string format = "text";
  std::string game_path;
  std::string family_name;
  std::string profile;
  std::string play;
  std::string mix;
  std::string moves;
  std::string entries;
  std::string entry_name;
  std::vector<std::string> params;
  std::string output_path;
  std::size_t player = 0;
  bool classical_only = false;
  long samples = 0;
};

GameFile RequireGame(const Options& o) {
  if (o.game_path.empty()) throw ParameterError("--game is required");
  return LoadGameFile(o.game_path);
}

const QuantumGame& RequireQuantum(const GameFile& file) {
  if (!file.quantum) throw ParameterError("game file has no quantum section");
  return *file.quantum;
}

StrategyFamily ResolveFamily(const Options& o, const GameFile& file) {
  if (o.family_name.empty()) {
    if (!file.family) throw ParameterError("no --family given and none in the game file");
    return *file.family;
  }
  const auto kind = ParseFamilyKind(o.family_name);
  if (!kind) throw ParameterError("unknown family '" + o.family_name + "'");
  if (*kind == FamilyKind::kFiniteSet) {
    if (!file.family || file.family->kind() != FamilyKind::kFiniteSet) {
      throw ParameterError("finite_set needs an operator list in the game file");
    }
    return *file.family;
  }
  return StrategyFamily::OfKind(*kind);
}

Parameters ParseParams(const std::vector<std::string>& items) {
  Parameters out;
  for (const auto& item : items) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw ParameterError("expected key=value, got '" + item + "'");
    out[Trim(item.substr(0, eq))] = ParseNumber(Trim(item.substr(eq + 1)));
  }
  return out;
}

// Local operators for a pure quantum play given by --profile or --play.
std::vector<UnitaryOperator> ResolveOperators(const Options& o, const GameFile& file,
                                              json& echo) {
  const QuantumGame& game = RequireQuantum(file);
  std::vector<UnitaryOperator> ops;
  if (!o.play.empty()) {
    const auto names = Split(o.play, ',');
    if (names.size() != game.num_players()) {
      throw ParameterError("--play needs one operator per player");
    }
    for (const auto& raw : names) {
      const std::string name = Trim(raw);
      std::optional<UnitaryOperator> op;
      if (file.family && file.family->kind() == FamilyKind::kFiniteSet) {
        const auto& labels = file.family->labels();
        const auto it = std::find(labels.begin(), labels.end(), name);
        if (it != labels.end()) op = file.family->operators()[static_cast<std::size_t>(it - labels.begin())];
      }
      if (!op) op = NamedOperator(name);
      if (!op) throw ParameterError("unknown operator '" + name + "'");
      ops.push_back(*op);
    }
    echo["play"] = names;
    return ops;
  }
  if (o.profile.empty()) throw ParameterError("give --profile or --play");
  const StrategyFamily family = ResolveFamily(o, file);
  const auto points = ParseProfile(o.profile, family, game.num_players());
  for (const auto& p : points) ops.push_back(ParamUnitary(family, p));
  echo["family"] = ToString(family.kind());
  echo["profile"] = PointsToJson(points);
  return ops;
}

json RunAnalyze(const Options& o, std::vector<std::string>& notes) {
  const GameFile file = RequireGame(o);
  const ClassicalGame& g = file.classical;
  json r;
  json dominant = json::array();
  json strict_dominant = json::array();
  const auto weak = DominantStrategies(g, false, o.tol);
  const auto strict = DominantStrategies(g, true, o.tol);
  for (std::size_t i = 0; i < g.num_players(); ++i) {
    dominant.push_back(weak[i] ? json(g.strategy_sets()[i][*weak[i]]) : json(nullptr));
    strict_dominant.push_back(strict[i] ? json(g.strategy_sets()[i][*strict[i]]) : json(nullptr));
  }
  r["dominant_strategies"] = dominant;
  r["strictly_dominant_strategies"] = strict_dominant;
  r["pure_nash"] = Names(PureNash(g, false, o.tol), g);
  r["strict_pure_nash"] = Names(PureNash(g, true, o.tol), g);
  r["pareto_optimal"] = Names(ParetoOptimalPlays(g, o.tol), g);
  json table = json::object();
  for (std::size_t k = 0; k < g.num_plays(); ++k) {
    std::vector<double> payoffs;
    for (std::size_t i = 0; i < g.num_players(); ++i) payoffs.push_back(g.PayoffAt(i, k));
    table[g.PlayLabel(g.PlayAt(k))] = payoffs;
  }
  r["payoff_table"] = table;
  bool mixed_supported = g.num_players() == 2;
  for (const auto& s : g.strategy_sets()) mixed_supported = mixed_supported && s.size() <= 4;
  if (mixed_supported) {
    json mixed = json::array();
    for (const auto& profile : MixedNashTwoPlayer(g, o.tol)) {
      mixed.push_back({{"distributions", profile.distributions},
                       {"payoffs", ExpectedPayoffs(g, profile)}});
    }
    r["mixed_nash"] = mixed;
  } else {
    notes.push_back("Mixed equilibria are enumerated only for two players with at most "
                    "four strategies each.");
  }
  if (!o.classical_only && file.quantum) {
    const QuantumGame& q = *file.quantum;
    json embedded = json::object();
    const std::optional<StrategyFamily>& family = file.family;
    for (std::size_t k = 0; k < g.num_plays(); ++k) {
      const Play play = g.PlayAt(k);
      QuantumPlay qp;
      bool ok = true;
      for (std::size_t i = 0; i < g.num_players() && ok; ++i) {
        const std::string& label = g.strategy_sets()[i][play[i]];
        try {
          if (family) {
            qp.locals.push_back(ClassicalEmbedding(*family, label));
          } else {
            ok = false;
          }
        } catch (const Error&) {
          ok = false;
        }
      }
      if (ok) embedded[g.PlayLabel(play)] = ExpectedPayoffsQ(q, qp);
    }
    r["quantum_classical_embedding"] = embedded;
  }
  return r;
}

json RunQuantumize(const Options& o) {
  const GameFile file = RequireGame(o);
  const QuantumGame& q = RequireQuantum(file);
  json r;
  r["dimension"] = q.initial_state().dim();
  json locals = json::array();
  for (std::size_t i = 0; i < q.num_players(); ++i) locals.push_back(q.local_dim(i));
  r["local_dimensions"] = locals;
  r["basis_labels"] = q.basis().labels();
  json outcomes = json::object();
  for (std::size_t k = 0; k < q.basis().size(); ++k) {
    outcomes[q.basis().labels()[k]] = q.base().PlayLabel(q.base().PlayAt(q.outcome_play(k)));
  }
  r["outcome_plays"] = outcomes;
  json rho = json::array();
  const ComplexMatrix& m = q.initial_state().matrix();
  for (Eigen::Index row = 0; row < m.rows(); ++row) {
    json line = json::array();
    for (Eigen::Index col = 0; col < m.cols(); ++col) line.push_back(ComplexToJson(m(row, col)));
    rho.push_back(line);
  }
  r["initial_state"] = rho;
  json operators = json::array();
  for (std::size_t i = 0; i < q.num_players(); ++i) {
    const ComplexMatrix& op = q.payoff_operators()[i];
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(op, Eigen::EigenvaluesOnly);
    std::vector<double> spectrum(solver.eigenvalues().data(),
                                 solver.eigenvalues().data() + solver.eigenvalues().size());
    operators.push_back({{"player", q.base().players()[i]},
                         {"hermitian", IsHermitian(op, o.tol)},
                         {"spectrum", spectrum},
                         {"expectation_initial", PayoffsOfState(q, m)[i]}});
  }
  r["payoff_operators"] = operators;
  json commutators = json::array();
  double max_norm = 0.0;
  for (std::size_t i = 0; i < q.num_players(); ++i) {
    for (std::size_t j = i + 1; j < q.num_players(); ++j) {
      const double norm = CommutatorNorm(q.payoff_operators()[i], q.payoff_operators()[j]);
      max_norm = std::max(max_norm, norm);
      commutators.push_back({{"pair", {i, j}}, {"norm", norm}});
    }
  }
  r["commutator_norms"] = commutators;
  r["max_commutator_norm"] = max_norm;
  return r;
}

json RunPayoff(const Options& o, json& echo) {
  const GameFile file = RequireGame(o);
  const QuantumGame& q = RequireQuantum(file);
  json r;
  std::optional<DensityMatrix> final_state;
  if (!o.mix.empty()) {
    if (!file.family || file.family->kind() != FamilyKind::kFiniteSet) {
      throw ParameterError("--mix needs a finite_set family in the game file");
    }
    const auto mixtures = ParseMixtures(o.mix);
    echo["mix"] = mixtures;
    r["payoffs"] = MixedFinitePayoffs(q, mixtures, *file.family);
    MixedQuantumPlay play;
    for (const auto& probs : mixtures) {
      if (probs.size() != file.family->operators().size()) {
        throw ParameterError("each mixture needs one probability per operator");
      }
      UnitaryMixture mixture;
      for (std::size_t k = 0; k < probs.size(); ++k) {
        mixture.emplace_back(probs[k], file.family->operators()[k]);
      }
      play.locals.push_back(std::move(mixture));
    }
    final_state = FinalState(q, play);
  } else {
    QuantumPlay play{ResolveOperators(o, file, echo)};
    const auto by_trace = ExpectedPayoffsQ(q, play);
    const auto by_outcomes = ExpectedPayoffsByOutcomes(q, play);
    double gap = 0.0;
    for (std::size_t i = 0; i < by_trace.size(); ++i) {
      gap = std::max(gap, std::abs(by_trace[i] - by_outcomes[i]));
    }
    r["payoffs"] = by_trace;
    r["payoffs_by_outcomes"] = by_outcomes;
    r["path_discrepancy"] = gap;
    final_state = FinalState(q, play);
  }
  const auto probs = OutcomeProbabilities(final_state->matrix(), q.basis());
  json dist = json::object();
  for (std::size_t k = 0; k < probs.size(); ++k) dist[q.basis().labels()[k]] = probs[k];
  r["outcome_probabilities"] = dist;
  if (o.samples > 0) {
    std::mt19937_64 rng(o.cfg.seed);
    std::vector<long> counts(probs.size(), 0);
    for (long s = 0; s < o.samples; ++s) ++counts[SampleOutcomeIndex(*final_state, q.basis(), rng)];
    json freq = json::object();
    for (std::size_t k = 0; k < counts.size(); ++k) {
      freq[q.basis().labels()[k]] = static_cast<double>(counts[k]) / static_cast<double>(o.samples);
    }
    r["sampled_frequencies"] = freq;
  }
  return r;
}

json RunBestResponse(const Options& o, json& echo) {
  const GameFile file = RequireGame(o);
  const QuantumGame& q = RequireQuantum(file);
  if (o.player >= q.num_players()) throw ParameterError("--player out of range");
  const StrategyFamily family = ResolveFamily(o, file);
  const auto ops = ResolveOperators(o, file, echo);
  const BestResponse br = FindBestResponse(q, o.player, ops, family, o.cfg);
  QuantumPlay current{ops};
  const double before = ExpectedPayoffsQ(q, current)[o.player];
  json r;
  r["player"] = q.base().players()[o.player];
  r["point"] = br.point;
  r["payoff"] = br.payoff;
  r["current_payoff"] = before;
  r["gain"] = br.payoff - before;
  if (family.kind() == FamilyKind::kFiniteSet) {
    r["operator"] = family.labels()[static_cast<std::size_t>(std::lround(br.point[0]))];
  }
  return r;
}

json ReportToJson(const EquilibriumReport& rep, const ClassicalGame& g,
                  const StrategyFamily& family) {
  json r;
  r["kind"] = rep.kind == ProfileKind::kParams ? "params" : "mixture";
  r["profile"] = rep.profile;
  r["payoffs"] = rep.payoffs;
  json devs = json::array();
  for (std::size_t i = 0; i < rep.deviations.size(); ++i) {
    json d{{"player", g.players()[i]},
           {"point", rep.deviations[i].point},
           {"payoff", rep.deviations[i].payoff},
           {"gain", rep.deviations[i].payoff - rep.payoffs[i]}};
    if (family.kind() == FamilyKind::kFiniteSet && rep.kind == ProfileKind::kParams) {
      d["operator"] = family.labels()[static_cast<std::size_t>(std::lround(rep.deviations[i].point[0]))];
    }
    devs.push_back(d);
  }
  r["deviations"] = devs;
  r["max_unilateral_gain"] = rep.max_unilateral_gain;
  r["certified"] = rep.certified;
  r["refuted"] = rep.refuted;
  json flags = json::array();
  for (auto f : rep.pareto_flags) flags.push_back(ToString(f));
  r["pareto_flags"] = flags;
  return r;
}

json RunVerifyNash(const Options& o, json& echo) {
  const GameFile file = RequireGame(o);
  const QuantumGame& q = RequireQuantum(file);
  const StrategyFamily family = ResolveFamily(o, file);
  echo["family"] = ToString(family.kind());
  EquilibriumReport rep;
  if (!o.mix.empty()) {
    if (family.kind() != FamilyKind::kFiniteSet) {
      throw ParameterError("--mix needs a finite_set family");
    }
    const auto mixtures = ParseMixtures(o.mix);
    echo["mix"] = mixtures;
    rep = VerifyMixedNashFinite(q, mixtures, family, o.cfg.epsilon);
  } else {
    if (o.profile.empty()) throw ParameterError("give --profile or --mix");
    const auto points = ParseProfile(o.profile, family, q.num_players());
    echo["profile"] = PointsToJson(points);
    rep = VerifyNash(q, points, family, o.cfg);
  }
  json r = ReportToJson(rep, q.base(), family);
  if (!rep.certified) throw Refuted{r};
  return r;
}

json RunPareto(const Options& o, json& echo) {
  std::vector<ParetoEntry> entries;
  if (!o.entries.empty()) {
    for (const auto& item : Split(o.entries, ';')) {
      const auto colon = item.rfind(':');
      if (colon == std::string::npos) throw ParameterError("expected label:payoffs, got '" + item + "'");
      ParetoEntry e{Trim(item.substr(0, colon)), {}};
      for (const auto& token : Split(item.substr(colon + 1), ',')) {
        e.payoffs.push_back(ParseNumber(Trim(token)));
      }
      entries.push_back(std::move(e));
    }
    echo["entries"] = o.entries;
  }
  if (!o.game_path.empty()) {
    const GameFile file = RequireGame(o);
    const ClassicalGame& g = file.classical;
    for (std::size_t k = 0; k < g.num_plays(); ++k) {
      entries.push_back({g.PlayLabel(g.PlayAt(k)), g.Payoffs(g.PlayAt(k))});
    }
  }
  if (entries.empty()) throw ParameterError("give --entries or --game");
  const ParetoReport rep = BuildParetoReport(entries, o.tol);
  json r;
  json labels = json::array();
  json payoffs = json::object();
  for (const auto& e : entries) {
    labels.push_back(e.label);
    payoffs[e.label] = e.payoffs;
  }
  r["labels"] = labels;
  r["payoffs"] = payoffs;
  json relations = json::array();
  for (const auto& row : rep.relations) {
    json line = json::array();
    for (auto rel : row) line.push_back(ToString(rel));
    relations.push_back(line);
  }
  r["relations"] = relations;
  json optimal = json::array();
  for (auto k : rep.optimal) optimal.push_back(entries[k].label);
  r["optimal"] = optimal;
  return r;
}

json RunPlaySequential(const Options& o, json& echo) {
  const GameFile file = RequireGame(o);
  if (!file.sequential) throw ParameterError("game file has no sequential section");
  const SequentialQuantumGame& s = *file.sequential;
  if (o.moves.empty()) throw ParameterError("--moves is required");
  std::vector<UnitaryOperator> ops;
  std::vector<std::string> names;
  for (const auto& raw : Split(o.moves, ',')) {
    const std::string name = Trim(raw);
    std::optional<UnitaryOperator> op = s.ClassicalMove(name);
    if (!op) op = NamedOperator(name);
    if (!op) throw ParameterError("unknown move '" + name + "'");
    ops.push_back(*op);
    names.push_back(name);
  }
  echo["moves"] = names;
  const auto payoffs = PlaySequential(s, ops);
  const DensityMatrix final_state = SequentialFinalState(s, ops);
  json r;
  json by_player = json::object();
  for (std::size_t i = 0; i < s.num_players(); ++i) by_player[s.players()[i]] = payoffs[i];
  r["payoffs"] = payoffs;
  r["payoffs_by_player"] = by_player;
  const auto probs = OutcomeProbabilities(final_state.matrix(), s.basis());
  json dist = json::object();
  for (std::size_t k = 0; k < probs.size(); ++k) dist[s.state_labels()[k]] = probs[k];
  r["final_distribution"] = dist;
  return r;
}

json RunDemo(const Options& o, json& echo, std::vector<std::string>& notes) {
  if (o.entry_name.empty()) throw ParameterError("demo needs an entry name");
  const Parameters params = ParseParams(o.params);
  echo["entry"] = o.entry_name;
  echo["parameters"] = params;
  const CatalogEntry entry = LoadCatalogEntry(o.entry_name, params, false);
  const auto checks = VerifyDocumentedSolutions(entry, o.cfg);
  json r;
  r["parameters"] = entry.parameters;
  json solutions = json::array();
  bool all = true;
  for (std::size_t k = 0; k < checks.size(); ++k) {
    const SolutionCheck& c = checks[k];
    const DocumentedSolution& doc = entry.solutions[k];
    json s{{"label", c.label},
           {"kind", ToString(doc.kind)},
           {"formula", doc.formula},
           {"expected_payoffs", doc.expected_payoffs},
           {"payoffs", c.payoffs},
           {"payoff_error", c.payoff_error},
           {"passed", c.passed}};
    s["expectation"] = c.expectation == Expectation::kNash      ? "nash"
                       : c.expectation == Expectation::kNotNash ? "not_nash"
                                                                : "none";
    if (c.max_unilateral_gain) s["max_unilateral_gain"] = *c.max_unilateral_gain;
    solutions.push_back(s);
    all = all && c.passed;
  }
  r["solutions"] = solutions;
  r["all_passed"] = all;
  notes.insert(notes.end(), entry.notes.begin(), entry.notes.end());
  if (!all) throw Refuted{r};
  return r;
}

json RunExport(const Options& o, json& echo) {
  if (o.entry_name.empty()) throw ParameterError("export needs an entry name");
  const Parameters params = ParseParams(o.params);
  echo["entry"] = o.entry_name;
  const CatalogEntry entry = LoadCatalogEntry(o.entry_name, params, false);
  json doc = ExportGameFile(entry);
  ParseGameFile(doc.dump());
  return doc;
}

json Diagnostics(const Options& o) {
  return {{"tol", o.tol},
          {"search",
           {{"grid_resolution", o.cfg.grid_resolution},
            {"refinement_iterations", o.cfg.refinement_iterations},
            {"epsilon", o.cfg.epsilon},
            {"seed", o.cfg.seed}}}};
}

std::string Render(const json& report, const std::string& format) {
  const json normalized = NormalizeNumbers(report);
  if (format == "json") return normalized.dump(2) + "\n";
  return RenderText(normalized);
}

void RenderInto(const json& value, int indent, std::string& out);

bool IsScalarArray(const json& value) {
  if (!value.is_array()) return false;
  return std::all_of(value.begin(), value.end(),
                     [](const json& v) { return v.is_primitive(); });
}

std::string Scalar(const json& v) {
  if (v.is_number()) return FormatNumber(v.get<double>());
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

std::string InlineArray(const json& value) {
  std::string s = "[";
  for (std::size_t k = 0; k < value.size(); ++k) s += (k ? ", " : "") + Scalar(value[k]);
  return s + "]";
}

void RenderInto(const json& value, int indent, std::string& out) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  if (value.is_object()) {
    for (auto it = value.begin(); it != value.end(); ++it) {
      const json& v = it.value();
      if (v.is_primitive()) {
        out += pad + it.key() + ": " + Scalar(v) + "\n";
      } else if (IsScalarArray(v)) {
        out += pad + it.key() + ": " + InlineArray(v) + "\n";
      } else if (v.empty()) {
        out += pad + it.key() + ": " + (v.is_array() ? "[]" : "{}") + "\n";
      } else {
        out += pad + it.key() + ":\n";
        RenderInto(v, indent + 2, out);
      }
    }
  } else if (value.is_array()) {
    for (const json& v : value) {
      if (v.is_primitive()) {
        out += pad + "- " + Scalar(v) + "\n";
      } else if (IsScalarArray(v)) {
        out += pad + "- " + InlineArray(v) + "\n";
      } else {
        out += pad + "-\n";
        RenderInto(v, indent + 2, out);
      }
    }
  } else {
    out += pad + Scalar(value) + "\n";
  }
}

}  // namespace

double ParseAngle(std::string_view token) {
  static const std::regex pattern(
      R"(^\s*([+-])?\s*(\d+(?:\.\d*)?|\.\d+)?\s*(\*)?\s*pi\s*(?:/\s*(\d+(?:\.\d*)?))?\s*$)");
  const std::string text(token);
  std::smatch m;
  if (std::regex_match(text, m, pattern)) {
    double v = kPi;
    if (m[2].matched) v *= std::stod(m[2].str());
    if (m[4].matched) {
      const double d = std::stod(m[4].str());
      if (d == 0.0) throw ParameterError("division by zero in angle '" + text + "'");
      v /= d;
    }
    if (m[1].matched && m[1].str() == "-") v = -v;
    return v;
  }
  return ParseNumber(Trim(text));
}

json NormalizeNumbers(const json& value) {
  if (value.is_number_float()) {
    const double v = value.get<double>();
    if (!std::isfinite(v)) return nullptr;
    return std::stod(FormatNumber(v));
  }
  if (value.is_array()) {
    json out = json::array();
    for (const auto& v : value) out.push_back(NormalizeNumbers(v));
    return out;
  }
  if (value.is_object()) {
    json out = json::object();
    for (auto it = value.begin(); it != value.end(); ++it) out[it.key()] = NormalizeNumbers(it.value());
    return out;
  }
  return value;
}

std::string RenderText(const json& report) {
  std::string out;
  RenderInto(report, 0, out);
  return out;
}

CliResult RunCli(const std::vector<std::string>& args) {
  CLI::App app{"qgame: quantum game workbench"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("--tol", o.tol, "numerical tolerance")->check(CLI::PositiveNumber);
  app.add_option("--grid", o.cfg.grid_resolution, "best-response grid points per axis");
  app.add_option("--refine", o.cfg.refinement_iterations, "golden-section sweeps");
  app.add_option("--epsilon", o.cfg.epsilon, "Nash certification threshold");
  app.add_option("--seed", o.cfg.seed, "random seed");
  app.add_option("--format", o.format, "output format")->check(CLI::IsMember({"text", "json"}));

  auto* analyze = app.add_subcommand("analyze", "classical solution concepts");
  analyze->add_option("--game", o.game_path)->required();
  analyze->add_flag("--classical", o.classical_only, "skip the quantum section");

  auto* quantumize = app.add_subcommand("quantumize", "quantum game summary");
  quantumize->add_option("--game", o.game_path)->required();

  auto add_play_options = [&](CLI::App* sub) {
    sub->add_option("--game", o.game_path)->required();
    sub->add_option("--family", o.family_name, "one_param, two_param, three_param, finite_set");
    sub->add_option("--profile", o.profile, "parameters, player by player");
    sub->add_option("--play", o.play, "operator names, one per player");
    sub->add_option("--mix", o.mix, "probabilities over a finite set, ';' between players");
  };
  auto* payoff = app.add_subcommand("payoff", "evaluate a quantum play");
  add_play_options(payoff);
  payoff->add_option("--samples", o.samples, "draw seeded measurement samples");
  auto* best = app.add_subcommand("best-response", "best unilateral deviation");
  add_play_options(best);
  best->add_option("--player", o.player)->required();
  auto* verify = app.add_subcommand("verify-nash", "certify or refute a Nash equilibrium");
  add_play_options(verify);

  auto* pareto = app.add_subcommand("pareto", "Pareto relations between payoff vectors");
  pareto->add_option("--entries", o.entries, "label:p1,p2;label:...");
  pareto->add_option("--game", o.game_path, "add every classical play");

  auto* sequential = app.add_subcommand("play-sequential", "play the sequential protocol");
  sequential->add_option("--game", o.game_path)->required();
  sequential->add_option("--moves", o.moves)->required();

  auto* demo = app.add_subcommand("demo", "check a catalog entry's documented solutions");
  demo->add_option("name", o.entry_name)->required();
  demo->add_option("--param", o.params, "parameter override key=value");
  auto* exporter = app.add_subcommand("export", "write a catalog entry as a game file");
  exporter->add_option("name", o.entry_name)->required();
  exporter->add_option("--param", o.params, "parameter override key=value");
  exporter->add_option("--output", o.output_path, "write to a file instead of stdout");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    return {kExitOk, app.help()};
  } catch (const CLI::ParseError& e) {
    return {kExitInputError, std::string("error: ") + e.what() + "\n"};
  }
  for (auto* sub : app.get_subcommands()) o.command = sub->get_name();

  json report;
  json echo;
  echo["name"] = o.command;
  echo["args"] = args;
  std::vector<std::string> notes;
  int code = kExitOk;
  json results;
  try {
    ValidateSearchConfig(o.cfg);
    if (o.command == "analyze") {
      results = RunAnalyze(o, notes);
    } else if (o.command == "quantumize") {
      results = RunQuantumize(o);
    } else if (o.command == "payoff") {
      results = RunPayoff(o, echo);
    } else if (o.command == "best-response") {
      results = RunBestResponse(o, echo);
    } else if (o.command == "verify-nash") {
      results = RunVerifyNash(o, echo);
    } else if (o.command == "pareto") {
      results = RunPareto(o, echo);
    } else if (o.command == "play-sequential") {
      results = RunPlaySequential(o, echo);
    } else if (o.command == "demo") {
      results = RunDemo(o, echo, notes);
    } else if (o.command == "export") {
      json doc = RunExport(o, echo);
      if (o.output_path.empty()) return {kExitOk, doc.dump(2) + "\n"};
      std::ofstream out(o.output_path);
      if (!out) throw ParameterError("cannot write '" + o.output_path + "'");
      out << doc.dump(2) << "\n";
      results = {{"written", o.output_path}};
    }
  } catch (const Refuted& r) {
    results = r.results;
    code = kExitRefuted;
  } catch (const SchemaError& e) {
    json errs = e.errors();
    return {kExitInputError, Render({{"command", echo}, {"error", "invalid game file"},
                                     {"schema_errors", errs}, {"diagnostics", Diagnostics(o)}},
                                    o.format)};
  } catch (const Error& e) {
    return {kExitInputError, Render({{"command", echo}, {"error", e.what()},
                                     {"diagnostics", Diagnostics(o)}},
                                    o.format)};
  }
  report["command"] = echo;
  report["results"] = results;
  report["diagnostics"] = Diagnostics(o);
  report["notes"] = notes;
  report["status"] = code == kExitOk ? "ok" : "refuted";
  return {code, Render(report, o.format)};
}

}  // namespace qgame
