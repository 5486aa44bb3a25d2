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

#include "qgame/game_file.h"

#include <fstream>
#include <functional>
#include <sstream>

namespace qgame {

using nlohmann::json;

namespace {

std::string JoinErrors(const std::vector<std::string>& errors) {
  std::string out = "invalid game file";
  for (const auto& e : errors) out += "\n  " + e;
  return out;
}

// Collects validation errors with their JSON paths.
class Reader {
 public:
  void Fail(const std::string& path, const std::string& message) {
    errors_.push_back(path + ": " + message);
  }
  bool ok() const { return errors_.empty(); }
  const std::vector<std::string>& errors() const { return errors_; }

  // Runs `fn`, turning library errors into schema errors at `path`.
  template <typename Fn>
  auto Guard(const std::string& path, Fn fn) -> std::optional<decltype(fn())> {
    try {
      return fn();
    } catch (const Error& e) {
      Fail(path, e.what());
      return std::nullopt;
    }
  }

  std::optional<std::vector<std::string>> Strings(const json& j, const std::string& path) {
    if (!j.is_array()) {
      Fail(path, "expected an array of strings");
      return std::nullopt;
    }
    std::vector<std::string> out;
    for (std::size_t k = 0; k < j.size(); ++k) {
      if (!j[k].is_string()) {
        Fail(path + "[" + std::to_string(k) + "]", "expected a string");
        return std::nullopt;
      }
      out.push_back(j[k].get<std::string>());
    }
    return out;
  }

  std::optional<std::vector<double>> Numbers(const json& j, const std::string& path) {
    if (!j.is_array()) {
      Fail(path, "expected an array of numbers");
      return std::nullopt;
    }
    std::vector<double> out;
    for (std::size_t k = 0; k < j.size(); ++k) {
      if (!j[k].is_number()) {
        Fail(path + "[" + std::to_string(k) + "]", "expected a number");
        return std::nullopt;
      }
      out.push_back(j[k].get<double>());
    }
    return out;
  }

  std::optional<Complex> ComplexValue(const json& j, const std::string& path) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
      Fail(path, "bad [re, im] pair");
      return std::nullopt;
    }
    return Complex(j[0].get<double>(), j[1].get<double>());
  }

  std::optional<ComplexVector> Ket(const json& j, const std::string& path) {
    if (!j.is_array() || j.empty()) {
      Fail(path, "expected a non-empty array of [re, im] pairs");
      return std::nullopt;
    }
    ComplexVector v(static_cast<Eigen::Index>(j.size()));
    for (std::size_t k = 0; k < j.size(); ++k) {
      const auto z = ComplexValue(j[k], path + "[" + std::to_string(k) + "]");
      if (!z) return std::nullopt;
      v(static_cast<Eigen::Index>(k)) = *z;
    }
    return v;
  }

  std::optional<ComplexMatrix> Matrix(const json& j, const std::string& path) {
    if (!j.is_array() || j.empty() || !j[0].is_array() || j[0].empty()) {
      Fail(path, "expected a non-empty array of rows");
      return std::nullopt;
    }
    const std::size_t cols = j[0].size();
    ComplexMatrix m(static_cast<Eigen::Index>(j.size()), static_cast<Eigen::Index>(cols));
    for (std::size_t r = 0; r < j.size(); ++r) {
      const std::string row_path = path + "[" + std::to_string(r) + "]";
      if (!j[r].is_array() || j[r].size() != cols) {
        Fail(row_path, "rows must all have " + std::to_string(cols) + " entries");
        return std::nullopt;
      }
      for (std::size_t c = 0; c < cols; ++c) {
        const auto z = ComplexValue(j[r][c], row_path + "[" + std::to_string(c) + "]");
        if (!z) return std::nullopt;
        m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = *z;
      }
    }
    return m;
  }

 private:
  std::vector<std::string> errors_;
};

// Flattens a nested payoff array of the given shape, player 0 outermost.
bool FlattenTensor(const json& j, const std::vector<std::size_t>& shape, std::size_t depth,
                   std::vector<double>& out) {
  if (depth == shape.size()) {
    if (!j.is_number()) return false;
    out.push_back(j.get<double>());
    return true;
  }
  if (!j.is_array() || j.size() != shape[depth]) return false;
  for (const json& child : j) {
    if (!FlattenTensor(child, shape, depth + 1, out)) return false;
  }
  return true;
}

json NestTensor(const std::vector<double>& flat, const std::vector<std::size_t>& shape,
                std::size_t depth, std::size_t& cursor) {
  if (depth == shape.size()) return flat[cursor++];
  json arr = json::array();
  for (std::size_t k = 0; k < shape[depth]; ++k) {
    arr.push_back(NestTensor(flat, shape, depth + 1, cursor));
  }
  return arr;
}

std::string ShapeString(const std::vector<std::size_t>& shape) {
  std::string s;
  for (std::size_t k = 0; k < shape.size(); ++k) {
    s += (k ? "x" : "") + std::to_string(shape[k]);
  }
  return s;
}

// Initial state from a name or explicit matrix/ket. `basis_index` resolves
// the label after "computational:".
std::optional<DensityMatrix> ParseInitialState(
    Reader& reader, const json& j, const std::string& path, int dim,
    const std::function<std::optional<int>(const std::string&)>& basis_index) {
  if (j.is_string()) {
    const std::string name = j.get<std::string>();
    if (name == "ewl_entangled" || name == "phi_plus") {
      if (dim != 4) {
        reader.Fail(path, "'" + name + "' needs a two-qubit system");
        return std::nullopt;
      }
      return DensityMatrix::FromPure(name == "phi_plus" ? PhiPlusState()
                                                        : EwlEntangledState());
    }
    const std::string prefix = "computational:";
    if (name.rfind(prefix, 0) == 0) {
      const auto index = basis_index(name.substr(prefix.size()));
      if (!index) {
        reader.Fail(path, "unknown basis label '" + name.substr(prefix.size()) + "'");
        return std::nullopt;
      }
      return DensityMatrix::BasisState(dim, *index);
    }
    reader.Fail(path, "unknown named state '" + name + "'");
    return std::nullopt;
  }
  if (j.is_object() && j.contains("matrix")) {
    const auto m = reader.Matrix(j["matrix"], path + ".matrix");
    if (!m) return std::nullopt;
    return reader.Guard(path + ".matrix", [&] { return DensityMatrix(*m); });
  }
  if (j.is_object() && j.contains("ket")) {
    const auto v = reader.Ket(j["ket"], path + ".ket");
    if (!v) return std::nullopt;
    return reader.Guard(path + ".ket",
                        [&] { return DensityMatrix::FromPure(PureState(*v)); });
  }
  reader.Fail(path, "expected a state name or an object with \"matrix\" or \"ket\"");
  return std::nullopt;
}

std::optional<MeasurementBasis> ParseBasis(Reader& reader, const json& j,
                                           const std::string& path,
                                           const ClassicalGame& game) {
  if (j.is_string()) {
    const std::string name = j.get<std::string>();
    if (name == "computational") return ComputationalPlayBasis(game);
    if (name == "ewl_eta") return reader.Guard(path, [&] { return EwlEtaBasis(game); });
    if (name == "bell") return reader.Guard(path, [&] { return BellBasis(game); });
    reader.Fail(path, "unknown named basis '" + name + "'");
    return std::nullopt;
  }
  if (!j.is_object() || !j.contains("labels") || !j.contains("projectors") ||
      !j["projectors"].is_array()) {
    reader.Fail(path, "expected a basis name or {\"labels\", \"projectors\"}");
    return std::nullopt;
  }
  const auto labels = reader.Strings(j["labels"], path + ".labels");
  std::vector<ComplexMatrix> projectors;
  for (std::size_t k = 0; k < j["projectors"].size(); ++k) {
    const auto m = reader.Matrix(j["projectors"][k],
                                 path + ".projectors[" + std::to_string(k) + "]");
    if (!m) return std::nullopt;
    projectors.push_back(*m);
  }
  if (!labels) return std::nullopt;
  return reader.Guard(path, [&] { return MeasurementBasis(projectors, *labels); });
}

std::optional<StrategyFamily> ParseFamily(Reader& reader, const json& j,
                                          const std::string& path) {
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string()) {
    reader.Fail(path, "expected {\"kind\": ...}");
    return std::nullopt;
  }
  const auto kind = ParseFamilyKind(j["kind"].get<std::string>());
  if (!kind) {
    reader.Fail(path + ".kind", "unknown family kind '" + j["kind"].get<std::string>() + "'");
    return std::nullopt;
  }
  if (*kind != FamilyKind::kFiniteSet) return StrategyFamily::OfKind(*kind);
  if (!j.contains("operators") || !j["operators"].is_array() || j["operators"].empty()) {
    reader.Fail(path + ".operators", "finite_set needs a non-empty operator list");
    return std::nullopt;
  }
  std::vector<std::string> labels;
  std::vector<UnitaryOperator> ops;
  for (std::size_t k = 0; k < j["operators"].size(); ++k) {
    const std::string op_path = path + ".operators[" + std::to_string(k) + "]";
    const json& op = j["operators"][k];
    if (!op.is_object() || !op.contains("label") || !op["label"].is_string()) {
      reader.Fail(op_path, "expected {\"label\": ...}");
      return std::nullopt;
    }
    const std::string label = op["label"].get<std::string>();
    if (op.contains("matrix")) {
      const auto m = reader.Matrix(op["matrix"], op_path + ".matrix");
      if (!m) return std::nullopt;
      auto u = reader.Guard(op_path + ".matrix", [&] { return UnitaryOperator(*m); });
      if (!u) return std::nullopt;
      ops.push_back(*u);
    } else if (auto named = NamedOperator(label)) {
      ops.push_back(*named);
    } else {
      reader.Fail(op_path, "no built-in operator '" + label + "'; give a matrix");
      return std::nullopt;
    }
    labels.push_back(label);
  }
  return reader.Guard(path, [&] { return StrategyFamily::FiniteSet(labels, ops); });
}

std::optional<SequentialQuantumGame> ParseSequential(Reader& reader, const json& j,
                                                     const std::string& path) {
  if (!j.is_object()) {
    reader.Fail(path, "expected an object");
    return std::nullopt;
  }
  for (const char* key : {"players", "state_labels", "initial_state", "moves", "schedule",
                          "payoffs"}) {
    if (!j.contains(key)) reader.Fail(path + "." + key, "missing");
  }
  if (!reader.ok()) return std::nullopt;
  const auto players = reader.Strings(j["players"], path + ".players");
  const auto labels = reader.Strings(j["state_labels"], path + ".state_labels");
  if (!players || !labels || labels->empty()) {
    if (labels && labels->empty()) reader.Fail(path + ".state_labels", "empty");
    return std::nullopt;
  }
  const int dim = static_cast<int>(labels->size());
  const auto initial = ParseInitialState(
      reader, j["initial_state"], path + ".initial_state", dim,
      [&](const std::string& label) -> std::optional<int> {
        for (std::size_t k = 0; k < labels->size(); ++k) {
          if ((*labels)[k] == label) return static_cast<int>(k);
        }
        return std::nullopt;
      });
  std::vector<std::pair<std::string, UnitaryOperator>> moves;
  if (!j["moves"].is_array()) reader.Fail(path + ".moves", "expected an array");
  for (std::size_t k = 0; j["moves"].is_array() && k < j["moves"].size(); ++k) {
    const std::string move_path = path + ".moves[" + std::to_string(k) + "]";
    const json& move = j["moves"][k];
    if (!move.is_object() || !move.contains("name") || !move["name"].is_string() ||
        !move.contains("permutation")) {
      reader.Fail(move_path, "expected {\"name\", \"permutation\"}");
      continue;
    }
    const auto perm = reader.Numbers(move["permutation"], move_path + ".permutation");
    if (!perm) continue;
    std::vector<std::size_t> indices;
    bool integral = true;
    for (double v : *perm) {
      integral = integral && v >= 0 && v == static_cast<double>(static_cast<std::size_t>(v));
      indices.push_back(static_cast<std::size_t>(v));
    }
    if (!integral || indices.size() != labels->size()) {
      reader.Fail(move_path + ".permutation",
                  "must be a permutation of 0.." + std::to_string(dim - 1));
      continue;
    }
    auto u = reader.Guard(move_path + ".permutation",
                          [&] { return UnitaryOperator(PermutationMatrix(indices)); });
    if (u) moves.emplace_back(move["name"].get<std::string>(), *u);
  }
  const auto schedule_values = reader.Numbers(j["schedule"], path + ".schedule");
  std::vector<std::size_t> schedule;
  if (schedule_values) {
    for (double v : *schedule_values) {
      if (v < 0 || v != static_cast<double>(static_cast<std::size_t>(v))) {
        reader.Fail(path + ".schedule", "entries must be player indices");
        break;
      }
      schedule.push_back(static_cast<std::size_t>(v));
    }
  }
  std::vector<std::vector<double>> payoffs;
  if (!j["payoffs"].is_array()) reader.Fail(path + ".payoffs", "expected an array");
  for (std::size_t k = 0; j["payoffs"].is_array() && k < j["payoffs"].size(); ++k) {
    const auto row = reader.Numbers(j["payoffs"][k], path + ".payoffs[" + std::to_string(k) + "]");
    if (row) payoffs.push_back(*row);
  }
  if (!reader.ok() || !initial) return std::nullopt;
  return reader.Guard(path, [&] {
    return SequentialQuantumGame(*players, *labels, *initial, schedule, moves, payoffs);
  });
}

}  // namespace

SchemaError::SchemaError(std::vector<std::string> errors)
    : Error(JoinErrors(errors)), errors_(std::move(errors)) {}

GameFile ParseGameFile(std::string_view text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw SchemaError({std::string("$: malformed JSON: ") + e.what()});
  }
  Reader reader;
  if (!root.is_object()) throw SchemaError({"$: expected a JSON object"});
  if (!root.contains("schema_version") || !root["schema_version"].is_number_integer()) {
    reader.Fail("schema_version", "missing or not an integer");
  } else if (root["schema_version"].get<int>() != kSchemaVersion) {
    reader.Fail("schema_version", "unsupported version " +
                                      std::to_string(root["schema_version"].get<int>()));
  }
  std::string name;
  if (root.contains("name")) {
    if (root["name"].is_string()) {
      name = root["name"].get<std::string>();
    } else {
      reader.Fail("name", "expected a string");
    }
  }
  for (const char* key : {"players", "strategy_sets", "payoffs"}) {
    if (!root.contains(key)) reader.Fail(key, "missing");
  }
  if (!reader.ok()) throw SchemaError(reader.errors());

  const auto players = reader.Strings(root["players"], "players");
  std::vector<std::vector<std::string>> sets;
  if (!root["strategy_sets"].is_array()) {
    reader.Fail("strategy_sets", "expected an array");
  } else {
    for (std::size_t k = 0; k < root["strategy_sets"].size(); ++k) {
      const auto set = reader.Strings(root["strategy_sets"][k],
                                      "strategy_sets[" + std::to_string(k) + "]");
      if (set) sets.push_back(*set);
    }
  }
  if (!reader.ok()) throw SchemaError(reader.errors());
  if (sets.size() != players->size()) {
    reader.Fail("strategy_sets", "expected " + std::to_string(players->size()) +
                                     " strategy sets, one per player");
    throw SchemaError(reader.errors());
  }
  std::vector<std::size_t> shape;
  for (const auto& s : sets) shape.push_back(s.size());
  std::vector<std::vector<double>> payoffs;
  const json& payoff_json = root["payoffs"];
  if (!payoff_json.is_array() || payoff_json.size() != players->size()) {
    reader.Fail("payoffs", "expected one payoff tensor per player");
  } else {
    for (std::size_t i = 0; i < payoff_json.size(); ++i) {
      std::vector<double> flat;
      if (!FlattenTensor(payoff_json[i], shape, 0, flat)) {
        reader.Fail("payoffs[" + std::to_string(i) + "]",
                    "payoff tensor of player " + std::to_string(i) +
                        " must be a numeric array of shape " + ShapeString(shape));
      }
      payoffs.push_back(std::move(flat));
    }
  }
  if (!reader.ok()) throw SchemaError(reader.errors());
  auto classical =
      reader.Guard("$", [&] { return ClassicalGame(*players, sets, payoffs); });
  if (!classical) throw SchemaError(reader.errors());

  GameFile file{kSchemaVersion, name, *classical, std::nullopt, std::nullopt, std::nullopt};

  if (root.contains("quantum")) {
    const json& q = root["quantum"];
    if (!q.is_object()) {
      reader.Fail("quantum", "expected an object");
    } else {
      const int dim = static_cast<int>(classical->num_plays());
      std::optional<DensityMatrix> initial;
      if (q.contains("initial_state")) {
        initial = ParseInitialState(
            reader, q["initial_state"], "quantum.initial_state", dim,
            [&](const std::string& label) -> std::optional<int> {
              try {
                return static_cast<int>(classical->PlayIndex(classical->ParsePlayLabel(label)));
              } catch (const Error&) {
                return std::nullopt;
              }
            });
      } else {
        reader.Fail("quantum.initial_state", "missing");
      }
      std::optional<MeasurementBasis> basis =
          q.contains("basis") ? ParseBasis(reader, q["basis"], "quantum.basis", *classical)
                              : std::optional<MeasurementBasis>(ComputationalPlayBasis(*classical));
      if (q.contains("family")) file.family = ParseFamily(reader, q["family"], "quantum.family");
      if (initial && basis) {
        file.quantum =
            reader.Guard("quantum", [&] { return QuantumGame(*classical, *initial, *basis); });
      }
    }
  }
  if (root.contains("sequential")) {
    file.sequential = ParseSequential(reader, root["sequential"], "sequential");
  }
  if (!reader.ok()) throw SchemaError(reader.errors());
  return file;
}

GameFile LoadGameFile(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError({"$: cannot open '" + path.string() + "'"});
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return ParseGameFile(buffer.str());
}

json MatrixToJson(const ComplexMatrix& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      row.push_back({m(r, c).real(), m(r, c).imag()});
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

json ExportGameFile(const CatalogEntry& entry) {
  const ClassicalGame& g = entry.classical;
  json out;
  out["schema_version"] = kSchemaVersion;
  out["name"] = entry.name;
  out["players"] = g.players();
  out["strategy_sets"] = g.strategy_sets();
  std::vector<std::size_t> shape;
  for (const auto& s : g.strategy_sets()) shape.push_back(s.size());
  json payoffs = json::array();
  for (const auto& tensor : g.payoff_tensors()) {
    std::size_t cursor = 0;
    payoffs.push_back(NestTensor(tensor, shape, 0, cursor));
  }
  out["payoffs"] = std::move(payoffs);
  if (!entry.parameters.empty()) out["parameters"] = entry.parameters;

  if (entry.quantum) {
    json q;
    if (entry.name == "prisoners_dilemma") {
      q["initial_state"] = "ewl_entangled";
      q["basis"] = "ewl_eta";
      q["family"] = {{"kind", "two_param"}};
    } else {
      if (entry.name == "battle_of_sexes") {
        q["initial_state"] = "phi_plus";
        q["basis"] = "computational";
      } else {
        q["initial_state"] = {{"matrix", MatrixToJson(entry.quantum->initial_state().matrix())}};
        json projectors = json::array();
        for (const auto& p : entry.quantum->basis().projectors()) {
          projectors.push_back(MatrixToJson(p));
        }
        q["basis"] = {{"labels", entry.quantum->basis().labels()},
                      {"projectors", std::move(projectors)}};
      }
      if (entry.operator_set) {
        json ops = json::array();
        for (std::size_t k = 0; k < entry.operator_set->labels().size(); ++k) {
          ops.push_back({{"label", entry.operator_set->labels()[k]},
                         {"matrix", MatrixToJson(entry.operator_set->operators()[k].matrix())}});
        }
        q["family"] = {{"kind", "finite_set"}, {"operators", std::move(ops)}};
      }
    }
    out["quantum"] = std::move(q);
  }
  if (entry.sequential) {
    const SequentialQuantumGame& s = *entry.sequential;
    json seq;
    seq["players"] = s.players();
    seq["state_labels"] = s.state_labels();
    seq["initial_state"] = {{"matrix", MatrixToJson(s.initial_state().matrix())}};
    json moves = json::array();
    for (const auto& [name, u] : s.classical_moves()) {
      std::vector<std::size_t> perm(static_cast<std::size_t>(u.dim()));
      for (Eigen::Index c = 0; c < u.matrix().cols(); ++c) {
        Eigen::Index row = 0;
        u.matrix().col(c).cwiseAbs().maxCoeff(&row);
        perm[static_cast<std::size_t>(c)] = static_cast<std::size_t>(row);
      }
      moves.push_back({{"name", name}, {"permutation", perm}});
    }
    seq["moves"] = std::move(moves);
    seq["schedule"] = s.schedule();
    seq["payoffs"] = s.payoff_values();
    out["sequential"] = std::move(seq);
  }
  return out;
}

}  // namespace qgame
