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

#ifndef QGAME_GAME_FILE_H_
#define QGAME_GAME_FILE_H_

// JSON game definition files.
//
//   {
//     "schema_version": 1,
//     "name": "prisoners_dilemma",
//     "players": ["A", "B"],
//     "strategy_sets": [["C", "D"], ["C", "D"]],
//     "payoffs": [[[-1, -5], [0, -3]], [[-1, 0], [-5, -3]]],
//     "quantum": {
//       "initial_state": "ewl_entangled",
//       "basis": "ewl_eta",
//       "family": {"kind": "two_param"}
//     },
//     "sequential": {
//       "players": ["Q", "C"],
//       "state_labels": ["H", "T"],
//       "initial_state": "computational:H",
//       "moves": [{"name": "N", "permutation": [0, 1]}, ...],
//       "schedule": [0, 1, 0],
//       "payoffs": [[1, -1], [-1, 1]]
//     }
//   }
//
// "payoffs" holds one nested array per player, indexed by the players'
// strategies in order. Complex numbers are [re, im] pairs. Named initial
// states: "ewl_entangled", "phi_plus", "computational:<play or state label>";
// or {"matrix": [[[re, im], ...], ...]} / {"ket": [[re, im], ...]}. Named
// bases: "computational", "ewl_eta", "bell"; or {"labels": [...],
// "projectors": [matrix, ...]}. Families: {"kind": "one_param" | "two_param" |
// "three_param"} or {"kind": "finite_set", "operators": [{"label": "I"},
// {"label": "Y", "matrix": ...}]} where a missing matrix means a built-in
// operator of that name.

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "qgame/catalog.h"
#include "qgame/classical_game.h"
#include "qgame/errors.h"
#include "qgame/quantumizer.h"
#include "qgame/strategy_space.h"

namespace qgame {

inline constexpr int kSchemaVersion = 1;

// Every problem found while validating a document, each prefixed with the
// JSON path of the offending field.
class SchemaError : public Error {
 public:
  explicit SchemaError(std::vector<std::string> errors);
  const std::vector<std::string>& errors() const { return errors_; }

 private:
  std::vector<std::string> errors_;
};

struct GameFile {
  int schema_version = kSchemaVersion;
  std::string name;
  ClassicalGame classical;
  std::optional<QuantumGame> quantum;
  std::optional<StrategyFamily> family;
  std::optional<SequentialQuantumGame> sequential;
};

GameFile ParseGameFile(std::string_view text);
GameFile LoadGameFile(const std::filesystem::path& path);

nlohmann::json ExportGameFile(const CatalogEntry& entry);

// [re, im] pairs, row-major nested arrays.
nlohmann::json MatrixToJson(const ComplexMatrix& m);

}  // namespace qgame

#endif  // QGAME_GAME_FILE_H_
