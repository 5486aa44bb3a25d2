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

#ifndef QGAME_CLI_H_
#define QGAME_CLI_H_

// Command-line workbench over the library.
//
//   qgame analyze --game pd.json --classical
//   qgame quantumize --game pd.json
//   qgame payoff --game pd.json --profile 0,pi/2,0,pi/2
//   qgame best-response --game pd.json --player 0 --profile pi,0,pi,0
//   qgame verify-nash --game pd.json --family two_param --profile 0,pi/2,0,pi/2
//   qgame pareto --entries "QQ:2.5,2.5;mix:1.75,1.75"
//   qgame play-sequential --game penny.json --moves UQstar,F,UQstar
//   qgame demo prisoners_dilemma
//   qgame export penny_flip
//
// Shared flags: --tol, --grid, --epsilon, --seed, --refine, --format text|json.
// Exit status is 0 on success, 1 when an analysis refutes the claim being
// checked, 2 on input errors.

#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace qgame {

inline constexpr int kExitOk = 0;
inline constexpr int kExitRefuted = 1;
inline constexpr int kExitInputError = 2;

struct CliResult {
  int exit_code = kExitOk;
  std::string output;
};

// `args` excludes the program name.
CliResult RunCli(const std::vector<std::string>& args);

// Radians: a plain number, or a multiple/fraction of "pi" such as "pi/2",
// "-3pi/4" and "3*pi/4". Throws ParameterError.
double ParseAngle(std::string_view token);

// Rounds every number to 12 significant digits and turns -0 into 0.
nlohmann::json NormalizeNumbers(const nlohmann::json& value);

// Deterministic indented text rendering of a report.
std::string RenderText(const nlohmann::json& report);

}  // namespace qgame

#endif  // QGAME_CLI_H_
