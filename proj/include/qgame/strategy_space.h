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

#ifndef QGAME_STRATEGY_SPACE_H_
#define QGAME_STRATEGY_SPACE_H_

// Single-qubit strategy families and their parameter grids.
//
//   one_param    U(t)       = [[cos(t/2), sin(t/2)], [-sin(t/2), cos(t/2)]]
//   two_param    U(t, p)    = [[e^{ip} cos(t/2), sin(t/2)],
//                              [-sin(t/2), e^{-ip} cos(t/2)]]
//   three_param  U(t, p, l) = [[e^{ip} cos(t/2), e^{-il} sin(t/2)],
//                              [-e^{il} sin(t/2), e^{-ip} cos(t/2)]]
//
// with t in [0, pi], p in [0, pi/2] (two_param) or [0, 2pi) (three_param) and
// l in [0, 2pi). A finite_set family is a labelled list of unitaries of any
// common dimension; its single "parameter" is the operator index.

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qgame/quantum_core.h"

namespace qgame {

enum class FamilyKind { kOneParam, kTwoParam, kThreeParam, kFiniteSet };

const char* ToString(FamilyKind kind);
std::optional<FamilyKind> ParseFamilyKind(std::string_view name);

struct ParamRange {
  double lo = 0.0;
  double hi = 0.0;
  // Excludes `hi`; used for periodic angles.
  bool half_open = false;
};

using ParamPoint = std::vector<double>;

class StrategyFamily {
 public:
  static StrategyFamily OneParam();
  static StrategyFamily TwoParam();
  static StrategyFamily ThreeParam();
  static StrategyFamily FiniteSet(std::vector<std::string> labels,
                                  std::vector<UnitaryOperator> operators);
  static StrategyFamily OfKind(FamilyKind kind);

  FamilyKind kind() const { return kind_; }
  std::size_t arity() const { return ranges_.size(); }
  const std::vector<ParamRange>& ranges() const { return ranges_; }
  // Hilbert-space dimension the operators act on.
  int dim() const;

  const std::vector<std::string>& labels() const { return labels_; }
  const std::vector<UnitaryOperator>& operators() const { return operators_; }

  bool Contains(const ParamPoint& point, double slack = 1e-9) const;

 private:
  FamilyKind kind_ = FamilyKind::kOneParam;
  std::vector<ParamRange> ranges_;
  std::vector<std::string> labels_;
  std::vector<UnitaryOperator> operators_;
};

// Closed-form matrices, no range checks.
ComplexMatrix OneParamMatrix(double theta);
ComplexMatrix TwoParamMatrix(double theta, double phi);
ComplexMatrix ThreeParamMatrix(double theta, double phi, double lambda);

// Throws RangeError if `point` is outside the family's ranges.
UnitaryOperator ParamUnitary(const StrategyFamily& family, const ParamPoint& point);

// The parameter point of a classical strategy label: "C" -> U(0, ...),
// "D" -> U(pi, 0, ...) for the parametric families; the operator index for
// finite sets.
ParamPoint ClassicalPoint(const StrategyFamily& family, const std::string& label);
UnitaryOperator ClassicalEmbedding(const StrategyFamily& family,
                                   const std::string& label);

// Uniform grid, first coordinate slowest. Closed ranges include both
// endpoints; half-open ranges drop the right one. resolution^arity points
// (finite sets always return every index).
std::vector<ParamPoint> ParameterGrid(const StrategyFamily& family, int resolution);

// Built-in qubit operators: "I"/"N" (identity), "X"/"F" (bit flip),
// "UQstar"/"H" (Hadamard), "UC", "UD", "UQ" (two_param at (0,0), (pi,0),
// (0,pi/2)). Returns nullopt for unknown names.
std::optional<UnitaryOperator> NamedOperator(std::string_view name);

}  // namespace qgame

#endif  // QGAME_STRATEGY_SPACE_H_
