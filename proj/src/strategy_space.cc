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

#include "qgame/strategy_space.h"

#include <cmath>
#include <numbers>
#include <sstream>

#include "qgame/errors.h"

namespace qgame {

using std::numbers::pi;

const char* ToString(FamilyKind kind) {
  switch (kind) {
    case FamilyKind::kOneParam:
      return "one_param";
    case FamilyKind::kTwoParam:
      return "two_param";
    case FamilyKind::kThreeParam:
      return "three_param";
    case FamilyKind::kFiniteSet:
      return "finite_set";
  }
  return "unknown";
}

std::optional<FamilyKind> ParseFamilyKind(std::string_view name) {
  if (name == "one_param") return FamilyKind::kOneParam;
  if (name == "two_param") return FamilyKind::kTwoParam;
  if (name == "three_param") return FamilyKind::kThreeParam;
  if (name == "finite_set") return FamilyKind::kFiniteSet;
  return std::nullopt;
}

StrategyFamily StrategyFamily::OneParam() {
  StrategyFamily f;
  f.kind_ = FamilyKind::kOneParam;
  f.ranges_ = {{0.0, pi, false}};
  return f;
}

StrategyFamily StrategyFamily::TwoParam() {
  StrategyFamily f;
  f.kind_ = FamilyKind::kTwoParam;
  f.ranges_ = {{0.0, pi, false}, {0.0, pi / 2, false}};
  return f;
}

StrategyFamily StrategyFamily::ThreeParam() {
  StrategyFamily f;
  f.kind_ = FamilyKind::kThreeParam;
  f.ranges_ = {{0.0, pi, false}, {0.0, 2 * pi, true}, {0.0, 2 * pi, true}};
  return f;
}

StrategyFamily StrategyFamily::FiniteSet(std::vector<std::string> labels,
                                         std::vector<UnitaryOperator> operators) {
  if (operators.empty()) throw ShapeError("finite strategy set is empty");
  if (labels.size() != operators.size()) {
    throw ShapeError("finite strategy set needs one label per operator");
  }
  for (const auto& op : operators) {
    if (op.dim() != operators.front().dim()) {
      throw ShapeError("finite strategy set operators differ in dimension");
    }
  }
  StrategyFamily f;
  f.kind_ = FamilyKind::kFiniteSet;
  f.ranges_ = {{0.0, static_cast<double>(operators.size() - 1), false}};
  f.labels_ = std::move(labels);
  f.operators_ = std::move(operators);
  return f;
}

StrategyFamily StrategyFamily::OfKind(FamilyKind kind) {
  switch (kind) {
    case FamilyKind::kOneParam:
      return OneParam();
    case FamilyKind::kTwoParam:
      return TwoParam();
    case FamilyKind::kThreeParam:
      return ThreeParam();
    case FamilyKind::kFiniteSet:
      break;
  }
  throw UnsupportedError("finite_set families need explicit operators");
}

int StrategyFamily::dim() const {
  return kind_ == FamilyKind::kFiniteSet ? operators_.front().dim() : 2;
}

bool StrategyFamily::Contains(const ParamPoint& point, double slack) const {
  if (point.size() != ranges_.size()) return false;
  for (std::size_t k = 0; k < point.size(); ++k) {
    const ParamRange& r = ranges_[k];
    if (!std::isfinite(point[k]) || point[k] < r.lo - slack) return false;
    if (r.half_open ? point[k] >= r.hi : point[k] > r.hi + slack) return false;
  }
  if (kind_ == FamilyKind::kFiniteSet && point[0] != std::round(point[0])) return false;
  return true;
}

ComplexMatrix OneParamMatrix(double theta) {
  return ThreeParamMatrix(theta, 0.0, 0.0);
}

ComplexMatrix TwoParamMatrix(double theta, double phi) {
  return ThreeParamMatrix(theta, phi, 0.0);
}

ComplexMatrix ThreeParamMatrix(double theta, double phi, double lambda) {
  const double c = std::cos(theta / 2);
  const double s = std::sin(theta / 2);
  ComplexMatrix m(2, 2);
  m(0, 0) = std::polar(c, phi);
  m(0, 1) = std::polar(s, -lambda);
  m(1, 0) = -std::polar(s, lambda);
  m(1, 1) = std::polar(c, -phi);
  return m;
}

UnitaryOperator ParamUnitary(const StrategyFamily& family, const ParamPoint& point) {
  if (!family.Contains(point)) {
    std::ostringstream msg;
    msg << "parameter point (";
    for (std::size_t k = 0; k < point.size(); ++k) msg << (k ? ", " : "") << point[k];
    msg << ") outside the " << ToString(family.kind()) << " range";
    throw RangeError(msg.str());
  }
  switch (family.kind()) {
    case FamilyKind::kOneParam:
      return UnitaryOperator(OneParamMatrix(point[0]));
    case FamilyKind::kTwoParam:
      return UnitaryOperator(TwoParamMatrix(point[0], point[1]));
    case FamilyKind::kThreeParam:
      return UnitaryOperator(ThreeParamMatrix(point[0], point[1], point[2]));
    case FamilyKind::kFiniteSet:
      return family.operators()[static_cast<std::size_t>(std::lround(point[0]))];
  }
  throw UnsupportedError("unknown family kind");
}

ParamPoint ClassicalPoint(const StrategyFamily& family, const std::string& label) {
  if (family.kind() == FamilyKind::kFiniteSet) {
    for (std::size_t k = 0; k < family.labels().size(); ++k) {
      if (family.labels()[k] == label) return {static_cast<double>(k)};
    }
  } else if (label == "C") {
    return ParamPoint(family.arity(), 0.0);
  } else if (label == "D") {
    ParamPoint point(family.arity(), 0.0);
    point[0] = pi;
    return point;
  }
  throw ParameterError("no classical strategy '" + label + "' in the " +
                       ToString(family.kind()) + " family");
}

UnitaryOperator ClassicalEmbedding(const StrategyFamily& family,
                                   const std::string& label) {
  return ParamUnitary(family, ClassicalPoint(family, label));
}

std::vector<ParamPoint> ParameterGrid(const StrategyFamily& family, int resolution) {
  if (family.kind() == FamilyKind::kFiniteSet) {
    std::vector<ParamPoint> points;
    for (std::size_t k = 0; k < family.operators().size(); ++k) {
      points.push_back({static_cast<double>(k)});
    }
    return points;
  }
  if (resolution < 2) throw RangeError("grid resolution must be at least 2");
  std::vector<std::vector<double>> axes;
  for (const ParamRange& r : family.ranges()) {
    std::vector<double> axis;
    const double step = (r.hi - r.lo) / (r.half_open ? resolution : resolution - 1);
    for (int k = 0; k < resolution; ++k) axis.push_back(r.lo + k * step);
    if (!r.half_open) axis.back() = r.hi;
    axes.push_back(std::move(axis));
  }
  std::vector<ParamPoint> points(1);
  for (const auto& axis : axes) {
    std::vector<ParamPoint> next;
    next.reserve(points.size() * axis.size());
    for (const ParamPoint& prefix : points) {
      for (double v : axis) {
        ParamPoint p = prefix;
        p.push_back(v);
        next.push_back(std::move(p));
      }
    }
    points = std::move(next);
  }
  return points;
}

std::optional<UnitaryOperator> NamedOperator(std::string_view name) {
  ComplexMatrix m(2, 2);
  if (name == "I" || name == "N") {
    m << 1, 0, 0, 1;
  } else if (name == "X" || name == "F") {
    m << 0, 1, 1, 0;
  } else if (name == "UQstar" || name == "H") {
    const double r = 1.0 / std::sqrt(2.0);
    m << r, r, r, -r;
  } else if (name == "UC") {
    m = TwoParamMatrix(0.0, 0.0);
  } else if (name == "UD") {
    m = TwoParamMatrix(pi, 0.0);
  } else if (name == "UQ") {
    m = TwoParamMatrix(0.0, pi / 2);
  } else {
    return std::nullopt;
  }
  return UnitaryOperator(std::move(m));
}

}  // namespace qgame
