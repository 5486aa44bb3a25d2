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

#include "qgame/catalog.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "qgame/errors.h"

namespace qgame {
namespace {

TEST(CatalogTest, DefaultEntriesVerify) {
  const auto names = CatalogNames();
  EXPECT_EQ(names, (std::vector<std::string>{"penny_flip", "prisoners_dilemma",
                                             "battle_of_sexes"}));
  for (const auto& name : names) {
    const CatalogEntry entry = LoadCatalogEntry(name);
    EXPECT_EQ(entry.name, name);
    EXPECT_FALSE(entry.solutions.empty());
    for (const SolutionCheck& check : VerifyDocumentedSolutions(entry)) {
      EXPECT_TRUE(check.passed) << name << ": " << check.label;
      EXPECT_LE(check.payoff_error, 1e-9) << name << ": " << check.label;
    }
  }
}

TEST(CatalogTest, PrisonersDilemmaFollowsParameters) {
  const CatalogEntry entry =
      LoadCatalogEntry("prisoners_dilemma", {{"alpha", 7}, {"beta", 4}, {"gamma", 2}});
  EXPECT_EQ(entry.classical.Payoffs({0, 1}), (std::vector<double>{-7, 0}));
  EXPECT_EQ(entry.classical.Payoffs({1, 1}), (std::vector<double>{-4, -4}));
  const auto it = std::find_if(entry.solutions.begin(), entry.solutions.end(),
                               [](const auto& s) { return s.label == "two_param (U_Q, U_Q)"; });
  ASSERT_NE(it, entry.solutions.end());
  EXPECT_EQ(it->expected_payoffs, (std::vector<double>{-2, -2}));
  EXPECT_EQ(it->expectation, Expectation::kNash);
}

TEST(CatalogTest, BattleOfSexesMixedEquilibriumFromIndifference) {
  const double a = 5, b = 3, g = 2;
  const CatalogEntry entry =
      LoadCatalogEntry("battle_of_sexes", {{"alpha", a}, {"beta", b}, {"gamma", g}});
  const auto it = std::find_if(entry.solutions.begin(), entry.solutions.end(),
                               [](const auto& s) { return s.kind == SolutionKind::kClassicalMixed; });
  ASSERT_NE(it, entry.solutions.end());
  // Row player mixes so that the column player is indifferent, and vice versa.
  const double p = it->profile[0][0];
  const double q = it->profile[1][0];
  EXPECT_NEAR(p * b + (1 - p) * g, p * g + (1 - p) * a, 1e-12);
  EXPECT_NEAR(q * a + (1 - q) * g, q * g + (1 - q) * b, 1e-12);
  EXPECT_NEAR(it->expected_payoffs[0], (a * b - g * g) / (a + b - 2 * g), 1e-12);
}

TEST(CatalogTest, RejectsBadParameters) {
  EXPECT_THROW(LoadCatalogEntry("prisoners_dilemma", {{"delta", 1}}), ParameterError);
  EXPECT_THROW(LoadCatalogEntry("prisoners_dilemma", {{"gamma", 4}}), ParameterError);
  EXPECT_THROW(LoadCatalogEntry("battle_of_sexes", {{"gamma", 2.5}}), ParameterError);
  EXPECT_THROW(LoadCatalogEntry("penny_flip", {{"alpha", 1}}), ParameterError);
  EXPECT_THROW(LoadCatalogEntry("chicken"), ParameterError);
}

TEST(CatalogTest, PennyFlipEntry) {
  const CatalogEntry entry = LoadCatalogEntry("penny_flip");
  ASSERT_TRUE(entry.sequential.has_value());
  EXPECT_FALSE(entry.quantum.has_value());
  EXPECT_EQ(entry.sequential->players(), (std::vector<std::string>{"Q", "C"}));
  EXPECT_EQ(entry.sequential->schedule(), (std::vector<std::size_t>{0, 1, 0}));
  for (std::size_t k = 0; k < entry.classical.num_plays(); ++k) {
    EXPECT_EQ(entry.classical.PayoffAt(0, k), -entry.classical.PayoffAt(1, k));
  }
}

}  // namespace
}  // namespace qgame
