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

#include <gtest/gtest.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>

namespace qgame {
namespace {

using nlohmann::json;
namespace fs = std::filesystem;

class CliTest : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    dir_ = new fs::path(fs::temp_directory_path() /
                        ("qgame_cli_test_" + std::to_string(::getpid())));
    fs::create_directories(*dir_);
    for (const char* name : {"prisoners_dilemma", "battle_of_sexes", "penny_flip"}) {
      const CliResult r = RunCli({"export", name});
      ASSERT_EQ(r.exit_code, kExitOk) << r.output;
      std::ofstream(*dir_ / (std::string(name) + ".json")) << r.output;
    }
  }
  static void TearDownTestSuite() {
    fs::remove_all(*dir_);
    delete dir_;
  }

  static std::string Game(const std::string& name) { return (*dir_ / (name + ".json")).string(); }

  static json RunJson(std::vector<std::string> args, int expected_exit = kExitOk) {
    args.push_back("--format");
    args.push_back("json");
    const CliResult r = RunCli(args);
    EXPECT_EQ(r.exit_code, expected_exit) << r.output;
    return json::parse(r.output);
  }

  static fs::path* dir_;
};

fs::path* CliTest::dir_ = nullptr;

TEST(ParseAngleTest, Tokens) {
  const double pi = std::numbers::pi;
  EXPECT_DOUBLE_EQ(ParseAngle("pi"), pi);
  EXPECT_DOUBLE_EQ(ParseAngle("pi/2"), pi / 2);
  EXPECT_DOUBLE_EQ(ParseAngle("-pi/4"), -pi / 4);
  EXPECT_DOUBLE_EQ(ParseAngle("3pi/4"), 3 * pi / 4);
  EXPECT_DOUBLE_EQ(ParseAngle("3*pi/4"), 3 * pi / 4);
  EXPECT_DOUBLE_EQ(ParseAngle("0.5"), 0.5);
  EXPECT_DOUBLE_EQ(ParseAngle(" 1.5707963 "), 1.5707963);
  EXPECT_ANY_THROW(ParseAngle("tau"));
  EXPECT_ANY_THROW(ParseAngle("pi/0"));
  EXPECT_ANY_THROW(ParseAngle(""));
}

TEST(NormalizeNumbersTest, RoundsAndClearsNegativeZero) {
  const json out = NormalizeNumbers({{"a", 0.1 + 0.2}, {"b", -0.0}, {"c", {1.0 / 3.0, 7}}});
  EXPECT_EQ(out.dump(), R"({"a":0.3,"b":0.0,"c":[0.333333333333,7]})");
}

TEST_F(CliTest, AnalyzeClassical) {
  const json r = RunJson({"analyze", "--game", Game("prisoners_dilemma"), "--classical"});
  EXPECT_EQ(r["results"]["dominant_strategies"], json({"D", "D"}));
  EXPECT_EQ(r["results"]["pure_nash"], json({"DD"}));
  const auto& pareto = r["results"]["pareto_optimal"];
  EXPECT_NE(std::find(pareto.begin(), pareto.end(), "CC"), pareto.end());
  EXPECT_FALSE(r["results"].contains("quantum_classical_embedding"));
  const json full = RunJson({"analyze", "--game", Game("prisoners_dilemma")});
  EXPECT_EQ(full["results"]["quantum_classical_embedding"]["DD"], json({-3, -3}));
}

TEST_F(CliTest, VerifyNashCertifiesAndRefutes) {
  const json ok = RunJson({"verify-nash", "--game", Game("prisoners_dilemma"), "--family",
                           "two_param", "--profile", "0,1.5707963,0,1.5707963"});
  EXPECT_TRUE(ok["results"]["certified"].get<bool>());
  EXPECT_NEAR(ok["results"]["payoffs"][0].get<double>(), -1.0, 1e-9);
  EXPECT_NEAR(ok["results"]["payoffs"][1].get<double>(), -1.0, 1e-9);
  const json bad = RunJson({"verify-nash", "--game", Game("prisoners_dilemma"), "--family",
                            "two_param", "--profile", "pi,0,pi,0"},
                           kExitRefuted);
  EXPECT_TRUE(bad["results"]["refuted"].get<bool>());
  EXPECT_EQ(bad["status"], "refuted");
  const json mixed = RunJson({"verify-nash", "--game", Game("battle_of_sexes"), "--mix",
                              "0.5,0.5;0.5,0.5"});
  EXPECT_NEAR(mixed["results"]["payoffs"][0].get<double>(), 1.75, 1e-12);
}

TEST_F(CliTest, PlaySequential) {
  const json r = RunJson({"play-sequential", "--game", Game("penny_flip"), "--moves",
                          "UQstar,F,UQstar"});
  EXPECT_EQ(r["results"]["payoffs"], json({1.0, -1.0}));
  EXPECT_EQ(r["results"]["payoffs_by_player"]["Q"], 1.0);
}

TEST_F(CliTest, PayoffAndBestResponse) {
  const json p = RunJson({"payoff", "--game", Game("prisoners_dilemma"), "--play", "UQ,UD",
                          "--samples", "1000", "--seed", "5"});
  EXPECT_NEAR(p["results"]["payoffs"][0].get<double>(), 0.0, 1e-12);
  EXPECT_NEAR(p["results"]["payoffs"][1].get<double>(), -5.0, 1e-12);
  EXPECT_LE(p["results"]["path_discrepancy"].get<double>(), 1e-12);
  EXPECT_EQ(p["results"]["sampled_frequencies"]["DC"], 1.0);
  const json br = RunJson({"best-response", "--game", Game("prisoners_dilemma"), "--player", "0",
                           "--profile", "pi,0,pi,0"});
  EXPECT_NEAR(br["results"]["point"][1].get<double>(), std::numbers::pi / 2, 1e-9);
  EXPECT_NEAR(br["results"]["payoff"].get<double>(), 0.0, 1e-9);
}

TEST_F(CliTest, QuantumizeReportsSpectraAndCommutators) {
  const json r = RunJson({"quantumize", "--game", Game("battle_of_sexes")});
  EXPECT_EQ(r["results"]["payoff_operators"][0]["spectrum"], json({1.0, 1.0, 2.0, 3.0}));
  EXPECT_EQ(r["results"]["max_commutator_norm"], 0.0);
}

TEST_F(CliTest, ParetoEntries) {
  const json r = RunJson({"pareto", "--entries", "II:2.5,2.5;XX:2.5,2.5;mix:1.75,1.75;IX:1,1"});
  EXPECT_EQ(r["results"]["optimal"], json({"II", "XX"}));
  EXPECT_EQ(r["results"]["relations"][2][0], "b_dominates");
}

TEST_F(CliTest, DemosPass) {
  for (const char* name : {"prisoners_dilemma", "battle_of_sexes", "penny_flip"}) {
    const json r = RunJson({"demo", name});
    EXPECT_TRUE(r["results"]["all_passed"].get<bool>()) << name;
    EXPECT_FALSE(r["notes"].empty()) << name;
  }
  const json custom = RunJson({"demo", "prisoners_dilemma", "--param", "alpha=6"});
  EXPECT_EQ(custom["results"]["parameters"]["alpha"], 6.0);
}

TEST_F(CliTest, ReportsAreDeterministicAndEmbedConfig) {
  const std::vector<std::string> args = {"verify-nash", "--game", Game("prisoners_dilemma"),
                                         "--family", "three_param", "--profile",
                                         "0.3,1,2,1,0.5,4", "--grid", "12", "--seed", "3",
                                         "--epsilon", "1e-5", "--tol", "1e-8"};
  const CliResult a = RunCli(args);
  const CliResult b = RunCli(args);
  EXPECT_EQ(a.output, b.output);
  EXPECT_EQ(a.exit_code, kExitRefuted);
  std::vector<std::string> json_args = args;
  json_args.insert(json_args.end(), {"--format", "json"});
  const json r = json::parse(RunCli(json_args).output);
  EXPECT_EQ(r["diagnostics"]["search"]["grid_resolution"], 12);
  EXPECT_EQ(r["diagnostics"]["search"]["seed"], 3);
  EXPECT_EQ(r["diagnostics"]["search"]["epsilon"], 1e-5);
  EXPECT_EQ(r["diagnostics"]["tol"], 1e-8);
}

TEST_F(CliTest, InputErrors) {
  EXPECT_EQ(RunCli({"analyze", "--game", Game("missing")}).exit_code, kExitInputError);
  EXPECT_EQ(RunCli({"frobnicate"}).exit_code, kExitInputError);
  EXPECT_EQ(RunCli({"verify-nash", "--game", Game("prisoners_dilemma"), "--profile", "0,1"})
                .exit_code,
            kExitInputError);
  EXPECT_EQ(RunCli({"demo", "chicken"}).exit_code, kExitInputError);
  EXPECT_EQ(RunCli({"analyze", "--game", Game("penny_flip"), "--grid", "1"}).exit_code,
            kExitInputError);
  const fs::path broken = fs::temp_directory_path() / "qgame_cli_broken.json";
  std::ofstream(broken) << R"({"schema_version": 1, "players": ["A", "B"],
    "strategy_sets": [["x"], ["y"]], "payoffs": [[[1]], [[1, 2]]]})";
  const json r = RunJson({"analyze", "--game", broken.string()}, kExitInputError);
  EXPECT_NE(r["schema_errors"][0].get<std::string>().find("payoffs[1]"), std::string::npos);
  fs::remove(broken);
}

TEST_F(CliTest, BinaryExitCodes) {
  auto status = [](const std::string& args) {
    const std::string cmd = std::string(QGAME_CLI_PATH) + " " + args + " >/dev/null 2>&1";
    const int raw = std::system(cmd.c_str());
    return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  };
  EXPECT_EQ(status("play-sequential --game " + Game("penny_flip") + " --moves UQstar,N,UQstar"),
            0);
  EXPECT_EQ(status("verify-nash --game " + Game("prisoners_dilemma") +
                   " --family two_param --profile pi,0,pi,0"),
            1);
  EXPECT_EQ(status("analyze"), 2);
}

}  // namespace
}  // namespace qgame
