// Copyright 2026 The itsnt Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <filesystem>
#include <fstream>
#include <regex>

#include "itsnt/cli.hpp"
#include "itsnt/oracle.hpp"
#include "test_support.hpp"

namespace itsnt {
namespace {

using testing::corpus_path;

struct CliRun {
  int code;
  std::string out, err;
  std::vector<std::string> lines() const {
    std::vector<std::string> res;
    std::istringstream in(out);
    for (std::string l; std::getline(in, l);) res.push_back(l);
    return res;
  }
};

CliRun cli(std::vector<std::string> args) {
  args.insert(args.begin(), "itsnt");
  bool has_solver = std::find(args.begin(), args.end(), "--solver") != args.end();
  if (!has_solver && args.size() > 1 && (args[1] == "prove" || args[1] == "bench"))
    args.insert(args.begin() + 2, {"--solver", testing::solver_config().path});
  std::ostringstream out, err;
  int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string temp_file(const std::string& name, const std::string& text) {
  auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream(path) << text;
  return path.string();
}

TEST(Cli, ProvesExampleAndPrintsReplayableWitness) {
  ITSNT_REQUIRE_SOLVER();
  CliRun r = cli({"prove", corpus_path("ex1.koat")});
  ASSERT_EQ(r.code, kExitNo) << r.err;
  auto lines = r.lines();
  ASSERT_GE(lines.size(), 4u);
  EXPECT_EQ(lines[0], "NO");
  std::smatch m;
  ASSERT_TRUE(std::regex_match(lines[1], m, std::regex(R"(witness: start\((-?\d+), (-?\d+)\))")));
  EXPECT_NE(std::find(lines.begin(), lines.end(), "model:"), lines.end());
  auto trace = std::find(lines.begin(), lines.end(), "trace:");
  ASSERT_NE(trace, lines.end());
  ASSERT_NE(trace + 1, lines.end());
  EXPECT_EQ(lines.back().rfind("  repeat forever: ", 0), 0u) << r.out;

  // The printed start value really runs forever on the original program.
  Program p = testing::corpus_program("ex1.koat");
  Configuration c{p.start, {Integer(m[1].str()), Integer(m[2].str())}};
  std::vector<std::string> steps(trace + 1, lines.end());
  auto next_id = [](const std::string& s) {
    return static_cast<TransitionId>(std::stoul(s.substr(s.find('t') + 1)));
  };
  for (size_t i = 0; i + 1 < steps.size(); ++i) {
    auto n = step(c, *p.find(next_id(steps[i])), {});
    ASSERT_TRUE(n) << steps[i];
    c = *n;
  }
  const Transition& loop = *p.find(next_id(steps.back().substr(steps.back().find(':'))));
  for (int i = 0; i < 1000; ++i) {
    auto n = step(c, loop, {});
    ASSERT_TRUE(n) << "iteration " << i;
    c = *n;
  }
}

TEST(Cli, TerminatingProgramIsMaybe) {
  ITSNT_REQUIRE_SOLVER();
  CliRun r = cli({"prove", corpus_path("countdown.koat")});
  EXPECT_EQ(r.code, kExitMaybe);
  ASSERT_FALSE(r.lines().empty());
  EXPECT_EQ(r.lines()[0], "MAYBE");
}

TEST(Cli, ProofLevels) {
  ITSNT_REQUIRE_SOLVER();
  CliRun none = cli({"prove", corpus_path("ex1.koat")});
  CliRun steps = cli({"prove", "--proof", "steps", corpus_path("ex1.koat")});
  CliRun full = cli({"prove", "--proof", "full", corpus_path("ex1.koat")});
  EXPECT_EQ(none.out.find("proof:"), std::string::npos);
  EXPECT_NE(steps.out.find("proof:"), std::string::npos);
  EXPECT_NE(steps.out.find("derivation: "), std::string::npos);
  EXPECT_GE(full.out.size(), steps.out.size());
  EXPECT_EQ(steps.out.substr(0, none.out.size()), none.out);
}

TEST(Cli, ParseErrorIsUsageError) {
  CliRun r = cli({"prove", temp_file("itsnt_cli_bad.koat", "(RULES f(x) -> )")});
  EXPECT_EQ(r.code, kExitUsage);
  EXPECT_TRUE(r.out.empty());
  EXPECT_EQ(r.err.rfind("error: ", 0), 0u) << r.err;
}

TEST(Cli, MissingFileIsUsageError) {
  CliRun r = cli({"prove", "/nonexistent/prog.koat"});
  EXPECT_EQ(r.code, kExitUsage);
  EXPECT_NE(r.err.find("cannot open"), std::string::npos);
}

TEST(Cli, BadArguments) {
  EXPECT_EQ(cli({}).code, kExitUsage);
  EXPECT_EQ(cli({"frobnicate"}).code, kExitUsage);
  EXPECT_EQ(cli({"prove"}).code, kExitUsage);
  EXPECT_EQ(cli({"prove", "--proof", "verbose", corpus_path("ex1.koat")}).code, kExitUsage);
  EXPECT_EQ(cli({"prove", "--validate-steps", "0", corpus_path("ex1.koat")}).code, kExitUsage);
  EXPECT_EQ(cli({"--help"}).code, 0);
}

TEST(Cli, BrokenSolverIsInternalError) {
  CliRun r = cli({"prove", "--solver", "/nonexistent/z3", corpus_path("ex1.koat")});
  EXPECT_EQ(r.code, kExitInternal);
  EXPECT_NE(r.err.find("internal error"), std::string::npos);
}

TEST(Cli, BenchSummarizesCorpus) {
  ITSNT_REQUIRE_SOLVER();
  CliRun r = cli({"bench", corpus_path("ex1.koat"), corpus_path("countdown.koat"),
               temp_file("itsnt_cli_bad2.koat", "garbage(")});
  EXPECT_EQ(r.code, 0) << r.out;
  auto lines = r.lines();
  ASSERT_EQ(lines.size(), 4u) << r.out;
  EXPECT_NE(lines[0].find(": NO ("), std::string::npos);
  EXPECT_NE(lines[1].find(": MAYBE ("), std::string::npos);
  EXPECT_NE(lines[2].find(": ERROR "), std::string::npos);
  EXPECT_EQ(lines[3], "total: 3 NO: 1 MAYBE: 1 ERROR: 1 UNVALIDATED: 0");
}

}  // namespace
}  // namespace itsnt
