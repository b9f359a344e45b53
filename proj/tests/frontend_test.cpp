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
#include <random>

#include "test_support.hpp"

namespace itsnt {
namespace {

using testing::corpus_program;
using testing::program_from_rules;

const Var x("x"), y("y");

// Transitions compared without ids and provenance.
void expect_same_shape(const Program& a, const Program& b) {
  ASSERT_EQ(a.transitions.size(), b.transitions.size());
  EXPECT_EQ(a.start, b.start);
  EXPECT_EQ(a.args, b.args);
  for (size_t i = 0; i < a.transitions.size(); ++i) {
    const auto& s = a.transitions[i];
    const auto& t = b.transitions[i];
    EXPECT_EQ(s.source, t.source);
    EXPECT_EQ(s.target, t.target);
    EXPECT_EQ(s.guard, t.guard) << to_string(s.guard) << " vs " << to_string(t.guard);
    EXPECT_EQ(s.update, t.update);
    EXPECT_EQ(s.temps, t.temps);
  }
}

TEST(Frontend, ParsesRunningExample) {
  Program p = corpus_program("ex1.koat");
  EXPECT_EQ(p.start, FunSym("start"));
  ASSERT_EQ(p.transitions.size(), 4u);
  EXPECT_EQ(p.args, (std::vector<Var>{x, y}));
  const Transition& a2 = *p.find(2);
  EXPECT_EQ(a2.source, FunSym("f"));
  EXPECT_EQ(a2.update(x), Poly(x) - Poly(y));
  EXPECT_EQ(a2.update(y), Poly(y) + Poly(1));
  EXPECT_EQ(a2.guard, Constraint{Atom(Poly(x))});
  EXPECT_EQ(p.find(3)->guard, Constraint{Atom(-Poly(x) - Poly(1))});
  EXPECT_TRUE(p.find(1)->guard.empty());
  EXPECT_EQ(a2.to_string(), "t2: f(x, y) -> f(x - y, y + 1) [x >= 0]");
}

TEST(Frontend, UnsatisfiableGuardStillParses) {
  Program p = program_from_rules("x", "start(x) -> f(x)\n f(x) -> f(x) :|: 0 >= 1");
  ASSERT_EQ(p.transitions.size(), 2u);
  EXPECT_TRUE(is_trivially_false(p.find(2)->guard));
}

TEST(Frontend, ArityMismatchIsRejected) {
  EXPECT_THROW(program_from_rules("x y", "start(x, y) -> f(x, y)\n f(x, y) -> f(y)"), ArityError);
}

TEST(Frontend, SyntaxErrorsCarryPositions) {
  try {
    program_from_rules("x", "start(x) -> f(x +)");
    FAIL() << "expected SyntaxError";
  } catch (const SyntaxError& e) {
    EXPECT_EQ(e.line(), 5);
    EXPECT_EQ(e.column(), 18);
  }
  EXPECT_THROW(program_from_rules("x", "start(x) -> f(x) :|: x >= 1.5"), NonIntegerLiteral);
  EXPECT_THROW(program_from_rules("x", "start(x) -> f(x / 2)"), NonIntegerLiteral);
  EXPECT_THROW(parse_program("(VAR x)\n(RULES f(x) -> f(x))"), SyntaxError);
  EXPECT_THROW(program_from_rules("x", "start(x) -> Com_2(f(x), f(x))"), SyntaxError);
}

TEST(Frontend, AcceptsTpdbConventions) {
  Program p = parse_program(
      "(GOAL COMPLEXITY)\n(STARTTERM (FUNCTIONSYMBOLS evalstart))\n(VAR A B)\n(RULES\n"
      "  evalstart(A, B) -> Com_1(evalloop(A, B))\n"
      "  evalloop(A, B) -{1}> Com_1(evalloop(A - 1, B)) :|: A >= 1 /\\ B = 2\n)\n");
  ASSERT_EQ(p.transitions.size(), 2u);
  EXPECT_EQ(p.find(2)->target, FunSym("evalloop"));
  EXPECT_EQ(p.find(2)->guard.size(), 3u);
}

TEST(Frontend, StartOnRightHandSideIsRenamed) {
  Program p = program_from_rules("x", "start(x) -> start(x - 1) :|: x > 0");
  ASSERT_EQ(p.transitions.size(), 2u);
  const Transition& entry = p.transitions[0];
  EXPECT_EQ(entry.id, 0u);
  EXPECT_EQ(entry.source, FunSym("start"));
  EXPECT_EQ(entry.target, FunSym("start'"));
  const Transition& loop = p.transitions[1];
  EXPECT_EQ(loop.id, 1u);
  EXPECT_TRUE(loop.is_simple_loop());
  EXPECT_EQ(loop.source, FunSym("start'"));
  for (const auto& t : p.transitions) EXPECT_NE(t.target, p.start);
}

TEST(Frontend, NormalizesArguments) {
  // Different variable names per rule, a constant lhs argument, a repeated
  // argument and a free variable.
  Program p = program_from_rules(
      "a b u v w", "start(a, b) -> f(a, b)\n f(u, 0) -> g(u + w, u)\n g(v, v) -> f(v, v)\n h(u) -> h(u)");
  ASSERT_EQ(p.args.size(), 2u);
  const Var a("a"), b("b");
  EXPECT_EQ(p.args, (std::vector<Var>{a, b}));
  const Transition& t2 = *p.find(2);
  EXPECT_EQ(t2.update(a), Poly(a) + Poly(Var("w")));
  EXPECT_EQ(t2.temps, std::vector<Var>{Var("w")});
  EXPECT_TRUE(holds(t2.guard, {{a, 3}, {b, 0}, {Var("w"), 1}}));
  EXPECT_FALSE(holds(t2.guard, {{a, 3}, {b, 1}, {Var("w"), 1}}));
  const Transition& t3 = *p.find(3);
  EXPECT_TRUE(holds(t3.guard, {{a, 2}, {b, 2}}));
  EXPECT_FALSE(holds(t3.guard, {{a, 2}, {b, 3}}));
  // Padded symbol keeps the extra argument unchanged.
  const Transition& t4 = *p.find(4);
  EXPECT_TRUE(t4.update.is_identity());
}

TEST(Frontend, TempClashingWithCanonicalNameIsRenamed) {
  // In the second rule `x` is a free variable while the canonical first argument is also x.
  Program p = program_from_rules("x y", "start(x, y) -> f(x, y)\n f(y, x) -> f(y + 1, y)");
  const Transition& t = *p.find(2);
  ASSERT_EQ(t.temps.size(), 0u);
  EXPECT_EQ(t.update(x), Poly(x) + Poly(1));
  EXPECT_EQ(t.update(y), Poly(x));

  Program q = program_from_rules("x y z", "start(x, y) -> f(x, y)\n f(z, y) -> f(x, y)");
  const Transition& u = *q.find(2);
  ASSERT_EQ(u.temps.size(), 1u);
  EXPECT_NE(u.temps[0], x);
  EXPECT_EQ(u.update(x), Poly(u.temps[0]));
}

TEST(FrontendProperty, CorpusRoundTrips) {
  for (const auto& entry : std::filesystem::directory_iterator(ITSNT_CORPUS_DIR)) {
    if (entry.path().extension() != ".koat") continue;
    Program p = parse_program(testing::read_file(entry.path()));
    Program q = parse_program(print_program(p));
    SCOPED_TRACE(entry.path().filename().string());
    expect_same_shape(p, q);
  }
}

TEST(FrontendProperty, RandomProgramsRoundTrip) {
  std::mt19937 rng(29);
  std::uniform_int_distribution<int> c(-5, 5), pick(0, 3);
  const std::vector<std::string> syms{"start", "f", "g", "h"};
  const std::vector<std::string> vars{"x", "y", "z"};
  auto expr = [&]() {
    std::string e = vars[pick(rng) % 3];
    switch (pick(rng)) {
      case 0:
        return e + " + " + std::to_string(c(rng));
      case 1:
        return e + " * " + vars[pick(rng) % 3];
      case 2:
        return "-" + e;
      default:
        return std::to_string(c(rng));
    }
  };
  for (int iter = 0; iter < 100; ++iter) {
    std::string rules;
    int n = 1 + pick(rng) + pick(rng);
    for (int r = 0; r < n; ++r) {
      std::string src = r == 0 ? "start" : syms[1 + pick(rng) % 3];
      rules += "  " + src + "(x, y, z) -> " + syms[1 + pick(rng) % 3] + "(" + expr() + ", " +
               expr() + ", " + expr() + ")";
      if (pick(rng) > 0) rules += " :|: " + expr() + " > " + expr() + " && " + expr() + " = " + expr();
      rules += "\n";
    }
    Program p = program_from_rules("x y z", rules);
    Program q = parse_program(print_program(p));
    SCOPED_TRACE(rules);
    expect_same_shape(p, q);
  }
}

}  // namespace
}  // namespace itsnt
