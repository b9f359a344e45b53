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

#include "itsnt/oracle.hpp"
#include "itsnt/processors.hpp"
#include "test_support.hpp"

namespace itsnt {
namespace {

using testing::by_id;
using testing::corpus_program;

const Var x("x"), y("y"), k("k");
const FunSym kStart("start"), kF("f"), kG("g");

Configuration conf(const FunSym& f, std::vector<long> vs) {
  Configuration c{f, {}};
  for (long v : vs) c.values.emplace_back(v);
  return c;
}

TEST(Step, EvaluatesLeadingRun) {
  Program p = corpus_program("ex1.koat");
  auto c1 = step(conf(kF, {0, 0}), by_id(p, 2), {});
  ASSERT_TRUE(c1.has_value());
  EXPECT_EQ(*c1, conf(kF, {0, 1}));
  auto c2 = step(*c1, by_id(p, 2), {});
  ASSERT_TRUE(c2.has_value());
  EXPECT_EQ(*c2, conf(kF, {-1, 2}));
  EXPECT_EQ(step(conf(kG, {-1, 2}), by_id(p, 4), {}), conf(kG, {-1, 3}));
}

TEST(Step, StuckAndMismatch) {
  Program p = corpus_program("ex1.koat");
  EXPECT_EQ(step(conf(kF, {-1, 2}), by_id(p, 2), {}), std::nullopt);
  EXPECT_THROW(step(conf(kF, {1}), by_id(p, 2), {}), ArityMismatch);
  EXPECT_THROW(step(conf(kG, {1, 1}), by_id(p, 2), {}), ArityMismatch);
}

TEST(Step, UsesTemporaries) {
  Program p = testing::program_from_rules("x u", "start(x) -> f(x)\n f(x) -> f(x + u) :|: u > 0");
  const Var u("u");
  EXPECT_EQ(step(conf(kF, {1}), by_id(p, 2), {{u, 4}}), conf(kF, {5}));
  EXPECT_EQ(step(conf(kF, {1}), by_id(p, 2), {}), std::nullopt);
}

TEST(Validation, RejectsRunawayValues) {
  // f(2) squares forever; the values double in length every iteration.
  Program p = testing::program_from_rules("x", "start(x) -> f(x)\n f(x) -> f(x^2) :|: x > 1");
  ReplayPlan plan{{}, ReplayLoop{LoopKind::kRecurrent, 2, {ReplayStep{2, {}}}}};
  EXPECT_TRUE(validate_witness(p, conf(kF, {2}), plan, 10).ok);
  Validation v = validate_witness(p, conf(kF, {2}), plan, 1000);
  EXPECT_FALSE(v.ok);
  EXPECT_NE(v.diagnostic.find("bits"), std::string::npos) << v.diagnostic;
}

class Witness : public ::testing::Test {
 protected:
  void SetUp() override {
    ITSNT_REQUIRE_SOLVER();
    smt_ = std::make_unique<SmtSession>(testing::solver_config());
    p_ = corpus_program("ex1.koat");
    names_.reserve(p_.vars());
  }

  // start -> ... -> sink built from the processors for the leading example.
  Transition leading_trace() {
    Transition a2 = strengthen(by_id(p_, 2), make_atoms(Poly(y), Rel::kGe, Poly(0)));
    auto cf = solve_update(a2.update, a2.args, k);
    Transition acc = accelerate(a2, partition_guard(*smt_, a2), *cf);
    Transition a4 = strengthen(by_id(p_, 4), make_atoms(Poly(x), Rel::kLe, Poly(0)));
    auto nt = make_nonterm(*smt_, a4);
    if (!nt) throw std::runtime_error("nonterm failed");
    Transition c = chain(by_id(p_, 1), acc, names_);
    c = chain(c, by_id(p_, 3), names_);
    return chain(c, *nt, names_);
  }

  std::unique_ptr<SmtSession> smt_;
  Program p_;
  NameGenerator names_;
};

TEST_F(Witness, ExpandsLeadingTrace) {
  Transition psi = leading_trace();
  EXPECT_TRUE(psi.targets_sink());
  EXPECT_TRUE(holds(psi.guard, {{x, 0}, {y, 0}, {k, 2}}));
  ReplayPlan plan = expand_trace(*psi.provenance, {{x, 0}, {y, 0}, {k, 2}});
  std::vector<TransitionId> ids;
  for (const auto& s : plan.prefix) ids.push_back(s.id);
  EXPECT_EQ(ids, (std::vector<TransitionId>{1, 2, 2, 3}));
  ASSERT_TRUE(plan.loop.has_value());
  EXPECT_EQ(plan.loop->kind, LoopKind::kRecurrent);
  EXPECT_EQ(plan.loop->loop_id, 4u);
  ASSERT_EQ(plan.loop->body.size(), 1u);
  EXPECT_EQ(plan.loop->body[0].id, 4u);
  EXPECT_EQ(plan.lines(), (std::vector<std::string>{"t1", "t2", "t2", "t3", "repeat forever: t4"}));
  EXPECT_THROW(expand_trace(*psi.provenance, {{x, 0}, {y, 0}, {k, 0}}), BadModel);
  EXPECT_THROW(expand_trace(*psi.provenance, {{x, 0}, {y, 0}}), BadModel);
}

TEST_F(Witness, ValidatesLeadingWitness) {
  Transition psi = leading_trace();
  ReplayPlan plan = expand_trace(*psi.provenance, {{x, 0}, {y, 0}, {k, 2}});
  Validation v = validate_witness(p_, conf(kStart, {0, 0}), plan, 1000);
  EXPECT_TRUE(v.ok) << v.diagnostic;
  ASSERT_EQ(v.prefix_configs.size(), 5u);
  EXPECT_EQ(v.prefix_configs[3], conf(kF, {-1, 2}));
  EXPECT_EQ(v.prefix_configs[4], conf(kG, {-1, 2}));
}

TEST_F(Witness, RejectsWrongWitness) {
  // f(5,-1) -> f(6,0) -> f(6,1) and then x < 0 fails.
  Transition psi = leading_trace();
  ReplayPlan plan = expand_trace(*psi.provenance, {{x, 0}, {y, 0}, {k, 2}});
  Validation v = validate_witness(p_, conf(kStart, {5, -1}), plan, 1000);
  EXPECT_FALSE(v.ok);
  EXPECT_NE(v.diagnostic.find("step 4: t3 is stuck at f(6, 1)"), std::string::npos) << v.diagnostic;
}

TEST_F(Witness, RecurrentLoopThatEventuallyStops) {
  // g(1,3): y goes 3, 2, 1, 0 and the loop stops after three iterations.
  ReplayPlan plan{{}, ReplayLoop{LoopKind::kRecurrent, 4, {ReplayStep{4, {}}}}};
  EXPECT_TRUE(validate_witness(p_, conf(kG, {1, 3}), plan, 3).ok);
  Validation v = validate_witness(p_, conf(kG, {1, 3}), plan, 1000);
  EXPECT_FALSE(v.ok);
  EXPECT_NE(v.diagnostic.find("loop iteration 4"), std::string::npos) << v.diagnostic;
}

TEST_F(Witness, FixpointWitness) {
  Program p = corpus_program("nt_direct.koat");
  auto fp = make_fixpoint(*smt_, by_id(p, 2));
  ASSERT_TRUE(fp.has_value());
  NameGenerator names;
  names.reserve(p.vars());
  Transition psi = chain(by_id(p, 1), *fp, names);
  ReplayPlan plan = expand_trace(*psi.provenance, {{x, 0}, {y, 1}});
  ASSERT_TRUE(plan.loop.has_value());
  EXPECT_EQ(plan.loop->kind, LoopKind::kFixpoint);
  EXPECT_EQ(plan.lines(), (std::vector<std::string>{"t1", "fixpoint: t2"}));
  EXPECT_TRUE(validate_witness(p, conf(kStart, {0, 1}), plan, 1000).ok);
  ReplayPlan direct{{}, plan.loop};
  EXPECT_TRUE(validate_witness(p, conf(kF, {0, 1}), direct, 1000).ok);
  Validation moved = validate_witness(p, conf(kF, {1, 2}), direct, 1000);
  EXPECT_FALSE(moved.ok);
  EXPECT_NE(moved.diagnostic.find("moved"), std::string::npos);
}

TEST_F(Witness, ExpansionWithoutAccelerationIsFlat) {
  Transition c = chain(by_id(p_, 1), by_id(p_, 2), names_);
  c = chain(c, by_id(p_, 3), names_);
  ReplayPlan plan = expand_trace(*c.provenance, {});
  EXPECT_EQ(plan.lines(), (std::vector<std::string>{"t1", "t2", "t3"}));
  EXPECT_FALSE(plan.loop.has_value());
  EXPECT_FALSE(validate_witness(p_, conf(kStart, {0, 0}), plan, 10).ok);
}

TEST_F(Witness, ReplayIsDeterministic) {
  Transition psi = leading_trace();
  Valuation m{{x, 0}, {y, 0}, {k, 2}};
  EXPECT_EQ(expand_trace(*psi.provenance, m), expand_trace(*psi.provenance, m));
  ReplayPlan plan = expand_trace(*psi.provenance, m);
  auto a = validate_witness(p_, conf(kStart, {0, 0}), plan, 50);
  auto b = validate_witness(p_, conf(kStart, {0, 0}), plan, 50);
  EXPECT_EQ(a.prefix_configs, b.prefix_configs);
  EXPECT_EQ(a.ok, b.ok);
}

TEST_F(Witness, StepLimit) {
  Transition psi = leading_trace();
  EXPECT_THROW(expand_trace(*psi.provenance, {{x, 0}, {y, 0}, {k, 50}}, 20), BadModel);
}

TEST_F(Witness, DifferentialCheckSingleIteration) {
  Transition a2 = strengthen(by_id(p_, 2), make_atoms(Poly(y), Rel::kGe, Poly(0)));
  auto cf = solve_update(a2.update, a2.args, k);
  Transition acc = accelerate(a2, partition_guard(*smt_, a2), *cf);
  auto rep = differential_accelerate_check(*smt_, a2, acc, k, 20, 1, 4);
  EXPECT_EQ(rep.sampled, 20u);
  EXPECT_EQ(rep.passed, 20u);
}

}  // namespace
}  // namespace itsnt
