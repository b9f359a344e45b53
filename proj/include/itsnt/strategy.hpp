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

#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <vector>

#include "itsnt/oracle.hpp"
#include "itsnt/program.hpp"
#include "itsnt/smt.hpp"

namespace itsnt {

struct StrategyOptions {
  SolverConfig solver;
  /// Wall-clock budget for one proof attempt.
  std::chrono::milliseconds timeout{60'000};
  /// Invariant-deduction passes allowed along one derivation lineage.
  unsigned strengthen_budget = 3;
  /// Loop iterations simulated when validating a recurrent witness.
  unsigned validate_steps = 1000;
  /// Prefer small template coefficients.
  bool minimize_invariants = true;
  /// Give up when the working program grows beyond this many transitions.
  std::size_t max_transitions = 5000;
};

enum class Answer { kNo, kMaybe };

std::string to_string(Answer a);

struct LogLine {
  /// Detail lines carry full transitions; the others name processor steps.
  bool detail;
  std::string text;

  friend bool operator==(const LogLine&, const LogLine&) = default;
};

struct Verdict {
  Answer answer = Answer::kMaybe;
  /// Why no proof was found (MAYBE only).
  std::string reason;
  /// Start configuration of a non-terminating run (NO only).
  std::optional<Configuration> witness;
  /// Model of the sink transition's guard that produced the witness.
  Valuation model;
  ReplayPlan plan;
  /// The derivation of the sink transition.
  std::string derivation;
  std::vector<LogLine> log;
};

/// Algorithm state for one program. Derived transitions keep id 0; their
/// provenance refers to the original ids.
class Prover {
 public:
  Prover(SmtSession& smt, StrategyOptions opts);

  /// Drops transitions whose source is unreachable from start and those with
  /// unsatisfiable guards.
  Program prune(const Program& p);

  /// Self-chains loops that alternate a sign, then keeps chaining with the
  /// original loop while that shrinks the set of unstable variables.
  Transition preprocess_simple_loop(const Transition& loop);

  struct Elimination {
    /// Sink transitions and accelerated loops, to be chained with predecessors.
    std::vector<Transition> results;
    /// Strengthened variants, to be processed as new simple loops.
    std::vector<Transition> variants;
  };

  /// Nonterm, Nonterm on the loop chained with itself, Fixpoint, Accelerate,
  /// and invariant deduction. Nonterm results end the list; a fixpoint result
  /// does not stop acceleration or deduction.
  Elimination eliminate_simple_loop(const Transition& loop, const Program& p);

  /// beta o result for every beta in p with source != target = source(result).
  std::vector<Transition> chain_with_predecessors(const Transition& result, const Program& p);

  /// Chains all transitions into f with all transitions out of f, then drops
  /// every transition touching f.
  Program eliminate_location(const Program& p, const FunSym& f);

  /// The location to eliminate next: fewest in x out pairs, ties by name.
  std::optional<FunSym> pick_location(const Program& p) const;

  /// Searches a validated witness among the sink transitions of a simplified
  /// program.
  Verdict find_witness(const Program& simplified, const Program& original);

  /// The whole algorithm.
  Verdict prove(const Program& p);

  const std::vector<LogLine>& log() const { return log_; }

 private:
  void note(std::string text);
  void detail(std::string text);
  void check_budget() const;
  bool satisfiable(const Constraint& guard);
  void add_unique(Program& p, Transition t);

  SmtSession& smt_;
  StrategyOptions opts_;
  NameGenerator names_;
  std::vector<LogLine> log_;
  std::chrono::steady_clock::time_point deadline_;
};

/// Runs the prover with a fresh solver session.
Verdict prove_nontermination(const Program& p, const StrategyOptions& opts);

}  // namespace itsnt
