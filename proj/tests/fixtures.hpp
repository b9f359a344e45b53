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

// Helpers shared by the test binaries. Free of any test framework.

#pragma once

#include <chrono>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "itsnt/frontend.hpp"
#include "itsnt/smt.hpp"

namespace itsnt::testing {

#ifdef ITSNT_TEST_SOLVER
inline constexpr bool kHaveSolver = true;
inline SolverConfig solver_config(std::chrono::milliseconds timeout = std::chrono::milliseconds(2000)) {
  return SolverConfig{ITSNT_TEST_SOLVER, timeout};
}
#else
inline constexpr bool kHaveSolver = false;
inline SolverConfig solver_config(std::chrono::milliseconds timeout = std::chrono::milliseconds(2000)) {
  return SolverConfig{"z3", timeout};
}
#endif

inline std::string corpus_path(const std::string& name) {
  return std::string(ITSNT_CORPUS_DIR) + "/" + name;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline Program corpus_program(const std::string& name) {
  return parse_program(read_file(corpus_path(name)));
}

/// Wraps rules in the file header with start symbol `start`.
inline Program program_from_rules(const std::string& vars, const std::string& rules) {
  return parse_program("(GOAL NONTERM)\n(STARTTERM (FUNCTIONSYMBOLS start))\n(VAR " + vars +
                       ")\n(RULES\n" + rules + "\n)\n");
}

inline const Transition& by_id(const Program& p, TransitionId id) {
  const Transition* t = p.find(id);
  if (!t) throw std::runtime_error("no transition t" + std::to_string(id));
  return *t;
}

/// Single simple loop f(vars) -> f(...) [guard], reachable from start (id 2).
inline Transition simple_loop(const std::string& vars, const std::string& lhs,
                              const std::string& rhs, const std::string& guard = "") {
  std::string rules = "start" + lhs + " -> f" + lhs + "\n  f" + lhs + " -> f" + rhs;
  if (!guard.empty()) rules += " :|: " + guard;
  return by_id(program_from_rules(vars, rules), 2);
}

}  // namespace itsnt::testing
