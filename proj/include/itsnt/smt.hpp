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
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "itsnt/constraint.hpp"
#include "itsnt/sexpr.hpp"

namespace itsnt {

/// Quantifier-free boolean combination of atoms `p >= 0` over integers.
class Formula {
 public:
  enum class Kind { kTrue, kFalse, kAtom, kAnd, kOr, kNot };

  Formula() : kind_(Kind::kTrue) {}
  static Formula truth() { return Formula(Kind::kTrue); }
  static Formula falsity() { return Formula(Kind::kFalse); }
  static Formula atom(const Atom& a);
  static Formula conj(std::vector<Formula> fs);
  static Formula disj(std::vector<Formula> fs);
  static Formula negation(Formula f);
  static Formula of(const Constraint& c);

  Kind kind() const { return kind_; }
  const Atom& get_atom() const { return atom_.front(); }
  const std::vector<Formula>& children() const { return children_; }

  VarSet vars() const;
  Formula substitute(const Subst& s) const;
  bool holds(const Valuation& v) const;

  friend bool operator==(const Formula&, const Formula&) = default;

 private:
  explicit Formula(Kind k) : kind_(k) {}
  Kind kind_;
  std::vector<Atom> atom_;  // exactly one entry for kAtom
  std::vector<Formula> children_;
};

Formula operator&&(const Formula& a, const Formula& b);
Formula operator||(const Formula& a, const Formula& b);
Formula operator!(const Formula& a);

std::string to_smtlib(const Poly& p);
std::string to_smtlib(const Formula& f);

/// Parses the boolean/arithmetic fragment printed by to_smtlib (plus <=, <, >,
/// = and rational literals).
Formula formula_from_smtlib(const SExpr& e);
Formula formula_from_smtlib(const std::string& text);
Poly poly_from_smtlib(const SExpr& e);

enum class SatResult { kSat, kUnsat, kUnknown };
std::string to_string(SatResult r);

class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SolverConfig {
  /// Executable; flags are chosen by its base name (z3 or cvc5).
  std::string path = "z3";
  std::chrono::milliseconds timeout{2000};
};

/// Incremental SMT-LIB session with an external solver over pipes.
/// Variables are declared on demand as Int in the current scope. A query that
/// exceeds its deadline kills the solver, restarts it, replays the open
/// scopes, and reports kUnknown.
class SmtSession {
 public:
  explicit SmtSession(SolverConfig config);
  ~SmtSession();
  SmtSession(const SmtSession&) = delete;
  SmtSession& operator=(const SmtSession&) = delete;

  void push();
  void pop();
  void add(const Formula& f);
  SatResult check();
  /// Values of `vars` in the last sat model; absent variables default to 0.
  Valuation model(const VarSet& vars);

  size_t depth() const;
  unsigned restarts() const { return restarts_; }
  unsigned queries() const { return queries_; }

 private:
  struct Process;
  void start();
  void stop();
  void send(const std::string& cmd);
  SExpr receive(std::chrono::steady_clock::time_point deadline);
  std::string command(const std::string& cmd, std::chrono::milliseconds budget);
  void declare(const VarSet& vs);

  SolverConfig config_;
  std::unique_ptr<Process> proc_;
  /// Commands issued in each open scope (index 0 is the base scope), replayed
  /// after a restart.
  std::vector<std::vector<std::string>> scopes_;
  std::vector<VarSet> declared_;
  unsigned restarts_ = 0;
  unsigned queries_ = 0;
};

/// One-shot satisfiability check using a scope of `session`.
SatResult check_sat(SmtSession& session, const Formula& f, Valuation* model = nullptr,
                    const VarSet& model_vars = {});

}  // namespace itsnt
