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

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "itsnt/monotonicity.hpp"
#include "itsnt/program.hpp"
#include "itsnt/smt.hpp"

namespace itsnt {

/// An atom is not linear in the universally quantified variables.
class NotLinear : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Fresh template parameters and Farkas multipliers. Their names start with
/// '$', which program identifiers cannot contain.
class ParamPool {
 public:
  Var parameter(const std::string& hint);
  Var multiplier();
  static bool is_reserved(const Var& v);

 private:
  unsigned next_param_ = 0;
  unsigned next_mult_ = 0;
};

/// sum_x c_x * x >= c over the relevant variables of one guard atom.
struct Template {
  std::vector<std::pair<Var, Var>> coefficients;  // program variable, parameter
  Var constant;

  /// sum c_x * x - c, the left-hand side of the atom `... >= 0`.
  Poly lhs() const;
  /// The template with parameters replaced by their values.
  Atom instantiate(const Valuation& params) const;
};

/// Smallest superset of V(rho) closed under guard atoms that share a variable
/// and under the variables of updates.
VarSet relevant_vars(const Transition& loop, const Atom& rho);

Template make_template(const VarSet& vars, ParamPool& pool);

/// Parameter constraint whose models make `premise ==> conclusion` valid for
/// all values of `uvars`. Variables outside `uvars` are parameters. Uses
/// integer multipliers with a positive scaling factor for the conclusion, and
/// covers infeasible premises by a second set of multipliers.
Formula farkas_encode(const Constraint& premise, const Constraint& conclusion,
                      const VarSet& uvars, ParamPool& pool);

struct SoftRequirement {
  Formula formula;
  unsigned weight;
  std::string label;
};

struct Requirements {
  Formula hard;
  std::vector<SoftRequirement> softs;
  /// One template per atom of phi_nm, in guard order.
  std::vector<Template> templates;
  std::vector<Var> coefficient_params;
  std::vector<Var> constant_params;
};

/// Transitions other than simple loops that end where `loop` starts.
std::vector<const Transition*> predecessors(const Transition& loop, const Program& ctx);

/// Hard and soft requirements for strengthening `loop`, whose partition must
/// have a non-empty phi_nm. Throws NotLinear if the loop is not linear.
/// Predecessors that are not linear contribute no local-invariant soft.
/// Without predecessors the satisfiability requirement ranges over the
/// strengthened loop itself.
Requirements build_requirements(const Transition& loop, const GuardPartition& part,
                                const Program& ctx, ParamPool& pool);

struct MaxSmtResult {
  Valuation model;
  /// Whether each soft requirement was kept, in input order.
  std::vector<bool> kept;
};

/// Asserts `hard`, then keeps each soft requirement in order of descending
/// weight whenever it is consistent with the ones kept so far. If `minimize`
/// is set, coefficients are then boxed to small magnitudes and constants are
/// lowered while everything kept stays satisfied. Returns nullopt if `hard`
/// is not satisfiable. The session is left at its original depth.
std::optional<MaxSmtResult> greedy_max_smt(SmtSession& smt, const Formula& hard,
                                           const std::vector<SoftRequirement>& softs,
                                           const std::vector<Var>& coefficient_params,
                                           const std::vector<Var>& constant_params,
                                           bool minimize = true);

/// phi is a conditional invariant of `loop` and is established by every
/// predecessor whenever `loop` can be applied next.
bool is_local_invariant(SmtSession& smt, const Transition& loop, const Constraint& phi,
                        const Program& ctx);

struct InferenceOptions {
  bool minimize = true;
};

/// Strengthened variants of `loop`: the loop with all synthesized invariants
/// first, followed by split variants for invariants that are not local.
/// Empty if the guard is already monotonic or the loop is not linear.
std::vector<Transition> deduce_invariants(SmtSession& smt, const Transition& loop,
                                          const Program& ctx, const InferenceOptions& opts = {});

}  // namespace itsnt
