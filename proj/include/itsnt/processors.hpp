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

#include "itsnt/monotonicity.hpp"
#include "itsnt/recurrence.hpp"

namespace itsnt {

/// A processor's preconditions do not hold.
class Inapplicable : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// How the counter's guard conjunct is built from phi_md. kShifted is the
/// sound construction; the others exist for mutation testing.
enum class AccelMode {
  kShifted,    // mu(phi_md) with k -> k-1
  kUnshifted,  // mu(phi_md) at k: implied by the shifted guard, still sound
  kPlain,      // phi_md itself, ignoring the closed form: unsound
};

/// Accelerated loop: lhs -> f(mu(x)) [phi_ci /\ phi_si /\ mu(phi_md)[k := k-1] /\ k > 0].
/// Result id is 0; k becomes a temporary. Throws Inapplicable if phi_nm is not
/// empty, the closed form is exponential, or mu at k = 0 is not the identity
/// on the variables of phi_md.
Transition accelerate(const Transition& loop, const GuardPartition& part, const ClosedForm& cf,
                      AccelMode mode = AccelMode::kShifted);

/// alpha o beta: lhs(alpha) -> update_alpha(rhs(beta)) [guard(alpha) /\ update_alpha(guard(beta))].
/// Temporaries of beta are renamed apart first. Result id is 0.
Transition chain(const Transition& alpha, const Transition& beta, NameGenerator& names);

/// lhs -> sink [guard] if the guard is a simple invariant of the loop.
std::optional<Transition> make_nonterm(SmtSession& smt, const Transition& loop);

/// lhs -> sink [guard /\ x = update(x)] if that is satisfiable.
std::optional<Transition> make_fixpoint(SmtSession& smt, const Transition& loop);

/// Copy of t with phi conjoined to its guard.
Transition strengthen(const Transition& t, const Constraint& phi, bool split = false);

/// First argument x with update(x) = c*x + r, c a negative constant, x not in r.
std::optional<Var> sign_alternating_var(const Transition& loop);

/// {x | V(update(x)) nonempty and x not in V(update(x))}
VarSet unstable_vars(const Transition& loop);

}  // namespace itsnt
