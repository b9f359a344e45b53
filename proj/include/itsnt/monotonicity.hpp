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

#include <string>

#include "itsnt/program.hpp"
#include "itsnt/smt.hpp"

namespace itsnt {

/// premise ==> conclusion, proven by unsatisfiability of premise /\ !conclusion.
/// Unknown counts as not proven.
bool implies(SmtSession& smt, const Constraint& premise, const Constraint& conclusion);

/// guard(t) /\ phi ==> update(phi)
bool is_conditional_invariant(SmtSession& smt, const Transition& t, const Constraint& phi);
/// phi ==> update(phi)
bool is_simple_invariant(SmtSession& smt, const Transition& t, const Constraint& phi);
/// phi_si /\ update(phi) ==> phi
bool is_monotonically_decreasing(SmtSession& smt, const Transition& t, const Constraint& phi_si,
                                 const Constraint& phi);

/// Split of a simple loop's guard. The parts are disjoint sub-lists of the
/// guard, in guard order.
struct GuardPartition {
  Constraint phi_ci;
  Constraint phi_si;
  Constraint phi_md;
  Constraint phi_nm;

  bool is_monotonic() const { return phi_nm.empty(); }
  std::string to_string() const;
};

GuardPartition partition_guard(SmtSession& smt, const Transition& t);

}  // namespace itsnt
