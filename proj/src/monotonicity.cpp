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

#include "itsnt/monotonicity.hpp"

namespace itsnt {

namespace {

Constraint post(const Transition& t, const Constraint& c) {
  return substitute(c, t.update.entries());
}

}  // namespace

bool implies(SmtSession& smt, const Constraint& premise, const Constraint& conclusion) {
  if (conclusion.empty()) return true;
  Formula f = Formula::of(premise) && !Formula::of(conclusion);
  return check_sat(smt, f) == SatResult::kUnsat;
}

bool is_conditional_invariant(SmtSession& smt, const Transition& t, const Constraint& phi) {
  return implies(smt, conjoin(t.guard, phi), post(t, phi));
}

bool is_simple_invariant(SmtSession& smt, const Transition& t, const Constraint& phi) {
  return implies(smt, phi, post(t, phi));
}

bool is_monotonically_decreasing(SmtSession& smt, const Transition& t, const Constraint& phi_si,
                                 const Constraint& phi) {
  return implies(smt, conjoin(phi_si, post(t, phi)), phi);
}

std::string GuardPartition::to_string() const {
  return "ci: " + itsnt::to_string(phi_ci) + "; si: " + itsnt::to_string(phi_si) +
         "; md: " + itsnt::to_string(phi_md) + "; nm: " + itsnt::to_string(phi_nm);
}

GuardPartition partition_guard(SmtSession& smt, const Transition& t) {
  const Constraint& guard = t.guard;
  const size_t n = guard.size();
  std::vector<bool> in_i(n, false);
  for (size_t j = 0; j < n; ++j) in_i[j] = implies(smt, guard, post(t, Constraint{guard[j]}));

  auto select = [&](const std::vector<bool>& mask) {
    Constraint c;
    for (size_t j = 0; j < n; ++j)
      if (mask[j]) c.push_back(guard[j]);
    return c;
  };

  // Greatest S within phi_i such that S ==> update(rho) for every rho in S.
  std::vector<bool> in_si = in_i;
  for (bool changed = true; changed;) {
    changed = false;
    Constraint s = select(in_si);
    for (size_t j = 0; j < n; ++j) {
      if (!in_si[j]) continue;
      if (!implies(smt, s, post(t, Constraint{guard[j]}))) {
        in_si[j] = false;
        changed = true;
        break;
      }
    }
  }
  const Constraint phi_si = select(in_si);

  // Greatest S outside phi_i such that phi_si /\ update(S) ==> rho for every rho in S.
  std::vector<bool> in_md(n);
  for (size_t j = 0; j < n; ++j) in_md[j] = !in_i[j];
  for (bool changed = true; changed;) {
    changed = false;
    Constraint premise = conjoin(phi_si, post(t, select(in_md)));
    for (size_t j = 0; j < n; ++j) {
      if (!in_md[j]) continue;
      if (!implies(smt, premise, Constraint{guard[j]})) {
        in_md[j] = false;
        changed = true;
        break;
      }
    }
  }

  GuardPartition res;
  for (size_t j = 0; j < n; ++j) {
    if (in_si[j])
      res.phi_si.push_back(guard[j]);
    else if (in_i[j])
      res.phi_ci.push_back(guard[j]);
    else if (in_md[j])
      res.phi_md.push_back(guard[j]);
    else
      res.phi_nm.push_back(guard[j]);
  }
  return res;
}

}  // namespace itsnt
