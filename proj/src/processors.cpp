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

#include "itsnt/processors.hpp"

namespace itsnt {

namespace {

ProvenancePtr make_provenance(auto node) {
  return std::make_shared<const Provenance>(Provenance{std::move(node)});
}

}  // namespace

Transition accelerate(const Transition& loop, const GuardPartition& part, const ClosedForm& cf,
                      AccelMode mode) {
  if (!loop.is_simple_loop()) throw Inapplicable("not a simple loop");
  if (!part.phi_nm.empty()) throw Inapplicable("guard is not monotonic");
  if (cf.has_exponential()) throw Inapplicable("closed form is not polynomial");
  const Var& k = cf.counter();
  const Subst mu = cf.polynomial_subst();

  Constraint md_now = substitute(part.phi_md, mu);
  Constraint md;
  switch (mode) {
    case AccelMode::kShifted: {
      Subst dec{{k, Poly(k) - Poly(1)}};
      md = substitute(md_now, dec);
      // For k = 1 the shifted conjunct must be phi_md itself.
      for (size_t i = 0; i < md.size(); ++i)
        if (!(md[i].substitute(Subst{{k, Poly(1)}}) == part.phi_md[i]))
          throw Inapplicable("closed form is not the identity at zero iterations");
      break;
    }
    case AccelMode::kUnshifted:
      md = md_now;
      break;
    case AccelMode::kPlain:
      md = part.phi_md;
      break;
  }

  Transition res;
  res.source = loop.source;
  res.target = loop.target;
  res.args = loop.args;
  res.guard = conjoin(conjoin(part.phi_ci, part.phi_si), md);
  auto kpos = make_atoms(Poly(k), Rel::kGt, Poly(0));
  res.guard = simplify(conjoin(res.guard, kpos));
  for (const auto& x : loop.args) {
    auto it = mu.find(x);
    if (it != mu.end()) res.update.set(x, it->second);
  }
  refresh_temps(res);
  res.provenance = make_provenance(recipe::Accelerated{loop.provenance, k});
  res.deduce_passes = loop.deduce_passes;
  return res;
}

Transition chain(const Transition& alpha, const Transition& beta, NameGenerator& names) {
  if (alpha.target != beta.source) throw Inapplicable("symbols do not match");
  if (alpha.args != beta.args) throw Inapplicable("argument lists differ");
  VarSet avoid = alpha.vars();
  auto [b, renaming] = rename_apart(beta, avoid, names);

  Transition res;
  res.source = alpha.source;
  res.target = b.target;
  res.args = alpha.args;
  res.guard = simplify(conjoin(alpha.guard, substitute(b.guard, alpha.update.entries())));
  if (!b.targets_sink()) res.update = compose_updates(alpha.update, b.update);
  refresh_temps(res);
  res.provenance = make_provenance(recipe::Chained{alpha.provenance, b.provenance, renaming});
  res.deduce_passes = std::max(alpha.deduce_passes, beta.deduce_passes);
  return res;
}

std::optional<Transition> make_nonterm(SmtSession& smt, const Transition& loop) {
  if (!loop.is_simple_loop()) return std::nullopt;
  if (!is_simple_invariant(smt, loop, loop.guard)) return std::nullopt;
  Transition res;
  res.source = loop.source;
  res.target = kSink;
  res.args = loop.args;
  res.guard = loop.guard;
  refresh_temps(res);
  res.provenance = make_provenance(recipe::Nonterm{loop.provenance, loop.id});
  res.deduce_passes = loop.deduce_passes;
  return res;
}

std::optional<Transition> make_fixpoint(SmtSession& smt, const Transition& loop) {
  if (!loop.is_simple_loop()) return std::nullopt;
  Constraint g = loop.guard;
  for (const auto& x : loop.args) {
    auto eq = make_atoms(Poly(x), Rel::kEq, loop.update(x));
    g.insert(g.end(), eq.begin(), eq.end());
  }
  g = simplify(g);
  if (is_trivially_false(g)) return std::nullopt;
  if (check_sat(smt, Formula::of(g)) != SatResult::kSat) return std::nullopt;
  Transition res;
  res.source = loop.source;
  res.target = kSink;
  res.args = loop.args;
  res.guard = g;
  refresh_temps(res);
  res.provenance = make_provenance(recipe::Fixpoint{loop.provenance, loop.id});
  res.deduce_passes = loop.deduce_passes;
  return res;
}

Transition strengthen(const Transition& t, const Constraint& phi, bool split) {
  Transition res = t;
  res.id = 0;
  res.guard = simplify(conjoin(t.guard, phi));
  refresh_temps(res);
  res.provenance = make_provenance(recipe::Strengthened{t.provenance, phi, split});
  return res;
}

std::optional<Var> sign_alternating_var(const Transition& loop) {
  for (const auto& x : loop.args) {
    Poly u = loop.update(x);
    if (u.degree(x) != 1) continue;
    Poly c = u.linear_coefficient(x);
    if (!c.is_constant() || c.constant_term() >= 0) continue;
    if ((u - c * Poly(x)).contains(x)) continue;
    return x;
  }
  return std::nullopt;
}

VarSet unstable_vars(const Transition& loop) {
  VarSet res;
  for (const auto& x : loop.args) {
    VarSet vs = loop.update(x).vars();
    if (!vs.empty() && !vs.count(x)) res.insert(x);
  }
  return res;
}

}  // namespace itsnt
