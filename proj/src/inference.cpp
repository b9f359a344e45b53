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

#include "itsnt/inference.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>

#include "itsnt/processors.hpp"

namespace itsnt {

Var ParamPool::parameter(const std::string& hint) {
  return Var("$" + hint + "." + std::to_string(next_param_++));
}

Var ParamPool::multiplier() { return Var("$l." + std::to_string(next_mult_++)); }

bool ParamPool::is_reserved(const Var& v) { return !v.name().empty() && v.name()[0] == '$'; }

Poly Template::lhs() const {
  Poly p = -Poly(constant);
  for (const auto& [x, c] : coefficients) p += Poly(c) * Poly(x);
  return p;
}

Atom Template::instantiate(const Valuation& params) const {
  Subst s;
  for (const auto& [x, c] : coefficients) {
    auto it = params.find(c);
    s.emplace(c, Poly(it == params.end() ? Integer(0) : it->second));
  }
  auto it = params.find(constant);
  s.emplace(constant, Poly(it == params.end() ? Integer(0) : it->second));
  return Atom(lhs().substitute(s));
}

VarSet relevant_vars(const Transition& loop, const Atom& rho) {
  VarSet res = rho.vars();
  for (bool changed = true; changed;) {
    changed = false;
    auto add = [&](const VarSet& vs) {
      for (const auto& v : vs) changed = res.insert(v).second || changed;
    };
    for (const auto& a : loop.guard) {
      VarSet vs = a.vars();
      if (std::any_of(vs.begin(), vs.end(), [&](const Var& v) { return res.count(v) > 0; })) add(vs);
    }
    for (const auto& x : VarSet(res)) add(loop.update(x).vars());
  }
  return res;
}

Template make_template(const VarSet& vars, ParamPool& pool) {
  Template t;
  for (const auto& x : vars) t.coefficients.emplace_back(x, pool.parameter("c_" + x.name()));
  t.constant = pool.parameter("c");
  return t;
}

namespace {

struct LinearForm {
  std::map<Var, Poly> coeffs;
  Poly constant;
};

LinearForm linear_form(const Poly& p, const VarSet& uvars) {
  LinearForm f;
  for (const auto& [m, c] : p.terms()) {
    Monomial rest;
    std::optional<Var> u;
    for (const auto& [v, e] : m) {
      if (!uvars.count(v)) {
        rest.emplace(v, e);
        continue;
      }
      if (u || e > 1) throw NotLinear("not linear: " + p.to_string());
      u = v;
    }
    Poly term = Poly::monomial(rest, c);
    if (u)
      f.coeffs[*u] += term;
    else
      f.constant += term;
  }
  return f;
}

Formula eq0(const Poly& p) { return Formula::of(make_atoms(p, Rel::kEq, Poly(0))); }
Formula ge(const Poly& p, long c) { return Formula::atom(Atom(p - Poly(c))); }

// One conclusion atom.
Formula farkas_atom(const std::vector<LinearForm>& premise, const LinearForm& concl,
                    const VarSet& uvars, ParamPool& pool) {
  std::vector<Var> lam, mu;
  for (size_t i = 0; i < premise.size(); ++i) {
    lam.push_back(pool.multiplier());
    mu.push_back(pool.multiplier());
  }
  const Var l0 = pool.multiplier();
  auto coeff = [](const LinearForm& f, const Var& x) {
    auto it = f.coeffs.find(x);
    return it == f.coeffs.end() ? Poly() : it->second;
  };

  // l0 * concl == sum lam_i * premise_i, up to a non-negative constant slack.
  std::vector<Formula> implied{ge(Poly(l0), 1)};
  std::vector<Formula> infeasible;
  for (size_t i = 0; i < premise.size(); ++i) {
    implied.push_back(ge(Poly(lam[i]), 0));
    infeasible.push_back(ge(Poly(mu[i]), 0));
  }
  for (const auto& x : uvars) {
    Poly lhs = Poly(l0) * coeff(concl, x), inf;
    for (size_t i = 0; i < premise.size(); ++i) {
      lhs -= Poly(lam[i]) * coeff(premise[i], x);
      inf += Poly(mu[i]) * coeff(premise[i], x);
    }
    implied.push_back(eq0(lhs));
    infeasible.push_back(eq0(inf));
  }
  Poly slack = Poly(l0) * concl.constant, inf_const;
  for (size_t i = 0; i < premise.size(); ++i) {
    slack -= Poly(lam[i]) * premise[i].constant;
    inf_const += Poly(mu[i]) * premise[i].constant;
  }
  implied.push_back(ge(slack, 0));
  infeasible.push_back(ge(-inf_const, 1));
  if (premise.empty()) return Formula::conj(implied);
  return Formula::conj(implied) || Formula::conj(infeasible);
}

VarSet program_vars(const Constraint& a, const Constraint& b) {
  VarSet res;
  for (const auto* c : {&a, &b})
    for (const auto& v : vars_of(*c))
      if (!ParamPool::is_reserved(v)) res.insert(v);
  return res;
}

bool is_linear(const Transition& t) {
  for (const auto& a : t.guard)
    if (a.lhs().total_degree() > 1) return false;
  for (const auto& [v, p] : t.update.entries())
    if (p.total_degree() > 1) return false;
  return true;
}

// Maps the loop's variables into the frame after `beta`: arguments to beta's
// updates and loop temporaries to names that are fresh for beta.
struct PredFrame {
  Subst into;
  Constraint premise;  // guard(beta) /\ update_beta(guard(loop))
};

PredFrame frame(const Transition& beta, const Transition& loop) {
  NameGenerator names;
  names.reserve(beta.vars());
  names.reserve(loop.vars());
  PredFrame f;
  const VarSet bvars = beta.vars();
  for (const auto& x : loop.args) f.into.emplace(x, beta.update(x));
  for (const auto& t : loop.temps)
    if (bvars.count(t)) f.into.emplace(t, Poly(names.fresh(t.name())));
  f.premise = conjoin(beta.guard, substitute(loop.guard, f.into));
  return f;
}

}  // namespace

Formula farkas_encode(const Constraint& premise, const Constraint& conclusion,
                      const VarSet& uvars, ParamPool& pool) {
  std::vector<LinearForm> pre;
  for (const auto& a : premise) pre.push_back(linear_form(a.lhs(), uvars));
  std::vector<Formula> parts;
  for (const auto& a : conclusion) parts.push_back(farkas_atom(pre, linear_form(a.lhs(), uvars), uvars, pool));
  return Formula::conj(parts);
}

std::vector<const Transition*> predecessors(const Transition& loop, const Program& ctx) {
  std::vector<const Transition*> res;
  for (const auto& t : ctx.transitions)
    if (t.target == loop.source && t.source != t.target) res.push_back(&t);
  return res;
}

Requirements build_requirements(const Transition& loop, const GuardPartition& part,
                                const Program& ctx, ParamPool& pool) {
  assert(!part.phi_nm.empty());
  if (!is_linear(loop)) throw NotLinear("loop is not linear: " + loop.to_string());
  Requirements r;
  const Constraint& nm = part.phi_nm;
  const Constraint& g = loop.guard;
  const unsigned m = static_cast<unsigned>(nm.size());
  auto mu = [&](const Constraint& c) { return substitute(c, loop.update.entries()); };
  auto farkas = [&](const Constraint& premise, const Constraint& conclusion) {
    return farkas_encode(premise, conclusion, program_vars(premise, conclusion), pool);
  };

  Constraint taus;
  for (const auto& rho : nm) {
    Template t = make_template(relevant_vars(loop, rho), pool);
    for (const auto& [x, c] : t.coefficients) r.coefficient_params.push_back(c);
    r.constant_params.push_back(t.constant);
    taus.push_back(Atom(t.lhs()));
    r.templates.push_back(std::move(t));
  }

  auto rho_ci = [&](const Atom& rho) { return farkas(conjoin(g, taus), mu({rho})); };
  auto rho_md = [&](const Atom& rho) {
    return farkas(conjoin(conjoin(part.phi_si, taus), conjoin(mu(part.phi_md), mu({rho}))), {rho});
  };

  Formula tau_si = farkas(conjoin(part.phi_si, taus), mu(taus));
  std::vector<Formula> some;
  for (const auto& rho : nm) some.push_back(rho_ci(rho) || rho_md(rho));

  const auto preds = predecessors(loop, ctx);
  std::vector<PredFrame> frames;
  for (const auto* b : preds) frames.push_back(frame(*b, loop));
  std::vector<Formula> sat;
  for (const auto& f : frames) sat.push_back(Formula::of(conjoin(f.premise, substitute(taus, f.into))));
  if (frames.empty()) sat.push_back(Formula::of(conjoin(g, taus)));
  r.hard = Formula::conj({tau_si, Formula::disj(some), Formula::disj(sat)});

  if (!frames.empty()) {
    for (size_t i = 0; i < nm.size(); ++i) {
      std::vector<Formula> li;
      for (const auto& f : frames) {
        try {
          li.push_back(farkas(f.premise, substitute(Constraint{taus[i]}, f.into)));
        } catch (const NotLinear&) {
        }
      }
      if (!li.empty()) r.softs.push_back({Formula::conj(li), m + 2, "li " + nm[i].to_string()});
    }
  }
  for (const auto& rho : nm) r.softs.push_back({rho_ci(rho) || rho_md(rho), 1, "ci|md " + rho.to_string()});
  if (part.phi_md.empty()) r.softs.push_back({farkas(conjoin(g, taus), mu(nm)), 1, "nt"});

  // Each local-invariant soft outweighs all other softs together.
  assert(m + 2 > m + 1);
  return r;
}

std::optional<MaxSmtResult> greedy_max_smt(SmtSession& smt, const Formula& hard,
                                           const std::vector<SoftRequirement>& softs,
                                           const std::vector<Var>& coefficient_params,
                                           const std::vector<Var>& constant_params,
                                           bool minimize) {
  const size_t base = smt.depth();
  auto restore = [&]() {
    while (smt.depth() > base) smt.pop();
  };
  VarSet params(coefficient_params.begin(), coefficient_params.end());
  params.insert(constant_params.begin(), constant_params.end());

  smt.push();
  smt.add(hard);
  if (smt.check() != SatResult::kSat) {
    restore();
    return std::nullopt;
  }
  MaxSmtResult res;
  res.model = smt.model(params);
  res.kept.assign(softs.size(), false);

  std::vector<size_t> order(softs.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](size_t a, size_t b) { return softs[a].weight > softs[b].weight; });
  for (size_t i : order) {
    smt.push();
    smt.add(softs[i].formula);
    if (smt.check() == SatResult::kSat) {
      res.kept[i] = true;
      res.model = smt.model(params);
    } else {
      smt.pop();
    }
  }

  if (minimize) {
    for (long bound = 1; bound <= 64; bound *= 2) {
      std::vector<Formula> box;
      for (const auto& p : params) {
        box.push_back(ge(Poly(p), -bound));
        box.push_back(ge(-Poly(p), -bound));
      }
      smt.push();
      smt.add(Formula::conj(box));
      if (smt.check() == SatResult::kSat) {
        res.model = smt.model(params);
        break;
      }
      smt.pop();
    }
    std::vector<Formula> fixed;
    for (const auto& c : coefficient_params) fixed.push_back(eq0(Poly(c) - Poly(res.model[c])));
    smt.push();
    smt.add(Formula::conj(fixed));
    for (const auto& c : constant_params) {
      for (int i = 0; i < 64; ++i) {
        smt.push();
        smt.add(ge(Poly(res.model[c]) - Poly(c), 1));
        if (smt.check() != SatResult::kSat) {
          smt.pop();
          break;
        }
        res.model = smt.model(params);
      }
    }
  }
  restore();
  return res;
}

bool is_local_invariant(SmtSession& smt, const Transition& loop, const Constraint& phi,
                        const Program& ctx) {
  if (!is_conditional_invariant(smt, loop, phi)) return false;
  for (const auto* b : predecessors(loop, ctx)) {
    PredFrame f = frame(*b, loop);
    if (!implies(smt, f.premise, substitute(phi, f.into))) return false;
  }
  return true;
}

std::vector<Transition> deduce_invariants(SmtSession& smt, const Transition& loop,
                                          const Program& ctx, const InferenceOptions& opts) {
  std::vector<Transition> res;
  GuardPartition part = partition_guard(smt, loop);
  if (part.phi_nm.empty() || !is_linear(loop)) return res;
  Transition cur = loop;
  ParamPool pool;
  while (!part.phi_nm.empty()) {
    Requirements req = build_requirements(cur, part, ctx, pool);
    auto sol = greedy_max_smt(smt, req.hard, req.softs, req.coefficient_params,
                              req.constant_params, opts.minimize);
    if (!sol) return res;
    Constraint invariants;
    for (const auto& t : req.templates) invariants.push_back(t.instantiate(sol->model));
    for (const auto& inv : invariants) {
      if (is_local_invariant(smt, cur, {inv}, ctx)) continue;
      Transition split = strengthen(cur, {inv.negate()}, true);
      split.deduce_passes = loop.deduce_passes + 1;
      res.push_back(std::move(split));
    }
    Transition next = strengthen(cur, invariants);
    if (!is_simple_invariant(smt, next, conjoin(part.phi_si, invariants))) return res;
    GuardPartition next_part = partition_guard(smt, next);
    if (next_part.phi_nm.size() >= part.phi_nm.size()) return res;
    cur = std::move(next);
    part = std::move(next_part);
  }
  cur.deduce_passes = loop.deduce_passes + 1;
  res.insert(res.begin(), std::move(cur));
  return res;
}

}  // namespace itsnt
