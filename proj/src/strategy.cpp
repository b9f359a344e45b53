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

#include "itsnt/strategy.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "itsnt/inference.hpp"
#include "itsnt/processors.hpp"

namespace itsnt {

namespace {

struct OutOfTime {};
struct TooLarge {};

std::string key(const Transition& t) {
  std::vector<std::string> atoms;
  for (const auto& a : t.guard) atoms.push_back(a.to_string());
  std::sort(atoms.begin(), atoms.end());
  atoms.erase(std::unique(atoms.begin(), atoms.end()), atoms.end());
  std::string k = t.source.name() + "|" + t.target.name() + "|";
  if (!t.targets_sink())
    for (const auto& x : t.args) k += t.update(x).to_string() + ",";
  k += "|";
  for (const auto& a : atoms) k += a + ";";
  return k;
}

std::string name(const Transition& t) { return describe(*t.provenance); }

}  // namespace

std::string to_string(Answer a) { return a == Answer::kNo ? "NO" : "MAYBE"; }

Prover::Prover(SmtSession& smt, StrategyOptions opts)
    : smt_(smt), opts_(std::move(opts)), deadline_(std::chrono::steady_clock::now() + opts_.timeout) {}

void Prover::note(std::string text) { log_.push_back({false, std::move(text)}); }
void Prover::detail(std::string text) { log_.push_back({true, std::move(text)}); }

void Prover::check_budget() const {
  if (std::chrono::steady_clock::now() > deadline_) throw OutOfTime{};
}

bool Prover::satisfiable(const Constraint& guard) {
  if (is_trivially_false(guard)) return false;
  return check_sat(smt_, Formula::of(guard)) != SatResult::kUnsat;
}

void Prover::add_unique(Program& p, Transition t) {
  const std::string k = key(t);
  for (const auto& u : p.transitions)
    if (key(u) == k) return;
  p.transitions.push_back(std::move(t));
  if (p.transitions.size() > opts_.max_transitions) throw TooLarge{};
}

Program Prover::prune(const Program& p) {
  std::set<FunSym> reach{p.start};
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& t : p.transitions)
      if (reach.count(t.source) && !t.targets_sink()) changed = reach.insert(t.target).second || changed;
  }
  Program res = p;
  res.transitions.clear();
  size_t dropped = 0;
  for (const auto& t : p.transitions) {
    if (reach.count(t.source) && satisfiable(t.guard))
      res.transitions.push_back(t);
    else
      ++dropped;
  }
  if (dropped) note("prune: dropped " + std::to_string(dropped) + " transition(s)");
  return res;
}

Transition Prover::preprocess_simple_loop(const Transition& loop) {
  Transition cur = loop;
  if (auto v = sign_alternating_var(loop)) {
    cur = chain(loop, loop, names_);
    note("self-chain " + name(loop) + ": " + v->name() + " alternates its sign");
  }
  const Transition orig = cur;
  for (size_t i = 0; i <= loop.args.size(); ++i) {
    Transition next = chain(cur, orig, names_);
    if (unstable_vars(next).size() >= unstable_vars(cur).size()) break;
    note("self-chain " + name(cur) + ": fewer unstable variables");
    cur = std::move(next);
  }
  return cur;
}

Prover::Elimination Prover::eliminate_simple_loop(const Transition& loop, const Program& p) {
  Elimination e;
  check_budget();
  if (auto nt = make_nonterm(smt_, loop)) {
    note("nonterm " + name(loop));
    e.results.push_back(std::move(*nt));
    return e;
  }
  Transition twice = chain(loop, loop, names_);
  if (satisfiable(twice.guard)) {
    if (auto nt = make_nonterm(smt_, twice)) {
      note("nonterm " + name(twice));
      e.results.push_back(std::move(*nt));
      return e;
    }
  }
  if (auto fp = make_fixpoint(smt_, loop)) {
    note("fixpoint " + name(loop));
    e.results.push_back(std::move(*fp));
  }
  check_budget();
  GuardPartition part = partition_guard(smt_, loop);
  if (part.is_monotonic()) {
    const Var k = names_.fresh("k");
    auto cf = solve_update(loop.update, loop.args, k);
    if (cf && !cf->has_exponential()) {
      try {
        Transition acc = accelerate(loop, part, *cf);
        note("accelerate " + name(loop));
        detail("  " + acc.to_string());
        e.results.push_back(std::move(acc));
        return e;
      } catch (const Inapplicable&) {
      }
    }
    note("no closed form for " + name(loop));
    return e;
  }
  if (loop.deduce_passes >= opts_.strengthen_budget) {
    note("strengthening budget exhausted for " + name(loop));
    return e;
  }
  InferenceOptions io;
  io.minimize = opts_.minimize_invariants;
  e.variants = deduce_invariants(smt_, loop, p, io);
  note("deduce invariants for " + name(loop) + ": " + std::to_string(e.variants.size()) +
       " variant(s)");
  for (const auto& v : e.variants) detail("  " + v.to_string());
  return e;
}

std::vector<Transition> Prover::chain_with_predecessors(const Transition& result,
                                                        const Program& p) {
  std::vector<Transition> res;
  for (const auto& b : p.transitions) {
    if (b.source == b.target || b.target != result.source) continue;
    Transition c = chain(b, result, names_);
    if (satisfiable(c.guard)) res.push_back(std::move(c));
  }
  return res;
}

std::optional<FunSym> Prover::pick_location(const Program& p) const {
  std::map<FunSym, std::pair<size_t, size_t>> deg;  // in, out
  for (const auto& t : p.transitions) {
    if (!t.targets_sink() && t.target != p.start) ++deg[t.target].first;
    if (t.source != p.start) ++deg[t.source].second;
  }
  std::optional<FunSym> best;
  size_t best_cost = 0;
  for (const auto& [f, d] : deg) {
    if (d.first == 0) continue;
    size_t cost = d.first * d.second;
    if (!best || cost < best_cost) {
      best = f;
      best_cost = cost;
    }
  }
  return best;
}

Program Prover::eliminate_location(const Program& p, const FunSym& f) {
  Program res = p;
  res.transitions.clear();
  std::vector<const Transition*> in, out;
  for (const auto& t : p.transitions) {
    if (t.target == f && t.source != f) in.push_back(&t);
    if (t.source == f && t.target != f) out.push_back(&t);
    if (t.source != f && t.target != f) res.transitions.push_back(t);
  }
  size_t added = 0;
  for (const auto* a : in)
    for (const auto* b : out) {
      check_budget();
      Transition c = chain(*a, *b, names_);
      if (!satisfiable(c.guard)) continue;
      ++added;
      add_unique(res, std::move(c));
    }
  note("eliminate " + f.name() + ": " + std::to_string(in.size()) + " x " +
       std::to_string(out.size()) + " -> " + std::to_string(added) + " transition(s)");
  return res;
}

Verdict Prover::find_witness(const Program& simplified, const Program& original) {
  Verdict v;
  for (const auto& t : simplified.transitions) {
    if (!t.targets_sink() || t.source != simplified.start) continue;
    check_budget();
    const VarSet vars = t.vars();
    // Small temporaries first: they keep replay plans short.
    std::vector<Formula> small;
    for (const auto& x : t.temps) {
      small.push_back(Formula::of(make_atoms(Poly(x), Rel::kLe, Poly(100))));
      small.push_back(Formula::of(make_atoms(Poly(x), Rel::kGe, Poly(-100))));
    }
    for (bool bounded : {true, false}) {
      if (!bounded && small.empty()) break;
      Formula f = Formula::of(t.guard);
      if (bounded) f = f && Formula::conj(small);
      Valuation model;
      if (check_sat(smt_, f, &model, vars) != SatResult::kSat) continue;
      Configuration w{t.source, {}};
      for (const auto& x : t.args) w.values.push_back(model.at(x));
      ReplayPlan plan;
      try {
        plan = expand_trace(*t.provenance, model);
      } catch (const BadModel& e) {
        note(std::string("witness rejected: ") + e.what());
        continue;
      }
      Validation val = validate_witness(original, w, plan, opts_.validate_steps);
      if (!val.ok) {
        note("witness " + w.to_string() + " rejected: " + val.diagnostic);
        continue;
      }
      note("witness " + w.to_string() + " for " + name(t));
      v.answer = Answer::kNo;
      v.witness = w;
      v.model = model;
      v.plan = plan;
      v.derivation = name(t);
      return v;
    }
  }
  v.reason = "no validated witness";
  return v;
}

Verdict Prover::prove(const Program& p) {
  deadline_ = std::chrono::steady_clock::now() + opts_.timeout;
  names_.reserve(p.vars());
  Verdict v;
  try {
    Program cur = p;
    while (!cur.is_simplified()) {
      cur = prune(cur);
      if (cur.is_simplified()) break;
      std::vector<Transition> s;
      for (;;) {
        auto it = std::find_if(cur.transitions.begin(), cur.transitions.end(),
                               [](const Transition& t) { return t.is_simple_loop(); });
        if (it == cur.transitions.end()) break;
        Transition loop = *it;
        cur.transitions.erase(it);
        check_budget();
        Transition pre = preprocess_simple_loop(loop);
        Elimination e = eliminate_simple_loop(pre, cur);
        for (auto& t : e.variants) add_unique(cur, std::move(t));
        for (const auto& r : e.results)
          for (auto& c : chain_with_predecessors(r, cur)) s.push_back(std::move(c));
      }
      for (auto& t : s) add_unique(cur, std::move(t));
      if (cur.is_simplified()) break;
      auto f = pick_location(cur);
      if (!f) break;
      cur = eliminate_location(cur, *f);
      for (const auto& t : cur.transitions) detail("  " + t.to_string());
    }
    v = find_witness(cur, p);
  } catch (const OutOfTime&) {
    v.reason = "timeout";
    note("timeout");
  } catch (const TooLarge&) {
    v.reason = "too many transitions";
    note("too many transitions");
  }
  v.log = log_;
  return v;
}

Verdict prove_nontermination(const Program& p, const StrategyOptions& opts) {
  SmtSession smt(opts.solver);
  Prover prover(smt, opts);
  return prover.prove(p);
}

}  // namespace itsnt
