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

#include "itsnt/oracle.hpp"

#include <random>
#include <sstream>

namespace itsnt {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

Valuation bind(const Configuration& c, const Transition& t, const Valuation& temps) {
  if (c.values.size() != t.args.size())
    throw ArityMismatch("configuration " + c.to_string() + " does not match arity of t" +
                        std::to_string(t.id));
  Valuation sigma;
  for (const auto& v : t.temps) {
    auto it = temps.find(v);
    sigma[v] = it == temps.end() ? Integer(0) : it->second;
  }
  for (size_t i = 0; i < t.args.size(); ++i) sigma[t.args[i]] = c.values[i];
  return sigma;
}

std::string valuation_string(const Valuation& v) {
  std::string s;
  for (const auto& [var, val] : v) {
    if (!s.empty()) s += ", ";
    s += var.name() + "=" + val.get_str();
  }
  return s;
}

class Expander {
 public:
  Expander(std::size_t max_steps) : max_steps_(max_steps) {}

  ReplayPlan run(const Provenance& p, const Valuation& model) {
    ReplayPlan plan;
    expand(p, model, plan.prefix, &plan.loop);
    return plan;
  }

 private:
  void emit(std::vector<ReplayStep>& out, ReplayStep s) {
    if (++emitted_ > max_steps_) throw BadModel("replay plan exceeds step limit");
    out.push_back(std::move(s));
  }

  // Appends the original steps of p to `out`; a sink recipe fills `loop`.
  void expand(const Provenance& p, const Valuation& model, std::vector<ReplayStep>& out,
              std::optional<ReplayLoop>* loop) {
    std::visit(
        overloaded{
            [&](const recipe::Original& o) {
              Valuation temps;
              for (const auto& v : o.temps) {
                auto it = model.find(v);
                temps[v] = it == model.end() ? Integer(0) : it->second;
              }
              emit(out, ReplayStep{o.id, std::move(temps)});
            },
            [&](const recipe::Accelerated& a) {
              auto it = model.find(a.counter);
              if (it == model.end()) throw BadModel("no value for counter " + a.counter.name());
              if (it->second < 1)
                throw BadModel("counter " + a.counter.name() + " = " + it->second.get_str() +
                               " is below 1");
              if (it->second > Integer(static_cast<unsigned long>(max_steps_)))
                throw BadModel("counter " + a.counter.name() + " too large to replay");
              unsigned long n = it->second.get_ui();
              for (unsigned long i = 0; i < n; ++i) expand(*a.base, model, out, nullptr);
            },
            [&](const recipe::Chained& c) {
              expand(*c.first, model, out, nullptr);
              Valuation renamed = model;
              for (const auto& [orig, poly] : c.second_renaming) {
                const Var& fresh = *poly.vars().begin();
                auto it = model.find(fresh);
                renamed[orig] = it == model.end() ? Integer(0) : it->second;
              }
              expand(*c.second, renamed, out, loop);
            },
            [&](const recipe::Nonterm& n) { close(*n.base, n.base_id, LoopKind::kRecurrent, model, loop); },
            [&](const recipe::Fixpoint& f) { close(*f.base, f.base_id, LoopKind::kFixpoint, model, loop); },
            [&](const recipe::Strengthened& s) { expand(*s.base, model, out, loop); },
        },
        p.node);
  }

  void close(const Provenance& base, TransitionId id, LoopKind kind, const Valuation& model,
             std::optional<ReplayLoop>* loop) {
    if (!loop) throw BadModel("non-terminating continuation in the middle of a trace");
    ReplayLoop l{kind, id, {}};
    expand(base, model, l.body, nullptr);
    // Derived loops have no id of their own; name them after their first step.
    if (l.loop_id == 0 && !l.body.empty()) l.loop_id = l.body.front().id;
    *loop = std::move(l);
  }

  std::size_t max_steps_;
  std::size_t emitted_ = 0;
};

std::string step_line(const ReplayStep& s) {
  std::string line = "t" + std::to_string(s.id);
  if (!s.temps.empty()) line += " [" + valuation_string(s.temps) + "]";
  return line;
}

}  // namespace

std::optional<Configuration> step(const Configuration& c, const Transition& t,
                                  const Valuation& temps) {
  if (c.symbol != t.source)
    throw ArityMismatch("t" + std::to_string(t.id) + " does not start at " + c.symbol.name());
  Valuation sigma = bind(c, t, temps);
  if (!holds(t.guard, sigma)) return std::nullopt;
  Configuration next{t.target, {}};
  if (t.targets_sink()) return next;
  for (const auto& x : t.args) {
    Rational r = t.update(x).eval(sigma);
    if (r.get_den() != 1) throw BadModel("update of " + x.name() + " is not integral");
    next.values.push_back(r.get_num());
  }
  return next;
}

std::vector<std::string> ReplayPlan::lines() const {
  std::vector<std::string> res;
  for (const auto& s : prefix) res.push_back(step_line(s));
  if (loop) {
    std::string body;
    for (const auto& s : loop->body) body += (body.empty() ? "" : ", ") + step_line(s);
    res.push_back(std::string(loop->kind == LoopKind::kRecurrent ? "repeat forever: "
                                                                  : "fixpoint: ") +
                  body);
  }
  return res;
}

ReplayPlan expand_trace(const Provenance& trace, const Valuation& model, std::size_t max_steps) {
  return Expander(max_steps).run(trace, model);
}

Validation validate_witness(const Program& original, const Configuration& witness,
                            const ReplayPlan& plan, unsigned loop_steps) {
  Validation res;
  Configuration cur = witness;
  res.prefix_configs.push_back(cur);

  auto run = [&](const ReplayStep& s, const std::string& where) -> bool {
    const Transition* t = original.find(s.id);
    if (!t) {
      res.diagnostic = where + ": unknown transition t" + std::to_string(s.id);
      return false;
    }
    if (t->source != cur.symbol) {
      res.diagnostic = where + ": t" + std::to_string(s.id) + " cannot fire at " + cur.to_string();
      return false;
    }
    auto next = step(cur, *t, s.temps);
    if (!next) {
      res.diagnostic = where + ": t" + std::to_string(s.id) + " is stuck at " + cur.to_string();
      return false;
    }
    for (const auto& v : next->values)
      if (mpz_sizeinbase(v.get_mpz_t(), 2) > kMaxValidationBits) {
        res.diagnostic = where + ": values exceed " + std::to_string(kMaxValidationBits) + " bits";
        return false;
      }
    cur = *next;
    return true;
  };

  for (size_t i = 0; i < plan.prefix.size(); ++i) {
    if (!run(plan.prefix[i], "step " + std::to_string(i + 1))) return res;
    res.prefix_configs.push_back(cur);
  }
  if (!plan.loop) {
    res.diagnostic = "plan has no loop";
    return res;
  }
  const ReplayLoop& loop = *plan.loop;
  if (loop.body.empty()) {
    res.diagnostic = "loop body is empty";
    return res;
  }
  const Configuration entry = cur;
  if (loop.kind == LoopKind::kFixpoint) {
    for (const auto& s : loop.body)
      if (!run(s, "fixpoint iteration")) return res;
    if (!(cur == entry)) {
      res.diagnostic = "fixpoint iteration moved " + entry.to_string() + " to " + cur.to_string();
      return res;
    }
    res.ok = true;
    return res;
  }
  for (unsigned it = 0; it < loop_steps; ++it) {
    for (const auto& s : loop.body)
      if (!run(s, "loop iteration " + std::to_string(it + 1))) return res;
    if (cur.symbol != entry.symbol) {
      res.diagnostic = "loop body does not return to " + entry.symbol.name();
      return res;
    }
  }
  res.ok = true;
  return res;
}

DifferentialReport differential_accelerate_check(SmtSession& smt, const Transition& loop,
                                                 const Transition& accelerated, const Var& counter,
                                                 unsigned trials, unsigned max_k,
                                                 std::uint64_t seed) {
  DifferentialReport rep;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> kdist(1, static_cast<long>(max_k)), vdist(-12, 12);
  const Formula guard = Formula::of(accelerated.guard);
  VarSet model_vars = accelerated.vars();
  model_vars.insert(counter);

  for (unsigned trial = 0; trial < trials; ++trial) {
    long n = kdist(rng);
    // Pin k and nudge the other variables towards a random point; drop the
    // hints if they make the query unsatisfiable.
    Formula pinned = guard && Formula::of(make_atoms(Poly(counter), Rel::kEq, Poly(n)));
    std::vector<Formula> hints;
    for (const auto& v : model_vars) {
      if (v == counter) continue;
      long c = vdist(rng);
      hints.push_back(Formula::of(make_atoms(Poly(v), Rel::kGe, Poly(c - 3))));
      hints.push_back(Formula::of(make_atoms(Poly(v), Rel::kLe, Poly(c + 3))));
    }
    Valuation sigma;
    SatResult r = check_sat(smt, pinned && Formula::conj(hints), &sigma, model_vars);
    if (r != SatResult::kSat) r = check_sat(smt, pinned, &sigma, model_vars);
    if (r != SatResult::kSat) {
      Formula bounded = guard && Formula::of(make_atoms(Poly(counter), Rel::kLe, Poly(static_cast<long>(max_k))));
      r = check_sat(smt, bounded, &sigma, model_vars);
      if (r != SatResult::kSat) continue;
    }
    ++rep.sampled;

    Configuration start{loop.source, {}};
    for (const auto& x : loop.args) start.values.push_back(sigma.at(x));
    auto expected = step(start, accelerated, sigma);
    std::string failure;
    if (!expected) {
      failure = "sampled model does not satisfy the accelerated guard";
    } else {
      Configuration cur = start;
      unsigned long k = sigma.at(counter).get_ui();
      for (unsigned long i = 0; i < k && failure.empty(); ++i) {
        auto next = step(cur, loop, sigma);
        if (!next)
          failure = "loop stuck at iteration " + std::to_string(i + 1) + " from " + cur.to_string();
        else
          cur = *next;
      }
      if (failure.empty() && !(cur == *expected))
        failure = "after " + std::to_string(k) + " steps reached " + cur.to_string() +
                  " but accelerated transition gives " + expected->to_string();
    }
    if (failure.empty()) {
      ++rep.passed;
    } else {
      ++rep.failed;
      if (rep.first_failure.empty())
        rep.first_failure = failure + " (model " + valuation_string(sigma) + ")";
    }
  }
  return rep;
}

}  // namespace itsnt
