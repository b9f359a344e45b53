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

#include "itsnt/program.hpp"

#include <algorithm>
#include <sstream>

namespace itsnt {

std::ostream& operator<<(std::ostream& os, const FunSym& f) { return os << f.name(); }

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

}  // namespace

std::string describe(const Provenance& p) {
  return std::visit(
      overloaded{
          [](const recipe::Original& o) { return "t" + std::to_string(o.id); },
          [](const recipe::Accelerated& a) {
            return "accel(" + describe(*a.base) + ", " + a.counter.name() + ")";
          },
          [](const recipe::Chained& c) {
            return "chain(" + describe(*c.first) + ", " + describe(*c.second) + ")";
          },
          [](const recipe::Nonterm& n) { return "nonterm(" + describe(*n.base) + ")"; },
          [](const recipe::Fixpoint& f) { return "fixpoint(" + describe(*f.base) + ")"; },
          [](const recipe::Strengthened& s) {
            return std::string(s.split ? "split(" : "strengthen(") + describe(*s.base) + ", " +
                   itsnt::to_string(s.added) + ")";
          },
      },
      p.node);
}

VarSet Transition::vars() const {
  VarSet res(args.begin(), args.end());
  auto g = vars_of(guard);
  res.insert(g.begin(), g.end());
  for (const auto& [v, p] : update.entries()) {
    auto pv = p.vars();
    res.insert(pv.begin(), pv.end());
  }
  return res;
}

std::string Transition::to_string() const {
  std::ostringstream os;
  os << "t" << id << ": " << source << "(";
  for (size_t i = 0; i < args.size(); ++i) os << (i ? ", " : "") << args[i];
  os << ") -> " << target;
  if (!targets_sink()) {
    os << "(";
    for (size_t i = 0; i < args.size(); ++i) os << (i ? ", " : "") << update(args[i]);
    os << ")";
  }
  os << " [" << itsnt::to_string(guard) << "]";
  return os.str();
}

bool Program::is_simplified() const {
  return std::all_of(transitions.begin(), transitions.end(),
                     [&](const Transition& t) { return t.source == start; });
}

const Transition* Program::find(TransitionId id) const {
  for (const auto& t : transitions)
    if (t.id == id) return &t;
  return nullptr;
}

VarSet Program::vars() const {
  VarSet res(args.begin(), args.end());
  for (const auto& t : transitions) {
    auto vs = t.vars();
    res.insert(vs.begin(), vs.end());
  }
  return res;
}

std::string Program::to_string() const {
  std::string s;
  for (const auto& t : transitions) s += t.to_string() + "\n";
  return s;
}

std::string Configuration::to_string() const {
  std::ostringstream os;
  os << symbol << "(";
  for (size_t i = 0; i < values.size(); ++i) os << (i ? ", " : "") << values[i];
  os << ")";
  return os.str();
}

void refresh_temps(Transition& t) {
  VarSet args(t.args.begin(), t.args.end());
  auto all = t.vars();
  t.temps.clear();
  for (const auto& v : all)
    if (!args.count(v)) t.temps.push_back(v);
}

std::pair<Transition, Subst> rename_apart(const Transition& t, const VarSet& avoid,
                                          NameGenerator& names) {
  Subst renaming;
  for (const auto& v : t.temps)
    if (avoid.count(v)) renaming.emplace(v, Poly(names.fresh(v.name())));
  if (renaming.empty()) return {t, {}};
  Transition res = t;
  res.guard = substitute(t.guard, renaming);
  res.update = substitute(t.update, renaming);
  for (auto& v : res.temps) {
    auto it = renaming.find(v);
    if (it != renaming.end()) v = *it->second.vars().begin();
  }
  return {res, renaming};
}

}  // namespace itsnt
