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

#include "itsnt/constraint.hpp"

#include <algorithm>
#include <map>

namespace itsnt {

namespace {

Integer floor_div(const Integer& a, const Integer& b) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

Poly normalize(const Poly& p) {
  if (p.is_constant()) return p.constant_term() >= 0 ? Poly(0) : Poly(-1);
  Poly scaled = p * Poly(Rational(p.denominator_lcm()));
  Integer g = 0;
  for (const auto& [m, c] : scaled.terms())
    if (!m.empty()) g = gcd(g, Integer(c.get_num()));
  if (g == 1) return scaled;
  Poly res;
  for (const auto& [m, c] : scaled.terms()) {
    Integer n = c.get_num();
    if (m.empty())
      res += Poly(floor_div(n, g));
    else
      res += Poly::monomial(m, Rational(Integer(n / g)));
  }
  return res;
}

}  // namespace

Atom::Atom(const Poly& lhs) : lhs_(normalize(lhs)) {}

bool Atom::is_trivially_true() const { return lhs_.is_constant() && lhs_.constant_term() >= 0; }
bool Atom::is_trivially_false() const { return lhs_.is_constant() && lhs_.constant_term() < 0; }

std::string Atom::to_string() const { return lhs_.to_string() + " >= 0"; }

std::ostream& operator<<(std::ostream& os, const Atom& a) { return os << a.to_string(); }

std::vector<Atom> make_atoms(const Poly& lhs, Rel rel, const Poly& rhs) {
  Poly d = lhs - rhs;
  switch (rel) {
    case Rel::kGe:
      return {Atom(d)};
    case Rel::kGt:
      return {Atom(d - Poly(1))};
    case Rel::kLe:
      return {Atom(-d)};
    case Rel::kLt:
      return {Atom(-d - Poly(1))};
    case Rel::kEq:
      return {Atom(d), Atom(-d)};
  }
  return {};
}

Constraint substitute(const Constraint& c, const Subst& s) {
  Constraint res;
  res.reserve(c.size());
  for (const auto& a : c) res.push_back(a.substitute(s));
  return res;
}

VarSet vars_of(const Constraint& c) {
  VarSet res;
  for (const auto& a : c) {
    auto vs = a.vars();
    res.insert(vs.begin(), vs.end());
  }
  return res;
}

bool holds(const Constraint& c, const Valuation& v) {
  return std::all_of(c.begin(), c.end(), [&](const Atom& a) { return a.holds(v); });
}

Constraint conjoin(Constraint a, const Constraint& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

std::string to_string(const Constraint& c) {
  if (c.empty()) return "true";
  std::string s;
  for (const auto& a : c) {
    if (!s.empty()) s += " /\\ ";
    s += a.to_string();
  }
  return s;
}

Constraint simplify(const Constraint& c) {
  Constraint res;
  // Non-constant part -> position in res, for merging `p + c1 >= 0` with `p + c2 >= 0`.
  std::map<Poly, size_t> by_shape;
  for (const auto& a : c) {
    if (a.is_trivially_false()) return {Atom(Poly(-1))};
    if (a.is_trivially_true()) continue;
    Poly shape = a.lhs() - Poly(a.lhs().constant_term());
    auto it = by_shape.find(shape);
    if (it == by_shape.end()) {
      by_shape.emplace(shape, res.size());
      res.push_back(a);
    } else if (a.lhs().constant_term() < res[it->second].lhs().constant_term()) {
      res[it->second] = a;
    }
  }
  return res;
}

bool is_trivially_false(const Constraint& c) {
  return std::any_of(c.begin(), c.end(), [](const Atom& a) { return a.is_trivially_false(); });
}

UpdateMap::UpdateMap(const Subst& entries) {
  for (const auto& [v, p] : entries) set(v, p);
}

void UpdateMap::set(const Var& v, const Poly& p) {
  if (p == Poly(v))
    entries_.erase(v);
  else
    entries_[v] = p;
}

Poly UpdateMap::operator()(const Var& v) const {
  auto it = entries_.find(v);
  return it == entries_.end() ? Poly(v) : it->second;
}

VarSet UpdateMap::domain() const {
  VarSet res;
  for (const auto& [v, p] : entries_) res.insert(v);
  return res;
}

UpdateMap compose_updates(const UpdateMap& first, const UpdateMap& second) {
  UpdateMap res;
  VarSet dom = first.domain();
  auto dom2 = second.domain();
  dom.insert(dom2.begin(), dom2.end());
  for (const auto& v : dom) res.set(v, second(v).substitute(first.entries()));
  return res;
}

UpdateMap substitute(const UpdateMap& u, const Subst& s) {
  UpdateMap res;
  for (const auto& [v, p] : u.entries()) res.set(v, p.substitute(s));
  return res;
}

}  // namespace itsnt
