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

#include <algorithm>
#include <cctype>
#include <map>

#include "itsnt/smt.hpp"

namespace itsnt {

Formula Formula::atom(const Atom& a) {
  if (a.is_trivially_true()) return truth();
  if (a.is_trivially_false()) return falsity();
  Formula f(Kind::kAtom);
  f.atom_.push_back(a);
  return f;
}

Formula Formula::conj(std::vector<Formula> fs) {
  Formula f(Kind::kAnd);
  for (auto& g : fs) {
    if (g.kind_ == Kind::kFalse) return falsity();
    if (g.kind_ == Kind::kTrue) continue;
    if (g.kind_ == Kind::kAnd) {
      for (auto& c : g.children_) f.children_.push_back(std::move(c));
    } else {
      f.children_.push_back(std::move(g));
    }
  }
  if (f.children_.empty()) return truth();
  if (f.children_.size() == 1) return f.children_.front();
  return f;
}

Formula Formula::disj(std::vector<Formula> fs) {
  Formula f(Kind::kOr);
  for (auto& g : fs) {
    if (g.kind_ == Kind::kTrue) return truth();
    if (g.kind_ == Kind::kFalse) continue;
    if (g.kind_ == Kind::kOr) {
      for (auto& c : g.children_) f.children_.push_back(std::move(c));
    } else {
      f.children_.push_back(std::move(g));
    }
  }
  if (f.children_.empty()) return falsity();
  if (f.children_.size() == 1) return f.children_.front();
  return f;
}

Formula Formula::negation(Formula g) {
  switch (g.kind_) {
    case Kind::kTrue:
      return falsity();
    case Kind::kFalse:
      return truth();
    case Kind::kNot:
      return g.children_.front();
    default:
      break;
  }
  Formula f(Kind::kNot);
  f.children_.push_back(std::move(g));
  return f;
}

Formula Formula::of(const Constraint& c) {
  std::vector<Formula> fs;
  fs.reserve(c.size());
  for (const auto& a : c) fs.push_back(atom(a));
  return conj(std::move(fs));
}

VarSet Formula::vars() const {
  if (kind_ == Kind::kAtom) return atom_.front().vars();
  VarSet res;
  for (const auto& c : children_) {
    auto vs = c.vars();
    res.insert(vs.begin(), vs.end());
  }
  return res;
}

Formula Formula::substitute(const Subst& s) const {
  switch (kind_) {
    case Kind::kTrue:
    case Kind::kFalse:
      return *this;
    case Kind::kAtom:
      return atom(atom_.front().substitute(s));
    case Kind::kNot:
      return negation(children_.front().substitute(s));
    case Kind::kAnd:
    case Kind::kOr: {
      std::vector<Formula> cs;
      for (const auto& c : children_) cs.push_back(c.substitute(s));
      return kind_ == Kind::kAnd ? conj(std::move(cs)) : disj(std::move(cs));
    }
  }
  return *this;
}

bool Formula::holds(const Valuation& v) const {
  switch (kind_) {
    case Kind::kTrue:
      return true;
    case Kind::kFalse:
      return false;
    case Kind::kAtom:
      return atom_.front().holds(v);
    case Kind::kNot:
      return !children_.front().holds(v);
    case Kind::kAnd:
      return std::all_of(children_.begin(), children_.end(),
                         [&](const Formula& f) { return f.holds(v); });
    case Kind::kOr:
      return std::any_of(children_.begin(), children_.end(),
                         [&](const Formula& f) { return f.holds(v); });
  }
  return false;
}

Formula operator&&(const Formula& a, const Formula& b) { return Formula::conj({a, b}); }
Formula operator||(const Formula& a, const Formula& b) { return Formula::disj({a, b}); }
Formula operator!(const Formula& a) { return Formula::negation(a); }

namespace {

std::string numeral(const Integer& n) {
  return n < 0 ? "(- " + Integer(-n).get_str() + ")" : n.get_str();
}

std::string constant(const Rational& q) {
  if (q.get_den() == 1) return numeral(q.get_num());
  return "(/ " + numeral(q.get_num()) + " " + q.get_den().get_str() + ")";
}

}  // namespace

std::string to_smtlib(const Poly& p) {
  if (p.is_zero()) return "0";
  std::vector<std::string> terms;
  for (const auto& [m, c] : p.terms()) {
    std::vector<std::string> factors;
    if (c != 1 || m.empty()) factors.push_back(constant(c));
    for (const auto& [v, e] : m)
      for (unsigned i = 0; i < e; ++i) factors.push_back(quote_symbol(v.name()));
    if (factors.size() == 1) {
      terms.push_back(factors.front());
    } else {
      std::string s = "(*";
      for (const auto& f : factors) s += " " + f;
      terms.push_back(s + ")");
    }
  }
  if (terms.size() == 1) return terms.front();
  std::string s = "(+";
  for (const auto& t : terms) s += " " + t;
  return s + ")";
}

std::string to_smtlib(const Formula& f) {
  using K = Formula::Kind;
  switch (f.kind()) {
    case K::kTrue:
      return "true";
    case K::kFalse:
      return "false";
    case K::kAtom:
      return "(>= " + to_smtlib(f.get_atom().lhs()) + " 0)";
    case K::kNot:
      return "(not " + to_smtlib(f.children().front()) + ")";
    case K::kAnd:
    case K::kOr: {
      std::string s = f.kind() == K::kAnd ? "(and" : "(or";
      for (const auto& c : f.children()) s += " " + to_smtlib(c);
      return s + ")";
    }
  }
  return "true";
}

Poly poly_from_smtlib(const SExpr& e) {
  if (!e.is_list) {
    const std::string& a = e.atom;
    if (!a.empty() && std::isdigit(static_cast<unsigned char>(a[0]))) {
      if (a.find('.') != std::string::npos) {
        // Decimal literal such as 2.0 or 0.5.
        auto dot = a.find('.');
        std::string digits = a.substr(0, dot) + a.substr(dot + 1);
        Integer den;
        mpz_ui_pow_ui(den.get_mpz_t(), 10, a.size() - dot - 1);
        return Poly(Rational(Integer(digits), den));
      }
      return Poly(Integer(a));
    }
    return Poly(Var(e.symbol()));
  }
  if (e.list.empty()) throw SExprError("empty term");
  const std::string op = e.list.front().atom;
  std::vector<Poly> args;
  for (size_t i = 1; i < e.list.size(); ++i) args.push_back(poly_from_smtlib(e.list[i]));
  if (args.empty()) throw SExprError("operator without arguments: " + op);
  if (op == "+") {
    Poly r;
    for (const auto& a : args) r += a;
    return r;
  }
  if (op == "*") {
    Poly r(1);
    for (const auto& a : args) r *= a;
    return r;
  }
  if (op == "-") {
    if (args.size() == 1) return -args.front();
    Poly r = args.front();
    for (size_t i = 1; i < args.size(); ++i) r -= args[i];
    return r;
  }
  if (op == "/") {
    Poly r = args.front();
    for (size_t i = 1; i < args.size(); ++i) {
      if (!args[i].is_constant() || args[i].constant_term() == 0)
        throw SExprError("non-constant divisor");
      r *= Poly(Rational(1) / args[i].constant_term());
    }
    return r;
  }
  throw SExprError("unsupported term operator: " + op);
}

Formula formula_from_smtlib(const SExpr& e) {
  if (!e.is_list) {
    if (e.atom == "true") return Formula::truth();
    if (e.atom == "false") return Formula::falsity();
    throw SExprError("unsupported formula: " + e.atom);
  }
  if (e.list.empty()) throw SExprError("empty formula");
  const std::string op = e.list.front().atom;
  if (op == "and" || op == "or") {
    std::vector<Formula> cs;
    for (size_t i = 1; i < e.list.size(); ++i) cs.push_back(formula_from_smtlib(e.list[i]));
    return op == "and" ? Formula::conj(std::move(cs)) : Formula::disj(std::move(cs));
  }
  if (op == "not") {
    if (e.list.size() != 2) throw SExprError("not expects one argument");
    return Formula::negation(formula_from_smtlib(e.list[1]));
  }
  static const std::map<std::string, Rel> kRels = {
      {">=", Rel::kGe}, {">", Rel::kGt}, {"<=", Rel::kLe}, {"<", Rel::kLt}, {"=", Rel::kEq}};
  auto it = kRels.find(op);
  if (it == kRels.end()) throw SExprError("unsupported formula operator: " + op);
  if (e.list.size() != 3) throw SExprError("relation expects two arguments");
  auto atoms = make_atoms(poly_from_smtlib(e.list[1]), it->second, poly_from_smtlib(e.list[2]));
  std::vector<Formula> fs;
  for (const auto& a : atoms) fs.push_back(Formula::atom(a));
  return Formula::conj(std::move(fs));
}

Formula formula_from_smtlib(const std::string& text) { return formula_from_smtlib(parse_sexpr(text)); }

std::string to_string(SatResult r) {
  switch (r) {
    case SatResult::kSat:
      return "sat";
    case SatResult::kUnsat:
      return "unsat";
    case SatResult::kUnknown:
      return "unknown";
  }
  return "unknown";
}

}  // namespace itsnt
