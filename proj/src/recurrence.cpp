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

#include "itsnt/recurrence.hpp"

#include <algorithm>
#include <cassert>

namespace itsnt {

ExpPoly::ExpPoly(const Poly& p) { add(1, p); }

bool ExpPoly::has_exponential() const {
  for (const auto& [b, c] : terms_)
    if (b != 1) return true;
  return false;
}

Poly ExpPoly::polynomial_part() const {
  auto it = terms_.find(1);
  return it == terms_.end() ? Poly() : it->second;
}

void ExpPoly::add(const Integer& base, const Poly& coeff) {
  assert(base != 0);
  if (coeff.is_zero()) return;
  auto [it, inserted] = terms_.emplace(base, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

ExpPoly& ExpPoly::operator+=(const ExpPoly& o) {
  for (const auto& [b, c] : o.terms_) add(b, c);
  return *this;
}

ExpPoly operator-(const ExpPoly& a, const ExpPoly& b) {
  ExpPoly res = a;
  for (const auto& [base, c] : b.terms_) res.add(base, -c);
  return res;
}

ExpPoly operator*(const ExpPoly& a, const ExpPoly& b) {
  ExpPoly res;
  for (const auto& [ba, ca] : a.terms_)
    for (const auto& [bb, cb] : b.terms_) res.add(ba * bb, ca * cb);
  return res;
}

ExpPoly ExpPoly::shift(const Var& k, long delta) const {
  Subst s{{k, Poly(k) + Poly(delta)}};
  ExpPoly res;
  for (const auto& [b, c] : terms_) {
    Rational factor(1);
    Integer p;
    mpz_pow_ui(p.get_mpz_t(), b.get_mpz_t(), static_cast<unsigned long>(delta < 0 ? -delta : delta));
    factor = delta < 0 ? Rational(1) / Rational(p) : Rational(p);
    res.add(b, c.substitute(s) * Poly(factor));
  }
  return res;
}

Poly ExpPoly::at(const Var& k, const Integer& n) const {
  Subst s{{k, Poly(n)}};
  Poly res;
  for (const auto& [b, c] : terms_) {
    Integer p;
    mpz_pow_ui(p.get_mpz_t(), b.get_mpz_t(), n.get_ui());
    res += c.substitute(s) * Poly(p);
  }
  return res;
}

std::string ExpPoly::to_string(const Var& k) const {
  if (terms_.empty()) return "0";
  std::string s;
  for (const auto& [b, c] : terms_) {
    if (!s.empty()) s += " + ";
    if (b == 1)
      s += c.to_string();
    else
      s += "(" + c.to_string() + ")*" + (b < 0 ? "(" + b.get_str() + ")" : b.get_str()) + "^" +
           k.name();
  }
  return s;
}

ExpPoly substitute(const Poly& p, const std::map<Var, ExpPoly>& s) {
  ExpPoly res;
  for (const auto& [m, c] : p.terms()) {
    ExpPoly term{Poly(c)};
    Monomial kept;
    for (const auto& [v, e] : m) {
      auto it = s.find(v);
      if (it == s.end()) {
        kept.emplace(v, e);
        continue;
      }
      for (unsigned i = 0; i < e; ++i) term = term * it->second;
    }
    if (!kept.empty()) term = term * ExpPoly(Poly::monomial(kept));
    res += term;
  }
  return res;
}

ExpPoly ClosedForm::entry(const Var& v) const {
  auto it = entries_.find(v);
  return it == entries_.end() ? ExpPoly(Poly(v)) : it->second;
}

bool ClosedForm::has_exponential() const {
  for (const auto& [v, e] : entries_)
    if (e.has_exponential()) return true;
  return false;
}

Subst ClosedForm::polynomial_subst() const {
  assert(!has_exponential());
  Subst res;
  for (const auto& [v, e] : entries_) res.emplace(v, e.polynomial_part());
  return res;
}

std::string ClosedForm::to_string() const {
  std::string s = "{";
  for (const auto& [v, e] : entries_) {
    if (s.size() > 1) s += ", ";
    s += v.name() + " -> " + e.to_string(counter_);
  }
  return s + "}";
}

namespace {

// m^(r) = m (m-1) ... (m-r+1)
Poly falling_factorial(const Var& m, unsigned r) {
  Poly res(1);
  for (unsigned i = 0; i < r; ++i) res *= Poly(m) - Poly(static_cast<long>(i));
  return res;
}

// Stirling numbers of the second kind S(n, k), 0 <= k <= n.
std::vector<std::vector<Integer>> stirling2(unsigned max_n) {
  std::vector<std::vector<Integer>> s(max_n + 1, std::vector<Integer>(max_n + 1, 0));
  s[0][0] = 1;
  for (unsigned n = 1; n <= max_n; ++n)
    for (unsigned k = 1; k <= n; ++k) s[n][k] = Integer(k) * s[n - 1][k] + s[n - 1][k - 1];
  return s;
}

Integer binomial(unsigned n, unsigned k) {
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

// s with b*s(m+1) - c*s(m) = q(m), for b != c; same degree as q.
Poly solve_shifted(const Poly& q, const Var& m, const Integer& b, const Integer& c) {
  auto qs = q.coefficients_in(m);
  const size_t d = qs.size();
  std::vector<Poly> s(d);
  Rational inv = Rational(1) / Rational(b - c);
  for (size_t j = d; j-- > 0;) {
    Poly acc = qs[j];
    for (size_t i = j + 1; i < d; ++i)
      acc -= Poly(Rational(b * binomial(static_cast<unsigned>(i), static_cast<unsigned>(j)))) * s[i];
    s[j] = acc * Poly(inv);
  }
  return Poly::from_coefficients(s, m);
}

}  // namespace

Poly sum_up_to(const Poly& q, const Var& m) {
  auto qs = q.coefficients_in(m);
  auto st = stirling2(static_cast<unsigned>(qs.size()));
  Poly res;
  for (size_t j = 0; j < qs.size(); ++j) {
    if (qs[j].is_zero()) continue;
    for (size_t l = 0; l <= j; ++l) {
      if (st[j][l] == 0) continue;
      Rational f = Rational(st[j][l]) / Rational(static_cast<long>(l + 1));
      res += qs[j] * Poly(f) * falling_factorial(m, static_cast<unsigned>(l + 1));
    }
  }
  return res;
}

std::optional<ClosedForm> solve_update(const UpdateMap& u, const std::vector<Var>& args,
                                       const Var& counter) {
  const VarSet updated = u.domain();
  for (const auto& v : updated)
    if (std::find(args.begin(), args.end(), v) == args.end()) return std::nullopt;

  // Kahn's algorithm; ties broken by variable order for determinism.
  std::map<Var, VarSet> deps;
  for (const auto& x : updated) {
    VarSet d;
    for (const auto& y : u(x).vars())
      if (y != x && updated.count(y)) d.insert(y);
    deps[x] = d;
  }
  std::vector<Var> order;
  VarSet done;
  while (order.size() < updated.size()) {
    bool progressed = false;
    for (const auto& [x, d] : deps) {
      if (done.count(x)) continue;
      bool ready = std::all_of(d.begin(), d.end(), [&](const Var& y) { return done.count(y) > 0; });
      if (ready) {
        order.push_back(x);
        done.insert(x);
        progressed = true;
        break;
      }
    }
    if (!progressed) return std::nullopt;
  }

  const Var& m = counter;
  std::map<Var, ExpPoly> solved;
  for (const auto& x : order) {
    const Poly ux = u(x);
    if (ux.degree(x) > 1) return std::nullopt;
    Poly c_poly = ux.linear_coefficient(x);
    if (!c_poly.is_constant()) return std::nullopt;
    Rational c_rat = c_poly.constant_term();
    if (c_rat.get_den() != 1) return std::nullopt;
    Integer c = c_rat.get_num();
    Poly p = ux - c_poly * Poly(x);

    if (c == 0) {
      if (!deps[x].empty()) return std::nullopt;
      solved.emplace(x, ExpPoly(p));
      continue;
    }
    if (c == -1) return std::nullopt;

    // Shifted sequence Z_j = x^(j+1): Z_0 = u(x), Z_{j+1} = c Z_j + g(j) with
    // g(j) = p evaluated on the state after j+1 iterations.
    std::map<Var, ExpPoly> shifted;
    for (const auto& y : deps[x]) shifted.emplace(y, solved.at(y).shift(m, 1));
    ExpPoly g = substitute(p, shifted);

    ExpPoly particular;
    for (const auto& [b, q] : g.terms()) {
      Poly s = (b == c) ? sum_up_to(q * Poly(Rational(1) / Rational(c)), m) : solve_shifted(q, m, b, c);
      particular.add(b, s);
    }
    Poly particular_at_zero = particular.at(m, 0);
    ExpPoly z;
    z.add(c, ux - particular_at_zero);
    z += particular;
    ExpPoly cf = z.shift(m, -1);
    solved.emplace(x, cf);
  }

  for (const auto& [x, e] : solved)
    for (const auto& [b, coeff] : e.terms())
      if (b == 1 && !is_integer_valued(coeff)) return std::nullopt;
  return ClosedForm(counter, std::move(solved));
}

UpdateMap instantiate(const ClosedForm& cf, const Integer& n) {
  assert(n >= 1);
  UpdateMap res;
  for (const auto& [v, e] : cf.entries()) res.set(v, e.at(cf.counter(), n));
  return res;
}

}  // namespace itsnt
