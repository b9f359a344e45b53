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

#include "itsnt/poly.hpp"

#include <algorithm>
#include <sstream>

namespace itsnt {

std::ostream& operator<<(std::ostream& os, const Var& v) { return os << v.name(); }

Poly::Poly(const Rational& c) { add_term(Monomial{}, c); }

Poly::Poly(const Var& v) { terms_.emplace(Monomial{{v, 1}}, Rational(1)); }

Poly Poly::monomial(const Monomial& m, const Rational& c) {
  Poly p;
  p.add_term(m, c);
  return p;
}

void Poly::add_term(const Monomial& m, const Rational& coeff) {
  // Callers may build Rationals from numerator/denominator pairs.
  Rational c = coeff;
  c.canonicalize();
  if (c == 0) return;
  auto [it, inserted] = terms_.emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

bool Poly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty());
}

Rational Poly::constant_term() const {
  auto it = terms_.find(Monomial{});
  return it == terms_.end() ? Rational(0) : it->second;
}

VarSet Poly::vars() const {
  VarSet res;
  for (const auto& [m, c] : terms_)
    for (const auto& [v, e] : m) res.insert(v);
  return res;
}

bool Poly::contains(const Var& v) const {
  for (const auto& [m, c] : terms_)
    if (m.count(v)) return true;
  return false;
}

unsigned Poly::degree(const Var& v) const {
  unsigned d = 0;
  for (const auto& [m, c] : terms_) {
    auto it = m.find(v);
    if (it != m.end()) d = std::max(d, it->second);
  }
  return d;
}

unsigned Poly::total_degree() const {
  unsigned d = 0;
  for (const auto& [m, c] : terms_) {
    unsigned md = 0;
    for (const auto& [v, e] : m) md += e;
    d = std::max(d, md);
  }
  return d;
}

unsigned Poly::degree_in(const VarSet& vs) const {
  unsigned d = 0;
  for (const auto& [m, c] : terms_) {
    unsigned md = 0;
    for (const auto& [v, e] : m)
      if (vs.count(v)) md += e;
    d = std::max(d, md);
  }
  return d;
}

bool Poly::has_integer_coefficients() const {
  return std::all_of(terms_.begin(), terms_.end(),
                     [](const auto& t) { return t.second.get_den() == 1; });
}

std::vector<Poly> Poly::coefficients_in(const Var& v) const {
  std::vector<Poly> res(degree(v) + 1);
  for (const auto& [m, c] : terms_) {
    Monomial rest = m;
    unsigned e = 0;
    auto it = rest.find(v);
    if (it != rest.end()) {
      e = it->second;
      rest.erase(it);
    }
    res[e].add_term(rest, c);
  }
  return res;
}

Poly Poly::from_coefficients(const std::vector<Poly>& coeffs, const Var& v) {
  Poly res;
  Poly power(1);
  for (const auto& c : coeffs) {
    res += c * power;
    power *= Poly(v);
  }
  return res;
}

Poly Poly::linear_coefficient(const Var& v) const {
  Poly res;
  for (const auto& [m, c] : terms_) {
    auto it = m.find(v);
    if (it == m.end() || it->second != 1) continue;
    Monomial rest = m;
    rest.erase(v);
    res.add_term(rest, c);
  }
  return res;
}

Poly Poly::without(const VarSet& vs) const {
  Poly res;
  for (const auto& [m, c] : terms_) {
    bool free = std::none_of(m.begin(), m.end(), [&](const auto& ve) { return vs.count(ve.first) > 0; });
    if (free) res.add_term(m, c);
  }
  return res;
}

Poly Poly::substitute(const Subst& s) const {
  if (s.empty()) return *this;
  Poly res;
  for (const auto& [m, c] : terms_) {
    Poly term(c);
    Monomial kept;
    for (const auto& [v, e] : m) {
      auto it = s.find(v);
      if (it == s.end())
        kept.emplace(v, e);
      else
        term *= it->second.pow(e);
    }
    if (!kept.empty()) term *= monomial(kept);
    res += term;
  }
  return res;
}

Rational Poly::eval(const Valuation& val) const {
  Rational res = 0;
  for (const auto& [m, c] : terms_) {
    Rational t = c;
    for (const auto& [v, e] : m) {
      auto it = val.find(v);
      if (it == val.end()) throw MissingVariable(v);
      Integer p;
      mpz_pow_ui(p.get_mpz_t(), it->second.get_mpz_t(), e);
      t *= p;
    }
    res += t;
  }
  return res;
}

Integer Poly::denominator_lcm() const {
  Integer l = 1;
  for (const auto& [m, c] : terms_) l = lcm(l, Integer(c.get_den()));
  return l;
}

Poly Poly::pow(unsigned e) const {
  Poly res(1);
  Poly base = *this;
  while (e > 0) {
    if (e & 1u) res *= base;
    e >>= 1u;
    if (e > 0) base *= base;
  }
  return res;
}

Poly Poly::operator-() const {
  Poly res = *this;
  for (auto& [m, c] : res.terms_) c = -c;
  return res;
}

Poly& Poly::operator+=(const Poly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  Poly res;
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) {
      Monomial m = ma;
      for (const auto& [v, e] : mb) m[v] += e;
      res.add_term(m, ca * cb);
    }
  }
  return res;
}

Poly& Poly::operator*=(const Poly& o) { return *this = *this * o; }

namespace {

std::string monomial_string(const Monomial& m) {
  std::string s;
  for (const auto& [v, e] : m) {
    if (!s.empty()) s += "*";
    s += v.name();
    if (e > 1) s += "^" + std::to_string(e);
  }
  return s;
}

}  // namespace

std::string Poly::to_string() const {
  if (terms_.empty()) return "0";
  // Non-constant terms in descending total degree, constant last.
  std::vector<std::pair<const Monomial*, const Rational*>> order;
  for (const auto& [m, c] : terms_) order.emplace_back(&m, &c);
  auto deg = [](const Monomial& m) {
    unsigned d = 0;
    for (const auto& [v, e] : m) d += e;
    return d;
  };
  std::stable_sort(order.begin(), order.end(),
                   [&](const auto& a, const auto& b) { return deg(*a.first) > deg(*b.first); });
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : order) {
    Rational abs_c = abs(*c);
    bool neg = *c < 0;
    if (first)
      os << (neg ? "-" : "");
    else
      os << (neg ? " - " : " + ");
    first = false;
    if (m->empty()) {
      os << abs_c;
    } else {
      if (abs_c != 1) os << abs_c << "*";
      os << monomial_string(*m);
    }
  }
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const Poly& p) { return os << p.to_string(); }

namespace {

// Values of p on the box prod_i {0..deg_i}, then forward differences along
// each axis. The resulting numbers are the coefficients of p in the basis
// prod_i binom(x_i, j_i); p is integer-valued iff all of them are integers.
bool newton_coefficients_integral(const Poly& p) {
  const VarSet all = p.vars();
  std::vector<Var> vs(all.begin(), all.end());
  std::vector<unsigned> dims;
  size_t total = 1;
  for (const auto& v : vs) {
    dims.push_back(p.degree(v) + 1);
    total *= dims.back();
  }
  std::vector<Rational> grid(total);
  std::vector<unsigned> idx(vs.size(), 0);
  for (size_t flat = 0; flat < total; ++flat) {
    size_t rem = flat;
    Valuation val;
    for (size_t i = vs.size(); i-- > 0;) {
      idx[i] = static_cast<unsigned>(rem % dims[i]);
      rem /= dims[i];
      val[vs[i]] = idx[i];
    }
    grid[flat] = p.eval(val);
  }
  size_t stride = 1;
  for (size_t axis = vs.size(); axis-- > 0;) {
    size_t n = dims[axis];
    for (size_t base = 0; base < total; ++base) {
      if ((base / stride) % n != 0) continue;
      // Difference table along this axis, in place, highest order last.
      for (size_t order = 1; order < n; ++order)
        for (size_t j = n - 1; j >= order; --j)
          grid[base + j * stride] -= grid[base + (j - 1) * stride];
    }
    stride *= n;
  }
  return std::all_of(grid.begin(), grid.end(), [](const Rational& q) { return q.get_den() == 1; });
}

}  // namespace

bool is_integer_valued(const Poly& p) {
  if (p.has_integer_coefficients()) return true;
  return newton_coefficients_integral(p);
}

Var NameGenerator::fresh(const std::string& base) {
  if (!is_used(base)) {
    used_.insert(base);
    return Var(base);
  }
  unsigned& n = next_suffix_[base];
  std::string candidate;
  do {
    candidate = base + std::to_string(++n);
  } while (is_used(candidate));
  used_.insert(candidate);
  return Var(candidate);
}

}  // namespace itsnt
