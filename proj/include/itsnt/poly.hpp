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

#pragma once

#include <gmpxx.h>

#include <compare>
#include <map>
#include <ostream>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace itsnt {

using Integer = mpz_class;
using Rational = mpq_class;

/// A program variable, counter, template parameter or Farkas multiplier.
class Var {
 public:
  Var() = default;
  explicit Var(std::string name) : name_(std::move(name)) {}

  const std::string& name() const { return name_; }

  friend bool operator==(const Var&, const Var&) = default;
  friend auto operator<=>(const Var&, const Var&) = default;

 private:
  std::string name_;
};

std::ostream& operator<<(std::ostream& os, const Var& v);

using VarSet = std::set<Var>;
using Valuation = std::map<Var, Integer>;

/// Product of variables with positive exponents. Empty means the constant 1.
using Monomial = std::map<Var, unsigned>;

class Poly;
using Subst = std::map<Var, Poly>;

class MissingVariable : public std::runtime_error {
 public:
  explicit MissingVariable(const Var& v)
      : std::runtime_error("unbound variable '" + v.name() + "'"), var_(v) {}
  const Var& var() const { return var_; }

 private:
  Var var_;
};

/// Multivariate polynomial with rational coefficients, always kept canonical:
/// no zero coefficients, one entry per monomial.
class Poly {
 public:
  using Terms = std::map<Monomial, Rational>;

  Poly() = default;
  Poly(const Rational& c);  // NOLINT(google-explicit-constructor)
  Poly(const Integer& c) : Poly(Rational(c)) {}  // NOLINT
  Poly(long c) : Poly(Rational(c)) {}             // NOLINT
  Poly(int c) : Poly(Rational(c)) {}              // NOLINT
  Poly(const Var& v);                             // NOLINT

  static Poly monomial(const Monomial& m, const Rational& c = 1);

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  /// Constant coefficient (coefficient of the empty monomial).
  Rational constant_term() const;

  VarSet vars() const;
  bool contains(const Var& v) const;
  unsigned degree(const Var& v) const;
  unsigned total_degree() const;
  /// Total degree counting only the given variables.
  unsigned degree_in(const VarSet& vs) const;
  bool is_linear_in(const VarSet& vs) const { return degree_in(vs) <= 1; }
  bool has_integer_coefficients() const;

  /// p = sum_i coeffs[i] * v^i, with coefficients free of v.
  std::vector<Poly> coefficients_in(const Var& v) const;
  static Poly from_coefficients(const std::vector<Poly>& coeffs, const Var& v);
  /// Coefficient of v in a polynomial that is linear in `linear_vars`;
  /// the result is free of all linear_vars.
  Poly linear_coefficient(const Var& v) const;
  /// Part of the polynomial that does not mention any of vs.
  Poly without(const VarSet& vs) const;

  /// Simultaneous substitution; variables outside the map are kept.
  Poly substitute(const Subst& s) const;
  Rational eval(const Valuation& v) const;

  /// Least common multiple of coefficient denominators.
  Integer denominator_lcm() const;

  Poly pow(unsigned e) const;

  Poly operator-() const;
  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Poly& o);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);

  friend bool operator==(const Poly& a, const Poly& b) { return a.terms_ == b.terms_; }
  friend bool operator<(const Poly& a, const Poly& b) { return a.terms_ < b.terms_; }

  std::string to_string() const;

 private:
  void add_term(const Monomial& m, const Rational& c);
  Terms terms_;
};

std::ostream& operator<<(std::ostream& os, const Poly& p);

/// True iff p maps every integer point to an integer. Checked exactly through
/// the binomial (Newton) basis: iterated forward differences on the grid
/// {0..deg_x} per variable must all be integers.
bool is_integer_valued(const Poly& p);

/// Generates names that do not clash with anything registered so far.
class NameGenerator {
 public:
  NameGenerator() = default;
  explicit NameGenerator(const VarSet& used) { reserve(used); }

  void reserve(const Var& v) { used_.insert(v.name()); }
  void reserve(const VarSet& vs) {
    for (const auto& v : vs) reserve(v);
  }
  bool is_used(const std::string& name) const { return used_.count(name) > 0; }

  /// Returns base itself if unused, otherwise base1, base2, ...
  Var fresh(const std::string& base);

 private:
  std::set<std::string> used_;
  std::map<std::string, unsigned> next_suffix_;
};

}  // namespace itsnt
