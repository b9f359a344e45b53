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

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "itsnt/constraint.hpp"

namespace itsnt {

/// sum_b b^k * coeff_b, where k is a designated counter variable that may also
/// occur inside the coefficients. Base 1 is the polynomial part.
class ExpPoly {
 public:
  ExpPoly() = default;
  ExpPoly(const Poly& p);  // NOLINT(google-explicit-constructor)

  const std::map<Integer, Poly>& terms() const { return terms_; }
  bool has_exponential() const;
  /// Coefficient of base 1.
  Poly polynomial_part() const;

  void add(const Integer& base, const Poly& coeff);
  ExpPoly& operator+=(const ExpPoly& o);
  friend ExpPoly operator+(ExpPoly a, const ExpPoly& b) { return a += b; }
  friend ExpPoly operator-(const ExpPoly& a, const ExpPoly& b);
  friend ExpPoly operator*(const ExpPoly& a, const ExpPoly& b);

  /// Replaces the counter k by k + delta everywhere (b^(k+d) = b^d * b^k).
  ExpPoly shift(const Var& k, long delta) const;
  /// Value at k = n, as a polynomial in the remaining variables.
  Poly at(const Var& k, const Integer& n) const;

  friend bool operator==(const ExpPoly&, const ExpPoly&) = default;
  std::string to_string(const Var& k) const;

 private:
  std::map<Integer, Poly> terms_;
};

/// Substitutes ExpPolys for variables of p.
ExpPoly substitute(const Poly& p, const std::map<Var, ExpPoly>& s);

/// Closed form of k iterations of an update, valid for every k >= 1.
class ClosedForm {
 public:
  ClosedForm(Var counter, std::map<Var, ExpPoly> entries)
      : counter_(std::move(counter)), entries_(std::move(entries)) {}

  const Var& counter() const { return counter_; }
  /// Entries for variables that change; others map to themselves.
  const std::map<Var, ExpPoly>& entries() const { return entries_; }
  ExpPoly entry(const Var& v) const;

  bool has_exponential() const;
  /// The closed form as a substitution mentioning the counter. Requires
  /// !has_exponential().
  Subst polynomial_subst() const;

  std::string to_string() const;

 private:
  Var counter_;
  std::map<Var, ExpPoly> entries_;
};

/// Solves x^(k+1) = u(x^(k)) with x^(1) = u(x) for triangular updates whose
/// entries are c*x + p with p free of x and of later variables. Returns
/// nullopt for cyclic dependencies, c = -1, non-constant self coefficients,
/// and c = 0 with p depending on updated variables.
std::optional<ClosedForm> solve_update(const UpdateMap& u, const std::vector<Var>& args,
                                       const Var& counter);

/// The closed form at k = n (n >= 1).
UpdateMap instantiate(const ClosedForm& cf, const Integer& n);

/// sum_{i=0}^{m-1} q(i) as a polynomial in m, computed in the falling
/// factorial basis. q and the result use the same variable `m`.
Poly sum_up_to(const Poly& q, const Var& m);

}  // namespace itsnt
