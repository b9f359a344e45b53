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

#include <optional>
#include <string>
#include <vector>

#include "itsnt/poly.hpp"

namespace itsnt {

enum class Rel { kGe, kGt, kEq, kLe, kLt };

/// An inequation `lhs >= 0` over the integers.
///
/// The left side is normalized on construction: denominators are cleared,
/// non-constant coefficients are made coprime and the constant is rounded
/// down (exact over the integers since every monomial is integer-valued).
/// Variable-free atoms collapse to `0 >= 0` or `-1 >= 0`.
class Atom {
 public:
  Atom() = default;
  explicit Atom(const Poly& lhs);

  const Poly& lhs() const { return lhs_; }

  bool is_trivially_true() const;
  bool is_trivially_false() const;
  VarSet vars() const { return lhs_.vars(); }

  Atom substitute(const Subst& s) const { return Atom(lhs_.substitute(s)); }
  /// The integer complement: not (p >= 0) is -p - 1 >= 0.
  Atom negate() const { return Atom(-lhs_ - Poly(1)); }
  bool holds(const Valuation& v) const { return lhs_.eval(v) >= 0; }

  friend bool operator==(const Atom& a, const Atom& b) { return a.lhs_ == b.lhs_; }
  friend bool operator<(const Atom& a, const Atom& b) { return a.lhs_ < b.lhs_; }

  std::string to_string() const;

 private:
  Poly lhs_;
};

std::ostream& operator<<(std::ostream& os, const Atom& a);

/// Atoms equivalent to `lhs rel rhs`; equalities produce two atoms.
std::vector<Atom> make_atoms(const Poly& lhs, Rel rel, const Poly& rhs);

/// Ordered conjunction of atoms; empty means true.
using Constraint = std::vector<Atom>;

Constraint substitute(const Constraint& c, const Subst& s);
VarSet vars_of(const Constraint& c);
bool holds(const Constraint& c, const Valuation& v);
Constraint conjoin(Constraint a, const Constraint& b);
std::string to_string(const Constraint& c);

/// Semantics-preserving cleanup: drops true and duplicate atoms, keeps the
/// strongest of atoms that differ only in their constant, and collapses the
/// constraint to a single `-1 >= 0` when some atom is variable-free and false.
Constraint simplify(const Constraint& c);
bool is_trivially_false(const Constraint& c);

/// Update of a transition's arguments. Missing entries map to themselves;
/// identity entries are never stored, so equal updates compare equal.
class UpdateMap {
 public:
  UpdateMap() = default;
  explicit UpdateMap(const Subst& entries);

  void set(const Var& v, const Poly& p);
  Poly operator()(const Var& v) const;
  const Subst& entries() const { return entries_; }
  bool is_identity() const { return entries_.empty(); }
  VarSet domain() const;

  friend bool operator==(const UpdateMap&, const UpdateMap&) = default;

 private:
  Subst entries_;
};

/// Update performing `first`, then `second`: x -> second(x)[first].
UpdateMap compose_updates(const UpdateMap& first, const UpdateMap& second);

/// Substitution applied to the image of every entry.
UpdateMap substitute(const UpdateMap& u, const Subst& s);

}  // namespace itsnt
