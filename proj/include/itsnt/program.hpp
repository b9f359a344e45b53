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

#include <cstdint>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "itsnt/constraint.hpp"

namespace itsnt {

/// Function symbol (program location).
class FunSym {
 public:
  FunSym() = default;
  explicit FunSym(std::string name) : name_(std::move(name)) {}
  const std::string& name() const { return name_; }
  friend bool operator==(const FunSym&, const FunSym&) = default;
  friend auto operator<=>(const FunSym&, const FunSym&) = default;

 private:
  std::string name_;
};

std::ostream& operator<<(std::ostream& os, const FunSym& f);

/// The distinguished target of transitions that prove a non-terminating continuation.
inline const FunSym kSink{"\xE2\x88\x9E"};  // U+221E

using TransitionId = std::uint64_t;

struct Provenance;
using ProvenancePtr = std::shared_ptr<const Provenance>;

/// How a transition was derived; enough to replay it with original steps.
namespace recipe {
struct Original {
  TransitionId id;
  std::vector<Var> temps;
};
struct Accelerated {
  ProvenancePtr base;
  Var counter;
};
struct Chained {
  ProvenancePtr first;
  ProvenancePtr second;
  /// second's temporary variable -> its name inside the chained transition
  Subst second_renaming;
};
struct Nonterm {
  ProvenancePtr base;
  TransitionId base_id;
};
struct Fixpoint {
  ProvenancePtr base;
  TransitionId base_id;
};
struct Strengthened {
  ProvenancePtr base;
  Constraint added;
  bool split;
};
}  // namespace recipe

struct Provenance {
  std::variant<recipe::Original, recipe::Accelerated, recipe::Chained, recipe::Nonterm,
               recipe::Fixpoint, recipe::Strengthened>
      node;
};

std::string describe(const Provenance& p);

struct Transition {
  TransitionId id = 0;
  FunSym source;
  std::vector<Var> args;
  Constraint guard;
  UpdateMap update;
  FunSym target;
  /// Variables of guard and update that are not arguments (nondeterministic
  /// inputs and acceleration counters). They stay fixed when a loop repeats.
  std::vector<Var> temps;
  ProvenancePtr provenance;
  /// Number of invariant-deduction passes along this transition's lineage.
  unsigned deduce_passes = 0;

  bool is_simple_loop() const { return source == target; }
  bool targets_sink() const { return target == kSink; }
  VarSet vars() const;
  std::string to_string() const;
};

/// All transitions share one argument list; the start symbol never occurs on a
/// right-hand side.
struct Program {
  std::vector<Transition> transitions;
  FunSym start;
  std::vector<Var> args;

  bool is_simplified() const;
  const Transition* find(TransitionId id) const;
  VarSet vars() const;
  std::string to_string() const;
};

struct Configuration {
  FunSym symbol;
  std::vector<Integer> values;

  friend bool operator==(const Configuration&, const Configuration&) = default;
  std::string to_string() const;
};

/// Renames the temporaries of t that occur in `avoid` to fresh names.
/// Returns the renamed transition and the map old temp -> new poly (a variable).
std::pair<Transition, Subst> rename_apart(const Transition& t, const VarSet& avoid,
                                          NameGenerator& names);

/// Recomputes t.temps from its guard and update.
void refresh_temps(Transition& t);

}  // namespace itsnt
