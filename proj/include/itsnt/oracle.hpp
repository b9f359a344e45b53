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
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "itsnt/program.hpp"
#include "itsnt/smt.hpp"

namespace itsnt {

class ArityMismatch : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class BadModel : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// One evaluation step with t. Returns nullopt when stuck (guard violated).
/// Temporaries missing from `temps` are taken to be 0.
std::optional<Configuration> step(const Configuration& c, const Transition& t,
                                  const Valuation& temps);

struct ReplayStep {
  TransitionId id;
  Valuation temps;

  friend bool operator==(const ReplayStep&, const ReplayStep&) = default;
};

enum class LoopKind { kRecurrent, kFixpoint };

struct ReplayLoop {
  LoopKind kind;
  /// The simple loop the sink transition was derived from, or the first body
  /// step if that loop was itself derived.
  TransitionId loop_id;
  /// Original steps making up one iteration.
  std::vector<ReplayStep> body;

  friend bool operator==(const ReplayLoop&, const ReplayLoop&) = default;
};

struct ReplayPlan {
  std::vector<ReplayStep> prefix;
  std::optional<ReplayLoop> loop;

  friend bool operator==(const ReplayPlan&, const ReplayPlan&) = default;
  /// One line per prefix step, then the loop.
  std::vector<std::string> lines() const;
};

/// Flattens a derivation into original steps. Accelerated nodes repeat their
/// base model(k) times. Throws BadModel for counters below 1 or when the plan
/// would exceed max_steps.
ReplayPlan expand_trace(const Provenance& trace, const Valuation& model,
                        std::size_t max_steps = 1'000'000);

struct Validation {
  bool ok = false;
  std::string diagnostic;
  /// Configurations visited by the prefix, starting with the witness.
  std::vector<Configuration> prefix_configs;
};

/// Replays the prefix from `witness`, then runs `loop_steps` iterations of a
/// recurrent loop (or one iteration of a fixpoint loop, which must return the
/// same configuration). Runs whose values outgrow kMaxValidationBits are
/// rejected rather than simulated further.
inline constexpr std::size_t kMaxValidationBits = 1 << 16;

Validation validate_witness(const Program& original, const Configuration& witness,
                            const ReplayPlan& plan, unsigned loop_steps);

struct DifferentialReport {
  unsigned sampled = 0;
  unsigned passed = 0;
  unsigned failed = 0;
  std::string first_failure;
};

/// Samples models of guard(accelerated) with 1 <= k <= max_k and checks that
/// k concrete steps of `loop` stay enabled and end where `accelerated` lands.
DifferentialReport differential_accelerate_check(SmtSession& smt, const Transition& loop,
                                                 const Transition& accelerated, const Var& counter,
                                                 unsigned trials, unsigned max_k = 20,
                                                 std::uint64_t seed = 0);

}  // namespace itsnt
