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
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace itsnt {

/// Minimal SMT-LIB s-expression: either an atom (symbol, numeral, string,
/// keyword; quoted symbols keep their bars) or a list.
struct SExpr {
  std::string atom;
  std::vector<SExpr> list;
  bool is_list = false;

  static SExpr make_atom(std::string a) { return SExpr{std::move(a), {}, false}; }
  static SExpr make_list(std::vector<SExpr> l) { return SExpr{{}, std::move(l), true}; }

  bool is_atom(std::string_view a) const { return !is_list && atom == a; }
  /// Atom text with surrounding |bars| removed.
  std::string symbol() const;
  std::string to_string() const;
};

class SExprError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Length of the first complete s-expression in `text` (including leading
/// whitespace and comments), or nullopt if more input is needed.
std::optional<size_t> complete_prefix(std::string_view text);

/// Parses exactly one s-expression starting at `pos`; advances `pos`.
SExpr parse_sexpr(std::string_view text, size_t& pos);
SExpr parse_sexpr(std::string_view text);

/// Quotes a symbol with bars unless it is a simple, non-reserved symbol.
std::string quote_symbol(const std::string& name);

}  // namespace itsnt
