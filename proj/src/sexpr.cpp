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

#include "itsnt/sexpr.hpp"

#include <array>
#include <cctype>

namespace itsnt {

namespace {

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

void skip_blank(std::string_view t, size_t& pos) {
  while (pos < t.size()) {
    if (is_space(t[pos])) {
      ++pos;
    } else if (t[pos] == ';') {
      while (pos < t.size() && t[pos] != '\n') ++pos;
    } else {
      break;
    }
  }
}

bool is_simple_char(char c) {
  static constexpr std::string_view kExtra = "~!@$%^&*_-+=<>.?/";
  return std::isalnum(static_cast<unsigned char>(c)) || kExtra.find(c) != std::string_view::npos;
}

}  // namespace

std::string SExpr::symbol() const {
  if (atom.size() >= 2 && atom.front() == '|' && atom.back() == '|')
    return atom.substr(1, atom.size() - 2);
  return atom;
}

std::string SExpr::to_string() const {
  if (!is_list) return atom;
  std::string s = "(";
  for (size_t i = 0; i < list.size(); ++i) {
    if (i) s += ' ';
    s += list[i].to_string();
  }
  return s + ")";
}

std::optional<size_t> complete_prefix(std::string_view t) {
  size_t pos = 0;
  skip_blank(t, pos);
  if (pos == t.size()) return std::nullopt;
  int depth = 0;
  while (pos < t.size()) {
    char c = t[pos];
    if (c == '|' || c == '"') {
      size_t end = t.find(c, pos + 1);
      if (end == std::string_view::npos) return std::nullopt;
      pos = end + 1;
      if (depth == 0) return pos;
      continue;
    }
    if (c == ';') {
      skip_blank(t, pos);
      continue;
    }
    if (c == '(') {
      ++depth;
    } else if (c == ')') {
      if (--depth == 0) return pos + 1;
      if (depth < 0) return pos + 1;
    } else if (depth == 0 && !is_space(c)) {
      // Bare atom at top level: complete once followed by a delimiter.
      while (pos < t.size() && !is_space(t[pos]) && t[pos] != '(' && t[pos] != ')') ++pos;
      if (pos == t.size()) return std::nullopt;
      return pos;
    }
    ++pos;
  }
  return std::nullopt;
}

SExpr parse_sexpr(std::string_view t, size_t& pos) {
  skip_blank(t, pos);
  if (pos >= t.size()) throw SExprError("unexpected end of input");
  char c = t[pos];
  if (c == '(') {
    ++pos;
    std::vector<SExpr> items;
    for (;;) {
      skip_blank(t, pos);
      if (pos >= t.size()) throw SExprError("unterminated list");
      if (t[pos] == ')') {
        ++pos;
        return SExpr::make_list(std::move(items));
      }
      items.push_back(parse_sexpr(t, pos));
    }
  }
  if (c == ')') throw SExprError("unexpected ')'");
  if (c == '|' || c == '"') {
    size_t end = t.find(c, pos + 1);
    if (end == std::string_view::npos) throw SExprError("unterminated quoted token");
    std::string a(t.substr(pos, end + 1 - pos));
    pos = end + 1;
    return SExpr::make_atom(std::move(a));
  }
  size_t start = pos;
  while (pos < t.size() && !is_space(t[pos]) && t[pos] != '(' && t[pos] != ')' && t[pos] != ';')
    ++pos;
  return SExpr::make_atom(std::string(t.substr(start, pos - start)));
}

SExpr parse_sexpr(std::string_view t) {
  size_t pos = 0;
  SExpr e = parse_sexpr(t, pos);
  skip_blank(t, pos);
  if (pos != t.size()) throw SExprError("trailing input after s-expression");
  return e;
}

std::string quote_symbol(const std::string& name) {
  static constexpr std::array<std::string_view, 16> kReserved = {
      "and", "or",  "not", "true", "false", "let", "ite", "forall",
      "exists", "distinct", "div", "mod", "abs", "_", "!", "as"};
  bool simple = !name.empty() && !std::isdigit(static_cast<unsigned char>(name[0]));
  for (char c : name) simple = simple && is_simple_char(c);
  for (auto r : kReserved) simple = simple && name != r;
  if (simple) return name;
  return "|" + name + "|";
}

}  // namespace itsnt
