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

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "itsnt/program.hpp"

namespace itsnt {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, int line, int column)
      : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

class SyntaxError : public ParseError {
 public:
  using ParseError::ParseError;
};

/// A function symbol is used with two different arities.
class ArityError : public ParseError {
 public:
  using ParseError::ParseError;
};

/// Decimal or fractional literal.
class NonIntegerLiteral : public ParseError {
 public:
  using ParseError::ParseError;
};

/// One rule as written, before argument normalization.
struct Rule {
  std::string lhs_symbol;
  std::vector<Poly> lhs_args;
  std::string rhs_symbol;
  std::vector<Poly> rhs_args;
  Constraint guard;
  int line = 0;
};

struct ParsedFile {
  std::string goal;
  std::string start;
  std::vector<std::string> vars;
  std::vector<Rule> rules;
};

/// Reads the KoAT-style format:
///   (GOAL NONTERM) (STARTTERM (FUNCTIONSYMBOLS start)) (VAR x y)
///   (RULES f(x, y) -> g(x - 1, y) :|: x > 0 && y >= x ...)
ParsedFile parse_file(std::string_view text);

/// Builds a program with one argument list shared by all symbols. Rules get
/// ids 1..n in file order; if the start symbol occurs on a right-hand side, it
/// is renamed and a transition with id 0 is added from the real start.
Program to_program(const ParsedFile& file);

Program parse_program(std::string_view text);

/// Prints a program without sink transitions in the same format.
std::string print_program(const Program& p);

}  // namespace itsnt
