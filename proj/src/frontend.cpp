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

#include "itsnt/frontend.hpp"

#include <cctype>
#include <map>
#include <memory>
#include <set>
#include <sstream>

namespace itsnt {

namespace {

enum class Tok { kIdent, kNumber, kPunct, kEnd };

struct Token {
  Tok kind;
  std::string text;
  int line;
  int column;
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'' || c == '.' ||
         c == '#' || c == '@';
}

std::vector<Token> tokenize(std::string_view s) {
  static const std::vector<std::string> kPuncts = {":|:", "->", "&&", "/\\", ">=", "<=", "==",
                                                   "(",   ")",  ",",  ">",   "<",  "=",  "+",
                                                   "-",   "*",  "^",  "{",   "}",  "/"};
  std::vector<Token> out;
  int line = 1, col = 1;
  size_t i = 0;
  auto advance = [&](size_t n) {
    for (size_t j = 0; j < n; ++j, ++i) {
      if (s[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < s.size()) {
    char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '#' || (c == '/' && i + 1 < s.size() && s[i + 1] == '/')) {
      while (i < s.size() && s[i] != '\n') advance(1);
      continue;
    }
    int l = line, co = col;
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t j = i;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      if (j < s.size() && s[j] == '.' && j + 1 < s.size() &&
          std::isdigit(static_cast<unsigned char>(s[j + 1])))
        throw NonIntegerLiteral("non-integer literal", l, co);
      out.push_back({Tok::kNumber, std::string(s.substr(i, j - i)), l, co});
      advance(j - i);
      continue;
    }
    if (ident_start(c)) {
      size_t j = i;
      while (j < s.size() && ident_char(s[j])) ++j;
      out.push_back({Tok::kIdent, std::string(s.substr(i, j - i)), l, co});
      advance(j - i);
      continue;
    }
    bool matched = false;
    for (const auto& p : kPuncts) {
      if (s.substr(i, p.size()) == p) {
        out.push_back({Tok::kPunct, p, l, co});
        advance(p.size());
        matched = true;
        break;
      }
    }
    if (!matched) throw SyntaxError(std::string("unexpected character '") + c + "'", l, co);
  }
  out.push_back({Tok::kEnd, "", line, col});
  return out;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  ParsedFile file() {
    ParsedFile f;
    bool have_start = false, have_rules = false;
    while (!at_end()) {
      expect("(");
      const Token& head = expect_ident();
      if (head.text == "GOAL") {
        f.goal = expect_ident().text;
        expect(")");
      } else if (head.text == "STARTTERM") {
        expect("(");
        expect_keyword("FUNCTIONSYMBOLS");
        f.start = expect_ident().text;
        expect(")");
        expect(")");
        have_start = true;
      } else if (head.text == "VAR") {
        while (peek().kind == Tok::kIdent) f.vars.push_back(next().text);
        expect(")");
      } else if (head.text == "RULES") {
        while (!is_punct(")")) f.rules.push_back(rule());
        expect(")");
        have_rules = true;
      } else if (head.text == "COMMENT") {
        skip_balanced();
      } else {
        throw SyntaxError("unknown section '" + head.text + "'", head.line, head.column);
      }
    }
    if (!have_start) throw SyntaxError("missing STARTTERM", peek().line, peek().column);
    if (!have_rules) throw SyntaxError("missing RULES", peek().line, peek().column);
    return f;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  const Token& next() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }
  bool at_end() const { return peek().kind == Tok::kEnd; }
  bool is_punct(std::string_view p) const { return peek().kind == Tok::kPunct && peek().text == p; }

  [[noreturn]] void fail(const std::string& what) const {
    const Token& t = peek();
    std::string found = t.kind == Tok::kEnd ? "end of input" : "'" + t.text + "'";
    throw SyntaxError(what + ", found " + found, t.line, t.column);
  }
  void expect(std::string_view p) {
    if (!is_punct(p)) fail("expected '" + std::string(p) + "'");
    next();
  }
  const Token& expect_ident() {
    if (peek().kind != Tok::kIdent) fail("expected identifier");
    return next();
  }
  void expect_keyword(std::string_view k) {
    if (peek().kind != Tok::kIdent || peek().text != k) fail("expected '" + std::string(k) + "'");
    next();
  }
  void skip_balanced() {
    int depth = 1;
    while (depth > 0) {
      if (at_end()) fail("unterminated section");
      if (is_punct("(")) ++depth;
      if (is_punct(")")) --depth;
      next();
    }
  }

  Rule rule() {
    Rule r;
    r.line = peek().line;
    r.lhs_symbol = expect_ident().text;
    r.lhs_args = args();
    // Plain arrow, or a cost-annotated arrow -{ ... }>.
    if (is_punct("->")) {
      next();
    } else if (is_punct("-")) {
      next();
      expect("{");
      while (!is_punct("}")) {
        if (at_end()) fail("unterminated cost annotation");
        next();
      }
      expect("}");
      expect(">");
    } else {
      fail("expected '->'");
    }
    const Token& target = expect_ident();
    if (target.text.rfind("Com_", 0) == 0) {
      if (target.text != "Com_1")
        throw SyntaxError("only Com_1 right-hand sides are supported", target.line, target.column);
      expect("(");
      r.rhs_symbol = expect_ident().text;
      r.rhs_args = args();
      expect(")");
    } else {
      r.rhs_symbol = target.text;
      r.rhs_args = args();
    }
    if (is_punct(":|:")) {
      next();
      for (;;) {
        auto atoms = relation();
        r.guard.insert(r.guard.end(), atoms.begin(), atoms.end());
        if (is_punct("&&") || is_punct("/\\")) {
          next();
          continue;
        }
        break;
      }
    }
    return r;
  }

  std::vector<Poly> args() {
    std::vector<Poly> res;
    expect("(");
    if (is_punct(")")) {
      next();
      return res;
    }
    for (;;) {
      res.push_back(expr());
      if (is_punct(",")) {
        next();
        continue;
      }
      expect(")");
      return res;
    }
  }

  std::vector<Atom> relation() {
    Poly lhs = expr();
    static const std::map<std::string, Rel> kRels = {{">=", Rel::kGe}, {">", Rel::kGt},
                                                     {"<=", Rel::kLe}, {"<", Rel::kLt},
                                                     {"=", Rel::kEq},  {"==", Rel::kEq}};
    if (peek().kind != Tok::kPunct || !kRels.count(peek().text)) fail("expected comparison");
    Rel rel = kRels.at(next().text);
    Poly rhs = expr();
    return make_atoms(lhs, rel, rhs);
  }

  Poly expr() {
    Poly p = term();
    while (is_punct("+") || is_punct("-")) {
      bool plus = next().text == "+";
      Poly q = term();
      p = plus ? p + q : p - q;
    }
    return p;
  }

  Poly term() {
    Poly p = factor();
    while (is_punct("*")) {
      next();
      p *= factor();
    }
    if (is_punct("/")) throw NonIntegerLiteral("division is not supported", peek().line, peek().column);
    return p;
  }

  Poly factor() {
    if (is_punct("-")) {
      next();
      return -factor();
    }
    Poly base = atom();
    if (is_punct("^")) {
      next();
      if (peek().kind != Tok::kNumber) fail("expected exponent");
      base = base.pow(static_cast<unsigned>(std::stoul(next().text)));
    }
    return base;
  }

  Poly atom() {
    if (peek().kind == Tok::kNumber) return Poly(Integer(next().text));
    if (peek().kind == Tok::kIdent) return Poly(Var(next().text));
    if (is_punct("(")) {
      next();
      Poly p = expr();
      expect(")");
      return p;
    }
    fail("expected expression");
  }

  std::vector<Token> toks_;
  size_t pos_ = 0;
};

}  // namespace

ParsedFile parse_file(std::string_view text) { return Parser(tokenize(text)).file(); }

Program to_program(const ParsedFile& file) {
  // Arity per symbol, checked for consistency.
  std::map<std::string, size_t> arity;
  auto record = [&](const std::string& f, size_t n, int line) {
    auto [it, inserted] = arity.emplace(f, n);
    if (!inserted && it->second != n)
      throw ArityError("symbol '" + f + "' used with arities " + std::to_string(it->second) +
                           " and " + std::to_string(n),
                       line, 1);
  };
  for (const auto& r : file.rules) {
    record(r.lhs_symbol, r.lhs_args.size(), r.line);
    record(r.rhs_symbol, r.rhs_args.size(), r.line);
  }
  if (file.rules.empty()) throw SyntaxError("no rules", 1, 1);

  size_t width = 0;
  for (const auto& [f, n] : arity) width = std::max(width, n);

  NameGenerator names;
  for (const auto& v : file.vars) names.reserve(Var(v));
  for (const auto& r : file.rules) {
    for (const auto& a : r.lhs_args) names.reserve(a.vars());
    for (const auto& a : r.rhs_args) names.reserve(a.vars());
    names.reserve(vars_of(r.guard));
  }

  // Canonical arguments: the lhs of the first widest rule whose arguments are
  // distinct variables, completed with fresh names.
  std::vector<Var> args;
  for (const auto& r : file.rules) {
    if (r.lhs_args.size() != width) continue;
    std::set<Var> seen;
    bool plain = true;
    for (const auto& a : r.lhs_args) {
      auto vs = a.vars();
      plain = plain && vs.size() == 1 && a == Poly(*vs.begin()) && seen.insert(*vs.begin()).second;
    }
    if (plain) {
      for (const auto& a : r.lhs_args) args.push_back(*a.vars().begin());
      break;
    }
  }
  if (args.empty())
    for (size_t i = 0; i < width; ++i) args.push_back(names.fresh("x" + std::to_string(i + 1)));
  const VarSet arg_set(args.begin(), args.end());

  bool start_on_rhs = false;
  for (const auto& r : file.rules) start_on_rhs = start_on_rhs || r.rhs_symbol == file.start;
  std::set<std::string> symbols;
  for (const auto& [f, n] : arity) symbols.insert(f);
  std::string inner_start = file.start;
  if (start_on_rhs) {
    inner_start = file.start + "'";
    while (symbols.count(inner_start)) inner_start += "'";
  }
  auto rename_sym = [&](const std::string& f) {
    return FunSym(start_on_rhs && f == file.start ? inner_start : f);
  };

  Program p;
  p.start = FunSym(file.start);
  p.args = args;
  if (start_on_rhs) {
    Transition t;
    t.id = 0;
    t.source = p.start;
    t.target = FunSym(inner_start);
    t.args = args;
    t.provenance = std::make_shared<const Provenance>(Provenance{recipe::Original{0, {}}});
    p.transitions.push_back(std::move(t));
  }

  TransitionId id = 1;
  for (const auto& r : file.rules) {
    Subst ren;  // rule variable -> canonical or fresh variable
    Constraint guard;
    VarSet lhs_vars;
    for (size_t i = 0; i < r.lhs_args.size(); ++i) {
      const Poly& a = r.lhs_args[i];
      auto vs = a.vars();
      bool plain = vs.size() == 1 && a == Poly(*vs.begin()) && !lhs_vars.count(*vs.begin());
      if (plain) {
        lhs_vars.insert(*vs.begin());
        ren[*vs.begin()] = Poly(args[i]);
      }
    }
    // Remaining variables are temporaries; keep them apart from the arguments.
    VarSet all;
    for (const auto& a : r.lhs_args) {
      auto vs = a.vars();
      all.insert(vs.begin(), vs.end());
    }
    for (const auto& a : r.rhs_args) {
      auto vs = a.vars();
      all.insert(vs.begin(), vs.end());
    }
    auto gv = vars_of(r.guard);
    all.insert(gv.begin(), gv.end());
    for (const auto& v : all)
      if (!ren.count(v)) ren[v] = arg_set.count(v) ? Poly(names.fresh(v.name())) : Poly(v);

    Transition t;
    t.id = id++;
    t.source = rename_sym(r.lhs_symbol);
    t.target = rename_sym(r.rhs_symbol);
    t.args = args;
    for (size_t i = 0; i < r.lhs_args.size(); ++i) {
      const Poly& a = r.lhs_args[i];
      auto vs = a.vars();
      if (vs.size() == 1 && a == Poly(*vs.begin()) && ren.at(*vs.begin()) == Poly(args[i])) continue;
      // Non-variable or repeated argument: constrain the canonical argument.
      auto eq = make_atoms(Poly(args[i]), Rel::kEq, a.substitute(ren));
      guard.insert(guard.end(), eq.begin(), eq.end());
    }
    Constraint g = substitute(r.guard, ren);
    guard.insert(guard.end(), g.begin(), g.end());
    t.guard = simplify(guard);
    for (size_t i = 0; i < r.rhs_args.size(); ++i) t.update.set(args[i], r.rhs_args[i].substitute(ren));
    refresh_temps(t);
    t.provenance = std::make_shared<const Provenance>(Provenance{recipe::Original{t.id, t.temps}});
    p.transitions.push_back(std::move(t));
  }
  return p;
}

Program parse_program(std::string_view text) { return to_program(parse_file(text)); }

std::string print_program(const Program& p) {
  std::ostringstream os;
  os << "(GOAL NONTERM)\n(STARTTERM (FUNCTIONSYMBOLS " << p.start << "))\n(VAR";
  for (const auto& v : p.vars()) os << " " << v;
  os << ")\n(RULES\n";
  auto args = [&](const std::vector<Poly>& xs) {
    std::string s = "(";
    for (size_t i = 0; i < xs.size(); ++i) s += (i ? ", " : "") + xs[i].to_string();
    return s + ")";
  };
  for (const auto& t : p.transitions) {
    if (t.targets_sink()) continue;
    std::vector<Poly> lhs, rhs;
    for (const auto& x : t.args) {
      lhs.emplace_back(x);
      rhs.push_back(t.update(x));
    }
    os << "  " << t.source << args(lhs) << " -> " << t.target << args(rhs);
    if (!t.guard.empty()) {
      os << " :|: ";
      for (size_t i = 0; i < t.guard.size(); ++i)
        os << (i ? " && " : "") << t.guard[i].lhs() << " >= 0";
    }
    os << "\n";
  }
  os << ")\n";
  return os.str();
}

}  // namespace itsnt
