// Copyright (c) hornpre contributors.
// SPDX-License-Identifier: Apache-2.0

#include <cctype>
#include <map>

#include "hornpre/chc.hpp"

namespace hornpre {

namespace {

class Cursor {
 public:
  explicit Cursor(std::string_view text) : text_(text) {}

  void skip() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '%') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  bool eof() {
    skip();
    return pos_ >= text_.size();
  }

  char peek() {
    skip();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  bool consume(std::string_view s) {
    skip();
    if (text_.substr(pos_, s.size()) == s) {
      for (std::size_t i = 0; i < s.size(); ++i) advance();
      return true;
    }
    return false;
  }

  void expect(std::string_view s, const std::string& what) {
    if (!consume(s)) fail("expected '" + std::string(s) + "' " + what);
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw ChcParseError(what, line_, col_);
  }

  bool at_lower() {
    char c = peek();
    return std::islower(static_cast<unsigned char>(c));
  }

  bool at_upper() {
    char c = peek();
    return std::isupper(static_cast<unsigned char>(c)) || c == '_';
  }

  bool at_digit() { return std::isdigit(static_cast<unsigned char>(peek())); }

  std::string read_ident() {
    skip();
    std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
      advance();
    if (start == pos_) fail("expected identifier");
    return std::string(text_.substr(start, pos_ - start));
  }

  Rat read_int() {
    skip();
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
      advance();
    if (start == pos_) fail("expected integer literal");
    return Rat(Int(std::string(text_.substr(start, pos_ - start))));
  }

 private:
  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

LinTerm parse_expr(Cursor& c);

LinTerm parse_factor(Cursor& c) {
  if (c.consume("(")) {
    LinTerm t = parse_expr(c);
    c.expect(")", "to close expression");
    return t;
  }
  if (c.consume("-")) return -parse_factor(c);
  if (c.at_upper()) return LinTerm::variable(VarPool::intern(c.read_ident()));
  if (c.at_digit()) return LinTerm::constant(c.read_int());
  c.fail("expected variable, integer or '('");
}

LinTerm parse_term(Cursor& c) {
  LinTerm t = parse_factor(c);
  while (c.peek() == '*') {
    c.consume("*");
    LinTerm rhs = parse_factor(c);
    if (!t.is_constant() && !rhs.is_constant())
      c.fail("non-linear term (variable * variable)");
    if (t.is_constant()) {
      rhs *= t.constant();
      t = std::move(rhs);
    } else {
      t *= rhs.constant();
    }
  }
  return t;
}

LinTerm parse_expr(Cursor& c) {
  LinTerm t = parse_term(c);
  while (true) {
    if (c.consume("+"))
      t += parse_term(c);
    else if (c.peek() == '-' && c.consume("-"))
      t -= parse_term(c);
    else
      break;
  }
  return t;
}

Constraint parse_constraint(Cursor& c) {
  LinTerm lhs = parse_expr(c);
  if (c.consume("=<") || c.consume("<=")) return Constraint(lhs - parse_expr(c), Rel::leq);
  if (c.consume(">=")) return Constraint(parse_expr(c) - lhs, Rel::leq);
  if (c.consume("=")) return Constraint(lhs - parse_expr(c), Rel::eq);
  if (c.consume("<")) return Constraint(lhs - parse_expr(c), Rel::lt);
  if (c.consume(">")) return Constraint(parse_expr(c) - lhs, Rel::lt);
  c.fail("expected relation operator");
}

RawAtom parse_atom(Cursor& c, std::map<std::string, std::size_t>& arities) {
  RawAtom a;
  a.pred = c.read_ident();
  if (c.consume("(")) {
    a.args.push_back(parse_expr(c));
    while (c.consume(",")) a.args.push_back(parse_expr(c));
    c.expect(")", "to close argument list");
  }
  auto [it, inserted] = arities.emplace(a.pred, a.args.size());
  if (!inserted && it->second != a.args.size())
    c.fail("predicate " + a.pred + " used with arity " + std::to_string(a.args.size()) +
           " but previously " + std::to_string(it->second));
  return a;
}

void apply_directive(Cursor& c, RawProgram& p, bool& init_seen) {
  std::string name = c.read_ident();
  c.expect("(", "after directive name");
  std::string arg = c.read_ident();
  c.expect(")", "to close directive");
  c.expect(".", "to end directive");
  if (name == "init_pred") {
    if (!init_seen) {
      p.init_pred = arg;
      p.init_preds = {arg};
      init_seen = true;
    } else {
      p.init_preds.insert(arg);
    }
  } else if (name == "safe_pred") {
    p.safe_pred = arg;
  } else if (name == "unsafe_pred") {
    p.unsafe_pred = arg;
  } else if (name == "theory") {
    if (arg == "integer")
      p.declared_theory = Theory::integer;
    else if (arg == "rational")
      p.declared_theory = Theory::rational;
    else
      c.fail("unknown theory '" + arg + "'");
  } else {
    c.fail("unknown directive '" + name + "'");
  }
}

}  // namespace

RawProgram parse_raw(std::string_view text) {
  RawProgram p;
  Cursor c(text);
  std::map<std::string, std::size_t> arities;
  bool init_seen = false;
  while (!c.eof()) {
    if (c.consume(":-")) {
      apply_directive(c, p, init_seen);
      continue;
    }
    if (!c.at_lower()) c.fail("expected clause head or directive");
    RawClause clause;
    clause.head = parse_atom(c, arities);
    if (c.consume(":-")) {
      do {
        if (c.at_lower()) {
          clause.atoms.push_back(parse_atom(c, arities));
        } else {
          clause.constraints.push_back(parse_constraint(c));
        }
      } while (c.consume(","));
    }
    c.expect(".", "to end clause");
    p.clauses.push_back(std::move(clause));
  }
  return p;
}

}  // namespace hornpre
