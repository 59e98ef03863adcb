// Copyright (c) hornpre contributors.
// SPDX-License-Identifier: Apache-2.0

#include "hornpre/formula_ops.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <vector>

#include "hornpre/fm.hpp"

namespace hornpre {

namespace {

std::vector<Constraint> negated_atoms(const Constraint& c) {
  switch (c.rel()) {
    case Rel::leq: return {Constraint(-c.term(), Rel::lt)};
    case Rel::lt: return {Constraint(-c.term(), Rel::leq)};
    case Rel::eq:
      return {Constraint(c.term(), Rel::lt), Constraint(-c.term(), Rel::lt)};
  }
  return {};
}

void check_cap(std::size_t n, const DnfLimits& limits) {
  if (n > limits.max_disjuncts) throw DnfCapError(limits.max_disjuncts);
}

// Drops disjuncts whose constraint set contains another disjunct's set:
// a superset is stronger, hence redundant inside a disjunction. Purely
// syntactic, used to keep intermediate products small.
void prune_subsumed(std::vector<Conjunction>& ds) {
  std::sort(ds.begin(), ds.end());
  ds.erase(std::unique(ds.begin(), ds.end()), ds.end());
  std::stable_sort(ds.begin(), ds.end(), [](const Conjunction& a, const Conjunction& b) {
    return a.size() < b.size();
  });
  std::vector<Conjunction> kept;
  for (const Conjunction& d : ds) {
    bool redundant = std::any_of(kept.begin(), kept.end(), [&](const Conjunction& k) {
      return std::includes(d.constraints().begin(), d.constraints().end(),
                           k.constraints().begin(), k.constraints().end());
    });
    if (!redundant) kept.push_back(d);
  }
  ds = std::move(kept);
}

}  // namespace

DnfFormula negate(const DnfFormula& f, Theory theory, const DnfLimits& limits) {
  if (f.is_false()) return DnfFormula::top(f.scope());
  // CNF by De Morgan: one clause of negated atoms per disjunct.
  std::vector<std::vector<Constraint>> clauses;
  for (const Conjunction& d : f.disjuncts()) {
    if (d.is_top()) return DnfFormula::bottom(f.scope());
    std::vector<Constraint> clause;
    for (const Constraint& c : d.constraints()) {
      auto atoms = negated_atoms(c);
      clause.insert(clause.end(), atoms.begin(), atoms.end());
    }
    clauses.push_back(std::move(clause));
  }
  // Distribute with cheap filters only; the semantic pass runs once at the end.
  std::vector<Conjunction> acc{Conjunction::top()};
  for (const auto& clause : clauses) {
    std::vector<Conjunction> next;
    for (const Conjunction& a : acc) {
      for (const Constraint& lit : clause) {
        if (lit.is_contradiction()) continue;
        Conjunction product = a;
        if (!lit.is_tautology()) product.add(lit);
        if (product.trivially_false()) continue;
        next.push_back(std::move(product));
      }
    }
    prune_subsumed(next);
    check_cap(next.size(), limits);
    acc = std::move(next);
    if (acc.empty()) break;
  }
  std::vector<Conjunction> sat_only;
  for (Conjunction& d : acc)
    if (is_sat(d, theory)) sat_only.push_back(std::move(d));
  return DnfFormula(f.scope(), std::move(sat_only));
}

DnfFormula conjoin(const DnfFormula& f, const DnfFormula& g, Theory theory,
                   const DnfLimits& limits) {
  std::vector<Var> scope = DnfFormula::merged_scope(f.scope(), g.scope());
  std::vector<Conjunction> out;
  for (const Conjunction& a : f.disjuncts()) {
    for (const Conjunction& b : g.disjuncts()) {
      Conjunction product = a & b;
      if (!is_sat(product, theory)) continue;
      out.push_back(std::move(product));
      check_cap(out.size(), limits);
    }
  }
  prune_subsumed(out);
  return DnfFormula(std::move(scope), std::move(out));
}

DnfFormula disjoin(const DnfFormula& f, const DnfFormula& g) {
  std::vector<Var> scope = DnfFormula::merged_scope(f.scope(), g.scope());
  std::vector<Conjunction> out = f.disjuncts();
  out.insert(out.end(), g.disjuncts().begin(), g.disjuncts().end());
  return DnfFormula(std::move(scope), std::move(out));
}

bool conj_entails(const Conjunction& d, const Conjunction& g, Theory theory) {
  for (const Constraint& c : g.constraints()) {
    for (const Constraint& atom : negated_atoms(c)) {
      Conjunction probe = d;
      probe.add(atom);
      if (is_sat(probe, theory)) return false;
    }
  }
  return true;
}

bool entails(const DnfFormula& f, const DnfFormula& g, Theory theory,
             const DnfLimits& limits) {
  if (f.is_false() || g.is_literally_true()) return true;
  if (f.disjuncts() == g.disjuncts()) return true;
  DnfFormula ng = negate(g, theory, limits);
  for (const Conjunction& d : f.disjuncts()) {
    if (!is_sat(d, theory)) continue;
    for (const Conjunction& e : ng.disjuncts()) {
      Conjunction product = d & e;
      if (is_sat(product, theory)) return false;
    }
  }
  return true;
}

bool equivalent(const DnfFormula& f, const DnfFormula& g, Theory theory,
                const DnfLimits& limits) {
  return entails(f, g, theory, limits) && entails(g, f, theory, limits);
}

Conjunction simplify(const Conjunction& c, Theory theory) {
  Conjunction n = normalize_for(c, theory);
  if (!is_sat(n, theory)) return Conjunction::contradiction();
  std::vector<Constraint> rows = n.constraints();
  // Greedy redundancy elimination in canonical order.
  for (std::size_t i = 0; i < rows.size();) {
    std::vector<Constraint> rest;
    rest.reserve(rows.size() - 1);
    for (std::size_t j = 0; j < rows.size(); ++j)
      if (j != i) rest.push_back(rows[j]);
    if (conj_entails(Conjunction(rest), Conjunction{rows[i]}, theory))
      rows.erase(rows.begin() + static_cast<std::ptrdiff_t>(i));
    else
      ++i;
  }
  return Conjunction(std::move(rows));
}

DnfFormula simplify(const DnfFormula& f, Theory theory) {
  std::vector<Conjunction> ds;
  for (const Conjunction& d : f.disjuncts()) {
    Conjunction s = simplify(d, theory);
    if (s.trivially_false()) continue;
    ds.push_back(std::move(s));
  }
  std::sort(ds.begin(), ds.end());
  ds.erase(std::unique(ds.begin(), ds.end()), ds.end());

  const std::size_t n = ds.size();
  std::vector<std::vector<bool>> imp(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j) imp[i][j] = conj_entails(ds[i], ds[j], theory);
  std::vector<bool> drop(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j || !imp[i][j]) continue;
      // Entailed by a kept earlier disjunct, or strictly entailed by a later one.
      if ((j < i && !drop[j]) || (j > i && !imp[j][i])) {
        drop[i] = true;
        break;
      }
    }
  }
  std::vector<Conjunction> kept;
  for (std::size_t i = 0; i < n; ++i)
    if (!drop[i]) kept.push_back(ds[i]);
  return DnfFormula(f.scope(), std::move(kept));
}

// ---------------------------------------------------------------------------
// Textual form.

namespace {

void print_product(std::ostringstream& os, const Rat& coeff, Var v, bool first) {
  Rat a = abs(coeff);
  if (first) {
    if (coeff < 0) os << "-";
  } else {
    os << (coeff < 0 ? " - " : " + ");
  }
  if (a != 1) os << a.str() << "*";
  os << VarPool::name(v);
}

}  // namespace

std::string to_text(const Constraint& c) {
  std::ostringstream os;
  if (c.term().is_constant()) {
    os << c.term().constant().str();
    switch (c.rel()) {
      case Rel::leq: os << " =< 0"; break;
      case Rel::lt: os << " < 0"; break;
      case Rel::eq: os << " = 0"; break;
    }
    return os.str();
  }
  LinTerm t = c.term();
  bool flipped = false;
  if (t.coeffs().begin()->second < 0 && c.rel() != Rel::eq) {
    t = -t;
    flipped = true;
  }
  bool first = true;
  for (const auto& [v, coeff] : t.coeffs()) {
    print_product(os, coeff, v, first);
    first = false;
  }
  switch (c.rel()) {
    case Rel::leq: os << (flipped ? " >= " : " =< "); break;
    case Rel::lt: os << (flipped ? " > " : " < "); break;
    case Rel::eq: os << " = "; break;
  }
  os << Rat(-t.constant()).str();
  return os.str();
}

std::string to_text(const Conjunction& c) {
  if (c.is_top()) return "true";
  std::ostringstream os;
  bool first = true;
  for (const Constraint& row : c.constraints()) {
    if (!first) os << ", ";
    os << to_text(row);
    first = false;
  }
  return os.str();
}

std::string to_text(const DnfFormula& f) {
  if (f.is_false()) return "false";
  std::ostringstream os;
  bool first = true;
  for (const Conjunction& d : f.disjuncts()) {
    if (!first) os << " ; ";
    os << to_text(d);
    first = false;
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Formula parser.

namespace {

class Scanner {
 public:
  explicit Scanner(std::string_view text) : text_(text) {}

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool eof() {
    skip_ws();
    return pos_ >= text_.size();
  }

  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  bool consume(std::string_view s) {
    skip_ws();
    if (text_.substr(pos_, s.size()) == s) {
      pos_ += s.size();
      return true;
    }
    return false;
  }

  [[noreturn]] void fail(const std::string& what) { throw FormulaParseError(what, pos_); }

  std::size_t pos() const { return pos_; }

  bool at_var_start() {
    char c = peek();
    return std::isupper(static_cast<unsigned char>(c)) || c == '_';
  }

  std::string read_var() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
      ++pos_;
    if (start == pos_) fail("expected variable");
    return std::string(text_.substr(start, pos_ - start));
  }

  Rat read_int() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected integer literal");
    return Rat(Int(std::string(text_.substr(start, pos_ - start))));
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

LinTerm parse_expr(Scanner& s);

LinTerm parse_factor(Scanner& s) {
  if (s.consume("(")) {
    LinTerm t = parse_expr(s);
    if (!s.consume(")")) s.fail("expected ')'");
    return t;
  }
  if (s.consume("-")) {
    return -parse_factor(s);
  }
  if (s.at_var_start()) return LinTerm::variable(VarPool::intern(s.read_var()));
  if (std::isdigit(static_cast<unsigned char>(s.peek()))) return LinTerm::constant(s.read_int());
  s.fail("expected factor");
}

LinTerm parse_term(Scanner& s) {
  LinTerm t = parse_factor(s);
  while (s.peek() == '*') {
    s.consume("*");
    LinTerm rhs = parse_factor(s);
    if (!t.is_constant() && !rhs.is_constant())
      s.fail("non-linear term (variable * variable)");
    if (t.is_constant()) {
      rhs *= t.constant();
      t = std::move(rhs);
    } else {
      t *= rhs.constant();
    }
  }
  return t;
}

LinTerm parse_expr(Scanner& s) {
  LinTerm t = parse_term(s);
  while (true) {
    if (s.consume("+")) {
      t += parse_term(s);
    } else if (s.peek() == '-') {
      s.consume("-");
      t -= parse_term(s);
    } else {
      break;
    }
  }
  return t;
}

Constraint parse_constraint(Scanner& s) {
  LinTerm lhs = parse_expr(s);
  // Longest-match relation symbols.
  if (s.consume("=<") || s.consume("<=")) {
    LinTerm rhs = parse_expr(s);
    return Constraint(lhs - rhs, Rel::leq);
  }
  if (s.consume(">=")) {
    LinTerm rhs = parse_expr(s);
    return Constraint(rhs - lhs, Rel::leq);
  }
  if (s.consume("=")) {
    LinTerm rhs = parse_expr(s);
    return Constraint(lhs - rhs, Rel::eq);
  }
  if (s.consume("<")) {
    LinTerm rhs = parse_expr(s);
    return Constraint(lhs - rhs, Rel::lt);
  }
  if (s.consume(">")) {
    LinTerm rhs = parse_expr(s);
    return Constraint(rhs - lhs, Rel::lt);
  }
  s.fail("expected relation operator");
}

Conjunction parse_conjunction_body(Scanner& s) {
  if (s.consume("true")) return Conjunction::top();
  if (s.consume("false")) return Conjunction::contradiction();
  std::vector<Constraint> cs;
  cs.push_back(parse_constraint(s));
  while (s.consume(",")) cs.push_back(parse_constraint(s));
  return Conjunction(std::move(cs));
}

}  // namespace

DnfFormula parse_formula(std::string_view text, std::vector<Var> scope) {
  Scanner s(text);
  if (s.consume("false")) {
    if (!s.eof()) s.fail("trailing input");
    return DnfFormula::bottom(std::move(scope));
  }
  std::vector<Conjunction> ds;
  ds.push_back(parse_conjunction_body(s));
  while (s.consume(";")) ds.push_back(parse_conjunction_body(s));
  if (!s.eof()) s.fail("trailing input");
  return DnfFormula(std::move(scope), std::move(ds));
}

Conjunction parse_conjunction(std::string_view text) {
  Scanner s(text);
  Conjunction c = parse_conjunction_body(s);
  if (!s.eof()) s.fail("trailing input");
  return c;
}

}  // namespace hornpre
