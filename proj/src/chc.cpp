// Copyright (c) hornpre contributors.
// SPDX-License-Identifier: Apache-2.0

#include "hornpre/chc.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "hornpre/formula_ops.hpp"

namespace hornpre {

const Clause* Program::clause_by_id(std::string_view id) const {
  for (const Clause& c : clauses)
    if (c.id == id) return &c;
  return nullptr;
}

std::vector<std::size_t> Program::clauses_for_head(const std::string& pred) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < clauses.size(); ++i)
    if (clauses[i].head.pred == pred) out.push_back(i);
  return out;
}

void Program::renumber() {
  for (std::size_t i = 0; i < clauses.size(); ++i) {
    clauses[i].source = clauses[i].id;
    clauses[i].id = "c" + std::to_string(i + 1);
  }
}

namespace {

bool plain_var(const LinTerm& t, Var& out) {
  if (t.constant() != 0 || t.coeffs().size() != 1) return false;
  const auto& [v, c] = *t.coeffs().begin();
  if (c != 1) return false;
  out = v;
  return true;
}

Atom flatten_atom(const RawAtom& ra, std::vector<Constraint>& constraints) {
  Atom a;
  a.pred = ra.pred;
  std::set<Var> seen;
  for (const LinTerm& t : ra.args) {
    Var v{};
    if (plain_var(t, v) && !seen.count(v)) {
      a.args.push_back(v);
      seen.insert(v);
    } else {
      Var f = VarPool::fresh("a");
      a.args.push_back(f);
      seen.insert(f);
      constraints.emplace_back(LinTerm::variable(f) - t, Rel::eq);
    }
  }
  return a;
}

}  // namespace

Program normalize(const RawProgram& raw) {
  Program p;
  p.init_pred = raw.init_pred;
  p.safe_pred = raw.safe_pred;
  p.unsafe_pred = raw.unsafe_pred;
  p.init_preds = raw.init_preds;
  p.declared_theory = raw.declared_theory;
  for (std::size_t i = 0; i < raw.clauses.size(); ++i) {
    const RawClause& rc = raw.clauses[i];
    Clause c;
    c.id = "c" + std::to_string(i + 1);
    std::vector<Constraint> constraints = rc.constraints;
    c.head = flatten_atom(rc.head, constraints);
    for (const RawAtom& ra : rc.atoms) c.body.push_back(flatten_atom(ra, constraints));
    c.constr = Conjunction(std::move(constraints));
    p.clauses.push_back(std::move(c));
  }
  for (const Clause& c : p.clauses) {
    if (p.is_initial(c.head.pred)) {
      p.scope = c.head.args;
      break;
    }
  }
  return p;
}

Program parse_program(std::string_view text) { return normalize(parse_raw(text)); }

RawProgram to_raw(const Program& p) {
  RawProgram raw;
  raw.init_pred = p.init_pred;
  raw.safe_pred = p.safe_pred;
  raw.unsafe_pred = p.unsafe_pred;
  raw.init_preds = p.init_preds;
  raw.declared_theory = p.declared_theory;
  for (const Clause& c : p.clauses) {
    RawClause rc;
    rc.head.pred = c.head.pred;
    for (Var v : c.head.args) rc.head.args.push_back(LinTerm::variable(v));
    for (const Atom& a : c.body) {
      RawAtom ra;
      ra.pred = a.pred;
      for (Var v : a.args) ra.args.push_back(LinTerm::variable(v));
      rc.atoms.push_back(std::move(ra));
    }
    rc.constraints = c.constr.constraints();
    raw.clauses.push_back(std::move(rc));
  }
  return raw;
}

namespace {

std::string display_name(std::size_t i) {
  if (i < 26) return std::string(1, static_cast<char>('A' + i));
  return "V" + std::to_string(i - 25);
}

// Clause variables in presentation order: head args, body atom args, then
// remaining constraint variables in id order.
std::vector<Var> clause_vars(const Clause& c) {
  std::vector<Var> order;
  auto push = [&order](Var v) {
    if (std::find(order.begin(), order.end(), v) == order.end()) order.push_back(v);
  };
  for (Var v : c.head.args) push(v);
  for (const Atom& a : c.body)
    for (Var v : a.args) push(v);
  for (Var v : c.constr.vars()) push(v);
  return order;
}

}  // namespace

std::string print_program(const Program& p) {
  std::ostringstream os;
  bool nondefault_init = p.init_pred != "init" || p.init_preds != std::set<std::string>{p.init_pred};
  if (nondefault_init) {
    os << ":- init_pred(" << p.init_pred << ").\n";
    for (const std::string& name : p.init_preds)
      if (name != p.init_pred) os << ":- init_pred(" << name << ").\n";
  }
  if (p.safe_pred != "safe") os << ":- safe_pred(" << p.safe_pred << ").\n";
  if (p.unsafe_pred != "unsafe") os << ":- unsafe_pred(" << p.unsafe_pred << ").\n";
  if (p.declared_theory)
    os << ":- theory(" << (*p.declared_theory == Theory::integer ? "integer" : "rational")
       << ").\n";
  for (const Clause& c : p.clauses) {
    VarMap display;
    std::vector<Var> order = clause_vars(c);
    for (std::size_t i = 0; i < order.size(); ++i)
      display[order[i]] = VarPool::intern(display_name(i));
    auto atom_text = [&display](const Atom& a) {
      std::string s = a.pred;
      if (!a.args.empty()) {
        s += "(";
        for (std::size_t i = 0; i < a.args.size(); ++i) {
          if (i) s += ",";
          s += VarPool::name(display.at(a.args[i]));
        }
        s += ")";
      }
      return s;
    };
    os << atom_text(c.head);
    bool has_constr = !c.constr.is_top();
    if (has_constr || !c.body.empty()) {
      os << " :- ";
      bool first = true;
      if (has_constr) {
        os << to_text(c.constr.renamed(display));
        first = false;
      }
      for (const Atom& a : c.body) {
        if (!first) os << ", ";
        os << atom_text(a);
        first = false;
      }
    }
    os << ".\n";
  }
  return os.str();
}

WellformedReport check_wellformed(const Program& p) {
  WellformedReport report;
  // Predicates reachable from the goals through head -> body edges.
  std::set<std::string> reachable{p.safe_pred, p.unsafe_pred};
  bool grew = true;
  while (grew) {
    grew = false;
    for (const Clause& c : p.clauses) {
      if (!reachable.count(c.head.pred)) continue;
      for (const Atom& a : c.body)
        if (reachable.insert(a.pred).second) grew = true;
    }
  }
  for (const Clause& c : p.clauses) {
    if (!reachable.count(c.head.pred)) continue;
    if (c.is_fact() && !p.is_initial(c.head.pred))
      report.issues.push_back("constrained fact for non-initial predicate '" + c.head.pred +
                              "' (clause " + c.id + ")");
    if (!c.is_fact() && p.is_initial(c.head.pred))
      report.issues.push_back("initial predicate '" + c.head.pred +
                              "' has a non-fact clause (" + c.id + ")");
    if (p.is_initial(c.head.pred) && !p.scope.empty() && c.head.args.size() != p.scope.size())
      report.issues.push_back("initial clause " + c.id + " arity differs from the declared scope");
  }
  report.pass = report.issues.empty();
  return report;
}

std::vector<const Clause*> initial_clauses(const Program& p) {
  std::vector<const Clause*> out;
  for (const Clause& c : p.clauses)
    if (c.is_fact() && p.is_initial(c.head.pred)) out.push_back(&c);
  return out;
}

namespace {

Var slot(std::size_t i) { return VarPool::intern("$s" + std::to_string(i)); }

struct CanonClause {
  std::string head_pred;
  std::vector<Var> head_args;
  std::vector<std::string> body_preds;
  std::vector<std::vector<Var>> body_args;
  Conjunction constr;

  friend bool operator==(const CanonClause&, const CanonClause&) = default;
};

CanonClause canon(const Clause& c) {
  VarMap m;
  std::vector<Var> order = clause_vars(c);
  for (std::size_t i = 0; i < order.size(); ++i) m[order[i]] = slot(i);
  CanonClause out;
  out.head_pred = c.head.pred;
  for (Var v : c.head.args) out.head_args.push_back(m.at(v));
  for (const Atom& a : c.body) {
    out.body_preds.push_back(a.pred);
    std::vector<Var> args;
    for (Var v : a.args) args.push_back(m.at(v));
    out.body_args.push_back(std::move(args));
  }
  out.constr = c.constr.renamed(m);
  return out;
}

}  // namespace

bool structurally_equal(const Program& a, const Program& b) {
  if (a.clauses.size() != b.clauses.size()) return false;
  if (a.init_pred != b.init_pred || a.safe_pred != b.safe_pred ||
      a.unsafe_pred != b.unsafe_pred || a.init_preds != b.init_preds)
    return false;
  if (a.scope.size() != b.scope.size()) return false;
  for (std::size_t i = 0; i < a.clauses.size(); ++i) {
    if (a.clauses[i].id != b.clauses[i].id) return false;
    if (!(canon(a.clauses[i]) == canon(b.clauses[i]))) return false;
  }
  return true;
}

}  // namespace hornpre
