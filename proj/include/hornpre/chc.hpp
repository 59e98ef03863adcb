// Copyright (c) hornpre contributors.
// SPDX-License-Identifier: Apache-2.0
//
// Constrained Horn clauses: abstract syntax, a Prolog-style textual dialect,
// normalization, and structural well-formedness.
//
// Dialect: one clause per line group terminated by '.'; ':-' separates head
// and body; uppercase-initial identifiers are variables; constraints use
// =, <, >, =<, <=, >=; '%' starts a comment. Optional directives:
//   :- init_pred(name).   :- safe_pred(name).   :- unsafe_pred(name).
//   :- theory(integer).   (or rational)
// Repeated init_pred directives tag renamed versions of the initial
// predicate; the first named one is canonical.

#pragma once

#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "hornpre/formula.hpp"

namespace hornpre {

struct Atom {
  std::string pred;
  std::vector<Var> args;

  friend bool operator==(const Atom&, const Atom&) = default;
};

struct Clause {
  std::string id;  // positional: c1, c2, ...
  Atom head;
  Conjunction constr;
  std::vector<Atom> body;
  // Id of the clause this one was derived from in the immediately preceding
  // program, empty for parsed clauses.
  std::string source;

  bool is_fact() const { return body.empty(); }
};

struct Program {
  std::vector<Clause> clauses;
  std::string init_pred = "init";
  std::string safe_pred = "safe";
  std::string unsafe_pred = "unsafe";
  // All predicates tagged initial (the canonical one plus renamed versions
  // introduced by transformations).
  std::set<std::string> init_preds{"init"};
  // Argument tuple of the initial predicate; preconditions are expressed
  // over these variables.
  std::vector<Var> scope;
  std::optional<Theory> declared_theory;

  bool is_initial(const std::string& pred) const { return init_preds.count(pred) > 0; }
  const Clause* clause_by_id(std::string_view id) const;
  std::vector<std::size_t> clauses_for_head(const std::string& pred) const;
  // Reassigns positional ids c1..cn recording each clause's previous id as
  // its source.
  void renumber();
};

// Pre-normalization syntax: atom arguments are arbitrary linear expressions.
struct RawAtom {
  std::string pred;
  std::vector<LinTerm> args;
};

struct RawClause {
  RawAtom head;
  std::vector<Constraint> constraints;
  std::vector<RawAtom> atoms;
};

struct RawProgram {
  std::vector<RawClause> clauses;
  std::string init_pred = "init";
  std::string safe_pred = "safe";
  std::string unsafe_pred = "unsafe";
  std::set<std::string> init_preds{"init"};
  std::optional<Theory> declared_theory;
};

class ChcParseError : public std::runtime_error {
 public:
  ChcParseError(const std::string& what, int line, int col)
      : std::runtime_error(what + " (line " + std::to_string(line) + ", column " +
                           std::to_string(col) + ")"),
        line_(line),
        col_(col) {}
  int line() const { return line_; }
  int col() const { return col_; }

 private:
  int line_;
  int col_;
};

RawProgram parse_raw(std::string_view text);

// Flattens atom arguments to pairwise-distinct variables, pushing argument
// bindings into the body constraint, and assigns positional clause ids.
Program normalize(const RawProgram& raw);

// parse_raw followed by normalize.
Program parse_program(std::string_view text);

RawProgram to_raw(const Program& p);

// Canonical text: directives first (only those differing from defaults or
// tagging extra initial predicates), then clauses in id order, one per line,
// with per-clause display names A, B, C, ...
std::string print_program(const Program& p);

struct WellformedReport {
  bool pass = true;
  // One message per offending clause or predicate.
  std::vector<std::string> issues;
};

// A program is accepted when, within the slice reachable from safe or unsafe,
// every constrained fact belongs to an initial predicate and initial-predicate
// clauses are constrained facts.
WellformedReport check_wellformed(const Program& p);

std::vector<const Clause*> initial_clauses(const Program& p);

// Alpha-aware structural equality (clause-wise canonical renaming).
bool structurally_equal(const Program& a, const Program& b);

}  // namespace hornpre
