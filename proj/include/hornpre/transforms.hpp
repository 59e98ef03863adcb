// Copyright (c) hornpre contributors.
// SPDX-License-Identifier: Apache-2.0
//
// Goal-preserving CHC transformations: partial evaluation (polyvariant
// specialisation), constraint specialisation (query-answer analysis plus
// strengthening), trace elimination (tree-automata difference), and the
// initial-state surgery they are combined with.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hornpre/absint.hpp"
#include "hornpre/chc.hpp"
#include "hornpre/derivation.hpp"
#include "hornpre/formula_ops.hpp"

namespace hornpre {

enum class Goal { safe, unsafe };

inline const std::string& goal_pred(const Program& p, Goal g) {
  return g == Goal::safe ? p.safe_pred : p.unsafe_pred;
}

// Replaces the facts of every initial predicate by one clause per disjunct
// of phi (over the program scope). Throws std::invalid_argument when phi's
// scope does not match the initial argument tuple.
Program init_replace(const Program& p, const DnfFormula& phi);

// Conjoins phi disjunct-wise onto every initial clause, dropping
// unsatisfiable products: the under-approximation used for refinement.
Program u_approximate(const Program& p, const DnfFormula& phi, Theory theory);

// Disjunction of initial-clause constraints projected onto the initial
// argument tuple and renamed onto the program scope: the necessary
// precondition carried by the program text.
DnfFormula extract_np(const Program& p, Theory theory);

struct PeOptions {
  Theory theory = Theory::integer;
  // Backstop only: threshold abstraction already guarantees finitely many
  // versions. When a predicate would exceed the cap, the newest context is
  // merged into the previous one by hull and widening.
  int version_cap = 10;
};

// Polyvariant partial evaluation w.r.t. the goal. Versions are keyed by
// call contexts abstracted against per-predicate threshold constraints
// harvested from the program text; initial predicates keep exact contexts.
Program partial_evaluate(const Program& p, Goal goal, const PeOptions& opts = {});

// The query-answer transformation: for clause h(x) <- phi, b1..bk emits the
// answer clause h_a(x) <- phi, h_q(x), b1_a..bk_a and one query clause per
// body position, plus the goal seed goal_q <- true.
Program query_answer_transform(const Program& p, Goal goal);

struct CsOptions {
  Theory theory = Theory::integer;
  int widen_delay = 3;
};

// Constraint specialisation: strengthens every clause with the analyzed
// answer invariants of its body atoms (facts with their head invariant) and
// drops clauses that become unsatisfiable.
Program constraint_specialise(const Program& p, Goal goal, const CsOptions& opts = {});

struct SearchOptions {
  Theory theory = Theory::integer;
  int depth_bound = 12;
};

// Iterative-deepening AND-tree search rooted at the goal with incremental
// satisfiability pruning; returns a feasible tree of minimal depth
// (deterministic tie-break: clause id order).
std::optional<DerivationTree> find_feasible_derivation(const Program& p, Goal goal,
                                                       const SearchOptions& opts = {});

struct Theta {
  DnfFormula formula;
  // Def 3.5 is stated for one initial node; trees with several project per
  // node and disjoin, and the report surfaces that this happened.
  bool multiple_init_nodes = false;
};

// Projection of the tree constraint onto the initial node's argument tuple,
// renamed onto the program scope. Throws std::invalid_argument for
// infeasible trees or trees without initial nodes.
Theta theta_of_tree(const Program& p, const DerivationTree& t, Theory theory);

// Finite tree automaton over clause-id symbols (arity = body atom count).
struct FtaTransition {
  std::string sym;
  std::vector<int> children;
  int target;
};

struct Fta {
  std::vector<std::string> state_names;
  std::vector<FtaTransition> transitions;
  std::vector<int> finals;
};

Fta program_fta(const Program& p);

// Removes exactly the AND-tree t from p's skeleton language: the single-tree
// automaton is determinized and complemented, intersected with the program
// automaton, trimmed, and converted back to clauses (product states become
// versioned predicates; each derived clause records its source clause).
// Throws std::invalid_argument when t is not an AND-tree of p.
Program eliminate_trace(const Program& p, const DerivationTree& t);

}  // namespace hornpre
