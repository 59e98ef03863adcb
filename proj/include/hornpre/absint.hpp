// Copyright (c) hornpre contributors.
// SPDX-License-Identifier: Apache-2.0
//
// Convex-polyhedra abstract interpreter: per-predicate invariants computed by
// Kleene iteration with hull joins and widening. This is the engine behind
// constraint specialisation.

#pragma once

#include <map>
#include <optional>
#include <string>

#include "hornpre/chc.hpp"

namespace hornpre {

// Closed convex polyhedron over a fixed argument tuple, or bottom.
// Constraints are non-strict; under Theory::integer, strict clause rows are
// integer-tightened before weakening, which loses nothing on integral rows.
class Polyhedron {
 public:
  Polyhedron() = default;  // bottom
  static Polyhedron bottom() { return Polyhedron(); }
  static Polyhedron top() { return from_conjunction(Conjunction::top(), Theory::rational); }
  // Weakens and satisfiability-checks; unsatisfiable input collapses to bottom.
  static Polyhedron from_conjunction(const Conjunction& c, Theory theory);

  bool is_bottom() const { return !conj_.has_value(); }
  // Precondition: not bottom.
  const Conjunction& constraints() const { return *conj_; }

  bool entails(const Polyhedron& other) const;
  bool same_as(const Polyhedron& other) const;

  friend bool operator==(const Polyhedron& a, const Polyhedron& b) {
    return a.conj_ == b.conj_;
  }

 private:
  std::optional<Conjunction> conj_;
};

// Smallest representable closed convex over-approximation of the union,
// computed by the lifted-variables encoding projected back onto scope.
Polyhedron hull(const Polyhedron& a, const Polyhedron& b, const std::vector<Var>& scope);

// Standard widening: keeps exactly the constraints of a entailed by b
// (equalities are split into their two half-spaces first).
Polyhedron widen(const Polyhedron& a, const Polyhedron& b);

// Per-predicate invariant map; a missing entry is bottom.
using PredicateValuation = std::map<std::string, Polyhedron>;

struct AnalyzeOptions {
  int widen_delay = 3;
  Theory theory = Theory::integer;
};

// Post-fixpoint of the clause system: for every clause, the abstract body
// entails the head value. Values are expressed over canonical per-predicate
// formals; use formals(p, arity) to relate them to clause variables.
PredicateValuation analyze(const Program& p, const AnalyzeOptions& opts = {});

// Canonical formal argument tuple shared by analyze results.
std::vector<Var> analysis_formals(const std::string& pred, std::size_t arity);

}  // namespace hornpre
