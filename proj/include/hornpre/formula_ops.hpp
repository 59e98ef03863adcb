// Copyright (c) hornpre contributors.
// SPDX-License-Identifier: Apache-2.0
//
// DNF-level algebra: negation, conjunction, entailment, equivalence and
// simplification, plus the textual formula syntax used by reports and tests.

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

#include "hornpre/formula.hpp"

namespace hornpre {

struct DnfLimits {
  std::size_t max_disjuncts = 4096;
};

// Raised when a DNF product would exceed the disjunct cap.
class DnfCapError : public std::runtime_error {
 public:
  explicit DnfCapError(std::size_t cap)
      : std::runtime_error("DNF disjunct cap exceeded (" + std::to_string(cap) + ")") {}
};

// Logical negation: atomic negations are exact over the rationals, the De
// Morgan CNF is distributed back to DNF, unsatisfiable products are dropped.
DnfFormula negate(const DnfFormula& f, Theory theory = Theory::rational,
                  const DnfLimits& limits = {});

// Cross-product of disjuncts with unsatisfiable products removed.
DnfFormula conjoin(const DnfFormula& f, const DnfFormula& g,
                   Theory theory = Theory::rational, const DnfLimits& limits = {});

// Disjunction; never grows beyond the sum of the operand sizes.
DnfFormula disjoin(const DnfFormula& f, const DnfFormula& g);

// Valid implication f -> g over the theory: every disjunct of f must be
// incompatible with every disjunct of negate(g).
bool entails(const DnfFormula& f, const DnfFormula& g,
             Theory theory = Theory::rational, const DnfLimits& limits = {});

bool equivalent(const DnfFormula& f, const DnfFormula& g,
                Theory theory = Theory::rational, const DnfLimits& limits = {});

// Does the conjunction d entail every constraint of g?
bool conj_entails(const Conjunction& d, const Conjunction& g, Theory theory);

// Removes constraints redundant w.r.t. the rest of their disjunct, drops
// unsatisfiable disjuncts and disjuncts entailed by another disjunct.
// Under Theory::integer disjuncts are integer-tightened first.
Conjunction simplify(const Conjunction& c, Theory theory = Theory::rational);
DnfFormula simplify(const DnfFormula& f, Theory theory = Theory::rational);

// Textual form. Grammar: formula = "true" | "false" | disjunct (";" disjunct)*,
// disjunct = constraint ("," constraint)*, constraint = expr REL expr with
// REL in {=, <, >, =<, <=, >=}; expressions are +/- chains of integer
// literals, variables, and integer-scaled variables.
std::string to_text(const Constraint& c);
std::string to_text(const Conjunction& c);
std::string to_text(const DnfFormula& f);

class FormulaParseError : public std::runtime_error {
 public:
  FormulaParseError(const std::string& what, std::size_t pos)
      : std::runtime_error(what + " at offset " + std::to_string(pos)), pos_(pos) {}
  std::size_t pos() const { return pos_; }

 private:
  std::size_t pos_;
};

DnfFormula parse_formula(std::string_view text, std::vector<Var> scope);
Conjunction parse_conjunction(std::string_view text);

}  // namespace hornpre
