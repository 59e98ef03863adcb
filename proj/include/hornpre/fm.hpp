// Copyright (c) hornpre contributors.
// SPDX-License-Identifier: Apache-2.0
//
// Fourier-Motzkin elimination over exact rationals: the decision procedure
// and projection operator behind every satisfiability, entailment and
// specialisation step. Strict inequalities are eliminated exactly (a combined
// row is strict iff either parent was strict); equalities are eliminated by
// substitution.

#pragma once

#include <set>

#include "hornpre/formula.hpp"

namespace hornpre {

// Complete over the rationals. Under Theory::integer, the conjunction is
// integer-tightened first; an unsat answer is then valid over the integers
// as well.
bool is_sat(const Conjunction& c, Theory theory = Theory::rational);

// Eliminates every variable of c not in keep. A valuation of keep satisfies
// the result iff it extends to a rational solution of c. Variables in keep
// that do not occur in c are vacuously kept.
Conjunction project(const Conjunction& c, const std::set<Var>& keep);

// Normalization pass that is sound and complete over integer valuations:
// strict rows with integral vectors become non-strict (t<0 -> t+1=<0),
// non-strict rows are gcd-rounded, and equalities whose coefficient gcd does
// not divide the constant become contradictions.
Conjunction integer_tighten(const Conjunction& c);

// Applies integer_tighten only under Theory::integer.
Conjunction normalize_for(const Conjunction& c, Theory theory);

}  // namespace hornpre
