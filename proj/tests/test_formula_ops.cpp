// Copyright (c) hornpre contributors.
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hornpre/fm.hpp"
#include "hornpre/formula_ops.hpp"
#include "support/oracles.hpp"

using namespace hornpre;

namespace {

std::vector<Var> AB() { return testing::test_vars({"A", "B"}); }

DnfFormula F(const char* text) { return parse_formula(text, AB()); }

}  // namespace

TEST_CASE("negate of the constants") {
  CHECK(negate(DnfFormula::top(AB())).is_false());
  CHECK(negate(DnfFormula::bottom(AB())).is_literally_true());
}

TEST_CASE("negation with integer tightening matches the worked example") {
  // (B>=0) and not(B<0 ; A>=1) is B>=0, A=<0 over the integers.
  DnfFormula lhs = conjoin(F("B >= 0"), negate(F("B < 0 ; A >= 1"), Theory::integer),
                           Theory::integer);
  CHECK(equivalent(lhs, F("B >= 0, A =< 0"), Theory::integer));
}

TEST_CASE("double negation is an involution up to equivalence") {
  auto vars = testing::test_vars({"A", "B", "C"});
  testing::Rng rng(777);
  for (int i = 0; i < 120; ++i) {
    DnfFormula f = rng.formula(vars, 3, 3);
    CHECK(equivalent(negate(negate(f)), f));
  }
}

TEST_CASE("conjoin with true and with the complement") {
  auto vars = testing::test_vars({"A", "B", "C"});
  testing::Rng rng(778);
  for (int i = 0; i < 60; ++i) {
    DnfFormula f = rng.formula(vars, 3, 3);
    CHECK(equivalent(conjoin(f, DnfFormula::top(vars)), f));
    CHECK(conjoin(f, negate(f)).is_false());
    // f or not f is valid.
    CHECK(negate(disjoin(f, negate(f))).is_false());
  }
}

TEST_CASE("conjoin reproduces the overlap of the first iteration") {
  DnfFormula overlap = conjoin(F("B >= 0"), F("B < 0 ; A >= 1"));
  CHECK(equivalent(overlap, F("B >= 0, A >= 1")));
}

TEST_CASE("entailment basics") {
  CHECK(entails(DnfFormula::bottom(AB()), F("A = 0")));
  CHECK(entails(F("B >= 0, A >= 1"), F("B >= 0")));
  CHECK(!entails(F("B >= 0"), F("B < 0 ; A >= 1")));
  // Sampling finds a refutation, and A=0, B=0 in particular is one.
  auto witness = testing::grid_entailment_witness(F("B >= 0"), F("B < 0 ; A >= 1"), AB(), -2, 2);
  CHECK(witness.has_value());
  testing::Point origin{{VarPool::intern("A"), Rat(0)}, {VarPool::intern("B"), Rat(0)}};
  CHECK(testing::holds_at(F("B >= 0"), origin));
  CHECK(!testing::holds_at(F("B < 0 ; A >= 1"), origin));
}

TEST_CASE("entails is a preorder on random formulas") {
  auto vars = testing::test_vars({"A", "B"});
  testing::Rng rng(779);
  std::vector<DnfFormula> fs;
  for (int i = 0; i < 12; ++i) fs.push_back(rng.formula(vars, 2, 2));
  for (const auto& f : fs) CHECK(entails(f, f));
  for (const auto& f : fs)
    for (const auto& g : fs)
      for (const auto& h : fs)
        if (entails(f, g) && entails(g, h)) CHECK(entails(f, h));
}

TEST_CASE("entailment agrees with the grid oracle") {
  auto vars = testing::test_vars({"A", "B"});
  testing::Rng rng(780);
  int disagreements = 0;
  for (int i = 0; i < 150; ++i) {
    DnfFormula f = rng.formula(vars, 2, 2);
    DnfFormula g = rng.formula(vars, 2, 2);
    bool claimed = entails(f, g);
    auto witness = testing::grid_entailment_witness(f, g, vars, -8, 8);
    // A witness refutes entailment; no witness on a bounded grid does not
    // prove it, so only the one direction is checked.
    if (witness && claimed) ++disagreements;
  }
  CHECK(disagreements == 0);
}

TEST_CASE("equivalence of the PE-derived safe precondition with its closed form") {
  // After Fig 2, over the integers: (B>=0, A=<0) ; (A>=1, B>=0) == B>=0.
  DnfFormula np = F("B >= 0, A =< 0 ; A >= 1, B >= 0");
  CHECK(equivalent(np, F("B >= 0"), Theory::integer));
  CHECK(!equivalent(np, F("B >= 0"), Theory::rational));
  CHECK(!equivalent(DnfFormula::top(AB()), DnfFormula::bottom(AB())));
}

TEST_CASE("simplify drops redundant constraints and false disjuncts") {
  CHECK(simplify(parse_conjunction("X =< 5, X =< 7")) == parse_conjunction("X =< 5"));
  DnfFormula f = F("A >= 1 ; A >= 2, A =< 1");
  DnfFormula s = simplify(f);
  CHECK(s.disjuncts().size() == 1);
  CHECK(equivalent(s, F("A >= 1")));
}

TEST_CASE("simplify covers the region-split example over the rationals") {
  DnfFormula split = F("B >= 0, A =< 0 ; A >= 1, B >= 0 ; B >= 0, A > 0, A < 1");
  CHECK(equivalent(split, F("B >= 0"), Theory::rational));
  // Without the middle region the two-disjunct form is weaker over Q.
  DnfFormula two = F("B >= 0, A =< 0 ; A >= 1, B >= 0");
  CHECK(!equivalent(two, F("B >= 0"), Theory::rational));
}

TEST_CASE("simplify preserves equivalence and never grows") {
  auto vars = testing::test_vars({"A", "B", "C"});
  testing::Rng rng(781);
  for (int i = 0; i < 80; ++i) {
    DnfFormula f = rng.formula(vars, 3, 3);
    DnfFormula s = simplify(f);
    CHECK(s.disjuncts().size() <= f.disjuncts().size());
    CHECK(equivalent(s, f));
    for (const Conjunction& d : s.disjuncts()) CHECK(is_sat(d));
  }
}

TEST_CASE("simplify under integer theory tightens strict rows") {
  DnfFormula s = simplify(F("A < 1, B < 0"), Theory::integer);
  REQUIRE(s.disjuncts().size() == 1);
  CHECK(s.disjuncts()[0] == parse_conjunction("A =< 0, B =< -1"));
}

TEST_CASE("the DNF cap aborts oversized products") {
  // Negating a conjunction of eight point constraints on distinct variables
  // distributes into 2^8 = 256 satisfiable products.
  auto vars = testing::test_vars({"X1", "X2", "X3", "X4", "X5", "X6", "X7", "X8"});
  std::vector<Conjunction> ds;
  for (Var v : vars)
    ds.push_back(Conjunction{Constraint(LinTerm::variable(v), Rel::eq)});
  DnfFormula f(vars, ds);
  DnfLimits limits;
  limits.max_disjuncts = 100;
  CHECK_THROWS_AS((void)negate(f, Theory::rational, limits), DnfCapError);
  CHECK(negate(f).disjuncts().size() == 256);
}
