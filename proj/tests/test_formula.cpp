// Copyright (c) hornpre contributors.
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hornpre/formula.hpp"
#include "hornpre/formula_ops.hpp"
#include "support/oracles.hpp"

using namespace hornpre;

TEST_CASE("canonical constraint scaling is gcd-normalized") {
  CHECK(parse_conjunction("2*X =< 2") == parse_conjunction("X =< 1"));
  CHECK(parse_conjunction("4*X - 2*Y = 6") == parse_conjunction("2*X - Y = 3"));
  // Equalities get a positive leading coefficient.
  CHECK(parse_conjunction("0 - X + Y = 0") == parse_conjunction("X - Y = 0"));
  CHECK(to_text(parse_conjunction("0 = X - Y")) == "X - Y = 0");
}

TEST_CASE("conjunction is an order-independent set") {
  Conjunction a = parse_conjunction("X =< 1, Y >= 2");
  Conjunction b = parse_conjunction("Y >= 2, X =< 1");
  CHECK(a == b);
  CHECK(parse_conjunction("X =< 1, X =< 1") == parse_conjunction("X =< 1"));
}

TEST_CASE("tautologies are dropped and the empty set is true") {
  CHECK(parse_conjunction("0 =< 1").is_top());
  CHECK(parse_conjunction("true").is_top());
  CHECK(parse_conjunction("X = X").is_top());
}

TEST_CASE("parallel bounds keep the tightest row") {
  CHECK(parse_conjunction("X =< 5, X =< 7") == parse_conjunction("X =< 5"));
  CHECK(parse_conjunction("X < 5, X =< 5") == parse_conjunction("X < 5"));
}

TEST_CASE("mirrored non-strict bounds merge into an equality") {
  CHECK(parse_conjunction("X =< 3, X >= 3") == parse_conjunction("X = 3"));
  CHECK(parse_conjunction("X - Y =< 0, Y =< X") == parse_conjunction("X = Y"));
}

TEST_CASE("constraint text round-trips common shapes") {
  for (const char* text : {"A >= 1", "B < 0", "A - B =< -1", "A = 3", "2*A - 3*B < 7"}) {
    Conjunction c = parse_conjunction(text);
    CHECK(parse_conjunction(to_text(c)) == c);
  }
}

TEST_CASE("formula print/parse is the identity on random formulas") {
  auto vars = testing::test_vars({"A", "B", "C", "D"});
  testing::Rng rng(20240801);
  for (int i = 0; i < 300; ++i) {
    DnfFormula f = rng.formula(vars, 3, 4);
    DnfFormula back = parse_formula(to_text(f), f.scope());
    CHECK(back == f);
  }
  CHECK(to_text(DnfFormula::bottom(vars)) == "false");
  CHECK(to_text(DnfFormula::top(vars)) == "true");
  CHECK(parse_formula("false", vars) == DnfFormula::bottom(vars));
  CHECK(parse_formula("true", vars) == DnfFormula::top(vars));
}

TEST_CASE("non-linear products are rejected") {
  CHECK_THROWS_AS(parse_conjunction("X * Y =< 1"), FormulaParseError);
}

TEST_CASE("evaluation agrees with parsing") {
  Conjunction c = parse_conjunction("A - B =< -1, A >= 0");
  std::map<Var, Rat> p{{VarPool::intern("A"), Rat(0)}, {VarPool::intern("B"), Rat(1)}};
  CHECK(c.holds_at(p));
  p[VarPool::intern("B")] = Rat(0);
  CHECK(!c.holds_at(p));
}
