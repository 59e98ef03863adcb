// Copyright (c) hornpre contributors.
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hornpre/fm.hpp"
#include "hornpre/formula_ops.hpp"
#include "support/oracles.hpp"

using namespace hornpre;

TEST_CASE("contradictory bounds are unsat") {
  CHECK(!is_sat(parse_conjunction("X =< 0, X >= 1")));
  CHECK(is_sat(parse_conjunction("X =< 0, X >= 0")));
  CHECK(!is_sat(parse_conjunction("X < 0, X >= 0")));
}

TEST_CASE("satisfiable overlap of the running example's regions") {
  // B>=0 conjoined with the A>=1 component stays satisfiable.
  CHECK(is_sat(parse_conjunction("B >= 0, B >= 0, A >= 1")));
}

TEST_CASE("optimal preconditions have pairwise-unsat cross products") {
  const char* safe_side[] = {"B >= 0, A =< 0", "A >= 1, B >= A"};
  const char* unsafe_side[] = {"B < 0, A =< 0", "A >= 1, A > B"};
  for (const char* s : safe_side)
    for (const char* u : unsafe_side) {
      Conjunction product = parse_conjunction(s) & parse_conjunction(u);
      CHECK(!is_sat(product));
    }
}

TEST_CASE("projection drops unbounded equalities") {
  Conjunction c = parse_conjunction("X = Y");
  auto x = VarPool::intern("X");
  CHECK(project(c, {x}).is_top());
}

TEST_CASE("projection composes transitive bounds") {
  Conjunction c = parse_conjunction("X =< Y, Y =< 5");
  auto x = VarPool::intern("X");
  CHECK(project(c, {x}) == parse_conjunction("X =< 5"));
}

TEST_CASE("projection is the identity when nothing is eliminated") {
  Conjunction c = parse_conjunction("A < 1, B < 0");
  auto keep = std::set<Var>{VarPool::intern("A"), VarPool::intern("B")};
  Conjunction projected = project(c, keep);
  CHECK(projected == c);
  // Grid cross-check over [-3,3]^2.
  auto vars = testing::test_vars({"A", "B"});
  testing::for_each_grid_point(vars, -3, 3, [&](const testing::Point& p) {
    CHECK(projected.holds_at(p) == c.holds_at(p));
  });
}

TEST_CASE("strictness propagates through elimination") {
  // X < Y, Y =< 5 forces X < 5, not X =< 5.
  Conjunction c = parse_conjunction("X < Y, Y =< 5");
  auto x = VarPool::intern("X");
  CHECK(project(c, {x}) == parse_conjunction("X < 5"));
}

TEST_CASE("projection agrees with the grid oracle on random conjunctions") {
  auto all = testing::test_vars({"A", "B", "C"});
  std::vector<Var> keep_vars{all[0], all[1]};
  std::set<Var> keep(keep_vars.begin(), keep_vars.end());
  testing::Rng rng(987654);
  for (int i = 0; i < 250; ++i) {
    Conjunction c = rng.conjunction(all, 4);
    Conjunction projected = project(c, keep);
    testing::for_each_grid_point(keep_vars, -5, 5, [&](const testing::Point& p) {
      // A point satisfies the projection iff it extends to a solution of c.
      Conjunction pinned = c;
      for (const auto& [v, val] : p)
        pinned.add(Constraint(LinTerm::variable(v) - LinTerm::constant(val), Rel::eq));
      CHECK(projected.holds_at(p) == is_sat(pinned));
    });
  }
}

TEST_CASE("integer tightening recovers the paper's strict-to-nonstrict forms") {
  CHECK(integer_tighten(parse_conjunction("A < 1")) == parse_conjunction("A =< 0"));
  CHECK(integer_tighten(parse_conjunction("X < 0")) == parse_conjunction("X =< -1"));
  // Derived by enumerating integer X: 2X < 3 holds exactly for X =< 1.
  CHECK(integer_tighten(parse_conjunction("2*X < 3")) == parse_conjunction("X =< 1"));
  // gcd rounding of non-strict rows.
  CHECK(integer_tighten(parse_conjunction("2*X =< 3")) == parse_conjunction("X =< 1"));
  // Equality with indivisible constant has no integer solutions.
  CHECK(integer_tighten(parse_conjunction("2*X = 1")).trivially_false());
}

TEST_CASE("integer tightening preserves integer solution sets") {
  auto vars = testing::test_vars({"A", "B"});
  testing::Rng rng(424242);
  for (int i = 0; i < 400; ++i) {
    Conjunction c = rng.conjunction(vars, 3);
    Conjunction t = integer_tighten(c);
    testing::for_each_grid_point(vars, -10, 10, [&](const testing::Point& p) {
      CHECK(c.holds_at(p) == t.holds_at(p));
    });
  }
  // A little 3-variable coverage as well.
  auto vars3 = testing::test_vars({"A", "B", "C"});
  for (int i = 0; i < 40; ++i) {
    Conjunction c = rng.conjunction(vars3, 3);
    Conjunction t = integer_tighten(c);
    testing::for_each_grid_point(vars3, -4, 4, [&](const testing::Point& p) {
      CHECK(c.holds_at(p) == t.holds_at(p));
    });
  }
}

TEST_CASE("integer theory satisfiability uses tightening") {
  // 0 < A < 1 has rational but no integer solutions.
  Conjunction c = parse_conjunction("A > 0, A < 1");
  CHECK(is_sat(c, Theory::rational));
  CHECK(!is_sat(c, Theory::integer));
}
