// Copyright (c) hornpre contributors.
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hornpre/derivation.hpp"
#include "hornpre/fm.hpp"
#include "hornpre/formula_ops.hpp"

using namespace hornpre;

namespace {

const char* kRunningExample =
    "init(A,B).\n"
    "wh(A,B) :- init(A,B).\n"
    "wh(A,B) :- A0 >= 1, A = A0 - 1, B = B0 - 1, wh(A0,B0).\n"
    "unsafe :- A < 1, B < 0, wh(A,B).\n"
    "safe :- A < 1, B >= 0, wh(A,B).\n";

}  // namespace

TEST_CASE("a single fact node has the trivial constraint") {
  Program p = parse_program(kRunningExample);
  TreeConstraint tc = tree_constraint(p, DerivationTree{"c1", {}});
  CHECK(tc.conj.is_top());
  REQUIRE(tc.init_leaves.size() == 1);
  CHECK(tc.init_leaves[0].pred == "init");
  CHECK(tc.root_args.size() == 2);
}

TEST_CASE("the depth-one unsafe tree is feasible with the expected witness") {
  Program p = parse_program(kRunningExample);
  DerivationTree t{"c4", {DerivationTree{"c2", {DerivationTree{"c1", {}}}}}};
  TreeConstraint tc = tree_constraint(p, t);
  CHECK(is_sat(tc.conj));
  REQUIRE(tc.init_leaves.size() == 1);
  // Projected onto the initial node, the constraint is A < 1 and B < 0;
  // witness A=0, B=-1.
  Conjunction projected = project(
      tc.conj, {tc.init_leaves[0].args.begin(), tc.init_leaves[0].args.end()});
  VarMap back;
  back[tc.init_leaves[0].args[0]] = VarPool::intern("A");
  back[tc.init_leaves[0].args[1]] = VarPool::intern("B");
  CHECK(projected.renamed(back) == parse_conjunction("A < 1, B < 0"));
  std::map<Var, Rat> witness{{tc.init_leaves[0].args[0], Rat(0)},
                             {tc.init_leaves[0].args[1], Rat(-1)}};
  CHECK(projected.holds_at(witness));
  CHECK(tree_depth(t) == 3);
  CHECK(tree_size(t) == 3);
  CHECK(skeleton_text(t) == "c4(c2(c1))");
}

TEST_CASE("clashing constraints make the tree infeasible") {
  Program p = parse_program(
      "init(X).\n"
      "q(X) :- X >= 1, init(X).\n"
      "unsafe :- X =< 0, q(X).\n");
  DerivationTree t{"c3", {DerivationTree{"c2", {DerivationTree{"c1", {}}}}}};
  TreeConstraint tc = tree_constraint(p, t);
  CHECK(!is_sat(tc.conj));
}

TEST_CASE("malformed skeletons are rejected") {
  Program p = parse_program(kRunningExample);
  CHECK_THROWS_AS(tree_constraint(p, DerivationTree{"c9", {}}), std::invalid_argument);
  // c4 requires exactly one child.
  CHECK_THROWS_AS(tree_constraint(p, DerivationTree{"c4", {}}), std::invalid_argument);
  // The child of c4 must derive wh, not init.
  DerivationTree bad{"c4", {DerivationTree{"c1", {}}}};
  CHECK_THROWS_AS(tree_constraint(p, bad), std::invalid_argument);
}
