// Copyright (c) hornpre contributors.
// SPDX-License-Identifier: Apache-2.0
//
// AND-trees: a derivation skeleton names one clause per node, children in
// body-atom order. The tree constraint is the conjunction of all node
// constraints under a consistent renaming; the tree is feasible iff that
// conjunction is satisfiable.

#pragma once

#include <string>
#include <vector>

#include "hornpre/chc.hpp"

namespace hornpre {

struct DerivationTree {
  std::string clause_id;
  std::vector<DerivationTree> children;
};

struct InitLeaf {
  std::string pred;
  std::vector<Var> args;  // renamed argument tuple of the initial node
};

struct TreeConstraint {
  Conjunction conj;
  std::vector<Var> root_args;
  std::vector<InitLeaf> init_leaves;
};

// Throws std::invalid_argument when the skeleton is not an AND-tree of p
// (unknown clause, child count mismatch, or child head predicate mismatch).
TreeConstraint tree_constraint(const Program& p, const DerivationTree& t);

int tree_depth(const DerivationTree& t);
std::size_t tree_size(const DerivationTree& t);

// Compact skeleton form "c1(c2(c3),c4)" used in reports and tests.
std::string skeleton_text(const DerivationTree& t);

}  // namespace hornpre
