// Copyright (c) hornpre contributors.
// SPDX-License-Identifier: Apache-2.0

#include "hornpre/derivation.hpp"

#include <algorithm>
#include <stdexcept>

namespace hornpre {

namespace {

struct Builder {
  const Program& p;
  std::vector<Constraint> rows;
  std::vector<InitLeaf> init_leaves;

  // Returns the renamed head argument tuple of the node.
  std::vector<Var> visit(const DerivationTree& t) {
    const Clause* c = p.clause_by_id(t.clause_id);
    if (!c) throw std::invalid_argument("unknown clause id " + t.clause_id);
    if (c->body.size() != t.children.size())
      throw std::invalid_argument("clause " + t.clause_id + " expects " +
                                  std::to_string(c->body.size()) + " children, got " +
                                  std::to_string(t.children.size()));
    VarMap renaming;
    for (Var v : clause_var_set(*c)) renaming[v] = VarPool::fresh("t");
    for (const Constraint& row : c->constr.constraints()) rows.push_back(row.renamed(renaming));
    for (std::size_t i = 0; i < c->body.size(); ++i) {
      const Atom& call = c->body[i];
      const Clause* child_clause = p.clause_by_id(t.children[i].clause_id);
      if (!child_clause) throw std::invalid_argument("unknown clause id " + t.children[i].clause_id);
      if (child_clause->head.pred != call.pred)
        throw std::invalid_argument("child of " + t.clause_id + " at position " +
                                    std::to_string(i) + " derives " + child_clause->head.pred +
                                    " but the body atom is " + call.pred);
      std::vector<Var> child_args = visit(t.children[i]);
      for (std::size_t k = 0; k < call.args.size(); ++k) {
        LinTerm eq = LinTerm::variable(renaming.at(call.args[k])) - LinTerm::variable(child_args[k]);
        rows.emplace_back(std::move(eq), Rel::eq);
      }
    }
    std::vector<Var> head_args;
    for (Var v : c->head.args) head_args.push_back(renaming.at(v));
    if (c->is_fact() && p.is_initial(c->head.pred))
      init_leaves.push_back(InitLeaf{c->head.pred, head_args});
    return head_args;
  }

  static std::set<Var> clause_var_set(const Clause& c) {
    std::set<Var> vs = c.constr.vars();
    for (Var v : c.head.args) vs.insert(v);
    for (const Atom& a : c.body)
      for (Var v : a.args) vs.insert(v);
    return vs;
  }
};

}  // namespace

TreeConstraint tree_constraint(const Program& p, const DerivationTree& t) {
  Builder b{p, {}, {}};
  TreeConstraint out;
  out.root_args = b.visit(t);
  out.conj = Conjunction(std::move(b.rows));
  out.init_leaves = std::move(b.init_leaves);
  return out;
}

int tree_depth(const DerivationTree& t) {
  int d = 0;
  for (const DerivationTree& c : t.children) d = std::max(d, tree_depth(c));
  return d + 1;
}

std::size_t tree_size(const DerivationTree& t) {
  std::size_t n = 1;
  for (const DerivationTree& c : t.children) n += tree_size(c);
  return n;
}

std::string skeleton_text(const DerivationTree& t) {
  std::string s = t.clause_id;
  if (!t.children.empty()) {
    s += "(";
    for (std::size_t i = 0; i < t.children.size(); ++i) {
      if (i) s += ",";
      s += skeleton_text(t.children[i]);
    }
    s += ")";
  }
  return s;
}

}  // namespace hornpre
