// Copyright (c) hornpre contributors.
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cstdint>
#include <map>
#include <stdexcept>

#include "hornpre/fm.hpp"
#include "hornpre/transforms.hpp"

namespace hornpre {

// ---------------------------------------------------------------------------
// Feasible-derivation search.

namespace {

// Depth-bounded backtracking search over AND-trees with incremental
// satisfiability pruning. Alternatives are totally ordered (clause id order,
// leftmost-innermost), and `skip` selects the n-th solution of a subgoal so
// that later siblings can reject earlier choices.
struct Searcher {
  const Program& p;
  Theory theory;
  std::vector<Constraint> rows;

  struct PendingAtom {
    std::string pred;
    std::vector<Var> args;
  };

  bool nth(const PendingAtom& atom, int depth_left, DerivationTree& out, std::size_t skip) {
    std::size_t seen = 0;
    return enumerate(atom, depth_left, out, skip, seen);
  }

  bool enumerate(const PendingAtom& atom, int depth_left, DerivationTree& out,
                 std::size_t skip, std::size_t& seen) {
    if (depth_left <= 0) return false;
    for (std::size_t ci : p.clauses_for_head(atom.pred)) {
      const Clause& c = p.clauses[ci];
      std::size_t mark = rows.size();
      VarMap renaming;
      for (Var v : clause_vars(c)) renaming[v] = VarPool::fresh("s");
      for (const Constraint& row : c.constr.constraints())
        rows.push_back(row.renamed(renaming));
      for (std::size_t k = 0; k < atom.args.size(); ++k)
        rows.emplace_back(
            LinTerm::variable(atom.args[k]) - LinTerm::variable(renaming.at(c.head.args[k])),
            Rel::eq);
      if (is_sat(Conjunction(rows), theory)) {
        std::vector<DerivationTree> children(c.body.size());
        if (body(c, renaming, 0, depth_left, children, skip, seen)) {
          out.clause_id = c.id;
          out.children = std::move(children);
          return true;
        }
      }
      rows.erase(rows.begin() + static_cast<std::ptrdiff_t>(mark), rows.end());
    }
    return false;
  }

  bool body(const Clause& c, const VarMap& renaming, std::size_t i, int depth_left,
            std::vector<DerivationTree>& children, std::size_t skip, std::size_t& seen) {
    if (i == c.body.size()) return seen++ == skip;
    PendingAtom call;
    call.pred = c.body[i].pred;
    for (Var v : c.body[i].args) call.args.push_back(renaming.at(v));
    for (std::size_t inner = 0;; ++inner) {
      std::size_t mark = rows.size();
      if (!nth(call, depth_left - 1, children[i], inner)) {
        rows.erase(rows.begin() + static_cast<std::ptrdiff_t>(mark), rows.end());
        return false;
      }
      if (body(c, renaming, i + 1, depth_left, children, skip, seen)) return true;
      rows.erase(rows.begin() + static_cast<std::ptrdiff_t>(mark), rows.end());
    }
  }

  static std::vector<Var> clause_vars(const Clause& c) {
    std::vector<Var> order;
    auto push = [&order](Var v) {
      if (std::find(order.begin(), order.end(), v) == order.end()) order.push_back(v);
    };
    for (Var v : c.head.args) push(v);
    for (const Atom& a : c.body)
      for (Var v : a.args) push(v);
    for (Var v : c.constr.vars()) push(v);
    return order;
  }
};

}  // namespace

std::optional<DerivationTree> find_feasible_derivation(const Program& p, Goal goal,
                                                       const SearchOptions& opts) {
  const std::string& root = goal_pred(p, goal);
  std::size_t arity = 0;
  for (const Clause& c : p.clauses)
    if (c.head.pred == root) arity = c.head.args.size();
  Searcher::PendingAtom atom;
  atom.pred = root;
  for (std::size_t i = 0; i < arity; ++i) atom.args.push_back(VarPool::fresh("g"));
  for (int depth = 1; depth <= opts.depth_bound; ++depth) {
    Searcher s{p, opts.theory, {}};
    DerivationTree t;
    if (s.nth(atom, depth, t, 0)) return t;
  }
  return std::nullopt;
}

Theta theta_of_tree(const Program& p, const DerivationTree& t, Theory theory) {
  TreeConstraint tc = tree_constraint(p, t);
  if (!is_sat(tc.conj, theory))
    throw std::invalid_argument("theta_of_tree: tree is infeasible");
  if (tc.init_leaves.empty())
    throw std::invalid_argument("theta_of_tree: tree has no initial node");
  Theta theta;
  theta.formula = DnfFormula::bottom(p.scope);
  theta.multiple_init_nodes = tc.init_leaves.size() > 1;
  for (const InitLeaf& leaf : tc.init_leaves) {
    Conjunction projected = project(tc.conj, {leaf.args.begin(), leaf.args.end()});
    VarMap m;
    for (std::size_t i = 0; i < leaf.args.size() && i < p.scope.size(); ++i)
      m[leaf.args[i]] = p.scope[i];
    theta.formula.add_disjunct(projected.renamed(m));
  }
  theta.formula = simplify(theta.formula, theory);
  return theta;
}

// ---------------------------------------------------------------------------
// Tree-automata difference.

Fta program_fta(const Program& p) {
  Fta fta;
  std::map<std::string, int> state_of;
  auto state = [&](const std::string& pred) {
    auto it = state_of.find(pred);
    if (it != state_of.end()) return it->second;
    int s = static_cast<int>(fta.state_names.size());
    fta.state_names.push_back(pred);
    state_of.emplace(pred, s);
    return s;
  };
  for (const Clause& c : p.clauses) {
    FtaTransition tr;
    tr.sym = c.id;
    for (const Atom& a : c.body) tr.children.push_back(state(a.pred));
    tr.target = state(c.head.pred);
    fta.transitions.push_back(std::move(tr));
  }
  for (int s = 0; s < static_cast<int>(fta.state_names.size()); ++s) fta.finals.push_back(s);
  return fta;
}

namespace {

using Mask = std::uint64_t;

struct TraceNodes {
  std::vector<std::string> clause;            // clause id per node
  std::vector<std::vector<std::size_t>> kids; // node indices
};

std::size_t index_tree(const DerivationTree& t, TraceNodes& nodes) {
  std::size_t me = nodes.clause.size();
  nodes.clause.push_back(t.clause_id);
  nodes.kids.emplace_back(t.children.size(), 0);
  for (std::size_t i = 0; i < t.children.size(); ++i)
    nodes.kids[me][i] = index_tree(t.children[i], nodes);
  return me;
}

// Deterministic transition of the subset automaton of the trace: which trace
// nodes are matched by a tree rooted at clause `sym` whose children matched
// the given subsets.
Mask delta(const TraceNodes& nodes, const std::string& sym, const std::vector<Mask>& children) {
  Mask out = 0;
  for (std::size_t i = 0; i < nodes.clause.size(); ++i) {
    if (nodes.clause[i] != sym) continue;
    if (nodes.kids[i].size() != children.size()) continue;
    bool all = true;
    for (std::size_t j = 0; j < children.size(); ++j)
      if (((children[j] >> nodes.kids[i][j]) & 1) == 0) {
        all = false;
        break;
      }
    if (all) out |= Mask(1) << i;
  }
  return out;
}

struct ProductState {
  std::string pred;
  Mask mask;
  friend auto operator<=>(const ProductState&, const ProductState&) = default;
};

}  // namespace

Program eliminate_trace(const Program& p, const DerivationTree& t) {
  // Validates the skeleton (throws when t is not a tree of p).
  (void)tree_constraint(p, t);

  TraceNodes nodes;
  index_tree(t, nodes);
  if (nodes.clause.size() > 64)
    throw std::invalid_argument("eliminate_trace: trace exceeds 64 nodes");

  // Product of the program automaton with the complemented trace automaton,
  // built bottom-up; every reached state generates at least one tree.
  std::map<ProductState, int> state_ix;
  std::vector<ProductState> states;
  struct PTransition {
    std::string sym;  // clause id
    std::vector<int> children;
    int target;
  };
  std::vector<PTransition> transitions;
  std::set<std::pair<std::string, std::vector<int>>> seen_lhs;

  auto intern_state = [&](const ProductState& s) {
    auto it = state_ix.find(s);
    if (it != state_ix.end()) return it->second;
    int ix = static_cast<int>(states.size());
    states.push_back(s);
    state_ix.emplace(s, ix);
    return ix;
  };

  bool grew = true;
  while (grew) {
    grew = false;
    for (const Clause& c : p.clauses) {
      // All combinations of existing states matching the body predicates.
      std::vector<std::vector<int>> options(c.body.size());
      bool possible = true;
      for (std::size_t i = 0; i < c.body.size(); ++i) {
        for (int ix = 0; ix < static_cast<int>(states.size()); ++ix)
          if (states[ix].pred == c.body[i].pred) options[i].push_back(ix);
        if (options[i].empty()) {
          possible = false;
          break;
        }
      }
      if (!possible) continue;
      std::vector<std::size_t> pick(c.body.size(), 0);
      while (true) {
        std::vector<int> children;
        children.reserve(pick.size());
        for (std::size_t i = 0; i < pick.size(); ++i) children.push_back(options[i][pick[i]]);
        if (seen_lhs.insert({c.id, children}).second) {
          std::vector<Mask> child_masks;
          child_masks.reserve(children.size());
          for (int ix : children) child_masks.push_back(states[ix].mask);
          std::size_t before = states.size();
          int target = intern_state(ProductState{c.head.pred, delta(nodes, c.id, child_masks)});
          transitions.push_back(PTransition{c.id, children, target});
          if (states.size() != before) grew = true;
        }
        // Next combination.
        std::size_t i = 0;
        for (; i < pick.size(); ++i) {
          if (++pick[i] < options[i].size()) break;
          pick[i] = 0;
        }
        if (pick.empty() || i == pick.size()) break;
      }
    }
  }

  // Finals: every state whose run did not reproduce the whole trace.
  auto is_final = [&](int ix) { return (states[ix].mask & 1) == 0; };  // root is node 0

  // Usefulness: final states plus everything reachable downward from them.
  std::vector<char> useful(states.size(), 0);
  for (int ix = 0; ix < static_cast<int>(states.size()); ++ix)
    if (is_final(ix)) useful[ix] = 1;
  bool changed = true;
  while (changed) {
    changed = false;
    for (const PTransition& tr : transitions) {
      if (!useful[tr.target]) continue;
      for (int ch : tr.children)
        if (!useful[ch]) {
          useful[ch] = 1;
          changed = true;
        }
    }
  }

  // Naming: the untouched copy (empty mask) keeps the predicate name;
  // predicates never used in bodies collapse to their original name.
  std::set<std::string> body_preds;
  for (const Clause& c : p.clauses)
    for (const Atom& a : c.body) body_preds.insert(a.pred);
  std::map<int, std::string> name_of;
  std::map<std::string, int> split_count;
  for (int ix = 0; ix < static_cast<int>(states.size()); ++ix) {
    if (!useful[ix]) continue;
    const ProductState& s = states[ix];
    if (s.mask == 0 || !body_preds.count(s.pred)) {
      name_of[ix] = s.pred;
    } else {
      name_of[ix] = s.pred + "_" + std::to_string(++split_count[s.pred]);
    }
  }

  Program out;
  out.init_pred = p.init_pred;
  out.safe_pred = p.safe_pred;
  out.unsafe_pred = p.unsafe_pred;
  out.scope = p.scope;
  out.declared_theory = p.declared_theory;
  out.init_preds.clear();
  for (const auto& [ix, name] : name_of)
    if (p.is_initial(states[ix].pred)) out.init_preds.insert(name);
  if (out.init_preds.empty()) out.init_preds = p.init_preds;

  std::set<std::tuple<std::string, std::string, std::vector<std::string>>> emitted;
  for (const PTransition& tr : transitions) {
    if (!useful[tr.target]) continue;
    bool children_ok = true;
    for (int ch : tr.children)
      if (!useful[ch]) {
        children_ok = false;
        break;
      }
    if (!children_ok) continue;
    const Clause* c = p.clause_by_id(tr.sym);
    std::vector<std::string> body_names;
    for (int ch : tr.children) body_names.push_back(name_of.at(ch));
    if (!emitted.insert({tr.sym, name_of.at(tr.target), body_names}).second) continue;
    Clause nc;
    nc.head = Atom{name_of.at(tr.target), c->head.args};
    nc.constr = c->constr;
    for (std::size_t i = 0; i < c->body.size(); ++i)
      nc.body.push_back(Atom{body_names[i], c->body[i].args});
    nc.source = c->id;
    out.clauses.push_back(std::move(nc));
  }
  for (std::size_t i = 0; i < out.clauses.size(); ++i)
    out.clauses[i].id = "c" + std::to_string(i + 1);
  return out;
}

}  // namespace hornpre
