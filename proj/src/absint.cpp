// Copyright (c) hornpre contributors.
// SPDX-License-Identifier: Apache-2.0

#include "hornpre/absint.hpp"

#include <algorithm>
#include <deque>

#include "hornpre/fm.hpp"
#include "hornpre/formula_ops.hpp"

namespace hornpre {

Polyhedron Polyhedron::from_conjunction(const Conjunction& c, Theory theory) {
  Conjunction n = normalize_for(c, theory);
  std::vector<Constraint> weak;
  weak.reserve(n.size());
  for (const Constraint& row : n.constraints()) weak.push_back(row.weakened());
  Conjunction w(std::move(weak));
  if (!is_sat(w)) return bottom();
  Polyhedron p;
  p.conj_ = simplify(w, Theory::rational);
  return p;
}

bool Polyhedron::entails(const Polyhedron& other) const {
  if (is_bottom()) return true;
  if (other.is_bottom()) return false;
  return conj_entails(*conj_, *other.conj_, Theory::rational);
}

bool Polyhedron::same_as(const Polyhedron& other) const {
  return entails(other) && other.entails(*this);
}

Polyhedron hull(const Polyhedron& a, const Polyhedron& b, const std::vector<Var>& scope) {
  if (a.is_bottom()) return b;
  if (b.is_bottom()) return a;
  // x = y + z with scaled copies of a over (y, l1) and b over (z, l2),
  // l1 + l2 = 1, l1 >= 0, l2 >= 0; the hull is the projection onto x.
  Var l1 = VarPool::fresh("l1");
  Var l2 = VarPool::fresh("l2");
  VarMap to_y, to_z;
  std::vector<Constraint> rows;
  for (Var x : scope) {
    Var y = VarPool::fresh("y");
    Var z = VarPool::fresh("z");
    to_y[x] = y;
    to_z[x] = z;
    rows.emplace_back(
        LinTerm::variable(x) - LinTerm::variable(y) - LinTerm::variable(z), Rel::eq);
  }
  auto scaled = [&rows](const Conjunction& c, const VarMap& m, Var lambda) {
    for (const Constraint& row : c.constraints()) {
      LinTerm t = row.term().renamed(m);
      // Homogenize the constant with the multiplier.
      LinTerm hom = t - LinTerm::constant(t.constant()) +
                    LinTerm::variable(lambda) * t.constant();
      rows.emplace_back(std::move(hom), row.rel());
    }
  };
  scaled(a.constraints(), to_y, l1);
  scaled(b.constraints(), to_z, l2);
  rows.emplace_back(LinTerm::variable(l1) + LinTerm::variable(l2) - LinTerm::constant(Rat(1)),
                    Rel::eq);
  rows.emplace_back(-LinTerm::variable(l1), Rel::leq);
  rows.emplace_back(-LinTerm::variable(l2), Rel::leq);
  Conjunction lifted(std::move(rows));
  Conjunction projected = project(lifted, {scope.begin(), scope.end()});
  return Polyhedron::from_conjunction(simplify(projected, Theory::rational), Theory::rational);
}

namespace {

std::vector<Constraint> split_equalities(const Conjunction& c) {
  std::vector<Constraint> rows;
  for (const Constraint& row : c.constraints()) {
    if (row.rel() == Rel::eq) {
      rows.emplace_back(row.term(), Rel::leq);
      rows.emplace_back(-row.term(), Rel::leq);
    } else {
      rows.push_back(row);
    }
  }
  return rows;
}

}  // namespace

Polyhedron widen(const Polyhedron& a, const Polyhedron& b) {
  if (a.is_bottom()) return b;
  if (b.is_bottom()) return a;
  std::vector<Constraint> kept;
  for (const Constraint& row : split_equalities(a.constraints())) {
    if (conj_entails(b.constraints(), Conjunction{row}, Theory::rational))
      kept.push_back(row);
  }
  return Polyhedron::from_conjunction(Conjunction(std::move(kept)), Theory::rational);
}

std::vector<Var> analysis_formals(const std::string& pred, std::size_t arity) {
  std::vector<Var> out;
  out.reserve(arity);
  for (std::size_t i = 0; i < arity; ++i)
    out.push_back(VarPool::intern("$f:" + pred + ":" + std::to_string(i)));
  return out;
}

PredicateValuation analyze(const Program& p, const AnalyzeOptions& opts) {
  PredicateValuation val;
  std::map<std::string, int> grow_count;
  // Clauses that consume a predicate's value in their body.
  std::map<std::string, std::vector<std::size_t>> dependents;
  for (std::size_t i = 0; i < p.clauses.size(); ++i)
    for (const Atom& a : p.clauses[i].body) dependents[a.pred].push_back(i);

  std::deque<std::size_t> queue;
  std::vector<char> queued(p.clauses.size(), 0);
  for (std::size_t i = 0; i < p.clauses.size(); ++i) {
    queue.push_back(i);
    queued[i] = 1;
  }

  auto enqueue = [&](const std::string& pred) {
    auto it = dependents.find(pred);
    if (it == dependents.end()) return;
    for (std::size_t i : it->second) {
      if (!queued[i]) {
        queue.push_back(i);
        queued[i] = 1;
      }
    }
  };

  while (!queue.empty()) {
    std::size_t ci = queue.front();
    queue.pop_front();
    queued[ci] = 0;
    const Clause& c = p.clauses[ci];

    Conjunction body = normalize_for(c.constr, opts.theory);
    bool feasible = true;
    for (const Atom& a : c.body) {
      auto it = val.find(a.pred);
      if (it == val.end() || it->second.is_bottom()) {
        feasible = false;
        break;
      }
      VarMap m;
      std::vector<Var> formals = analysis_formals(a.pred, a.args.size());
      for (std::size_t k = 0; k < a.args.size(); ++k) m[formals[k]] = a.args[k];
      body.add_all(it->second.constraints().renamed(m));
    }
    if (!feasible) continue;
    std::vector<Constraint> weak;
    for (const Constraint& row : body.constraints()) weak.push_back(row.weakened());
    Conjunction weakened(std::move(weak));
    if (!is_sat(weakened)) continue;

    Conjunction head_val = project(weakened, {c.head.args.begin(), c.head.args.end()});
    std::vector<Var> formals = analysis_formals(c.head.pred, c.head.args.size());
    VarMap to_formals;
    for (std::size_t k = 0; k < c.head.args.size(); ++k) to_formals[c.head.args[k]] = formals[k];
    Polyhedron cand = Polyhedron::from_conjunction(head_val.renamed(to_formals), Theory::rational);
    if (cand.is_bottom()) continue;

    Polyhedron& current = val[c.head.pred];
    if (cand.entails(current) && !current.is_bottom()) continue;
    Polyhedron joined = hull(current, cand, formals);
    int visits = ++grow_count[c.head.pred];
    Polyhedron next =
        visits <= opts.widen_delay ? joined : widen(current, joined);
    if (next.same_as(current)) continue;
    current = next;
    enqueue(c.head.pred);
  }
  return val;
}

}  // namespace hornpre
