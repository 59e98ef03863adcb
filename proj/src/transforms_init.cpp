// Copyright (c) hornpre contributors.
// SPDX-License-Identifier: Apache-2.0

#include <stdexcept>

#include "hornpre/fm.hpp"
#include "hornpre/transforms.hpp"

namespace hornpre {

namespace {

// Positional renaming of a scope-based formula disjunct onto clause args.
Conjunction onto_args(const Conjunction& d, const std::vector<Var>& scope,
                      const std::vector<Var>& args) {
  VarMap m;
  for (std::size_t i = 0; i < scope.size(); ++i) m[scope[i]] = args[i];
  return d.renamed(m);
}

}  // namespace

Program init_replace(const Program& p, const DnfFormula& phi) {
  if (phi.scope().size() != p.scope.size())
    throw std::invalid_argument("init_replace: formula scope does not match the initial tuple");
  Program out = p;
  out.clauses.clear();
  // One replacement clause set per initial predicate, in place of its facts.
  std::set<std::string> replaced;
  for (const Clause& c : p.clauses) {
    if (c.is_fact() && p.is_initial(c.head.pred)) {
      if (replaced.insert(c.head.pred).second) {
        for (const Conjunction& d : phi.disjuncts()) {
          Clause nc;
          nc.head = c.head;
          nc.constr = onto_args(d, phi.scope(), c.head.args);
          nc.source = c.id;
          out.clauses.push_back(std::move(nc));
        }
      }
      continue;
    }
    Clause copy = c;
    copy.source = c.id;
    out.clauses.push_back(std::move(copy));
  }
  for (std::size_t i = 0; i < out.clauses.size(); ++i)
    out.clauses[i].id = "c" + std::to_string(i + 1);
  return out;
}

Program u_approximate(const Program& p, const DnfFormula& phi, Theory theory) {
  Program out = p;
  out.clauses.clear();
  for (const Clause& c : p.clauses) {
    if (c.is_fact() && p.is_initial(c.head.pred)) {
      for (const Conjunction& d : phi.disjuncts()) {
        Clause nc = c;
        nc.constr.add_all(onto_args(d, phi.scope(), c.head.args));
        if (!is_sat(nc.constr, theory)) continue;
        nc.source = c.id;
        out.clauses.push_back(std::move(nc));
      }
      continue;
    }
    Clause copy = c;
    copy.source = c.id;
    out.clauses.push_back(std::move(copy));
  }
  for (std::size_t i = 0; i < out.clauses.size(); ++i)
    out.clauses[i].id = "c" + std::to_string(i + 1);
  return out;
}

DnfFormula extract_np(const Program& p, Theory theory) {
  DnfFormula np = DnfFormula::bottom(p.scope);
  for (const Clause* c : initial_clauses(p)) {
    Conjunction projected =
        project(c->constr, {c->head.args.begin(), c->head.args.end()});
    VarMap m;
    for (std::size_t i = 0; i < c->head.args.size() && i < p.scope.size(); ++i)
      m[c->head.args[i]] = p.scope[i];
    np.add_disjunct(projected.renamed(m));
  }
  return simplify(np, theory);
}

}  // namespace hornpre
