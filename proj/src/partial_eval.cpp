// Copyright (c) hornpre contributors.
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <deque>
#include <map>

#include "hornpre/fm.hpp"
#include "hornpre/transforms.hpp"

namespace hornpre {

namespace {

std::vector<Var> pe_formals(const std::string& pred, std::size_t arity) {
  std::vector<Var> out;
  out.reserve(arity);
  for (std::size_t i = 0; i < arity; ++i)
    out.push_back(VarPool::intern("$pe:" + pred + ":" + std::to_string(i)));
  return out;
}

// Atomic constraints of the program text whose variables lie inside a single
// atom's argument tuple, renamed onto that predicate's formals. A call
// context is abstracted to the subset of these it entails, which keeps the
// number of versions finite.
std::map<std::string, std::vector<Constraint>> collect_thresholds(const Program& p,
                                                                  Theory theory) {
  std::map<std::string, std::vector<Constraint>> out;
  auto harvest = [&](const Atom& a, const Conjunction& body) {
    std::set<Var> argset(a.args.begin(), a.args.end());
    VarMap m;
    std::vector<Var> formals = pe_formals(a.pred, a.args.size());
    for (std::size_t i = 0; i < a.args.size(); ++i) m[a.args[i]] = formals[i];
    for (const Constraint& row : body.constraints()) {
      bool inside = true;
      for (const auto& [v, c] : row.term().coeffs())
        if (!argset.count(v)) {
          inside = false;
          break;
        }
      if (!inside || row.term().is_constant()) continue;
      Conjunction norm = normalize_for(Conjunction{row.renamed(m)}, theory);
      for (const Constraint& r : norm.constraints()) out[a.pred].push_back(r);
    }
  };
  for (const Clause& c : p.clauses) {
    harvest(c.head, c.constr);
    for (const Atom& a : c.body) harvest(a, c.constr);
  }
  for (auto& [pred, rows] : out) {
    std::sort(rows.begin(), rows.end());
    rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
  }
  return out;
}

struct Version {
  std::string name;
  Conjunction ctx;  // over pe_formals(pred, arity)
};

}  // namespace

Program partial_evaluate(const Program& p, Goal goal, const PeOptions& opts) {
  const std::string& goalp = goal_pred(p, goal);
  const Theory theory = opts.theory;
  auto thresholds = collect_thresholds(p, theory);

  std::map<std::string, std::vector<Version>> versions;
  std::set<std::string> used_names;
  for (const Clause& c : p.clauses) used_names.insert(c.head.pred);

  auto equivalent_ctx = [&](const Conjunction& a, const Conjunction& b) {
    return conj_entails(a, b, theory) && conj_entails(b, a, theory);
  };

  auto abstract_ctx = [&](const std::string& pred, const Conjunction& raw) {
    std::vector<Constraint> kept;
    auto it = thresholds.find(pred);
    if (it != thresholds.end())
      for (const Constraint& row : it->second)
        if (conj_entails(raw, Conjunction{row}, theory)) kept.push_back(row);
    return Conjunction(std::move(kept));
  };

  std::deque<std::pair<std::string, std::size_t>> worklist;

  // Returns the version name for a call with the given abstracted context,
  // creating it (and scheduling it) on first sight.
  auto version_for = [&](const std::string& pred, Conjunction ctx) -> std::string {
    auto& vs = versions[pred];
    for (const Version& v : vs)
      if (equivalent_ctx(v.ctx, ctx)) return v.name;
    if (static_cast<int>(vs.size()) >= opts.version_cap) {
      // Backstop: collapse into (or create) the unconstrained version.
      for (const Version& v : vs)
        if (v.ctx.is_top()) return v.name;
      ctx = Conjunction::top();
    }
    std::string name;
    if (pred == goalp && vs.empty()) {
      name = pred;  // the goal keeps its name
    } else {
      std::size_t k = vs.size() + 1;
      do {
        name = pred + "_" + std::to_string(k++);
      } while (used_names.count(name));
      used_names.insert(name);
    }
    vs.push_back(Version{name, std::move(ctx)});
    worklist.emplace_back(pred, vs.size() - 1);
    return vs.back().name;
  };

  Program out;
  out.init_pred = p.init_pred;
  out.safe_pred = p.safe_pred;
  out.unsafe_pred = p.unsafe_pred;
  out.init_preds.clear();
  out.scope = p.scope;
  out.declared_theory = p.declared_theory;

  version_for(goalp, Conjunction::top());

  while (!worklist.empty()) {
    auto [pred, vi] = worklist.front();
    worklist.pop_front();
    // Copy: the versions vector may grow while this one is processed.
    const Version version = versions[pred][vi];

    for (std::size_t ci : p.clauses_for_head(pred)) {
      const Clause& c = p.clauses[ci];
      VarMap onto_head;
      std::vector<Var> pf = pe_formals(pred, c.head.args.size());
      for (std::size_t i = 0; i < c.head.args.size(); ++i) onto_head[pf[i]] = c.head.args[i];
      Conjunction full = c.constr;
      full.add_all(version.ctx.renamed(onto_head));
      if (!is_sat(full, theory)) continue;

      Clause nc;
      nc.head = Atom{version.name, c.head.args};
      nc.constr = simplify(full, theory);
      nc.source = c.id;
      for (const Atom& b : c.body) {
        Conjunction raw = project(full, {b.args.begin(), b.args.end()});
        VarMap onto_formals;
        std::vector<Var> bf = pe_formals(b.pred, b.args.size());
        for (std::size_t i = 0; i < b.args.size(); ++i) onto_formals[b.args[i]] = bf[i];
        raw = raw.renamed(onto_formals);
        Conjunction ctx = p.is_initial(b.pred) ? simplify(raw, theory)
                                               : abstract_ctx(b.pred, raw);
        nc.body.push_back(Atom{version_for(b.pred, std::move(ctx)), b.args});
      }
      out.clauses.push_back(std::move(nc));
    }
  }

  for (const auto& [pred, vs] : versions)
    if (p.is_initial(pred))
      for (const Version& v : vs) out.init_preds.insert(v.name);

  for (std::size_t i = 0; i < out.clauses.size(); ++i)
    out.clauses[i].id = "c" + std::to_string(i + 1);
  return out;
}

}  // namespace hornpre
