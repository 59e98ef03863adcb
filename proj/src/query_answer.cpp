// Copyright (c) hornpre contributors.
// SPDX-License-Identifier: Apache-2.0

#include "hornpre/fm.hpp"
#include "hornpre/transforms.hpp"

namespace hornpre {

namespace {

// Internal predicate names; the query-answer program is consumed by the
// analyzer only and never printed, so unparseable names are fine and can
// never collide with source predicates.
std::string query_name(const std::string& pred) { return "$q:" + pred; }
std::string answer_name(const std::string& pred) { return "$a:" + pred; }

}  // namespace

Program query_answer_transform(const Program& p, Goal goal) {
  Program out;
  out.init_pred = p.init_pred;
  out.safe_pred = p.safe_pred;
  out.unsafe_pred = p.unsafe_pred;
  out.init_preds = p.init_preds;
  out.scope = p.scope;
  out.declared_theory = p.declared_theory;

  for (const Clause& c : p.clauses) {
    // Answer clause: h_a(x) <- phi, h_q(x), b1_a(x1), ..., bk_a(xk).
    Clause ans;
    ans.head = Atom{answer_name(c.head.pred), c.head.args};
    ans.constr = c.constr;
    ans.body.push_back(Atom{query_name(c.head.pred), c.head.args});
    for (const Atom& b : c.body) ans.body.push_back(Atom{answer_name(b.pred), b.args});
    ans.source = c.id;
    out.clauses.push_back(std::move(ans));

    // Query clauses: bi_q(xi) <- phi, h_q(x), b1_a(x1), ..., b(i-1)_a.
    for (std::size_t i = 0; i < c.body.size(); ++i) {
      Clause q;
      q.head = Atom{query_name(c.body[i].pred), c.body[i].args};
      q.constr = c.constr;
      q.body.push_back(Atom{query_name(c.head.pred), c.head.args});
      for (std::size_t j = 0; j < i; ++j)
        q.body.push_back(Atom{answer_name(c.body[j].pred), c.body[j].args});
      q.source = c.id;
      out.clauses.push_back(std::move(q));
    }
  }

  // Goal seed: goal_q <- true.
  Clause seed;
  seed.head = Atom{query_name(goal_pred(p, goal)), {}};
  out.clauses.push_back(std::move(seed));

  for (std::size_t i = 0; i < out.clauses.size(); ++i)
    out.clauses[i].id = "c" + std::to_string(i + 1);
  return out;
}

Program constraint_specialise(const Program& p, Goal goal, const CsOptions& opts) {
  Program qa = query_answer_transform(p, goal);
  AnalyzeOptions aopts;
  aopts.widen_delay = opts.widen_delay;
  aopts.theory = opts.theory;
  PredicateValuation val = analyze(qa, aopts);

  auto invariant_at = [&val](const std::string& pred, const std::vector<Var>& args,
                             Conjunction& into) -> bool {
    auto it = val.find("$a:" + pred);
    if (it == val.end() || it->second.is_bottom()) return false;
    VarMap m;
    std::vector<Var> formals = analysis_formals("$a:" + pred, args.size());
    for (std::size_t k = 0; k < args.size(); ++k) m[formals[k]] = args[k];
    into.add_all(it->second.constraints().renamed(m));
    return true;
  };

  Program out = p;
  out.clauses.clear();
  for (const Clause& c : p.clauses) {
    Conjunction strengthened = c.constr;
    bool feasible = true;
    if (c.is_fact()) {
      feasible = invariant_at(c.head.pred, c.head.args, strengthened);
    } else {
      for (const Atom& b : c.body)
        if (!invariant_at(b.pred, b.args, strengthened)) {
          feasible = false;
          break;
        }
    }
    if (!feasible || !is_sat(strengthened, opts.theory)) continue;
    Clause nc = c;
    nc.constr = simplify(strengthened, opts.theory);
    nc.source = c.id;
    out.clauses.push_back(std::move(nc));
  }
  for (std::size_t i = 0; i < out.clauses.size(); ++i)
    out.clauses[i].id = "c" + std::to_string(i + 1);
  return out;
}

}  // namespace hornpre
