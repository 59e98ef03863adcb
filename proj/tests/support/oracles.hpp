// Copyright (c) hornpre contributors.
// SPDX-License-Identifier: Apache-2.0
//
// Test-only oracles, independent of the solver path they check: brute-force
// grid evaluation of formulas and deterministic random formula generation.

#pragma once

#include <functional>
#include <map>
#include <optional>
#include <random>
#include <vector>

#include "hornpre/formula.hpp"
#include "hornpre/formula_ops.hpp"

namespace hornpre::testing {

using Point = std::map<Var, Rat>;

// Enumerates all integer points of [lo,hi]^|vars|.
inline void for_each_grid_point(const std::vector<Var>& vars, int lo, int hi,
                                const std::function<void(const Point&)>& fn) {
  Point point;
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == vars.size()) {
      fn(point);
      return;
    }
    for (int v = lo; v <= hi; ++v) {
      point[vars[i]] = Rat(v);
      rec(i + 1);
    }
  };
  rec(0);
}

inline bool grid_satisfiable(const Conjunction& c, const std::vector<Var>& vars, int lo,
                             int hi) {
  bool found = false;
  for_each_grid_point(vars, lo, hi, [&](const Point& p) {
    if (!found && c.holds_at(p)) found = true;
  });
  return found;
}

inline bool holds_at(const DnfFormula& f, const Point& p) {
  for (const Conjunction& d : f.disjuncts())
    if (d.holds_at(p)) return true;
  return false;
}

// First grid point where f holds and g does not.
inline std::optional<Point> grid_entailment_witness(const DnfFormula& f, const DnfFormula& g,
                                                    const std::vector<Var>& vars, int lo,
                                                    int hi) {
  std::optional<Point> witness;
  for_each_grid_point(vars, lo, hi, [&](const Point& p) {
    if (!witness && holds_at(f, p) && !holds_at(g, p)) witness = p;
  });
  return witness;
}

class Rng {
 public:
  explicit Rng(unsigned seed) : gen_(seed) {}

  int uniform(int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(gen_);
  }

  Constraint constraint(const std::vector<Var>& vars) {
    LinTerm t;
    bool nonzero = false;
    for (Var v : vars) {
      if (uniform(0, 2) == 0) continue;
      int c = uniform(-5, 5);
      if (c == 0) continue;
      t.add(v, Rat(c));
      nonzero = true;
    }
    if (!nonzero) t.add(vars[static_cast<std::size_t>(uniform(0, static_cast<int>(vars.size()) - 1))], Rat(uniform(1, 5)));
    t += LinTerm::constant(Rat(uniform(-5, 5)));
    int r = uniform(0, 9);
    Rel rel = r < 5 ? Rel::leq : (r < 8 ? Rel::lt : Rel::eq);
    return Constraint(std::move(t), rel);
  }

  Conjunction conjunction(const std::vector<Var>& vars, int max_rows) {
    std::vector<Constraint> rows;
    int n = uniform(1, max_rows);
    for (int i = 0; i < n; ++i) rows.push_back(constraint(vars));
    return Conjunction(std::move(rows));
  }

  DnfFormula formula(const std::vector<Var>& vars, int max_disjuncts, int max_rows) {
    std::vector<Conjunction> ds;
    int n = uniform(1, max_disjuncts);
    for (int i = 0; i < n; ++i) ds.push_back(conjunction(vars, max_rows));
    return DnfFormula(vars, std::move(ds));
  }

 private:
  std::mt19937 gen_;
};

inline std::vector<Var> test_vars(std::initializer_list<const char*> names) {
  std::vector<Var> vs;
  for (const char* n : names) vs.push_back(VarPool::intern(n));
  return vs;
}

}  // namespace hornpre::testing
