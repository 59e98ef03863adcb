// Copyright (c) hornpre contributors.
// SPDX-License-Identifier: Apache-2.0

#include "hornpre/fm.hpp"

#include <algorithm>
#include <cstddef>
#include <limits>
#include <vector>

namespace hornpre {

namespace {

// Rebuild through Conjunction to dedupe, drop tautologies and keep only the
// tightest parallel bounds between elimination rounds.
std::vector<Constraint> compacted(std::vector<Constraint> rows) {
  return Conjunction(std::move(rows)).constraints();
}

bool has_contradiction(const std::vector<Constraint>& rows) {
  return std::any_of(rows.begin(), rows.end(),
                     [](const Constraint& c) { return c.is_contradiction(); });
}

// Eliminates x from rows. Returns false when a contradiction row appears.
bool eliminate(std::vector<Constraint>& rows, Var x) {
  // Prefer substitution through an equality.
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const Constraint& e = rows[i];
    if (e.rel() != Rel::eq) continue;
    Rat cx = e.term().coeff(x);
    if (cx == 0) continue;
    // x = -(term - cx*x) / cx
    LinTerm rest = e.term();
    rest.add(x, -cx);
    LinTerm repl = -rest * (Rat(1) / cx);
    std::vector<Constraint> next;
    next.reserve(rows.size() - 1);
    for (std::size_t j = 0; j < rows.size(); ++j) {
      if (j == i) continue;
      next.emplace_back(rows[j].term().substituted(x, repl), rows[j].rel());
    }
    rows = compacted(std::move(next));
    return !has_contradiction(rows);
  }

  std::vector<Constraint> lowers, uppers, rest;
  for (const Constraint& c : rows) {
    Rat cx = c.term().coeff(x);
    if (cx == 0)
      rest.push_back(c);
    else if (cx > 0)
      uppers.push_back(c);
    else
      lowers.push_back(c);
  }
  for (const Constraint& lo : lowers) {
    for (const Constraint& up : uppers) {
      // Positive multipliers cancel x; strict iff either parent strict.
      LinTerm t = up.term() * (-lo.term().coeff(x)) + lo.term() * up.term().coeff(x);
      Rel rel = (lo.rel() == Rel::lt || up.rel() == Rel::lt) ? Rel::lt : Rel::leq;
      rest.emplace_back(std::move(t), rel);
    }
  }
  rows = compacted(std::move(rest));
  return !has_contradiction(rows);
}

// Cheapest-variable-first ordering: substitution sites are free, otherwise
// minimize the number of produced rows.
Var pick_var(const std::vector<Constraint>& rows, const std::set<Var>& candidates) {
  Var best{};
  long best_cost = std::numeric_limits<long>::max();
  bool found = false;
  for (Var v : candidates) {
    long lowers = 0, uppers = 0;
    bool in_eq = false, occurs = false;
    for (const Constraint& c : rows) {
      Rat cx = c.term().coeff(v);
      if (cx == 0) continue;
      occurs = true;
      if (c.rel() == Rel::eq)
        in_eq = true;
      else if (cx > 0)
        ++uppers;
      else
        ++lowers;
    }
    if (!occurs) continue;
    long cost = in_eq ? -1 : lowers * uppers - lowers - uppers;
    if (!found || cost < best_cost) {
      best = v;
      best_cost = cost;
      found = true;
    }
  }
  return found ? best : Var{std::numeric_limits<std::uint32_t>::max()};
}

constexpr Var kNoVar{std::numeric_limits<std::uint32_t>::max()};

}  // namespace

bool is_sat(const Conjunction& c, Theory theory) {
  Conjunction n = normalize_for(c, theory);
  if (n.trivially_false()) return false;
  std::vector<Constraint> rows = n.constraints();
  std::set<Var> vars = n.vars();
  while (true) {
    Var v = pick_var(rows, vars);
    if (v == kNoVar) break;
    vars.erase(v);
    if (!eliminate(rows, v)) return false;
  }
  return !has_contradiction(rows);
}

Conjunction project(const Conjunction& c, const std::set<Var>& keep) {
  std::vector<Constraint> rows = c.constraints();
  std::set<Var> elim;
  for (Var v : c.vars())
    if (!keep.count(v)) elim.insert(v);
  while (!elim.empty()) {
    Var v = pick_var(rows, elim);
    if (v == kNoVar) break;  // remaining are absent from rows
    elim.erase(v);
    if (!eliminate(rows, v)) return Conjunction::contradiction();
  }
  return Conjunction(std::move(rows));
}

namespace {

Int ceil_div(const Int& k, const Int& g) {
  Int q = k / g;
  if (k % g > 0) ++q;
  return q;
}

// Canonical rows carry coprime integer vectors; coefficient extraction is
// therefore exact.
Int int_of(const Rat& r) { return numerator(r); }

}  // namespace

Conjunction integer_tighten(const Conjunction& c) {
  std::vector<Constraint> out;
  out.reserve(c.size());
  for (const Constraint& row : c.constraints()) {
    bool integral = denominator(row.term().constant()) == 1 &&
                    std::all_of(row.term().coeffs().begin(), row.term().coeffs().end(),
                                [](const auto& p) { return denominator(p.second) == 1; });
    if (!integral || row.term().is_constant()) {
      out.push_back(row);
      continue;
    }
    LinTerm t = row.term();
    Rel rel = row.rel();
    if (rel == Rel::lt) {
      t += LinTerm::constant(Rat(1));
      rel = Rel::leq;
    }
    Int g = 0;
    for (const auto& [v, coeff] : t.coeffs()) g = gcd(g, abs(int_of(coeff)));
    if (rel == Rel::leq && g > 1) {
      Int k = int_of(t.constant());
      LinTerm rounded;
      for (const auto& [v, coeff] : t.coeffs()) rounded.add(v, Rat(int_of(coeff) / g));
      rounded += LinTerm::constant(Rat(ceil_div(k, g)));
      t = std::move(rounded);
    } else if (rel == Rel::eq && g > 1 && int_of(t.constant()) % g != 0) {
      out.push_back(Constraint(LinTerm::constant(Rat(1)), Rel::leq));
      continue;
    }
    out.emplace_back(std::move(t), rel);
  }
  return Conjunction(std::move(out));
}

Conjunction normalize_for(const Conjunction& c, Theory theory) {
  return theory == Theory::integer ? integer_tighten(c) : c;
}

}  // namespace hornpre
