// Copyright (c) hornpre contributors.
// SPDX-License-Identifier: Apache-2.0

#include "hornpre/formula.hpp"

#include <algorithm>
#include <cassert>
#include <mutex>
#include <stdexcept>
#include <unordered_map>

namespace hornpre {

namespace {

struct PoolState {
  std::mutex mu;
  std::unordered_map<std::string, std::uint32_t> by_name;
  std::vector<std::string> names;
  std::uint64_t fresh_counter = 0;
};

PoolState& pool() {
  static PoolState s;
  return s;
}

int cmp_rat(const Rat& a, const Rat& b) {
  if (a < b) return -1;
  if (b < a) return 1;
  return 0;
}

}  // namespace

Var VarPool::intern(std::string_view name) {
  PoolState& s = pool();
  std::scoped_lock lock(s.mu);
  auto it = s.by_name.find(std::string(name));
  if (it != s.by_name.end()) return Var{it->second};
  auto id = static_cast<std::uint32_t>(s.names.size());
  s.names.emplace_back(name);
  s.by_name.emplace(std::string(name), id);
  return Var{id};
}

Var VarPool::fresh(std::string_view stem) {
  PoolState& s = pool();
  std::scoped_lock lock(s.mu);
  std::string name =
      "$" + std::string(stem) + "!" + std::to_string(s.fresh_counter++);
  auto id = static_cast<std::uint32_t>(s.names.size());
  s.names.push_back(name);
  s.by_name.emplace(s.names.back(), id);
  return Var{id};
}

const std::string& VarPool::name(Var v) {
  PoolState& s = pool();
  std::scoped_lock lock(s.mu);
  assert(v.id < s.names.size());
  return s.names[v.id];
}

LinTerm LinTerm::variable(Var v) {
  LinTerm t;
  t.coeffs_.emplace(v, Rat(1));
  return t;
}

LinTerm LinTerm::constant(Rat k) {
  LinTerm t;
  t.constant_ = std::move(k);
  return t;
}

void LinTerm::add(Var v, const Rat& c) {
  if (c == 0) return;
  auto [it, inserted] = coeffs_.emplace(v, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) coeffs_.erase(it);
  }
}

LinTerm& LinTerm::operator+=(const LinTerm& o) {
  for (const auto& [v, c] : o.coeffs_) add(v, c);
  constant_ += o.constant_;
  return *this;
}

LinTerm& LinTerm::operator-=(const LinTerm& o) {
  for (const auto& [v, c] : o.coeffs_) add(v, -c);
  constant_ -= o.constant_;
  return *this;
}

LinTerm& LinTerm::operator*=(const Rat& k) {
  if (k == 0) {
    coeffs_.clear();
    constant_ = 0;
    return *this;
  }
  for (auto& [v, c] : coeffs_) c *= k;
  constant_ *= k;
  return *this;
}

LinTerm LinTerm::operator-() const {
  LinTerm t(*this);
  t *= Rat(-1);
  return t;
}

Rat LinTerm::coeff(Var v) const {
  auto it = coeffs_.find(v);
  return it == coeffs_.end() ? Rat(0) : it->second;
}

LinTerm LinTerm::renamed(const VarMap& m) const {
  LinTerm t;
  t.constant_ = constant_;
  for (const auto& [v, c] : coeffs_) {
    auto it = m.find(v);
    t.add(it == m.end() ? v : it->second, c);
  }
  return t;
}

LinTerm LinTerm::substituted(Var v, const LinTerm& repl) const {
  auto it = coeffs_.find(v);
  if (it == coeffs_.end()) return *this;
  Rat c = it->second;
  LinTerm t(*this);
  t.coeffs_.erase(v);
  LinTerm scaled = repl;
  scaled *= c;
  t += scaled;
  return t;
}

Rat LinTerm::evaluate(const std::map<Var, Rat>& point) const {
  Rat r = constant_;
  for (const auto& [v, c] : coeffs_) {
    auto it = point.find(v);
    if (it == point.end())
      throw std::invalid_argument("evaluate: unbound variable " + VarPool::name(v));
    r += c * it->second;
  }
  return r;
}

int LinTerm::cmp(const LinTerm& a, const LinTerm& b) {
  auto ia = a.coeffs_.begin(), ib = b.coeffs_.begin();
  for (; ia != a.coeffs_.end() && ib != b.coeffs_.end(); ++ia, ++ib) {
    if (ia->first != ib->first) return ia->first < ib->first ? -1 : 1;
    if (int c = cmp_rat(ia->second, ib->second)) return c;
  }
  if (ia != a.coeffs_.end()) return 1;
  if (ib != b.coeffs_.end()) return -1;
  return cmp_rat(a.constant_, b.constant_);
}

namespace {

// Scales term so all coefficients and the constant form a coprime integer
// vector; preserves direction (multiplier is positive).
void integralize(LinTerm& t) {
  Int den_lcm = 1;
  for (const auto& [v, c] : t.coeffs()) den_lcm = lcm(den_lcm, denominator(c));
  den_lcm = lcm(den_lcm, denominator(t.constant()));
  Int g = 0;
  auto acc = [&](const Rat& c) {
    Int n = numerator(c) * (den_lcm / denominator(c));
    g = gcd(g, abs(n));
  };
  for (const auto& [v, c] : t.coeffs()) acc(c);
  acc(t.constant());
  if (g == 0) return;  // zero term
  Rat scale(den_lcm, g);
  t *= scale;
}

}  // namespace

Constraint::Constraint(LinTerm term, Rel rel) : term_(std::move(term)), rel_(rel) {
  integralize(term_);
  if (rel_ == Rel::eq && !term_.coeffs().empty()) {
    if (term_.coeffs().begin()->second < 0) term_ *= Rat(-1);
  }
  if (term_.coeffs().empty()) {
    // Normalize constant rows to one of -1/0/1 rel 0.
    const Rat& k = term_.constant();
    if (k > 0)
      term_ = LinTerm::constant(Rat(1));
    else if (k < 0)
      term_ = LinTerm::constant(Rat(-1));
  }
}

bool Constraint::is_tautology() const {
  if (!term_.is_constant()) return false;
  const Rat& k = term_.constant();
  switch (rel_) {
    case Rel::leq: return k <= 0;
    case Rel::lt: return k < 0;
    case Rel::eq: return k == 0;
  }
  return false;
}

bool Constraint::is_contradiction() const {
  return term_.is_constant() && !is_tautology();
}

bool Constraint::holds_at(const std::map<Var, Rat>& point) const {
  Rat v = term_.evaluate(point);
  switch (rel_) {
    case Rel::leq: return v <= 0;
    case Rel::lt: return v < 0;
    case Rel::eq: return v == 0;
  }
  return false;
}

Constraint Constraint::renamed(const VarMap& m) const {
  return Constraint(term_.renamed(m), rel_);
}

Constraint Constraint::weakened() const {
  if (rel_ != Rel::lt) return *this;
  return Constraint(term_, Rel::leq);
}

int Constraint::cmp(const Constraint& a, const Constraint& b) {
  if (int c = LinTerm::cmp(a.term_, b.term_)) return c;
  if (a.rel_ != b.rel_) return static_cast<int>(a.rel_) < static_cast<int>(b.rel_) ? -1 : 1;
  return 0;
}

Conjunction::Conjunction(std::initializer_list<Constraint> cs) : cs_(cs) {
  canonicalize();
}

Conjunction::Conjunction(std::vector<Constraint> cs) : cs_(std::move(cs)) {
  canonicalize();
}

Conjunction Conjunction::contradiction() {
  return Conjunction{Constraint(LinTerm::constant(Rat(1)), Rel::leq)};
}

bool Conjunction::trivially_false() const {
  return std::any_of(cs_.begin(), cs_.end(),
                     [](const Constraint& c) { return c.is_contradiction(); });
}

void Conjunction::add(Constraint c) {
  cs_.push_back(std::move(c));
  canonicalize();
}

void Conjunction::add_all(const Conjunction& o) {
  cs_.insert(cs_.end(), o.cs_.begin(), o.cs_.end());
  canonicalize();
}

std::set<Var> Conjunction::vars() const {
  std::set<Var> vs;
  for (const auto& c : cs_)
    for (const auto& [v, k] : c.term().coeffs()) vs.insert(v);
  return vs;
}

Conjunction Conjunction::renamed(const VarMap& m) const {
  std::vector<Constraint> out;
  out.reserve(cs_.size());
  for (const auto& c : cs_) out.push_back(c.renamed(m));
  return Conjunction(std::move(out));
}

bool Conjunction::holds_at(const std::map<Var, Rat>& point) const {
  return std::all_of(cs_.begin(), cs_.end(),
                     [&](const Constraint& c) { return c.holds_at(point); });
}

void Conjunction::canonicalize() {
  std::vector<Constraint> kept;
  kept.reserve(cs_.size());
  for (auto& c : cs_) {
    if (c.is_tautology()) continue;
    kept.push_back(std::move(c));
  }
  std::sort(kept.begin(), kept.end());
  kept.erase(std::unique(kept.begin(), kept.end()), kept.end());

  // Keep only the tightest of bounds sharing one coefficient vector, and
  // merge t=<0 with -t=<0 into t=0.
  std::vector<Constraint> out;
  for (const Constraint& c : kept) {
    if (c.rel() == Rel::eq) {
      out.push_back(c);
      continue;
    }
    bool subsumed = false;
    for (const Constraint& d : kept) {
      if (&d == &c || d.rel() == Rel::eq) continue;
      if (!(d.term().coeffs() == c.term().coeffs())) continue;
      const Rat& kc = c.term().constant();
      const Rat& kd = d.term().constant();
      if (kd > kc || (kd == kc && d.rel() == Rel::lt && c.rel() == Rel::leq)) {
        subsumed = true;
        break;
      }
    }
    if (subsumed) continue;
    if (c.rel() == Rel::leq) {
      Constraint mirror(-c.term(), Rel::leq);
      if (std::binary_search(kept.begin(), kept.end(), mirror)) {
        Constraint eq(c.term(), Rel::eq);
        if (std::find(out.begin(), out.end(), eq) == out.end()) out.push_back(eq);
        continue;
      }
    }
    out.push_back(c);
  }

  // Drop inequality rows decided by an equality on the same hyperplane.
  std::vector<Constraint> fin;
  for (const Constraint& c : out) {
    if (c.rel() != Rel::eq) {
      bool dup = false;
      for (const Constraint& d : out) {
        if (d.rel() != Rel::eq) continue;
        bool same = d.term().coeffs() == c.term().coeffs();
        bool opposite = !same && d.term().coeffs() == (-c.term()).coeffs();
        if (!same && !opposite) continue;
        // Under d, c's term evaluates to this residue.
        Rat residue = same ? Rat(c.term().constant() - d.term().constant())
                           : Rat(c.term().constant() + d.term().constant());
        if ((c.rel() == Rel::leq && residue <= 0) ||
            (c.rel() == Rel::lt && residue < 0)) {
          dup = true;
          break;
        }
      }
      if (dup) continue;
    }
    fin.push_back(c);
  }
  std::sort(fin.begin(), fin.end());
  fin.erase(std::unique(fin.begin(), fin.end()), fin.end());
  cs_ = std::move(fin);
}

int Conjunction::cmp(const Conjunction& a, const Conjunction& b) {
  if (a.cs_.size() != b.cs_.size()) return a.cs_.size() < b.cs_.size() ? -1 : 1;
  for (std::size_t i = 0; i < a.cs_.size(); ++i)
    if (int c = Constraint::cmp(a.cs_[i], b.cs_[i])) return c;
  return 0;
}

DnfFormula::DnfFormula(std::vector<Var> scope, std::vector<Conjunction> disjuncts)
    : ds_(std::move(disjuncts)), scope_(std::move(scope)) {
  std::sort(ds_.begin(), ds_.end());
  ds_.erase(std::unique(ds_.begin(), ds_.end()), ds_.end());
}

DnfFormula DnfFormula::top(std::vector<Var> scope) {
  DnfFormula f(std::move(scope));
  f.ds_.push_back(Conjunction::top());
  return f;
}

bool DnfFormula::is_literally_true() const {
  return std::any_of(ds_.begin(), ds_.end(),
                     [](const Conjunction& c) { return c.is_top(); });
}

void DnfFormula::add_disjunct(Conjunction c) {
  ds_.push_back(std::move(c));
  std::sort(ds_.begin(), ds_.end());
  ds_.erase(std::unique(ds_.begin(), ds_.end()), ds_.end());
}

std::vector<Var> DnfFormula::merged_scope(const std::vector<Var>& a,
                                          const std::vector<Var>& b) {
  std::vector<Var> out = a;
  for (Var v : b)
    if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
  return out;
}

}  // namespace hornpre
