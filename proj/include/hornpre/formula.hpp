// Copyright (c) hornpre contributors.
// SPDX-License-Identifier: Apache-2.0
//
// Exact linear-arithmetic formulas over rationals: variables, linear terms,
// atomic constraints in canonical form, conjunctions, and DNF formulas.
// These are the carriers of every precondition computed by the engine.

#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace hornpre {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// The theory constraints are interpreted in. Satisfiability and entailment
// are decided over the rationals; under Theory::integer every conjunction is
// integer-tightened first, which recovers integral strict/non-strict
// identities such as A<1 == A=<0.
enum class Theory { rational, integer };

struct Var {
  std::uint32_t id = 0;
  friend constexpr auto operator<=>(const Var&, const Var&) = default;
};

// Global interner. Identity is the id; the total order used for canonical
// printing is interning order (first occurrence wins).
class VarPool {
 public:
  static Var intern(std::string_view name);
  // A name the textual grammars cannot produce, so generated variables never
  // collide with parsed ones.
  static Var fresh(std::string_view stem);
  static const std::string& name(Var v);
};

using VarMap = std::map<Var, Var>;

// Sum of rational-coefficient variable terms plus a rational constant.
// Invariant: no zero coefficients stored.
class LinTerm {
 public:
  LinTerm() = default;
  static LinTerm variable(Var v);
  static LinTerm constant(Rat k);

  LinTerm& operator+=(const LinTerm& o);
  LinTerm& operator-=(const LinTerm& o);
  LinTerm& operator*=(const Rat& k);
  friend LinTerm operator+(LinTerm a, const LinTerm& b) { return a += b; }
  friend LinTerm operator-(LinTerm a, const LinTerm& b) { return a -= b; }
  friend LinTerm operator*(LinTerm a, const Rat& k) { return a *= k; }
  LinTerm operator-() const;

  const std::map<Var, Rat>& coeffs() const { return coeffs_; }
  const Rat& constant() const { return constant_; }
  Rat coeff(Var v) const;
  bool is_constant() const { return coeffs_.empty(); }

  void add(Var v, const Rat& c);
  LinTerm renamed(const VarMap& m) const;
  // Replaces v by the given term (v must not occur in it).
  LinTerm substituted(Var v, const LinTerm& t) const;
  Rat evaluate(const std::map<Var, Rat>& point) const;

  static int cmp(const LinTerm& a, const LinTerm& b);
  friend bool operator==(const LinTerm& a, const LinTerm& b) { return cmp(a, b) == 0; }
  friend bool operator<(const LinTerm& a, const LinTerm& b) { return cmp(a, b) < 0; }

 private:
  std::map<Var, Rat> coeffs_;
  Rat constant_;
};

enum class Rel { leq, lt, eq };  // term =< 0, term < 0, term = 0

// Atomic constraint `term rel 0` in canonical form: coefficients and constant
// scaled to a coprime integer vector; equalities additionally sign-normalized
// so the leading variable's coefficient is positive.
class Constraint {
 public:
  Constraint(LinTerm term, Rel rel);

  const LinTerm& term() const { return term_; }
  Rel rel() const { return rel_; }

  bool is_tautology() const;      // constant-only and true
  bool is_contradiction() const;  // constant-only and false
  bool holds_at(const std::map<Var, Rat>& point) const;

  Constraint renamed(const VarMap& m) const;
  // Non-strict relaxation: term<0 becomes term=<0; others unchanged.
  Constraint weakened() const;

  static int cmp(const Constraint& a, const Constraint& b);
  friend bool operator==(const Constraint& a, const Constraint& b) { return cmp(a, b) == 0; }
  friend bool operator!=(const Constraint& a, const Constraint& b) { return cmp(a, b) != 0; }
  friend bool operator<(const Constraint& a, const Constraint& b) { return cmp(a, b) < 0; }

 private:
  LinTerm term_;
  Rel rel_;
};

// Finite set of constraints, order-independent. Empty set is true.
// Canonicalization drops tautologies, merges t=<0 with -t=<0 into t=0, and
// keeps only the tightest of parallel bounds with identical integer vectors.
class Conjunction {
 public:
  Conjunction() = default;
  Conjunction(std::initializer_list<Constraint> cs);
  explicit Conjunction(std::vector<Constraint> cs);

  static Conjunction top() { return Conjunction(); }
  // A canonical unsatisfiable conjunction {1 =< 0}.
  static Conjunction contradiction();

  const std::vector<Constraint>& constraints() const { return cs_; }
  bool is_top() const { return cs_.empty(); }
  // Syntactic check only: a constant row is false.
  bool trivially_false() const;
  std::size_t size() const { return cs_.size(); }

  void add(Constraint c);
  void add_all(const Conjunction& o);
  friend Conjunction operator&(Conjunction a, const Conjunction& b) {
    a.add_all(b);
    return a;
  }

  std::set<Var> vars() const;
  Conjunction renamed(const VarMap& m) const;
  bool holds_at(const std::map<Var, Rat>& point) const;

  static int cmp(const Conjunction& a, const Conjunction& b);
  friend bool operator==(const Conjunction& a, const Conjunction& b) { return cmp(a, b) == 0; }
  friend bool operator!=(const Conjunction& a, const Conjunction& b) { return cmp(a, b) != 0; }
  friend bool operator<(const Conjunction& a, const Conjunction& b) { return cmp(a, b) < 0; }

 private:
  void canonicalize();
  std::vector<Constraint> cs_;
};

// Disjunction of conjunctions over an explicit variable scope.
// No disjuncts is false; a top disjunct makes it true.
class DnfFormula {
 public:
  DnfFormula() = default;
  explicit DnfFormula(std::vector<Var> scope) : scope_(std::move(scope)) {}
  DnfFormula(std::vector<Var> scope, std::vector<Conjunction> disjuncts);

  static DnfFormula top(std::vector<Var> scope);
  static DnfFormula bottom(std::vector<Var> scope) {
    return DnfFormula(std::move(scope));
  }

  const std::vector<Conjunction>& disjuncts() const { return ds_; }
  const std::vector<Var>& scope() const { return scope_; }

  bool is_false() const { return ds_.empty(); }
  // Syntactic: some disjunct is the empty conjunction.
  bool is_literally_true() const;

  void add_disjunct(Conjunction c);
  void set_scope(std::vector<Var> scope) { scope_ = std::move(scope); }
  // Union of scopes, left operand's order first.
  static std::vector<Var> merged_scope(const std::vector<Var>& a,
                                       const std::vector<Var>& b);

  friend bool operator==(const DnfFormula& a, const DnfFormula& b) {
    return a.scope_ == b.scope_ && a.ds_ == b.ds_;
  }

 private:
  std::vector<Conjunction> ds_;
  std::vector<Var> scope_;
};

}  // namespace hornpre
