// Copyright (c) hornpre contributors.
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <sstream>

#include "hornpre/chc.hpp"
#include "hornpre/formula_ops.hpp"

using namespace hornpre;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const char* kRunningExample = R"(
% while (a >= 1) { a = a - 1; b = b - 1; }  assert(b >= 0);
init(A,B).
wh(A,B) :- init(A,B).
wh(A,B) :- A0 >= 1, A = A0 - 1, B = B0 - 1, wh(A0,B0).
unsafe :- A < 1, B < 0, wh(A,B).
safe :- A < 1, B >= 0, wh(A,B).
)";

}  // namespace

TEST_CASE("the running example parses into five clauses") {
  Program p = parse_program(kRunningExample);
  REQUIRE(p.clauses.size() == 5);
  CHECK(p.clauses[0].id == "c1");
  CHECK(p.clauses[0].head.pred == "init");
  CHECK(p.clauses[0].constr.is_top());
  CHECK(p.clauses[0].is_fact());
  CHECK(p.clauses[2].body.size() == 1);
  CHECK(p.clauses[3].head.pred == "unsafe");
  CHECK(p.scope.size() == 2);
  CHECK(initial_clauses(p).size() == 1);
}

TEST_CASE("empty input gives an empty program") {
  Program p = parse_program("");
  CHECK(p.clauses.empty());
  CHECK(initial_clauses(p).empty());
}

TEST_CASE("repeated head variables are pushed into the constraint") {
  Program p = parse_program("p(A,A) :- A >= 0.");
  REQUIRE(p.clauses.size() == 1);
  const Clause& c = p.clauses[0];
  REQUIRE(c.head.args.size() == 2);
  CHECK(c.head.args[0] != c.head.args[1]);
  // A = B and A >= 0, up to renaming.
  Program q = parse_program("p(A,B) :- A = B, A >= 0.");
  CHECK(structurally_equal(p, q));
}

TEST_CASE("term arguments are flattened") {
  Program p = parse_program("p(A+B, B+1) :- p(A,B).");
  REQUIRE(p.clauses.size() == 1);
  const Clause& c = p.clauses[0];
  CHECK(c.head.args.size() == 2);
  CHECK(c.constr.size() == 2);
  Program q = parse_program("p(X,Y) :- X = A+B, Y = B+1, p(A,B).");
  CHECK(structurally_equal(p, q));
}

TEST_CASE("normalize is idempotent") {
  Program p = parse_program(kRunningExample);
  Program again = normalize(to_raw(p));
  CHECK(structurally_equal(p, again));
}

TEST_CASE("parse errors carry positions") {
  try {
    parse_program("p(A) :- q(A)");
    FAIL("expected a parse error");
  } catch (const ChcParseError& e) {
    CHECK(e.line() == 1);
    CHECK(std::string(e.what()).find("expected") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_program("p(A*A)."), ChcParseError);
  CHECK_THROWS_AS(parse_program("p(A) :- p(A,B)."), ChcParseError);
  CHECK_THROWS_AS(parse_program("p(A) ?- q."), ChcParseError);
}

TEST_CASE("directives override the distinguished names") {
  Program p = parse_program(
      ":- init_pred(start). :- safe_pred(ok). :- unsafe_pred(err). :- theory(rational).\n"
      "start(X).\n"
      "ok :- X >= 0, start(X).\n"
      "err :- X < 0, start(X).\n");
  CHECK(p.init_pred == "start");
  CHECK(p.safe_pred == "ok");
  CHECK(p.unsafe_pred == "err");
  REQUIRE(p.declared_theory.has_value());
  CHECK(*p.declared_theory == Theory::rational);
  CHECK(initial_clauses(p).size() == 1);
  CHECK(check_wellformed(p).pass);
}

TEST_CASE("repeated init_pred directives tag versions") {
  Program p = parse_program(
      ":- init_pred(init_1). :- init_pred(init_2).\n"
      "init_1(A,B) :- A >= 1.\n"
      "init_2(A,B) :- A =< 0, B < 0.\n"
      "unsafe :- B < 0, init_1(A,B).\n");
  CHECK(p.init_pred == "init_1");
  CHECK(p.init_preds.size() == 2);
  CHECK(initial_clauses(p).size() == 2);
}

TEST_CASE("well-formedness accepts the running example") {
  Program p = parse_program(kRunningExample);
  CHECK(check_wellformed(p).pass);
}

TEST_CASE("a non-initial reachable fact fails well-formedness") {
  Program p = parse_program(
      "unsafe :- B > A, p(A,B).\n"
      "p(A+B, B+1) :- p(A,B).\n"
      "p(A,B) :- A = 1, B = 0.\n");
  WellformedReport r = check_wellformed(p);
  CHECK(!r.pass);
  REQUIRE(!r.issues.empty());
  CHECK(r.issues[0].find("'p'") != std::string::npos);
}

TEST_CASE("an unreachable non-initial fact passes") {
  Program p = parse_program(
      "init(X).\n"
      "safe :- X >= 0, init(X).\n"
      "orphan(Y) :- Y = 2.\n");
  CHECK(check_wellformed(p).pass);
}

TEST_CASE("printing is canonical and parse-stable") {
  Program p = parse_program(kRunningExample);
  std::string once = print_program(p);
  Program q = parse_program(once);
  CHECK(structurally_equal(p, q));
  CHECK(print_program(q) == once);
}

TEST_CASE("corpus programs round-trip through print and parse") {
  for (const char* name :
       {"running-example.chc", "nonterm.chc", "split.chc", "no-unsafe.chc"}) {
    Program p = parse_program(read_file(std::string(HORNPRE_CORPUS_DIR) + "/" + name));
    Program q = parse_program(print_program(p));
    CHECK(structurally_equal(p, q));
    CHECK(print_program(q) == print_program(p));
  }
}
