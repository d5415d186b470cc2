/*
 Copyright 2026 The stlpi Authors

 Licensed under the Apache License, Version 2.0 (the "License");
 you may not use this file except in compliance with the License.
 You may obtain a copy of the License at

      https://www.apache.org/licenses/LICENSE-2.0

 Unless required by applicable law or agreed to in writing, software
 distributed under the License is distributed on an "AS IS" BASIS,
 WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 See the License for the specific language governing permissions and
 limitations under the License.
*/
#include <doctest.h>

#include <random>
#include <stdexcept>

#include "stlpi/formula.hpp"
#include "stlpi/parser.hpp"
#include "support/random_formula.hpp"

using stlpi::Formula;
using stlpi::Interval;
using stlpi::ParseError;
using stlpi::parse_formula;
using stlpi::Predicate;

namespace {

Eigen::VectorXd coeffs1(double c) {
  return (Eigen::VectorXd(1) << c).finished();
}

}  // namespace

TEST_CASE("interval constructor validates its bounds") {
  CHECK_THROWS_AS(Interval(-1, 0), std::invalid_argument);
  CHECK_THROWS_AS(Interval(2, 1), std::invalid_argument);
  const Interval window(1, 3);
  CHECK(window.kmin == 1);
  CHECK(window.kmax == 3);
  CHECK(window == Interval(1, 3));
  CHECK_FALSE(window == Interval(1, 4));
}

TEST_CASE("factories build the expected node kinds") {
  const Formula t = Formula::verum();
  CHECK(t.kind() == Formula::Kind::kTrue);

  const Formula p = Formula::predicate("gate", Predicate::affine(coeffs1(-1.0), 1.0));
  CHECK(p.kind() == Formula::Kind::kPredicate);
  CHECK(p.predicate_name() == "gate");

  const Formula n = Formula::negation(p);
  CHECK(n.kind() == Formula::Kind::kNot);
  CHECK(n.children().size() == 1);

  const Formula c = Formula::conjunction({p, t, n});
  CHECK(c.kind() == Formula::Kind::kAnd);
  CHECK(c.children().size() == 3);

  const Formula d = Formula::disjunction({p, t});
  CHECK(d.kind() == Formula::Kind::kOr);

  const Formula f = Formula::eventually(Interval(0, 3), p);
  CHECK(f.kind() == Formula::Kind::kEventually);
  CHECK(f.window() == Interval(0, 3));

  const Formula g = Formula::globally(Interval(1, 2), p);
  CHECK(g.kind() == Formula::Kind::kGlobally);

  const Formula u = Formula::until(Interval(0, 4), p, t);
  CHECK(u.kind() == Formula::Kind::kUntil);
  CHECK(u.children().size() == 2);
}

TEST_CASE("single-operand connectives collapse to the operand") {
  const Formula p = Formula::predicate("p", Predicate::affine(coeffs1(1.0), 0.0));
  CHECK(Formula::conjunction({p}).kind() == Formula::Kind::kPredicate);
  CHECK(Formula::disjunction({p}).kind() == Formula::Kind::kPredicate);
  CHECK_THROWS_AS(Formula::conjunction({}), std::invalid_argument);
  CHECK_THROWS_AS(Formula::disjunction({}), std::invalid_argument);
}

TEST_CASE("predicate construction rejects bad arguments") {
  CHECK_THROWS_AS(Formula::predicate("", Predicate::affine(coeffs1(1.0), 0.0)),
                  std::invalid_argument);
  CHECK_THROWS_AS(Predicate::circle_inside(0.0, 0.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(Predicate::circle_inside(0.0, 0.0, 1.0, -1, 0),
                  std::invalid_argument);
  CHECK_THROWS_AS(Predicate::custom(nullptr), std::invalid_argument);
}

TEST_CASE("one name bound to two definitions is rejected") {
  const Formula a = Formula::predicate("p", Predicate::affine(coeffs1(1.0), 0.0));
  const Formula b = Formula::predicate("p", Predicate::affine(coeffs1(-1.0), 0.0));
  CHECK_THROWS_AS(Formula::conjunction({a, b}), std::invalid_argument);
  CHECK_THROWS_AS(Formula::disjunction({a, b}), std::invalid_argument);
  CHECK_THROWS_AS(Formula::until(Interval(0, 1), a, b), std::invalid_argument);

  // The same definition under the same name is fine, even via a copy.
  const Formula c = Formula::predicate("p", Predicate::affine(coeffs1(1.0), 0.0));
  CHECK_NOTHROW(Formula::conjunction({a, c}));
  // Nested occurrences are found as well.
  CHECK_THROWS_AS(
      Formula::conjunction({a, Formula::eventually(Interval(0, 2), b)}),
      std::invalid_argument);
}

TEST_CASE("same_definition compares built-in predicate parameters") {
  const Predicate a = Predicate::affine(coeffs1(1.0), 0.5);
  const Predicate b = Predicate::affine(coeffs1(1.0), 0.5);
  const Predicate c = Predicate::affine(coeffs1(1.0), 0.25);
  CHECK(same_definition(a, a));
  CHECK(same_definition(a, b));
  CHECK_FALSE(same_definition(a, c));

  const Predicate circle = Predicate::circle_inside(0.0, 0.0, 1.0);
  CHECK(same_definition(circle, Predicate::circle_inside(0.0, 0.0, 1.0)));
  CHECK_FALSE(same_definition(circle, Predicate::circle_inside(0.0, 0.0, 2.0)));
  CHECK_FALSE(same_definition(a, circle));

  // Custom predicates only compare equal to themselves.
  const Predicate f =
      Predicate::custom([](const Eigen::MatrixXd&, int) { return 1.0; });
  const Predicate g =
      Predicate::custom([](const Eigen::MatrixXd&, int) { return 1.0; });
  CHECK(same_definition(f, f));
  CHECK_FALSE(same_definition(f, g));
}

TEST_CASE("parse builds the avoid-then-reach conjunction") {
  stlpi::PredicateTable table;
  table.emplace("in_circle", Predicate::circle_inside(0.0, 0.0, 1.0));
  table.emplace("in_box",
                Predicate::affine((Eigen::VectorXd(2) << 1.0, 0.0).finished(), 3.0));

  const Formula f = parse_formula("G[0,15](!in_circle) & F[0,15](in_box)", table);
  REQUIRE(f.kind() == Formula::Kind::kAnd);
  REQUIRE(f.children().size() == 2);

  const Formula& g = f.children()[0];
  CHECK(g.kind() == Formula::Kind::kGlobally);
  CHECK(g.window() == Interval(0, 15));
  CHECK(g.children()[0].kind() == Formula::Kind::kNot);
  CHECK(g.children()[0].children()[0].predicate_name() == "in_circle");

  const Formula& ev = f.children()[1];
  CHECK(ev.kind() == Formula::Kind::kEventually);
  CHECK(ev.window() == Interval(0, 15));
  CHECK(ev.children()[0].predicate_name() == "in_box");
}

TEST_CASE("parse handles a single atom and the nested gate formula") {
  stlpi::PredicateTable table;
  table.emplace("gate", Predicate::affine(coeffs1(-1.0), 1.0));

  const Formula atom = parse_formula("gate", table);
  CHECK(atom.kind() == Formula::Kind::kPredicate);
  CHECK(atom.predicate_name() == "gate");

  const Formula f = parse_formula("F[0,3](gate & F[1,3](gate))", table);
  REQUIRE(f.kind() == Formula::Kind::kEventually);
  CHECK(f.window() == Interval(0, 3));
  const Formula& body = f.children()[0];
  REQUIRE(body.kind() == Formula::Kind::kAnd);
  REQUIRE(body.children().size() == 2);
  CHECK(body.children()[0].predicate_name() == "gate");
  const Formula& inner = body.children()[1];
  CHECK(inner.kind() == Formula::Kind::kEventually);
  CHECK(inner.window() == Interval(1, 3));
  CHECK(inner.children()[0].predicate_name() == "gate");
}

TEST_CASE("parse precedence: & binds tighter than |, ! tightest") {
  const auto& table = stlpi_test::test_predicates();

  const Formula f = parse_formula("p_first | p_gate & p_diff", table);
  REQUIRE(f.kind() == Formula::Kind::kOr);
  REQUIRE(f.children().size() == 2);
  CHECK(f.children()[0].kind() == Formula::Kind::kPredicate);
  CHECK(f.children()[1].kind() == Formula::Kind::kAnd);

  const Formula g = parse_formula("(p_first | p_gate) & p_diff", table);
  REQUIRE(g.kind() == Formula::Kind::kAnd);
  CHECK(g.children()[0].kind() == Formula::Kind::kOr);

  const Formula n = parse_formula("!p_first & p_gate", table);
  REQUIRE(n.kind() == Formula::Kind::kAnd);
  CHECK(n.children()[0].kind() == Formula::Kind::kNot);

  const Formula nn = parse_formula("!!p_first", table);
  CHECK(nn.kind() == Formula::Kind::kNot);
  CHECK(nn.children()[0].kind() == Formula::Kind::kNot);
}

TEST_CASE("parse builds flat n-ary chains without re-nesting") {
  const auto& table = stlpi_test::test_predicates();

  const Formula c = parse_formula("p_first & p_gate & p_diff & p_second", table);
  REQUIRE(c.kind() == Formula::Kind::kAnd);
  CHECK(c.children().size() == 4);

  const Formula d = parse_formula("p_first | p_gate | p_diff", table);
  REQUIRE(d.kind() == Formula::Kind::kOr);
  CHECK(d.children().size() == 3);

  // Explicit parentheses keep their own node instead of flattening.
  const Formula nested = parse_formula("(p_first & p_gate) & p_diff", table);
  REQUIRE(nested.kind() == Formula::Kind::kAnd);
  REQUIRE(nested.children().size() == 2);
  CHECK(nested.children()[0].kind() == Formula::Kind::kAnd);
}

TEST_CASE("parse accepts until, true, and arbitrary whitespace") {
  const auto& table = stlpi_test::test_predicates();

  const Formula u = parse_formula("U[1,4](p_first, p_gate | true)", table);
  REQUIRE(u.kind() == Formula::Kind::kUntil);
  CHECK(u.window() == Interval(1, 4));
  CHECK(u.children()[0].predicate_name() == "p_first");
  CHECK(u.children()[1].kind() == Formula::Kind::kOr);

  CHECK(parse_formula("true", table).kind() == Formula::Kind::kTrue);
  const Formula spaced =
      parse_formula("  G[ 0 , 2 ] ( p_first &\tp_gate )  ", table);
  CHECK(spaced.kind() == Formula::Kind::kGlobally);
}

TEST_CASE("operator letters fall back to predicate names without a window") {
  stlpi::PredicateTable table;
  table.emplace("F", Predicate::affine(coeffs1(1.0), 0.0));
  const Formula f = parse_formula("F", table);
  CHECK(f.kind() == Formula::Kind::kPredicate);
  CHECK(f.predicate_name() == "F");

  // The window bracket must follow the letter directly to act as an operator.
  CHECK_THROWS_AS(parse_formula("G [0,2](F)", table), ParseError);
}

TEST_CASE("parse errors carry a byte position") {
  const auto& table = stlpi_test::test_predicates();

  CHECK_THROWS_AS(parse_formula("", table), ParseError);
  CHECK_THROWS_AS(parse_formula("p_first &", table), ParseError);
  CHECK_THROWS_AS(parse_formula("G[2,1](p_first)", table), ParseError);
  CHECK_THROWS_AS(parse_formula("G[0,2](p_first", table), ParseError);
  CHECK_THROWS_AS(parse_formula("G[0](p_first)", table), ParseError);
  CHECK_THROWS_AS(parse_formula("U[0,2](p_first)", table), ParseError);
  CHECK_THROWS_AS(parse_formula("p_first p_gate", table), ParseError);
  CHECK_THROWS_AS(parse_formula("F[0,99999999999](p_first)", table), ParseError);

  try {
    parse_formula("p_first & nope", table);
    FAIL("expected a parse error");
  } catch (const ParseError& err) {
    CHECK(err.position() == 10);
    CHECK(std::string(err.what()).find("nope") != std::string::npos);
    CHECK(std::string(err.what()).find("position 10") != std::string::npos);
  }

  try {
    parse_formula("G[3,1](p_first)", table);
    FAIL("expected a parse error");
  } catch (const ParseError& err) {
    CHECK(err.position() == 1);
  }
}

TEST_CASE("to_string prints a form that re-parses to the same tree") {
  const auto& table = stlpi_test::test_predicates();
  const char* samples[] = {
      "p_first",
      "true",
      "!p_first",
      "!(p_first & p_gate)",
      "p_first & p_gate & p_diff",
      "(p_first | p_gate) & p_diff",
      "p_first | p_gate & p_diff",
      "F[0,3](p_first & F[1,3](p_first))",
      "G[0,15](!p_zone) & F[0,15](p_second)",
      "U[2,5](p_first & p_gate, !p_diff | true)",
  };
  for (const char* text : samples) {
    CAPTURE(text);
    const Formula f = parse_formula(text, table);
    const Formula again = parse_formula(f.to_string(), table);
    CHECK(structurally_equal(f, again));
  }

  CHECK(parse_formula("G[0,2](p_first)", table).to_string() ==
        "G[0,2](p_first)");
  CHECK(parse_formula("p_first|p_gate&p_diff", table).to_string() ==
        "p_first | p_gate & p_diff");
}

TEST_CASE("parse-print round trip holds on random formulas") {
  std::mt19937_64 rng(20260815);
  const auto& table = stlpi_test::test_predicates();
  for (int trial = 0; trial < 200; ++trial) {
    const Formula f = stlpi_test::random_formula(rng, 3);
    CAPTURE(f.to_string());
    const Formula again = parse_formula(f.to_string(), table);
    CHECK(structurally_equal(f, again));
    // Printing is stable across the round trip.
    CHECK(f.to_string() == again.to_string());
  }
}

TEST_CASE("structural equality compares shape, windows, and names") {
  const auto& table = stlpi_test::test_predicates();
  const Formula a = parse_formula("F[0,3](p_first & p_gate)", table);
  const Formula b = parse_formula("F[0,3](p_first & p_gate)", table);
  const Formula c = parse_formula("F[0,4](p_first & p_gate)", table);
  const Formula d = parse_formula("F[0,3](p_first & p_diff)", table);
  const Formula e = parse_formula("G[0,3](p_first & p_gate)", table);

  CHECK(structurally_equal(a, a));
  CHECK(structurally_equal(a, b));
  CHECK_FALSE(structurally_equal(a, c));
  CHECK_FALSE(structurally_equal(a, d));
  CHECK_FALSE(structurally_equal(a, e));
  CHECK_FALSE(structurally_equal(a, parse_formula("true", table)));
}
