#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ltlsynth/ltl.hpp"
#include "test_util.hpp"

using namespace ltlsynth;
using namespace ltlsynth::testing;

TEST_CASE("parse_spec: the running example") {
  Specification spec = parse_spec("inputs x; outputs y; formula G (x <-> X y);");
  REQUIRE(spec.env_count() == 1);
  REQUIRE(spec.sys_count() == 1);
  CHECK(spec.env_vars[0].name == "x");
  CHECK(spec.sys_vars[0].name == "y");
  CHECK(spec.sys_vars[0].kind == VarKind::Sys);
  // G expands to false R ..., <-> to the two implications.
  CHECK(spec.formula->op == LtlOp::Release);
  CHECK(spec.formula->lhs->op == LtlOp::False);
}

TEST_CASE("parse_spec: empty inputs section is allowed") {
  Specification spec = parse_spec("inputs; outputs y; formula y;");
  CHECK(spec.env_count() == 0);
  REQUIRE(spec.sys_count() == 1);
  CHECK(spec.formula->op == LtlOp::Prop);
  CHECK(spec.formula->prop == 0);
}

TEST_CASE("parse_spec: missing outputs section") {
  CHECK_THROWS_AS(parse_spec("inputs x; formula x;"), ParseError);
}

TEST_CASE("parse_spec: error cases carry locations") {
  try {
    parse_spec("inputs x;\noutputs y;\nformula q;");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line == 3);
    CHECK(std::string(e.what()).find("undeclared") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_spec("inputs x, x; outputs y; formula x;"),
                  ParseError);
  CHECK_THROWS_AS(parse_spec("inputs x; outputs y; formula (x;"), ParseError);
}

TEST_CASE("parse_spec: comments and precedence") {
  Specification spec = parse_spec(
      "# a comment\n"
      "inputs a, b; outputs c;\n"
      "formula a U b && c;  # right operand binds tighter\n");
  // U binds tighter than &&: (a U b) && c
  CHECK(spec.formula->op == LtlOp::And);
  CHECK(spec.formula->lhs->op == LtlOp::Until);

  Specification spec2 =
      parse_spec("inputs a, b; outputs c; formula a U b U c;");
  // right-associative
  CHECK(spec2.formula->op == LtlOp::Until);
  CHECK(spec2.formula->rhs->op == LtlOp::Until);

  Specification spec3 = parse_spec("inputs a, b; outputs c; formula !a || b -> c;");
  // -> lowest: (!a || b) -> c
  CHECK(spec3.formula->op == LtlOp::Or);  // !(...) || c after sugar expansion
}

TEST_CASE("to_nnf: spec examples") {
  auto a = f_prop(0, "a");
  auto b = f_prop(1, "b");
  // !(a U b) -> (!a) R (!b)
  LtlPtr nnf = to_nnf(f_not(f_until(a, b)));
  REQUIRE(nnf->op == LtlOp::Release);
  CHECK(nnf->lhs->op == LtlOp::Not);
  CHECK(nnf->lhs->lhs->prop == 0);
  CHECK(nnf->rhs->lhs->prop == 1);
  // !!a -> a
  CHECK(structurally_equal(to_nnf(f_not(f_not(a))), a));
  // !X a -> X !a
  LtlPtr nx = to_nnf(f_not(f_next(a)));
  REQUIRE(nx->op == LtlOp::Next);
  CHECK(nx->lhs->op == LtlOp::Not);
}

TEST_CASE("eval_lasso: spec examples") {
  auto x = f_prop(0, "x");
  auto y = f_prop(1, "y");
  // G x on cycle [{x}] holds
  CHECK(eval_lasso(f_always(x), {{}, {0b01}}));
  // F y on all-empty lasso fails
  CHECK_FALSE(eval_lasso(f_eventually(y), {{0}, {0}}));
  // G(x <-> X y) on prefix [{x}], cycle [{x,y}] holds: x always followed by y
  LassoTrace t{{0b01}, {0b11}};
  CHECK(eval_lasso(f_always(f_iff(x, f_next(y))), t));
  CHECK(eval_lasso_reference(f_always(f_iff(x, f_next(y))), t));
}

TEST_CASE("decompose: top-level conjuncts") {
  auto a = f_prop(0, "a");
  auto b = f_prop(1, "b");
  auto c = f_prop(2, "c");
  auto parts = decompose(f_and(f_and(f_always(a), f_eventually(b)), c));
  REQUIRE(parts.size() == 3);
  CHECK(parts[0]->op == LtlOp::Release);
  CHECK(parts[1]->op == LtlOp::Until);
  CHECK(parts[2]->op == LtlOp::Prop);

  CHECK(decompose(f_always(f_and(a, b))).size() == 1);
  CHECK(decompose(f_until(a, b)).size() == 1);
}

TEST_CASE("eval_lasso matches the walking reference evaluator") {
  std::mt19937_64 rng(20240811);
  auto lassos = enumerate_lassos(2, 2, 2);
  for (int trial = 0; trial < 60; ++trial) {
    LtlPtr f = random_formula(rng, 2, 3);
    for (const auto& t : lassos) {
      CAPTURE(to_string(f));
      REQUIRE(eval_lasso(f, t) == eval_lasso_reference(f, t));
    }
  }
}

TEST_CASE("property: nnf preserves lasso semantics") {
  std::mt19937_64 rng(7);
  auto lassos = enumerate_lassos(2, 2, 2);
  for (int trial = 0; trial < 80; ++trial) {
    LtlPtr f = random_formula(rng, 2, 3);
    LtlPtr nnf = to_nnf(f);
    for (const auto& t : lassos) {
      CAPTURE(to_string(f));
      REQUIRE(eval_lasso(nnf, t) == eval_lasso(f, t));
    }
  }
}

TEST_CASE("property: conjunction splits pointwise and decompose is faithful") {
  std::mt19937_64 rng(99);
  auto lassos = enumerate_lassos(2, 1, 2);
  for (int trial = 0; trial < 40; ++trial) {
    LtlPtr f = random_formula(rng, 2, 2);
    LtlPtr g = random_formula(rng, 2, 2);
    LtlPtr both = f_and(f, g);
    auto parts = decompose(both);
    for (const auto& t : lassos) {
      bool whole = eval_lasso(both, t);
      CHECK(whole == (eval_lasso(f, t) && eval_lasso(g, t)));
      bool all = true;
      for (const auto& p : parts) all = all && eval_lasso(p, t);
      CHECK(whole == all);
    }
  }
}

TEST_CASE("property: cycle rotation with compensating prefix extension") {
  std::mt19937_64 rng(4242);
  auto lassos = enumerate_lassos(2, 1, 2);
  for (int trial = 0; trial < 40; ++trial) {
    LtlPtr f = random_formula(rng, 2, 3);
    for (const auto& t : lassos) {
      if (t.cycle.size() < 2) continue;
      // Rotate the cycle by one, appending the rotated-out letter to the
      // prefix: the infinite word is unchanged.
      LassoTrace rotated = t;
      rotated.prefix.push_back(t.cycle[0]);
      rotated.cycle.erase(rotated.cycle.begin());
      rotated.cycle.push_back(t.cycle[0]);
      REQUIRE(eval_lasso(f, t) == eval_lasso(f, rotated));
    }
  }
}

TEST_CASE("to_string round-trips through the parser") {
  std::mt19937_64 rng(5150);
  std::vector<Proposition> env{{"p0", VarKind::Env}};
  std::vector<Proposition> sys{{"p1", VarKind::Sys}};
  auto lassos = enumerate_lassos(2, 1, 2);
  for (int trial = 0; trial < 40; ++trial) {
    LtlPtr f = random_formula(rng, 2, 3);
    LtlPtr reparsed = parse_formula(to_string(f), env, sys);
    for (const auto& t : lassos)
      REQUIRE(eval_lasso(f, t) == eval_lasso(reparsed, t));
  }
}
