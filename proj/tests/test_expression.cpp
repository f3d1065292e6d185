#include <doctest.h>

#include "pldnn/expression.hpp"

using namespace pldnn;

TEST_CASE("parser handles the running example") {
  const auto expr = parse_expression("(x1 & x2) | !(x3 & x4)");
  REQUIRE(expr->op == ExprOp::Or);
  REQUIRE(expr->lhs->op == ExprOp::And);
  CHECK(expr->lhs->lhs->name == "x1");
  CHECK(expr->lhs->rhs->name == "x2");
  REQUIRE(expr->rhs->op == ExprOp::Not);
  REQUIRE(expr->rhs->lhs->op == ExprOp::And);
  CHECK(expr->rhs->lhs->lhs->name == "x3");
  CHECK(expr->rhs->lhs->rhs->name == "x4");
}

TEST_CASE("precedence: ! binds tighter than &, & than ^, ^ than |") {
  CHECK(to_string(*parse_expression("a | b & c")) == "(a | (b & c))");
  CHECK(to_string(*parse_expression("a ^ b | c")) == "((a ^ b) | c)");
  CHECK(to_string(*parse_expression("a & b ^ c")) == "((a & b) ^ c)");
  CHECK(to_string(*parse_expression("!a & b")) == "(!a & b)");
  CHECK(to_string(*parse_expression("a & b & c")) == "((a & b) & c)");
  CHECK(to_string(*parse_expression("a NAND b | c")) == "((a NAND b) | c)");
  CHECK(to_string(*parse_expression("a NOR b ^ c")) == "((a NOR b) ^ c)");
}

TEST_CASE("nested unary negation") {
  const auto expr = parse_expression("!!a");
  REQUIRE(expr->op == ExprOp::Not);
  REQUIRE(expr->lhs->op == ExprOp::Not);
  CHECK(expr->lhs->lhs->name == "a");
}

TEST_CASE("parse errors carry a position") {
  CHECK_THROWS_AS(parse_expression("(a & b"), ParseError);
  CHECK_THROWS_AS(parse_expression(""), ParseError);
  CHECK_THROWS_AS(parse_expression("   "), ParseError);
  CHECK_THROWS_AS(parse_expression("a b"), ParseError);
  CHECK_THROWS_AS(parse_expression("a &"), ParseError);
  CHECK_THROWS_AS(parse_expression(") a"), ParseError);
  CHECK_THROWS_AS(parse_expression("a $ b"), ParseError);
  try {
    parse_expression("(a & b");
  } catch (const ParseError& e) {
    CHECK(e.position() == 0);  // points at the unmatched opener
  }
}

TEST_CASE("variables are collected sorted and distinct") {
  const auto expr = parse_expression("b & a | !b ^ c");
  CHECK(variables(*expr) == std::vector<std::string>{"a", "b", "c"});
}

TEST_CASE("identifiers may use underscores and digits") {
  const auto expr = parse_expression("black_strips & x2");
  CHECK(variables(*expr) == std::vector<std::string>{"black_strips", "x2"});
}
