#include <cmath>
#include <vector>

#include "doctest.h"
#include "kmnv/expr.hpp"

using kmnv::DomainError;
using kmnv::Expr;
using kmnv::ParseError;
using kmnv::parse_expr;

namespace {
const std::vector<std::string> kCoords = {"x", "y", "z"};
const std::vector<std::string> kConsts = {"c"};

double eval(const char* src, std::vector<double> coords, std::vector<double> consts = {0.0}) {
  return parse_expr(src, kCoords, kConsts).evaluate(coords, consts);
}
}  // namespace

TEST_CASE("literals, names, and arithmetic") {
  CHECK(eval("2 + exp(c*x)*z", {0.0, 5.0, 1.0}) == doctest::Approx(3.0).epsilon(1e-15));
  CHECK(eval("1/4 + y^2/4", {0.0, 2.0, 0.0}) == doctest::Approx(1.25).epsilon(1e-15));
  CHECK(eval("x*y - z", {2.0, 3.0, 1.0}) == doctest::Approx(5.0).epsilon(1e-15));
  CHECK(eval("sqrt(x)", {9.0, 0.0, 0.0}) == doctest::Approx(3.0).epsilon(1e-15));
  CHECK(eval("log(exp(y))", {0.0, 0.25, 0.0}) == doctest::Approx(0.25).epsilon(1e-13));
  CHECK(eval("sin(x)^2 + cos(x)^2", {0.8, 0.0, 0.0}) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("operator precedence and associativity") {
  // '^' binds right-to-left: 2^3^2 = 2^(3^2).
  CHECK(eval("2^3^2", {0, 0, 0}) == doctest::Approx(512.0).epsilon(1e-15));
  // '^' binds tighter than unary minus: -x^2 = -(x^2).
  CHECK(eval("-x^2", {3.0, 0, 0}) == doctest::Approx(-9.0).epsilon(1e-15));
  CHECK(eval("(-x)^2", {3.0, 0, 0}) == doctest::Approx(9.0).epsilon(1e-15));
  CHECK(eval("2*3 + 4*5", {0, 0, 0}) == doctest::Approx(26.0).epsilon(1e-15));
  CHECK(eval("2 - 3 - 4", {0, 0, 0}) == doctest::Approx(-5.0).epsilon(1e-15));
  CHECK(eval("12 / 2 / 3", {0, 0, 0}) == doctest::Approx(2.0).epsilon(1e-15));
}

TEST_CASE("parse errors carry the failing offset") {
  try {
    parse_expr("x*(y", kCoords, kConsts);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.offset == 4);
  }
  CHECK_THROWS_AS(parse_expr("", kCoords, kConsts), ParseError);
  CHECK_THROWS_AS(parse_expr("x +", kCoords, kConsts), ParseError);
  CHECK_THROWS_AS(parse_expr("2..5", kCoords, kConsts), ParseError);
  CHECK_THROWS_AS(parse_expr("nope", kCoords, kConsts), ParseError);    // unknown name
  CHECK_THROWS_AS(parse_expr("tan(x)", kCoords, kConsts), ParseError);  // unknown function
  CHECK_THROWS_AS(parse_expr("x y", kCoords, kConsts), ParseError);     // trailing junk
}

TEST_CASE("evaluation leaves the real domain -> DomainError") {
  CHECK_THROWS_AS(eval("1/x", {0.0, 0, 0}), DomainError);
  CHECK_THROWS_AS(eval("sqrt(0 - 1)", {0, 0, 0}), DomainError);
  CHECK_THROWS_AS(eval("log(x - 2)", {1.0, 0, 0}), DomainError);
  CHECK_THROWS_AS(eval("(0-2)^(1/2)", {0, 0, 0}), DomainError);
}

TEST_CASE("printing round-trips bit-identically") {
  const std::vector<const char*> sources = {
      "1 + sin(2*c*x)^2",  "-c*sin(2*c*x)*cos(2*c*x)", "sin(2*c*x)/c", "1/4 + y^2/4",
      "-x^2 + (x + y)*z",  "2^3^2 - -y",               "exp(c*x)*z",
  };
  const std::vector<double> coords = {0.3, -1.2, 0.7};
  const std::vector<double> consts = {0.7071067811865476};
  for (const char* src : sources) {
    CAPTURE(src);
    const Expr a = parse_expr(src, kCoords, kConsts);
    const Expr b = parse_expr(a.to_string(), kCoords, kConsts);
    CHECK(a.evaluate(coords, consts) == b.evaluate(coords, consts));
    // Printing is a fixed point after one round.
    CHECK(a.to_string() == b.to_string());
  }
}

TEST_CASE("programmatic construction matches parsed equivalents") {
  const Expr x = Expr::coordinate(0, "x");
  const Expr c = Expr::constant(0, "c");
  const Expr built =
      Expr::add(Expr::mul(Expr::number(2.0), x), Expr::div(c, Expr::number(4.0)));
  const Expr parsed = parse_expr("2*x + c/4", kCoords, kConsts);
  const std::vector<double> coords = {1.5, 0, 0};
  const std::vector<double> consts = {8.0};
  CHECK(built.evaluate(coords, consts) == doctest::Approx(5.0).epsilon(1e-15));
  CHECK(built.evaluate(coords, consts) == parsed.evaluate(coords, consts));

  CHECK(Expr::number(3.5).is_literal());
  CHECK(Expr::number(3.5).literal_value() == 3.5);
  CHECK(Expr::neg(Expr::number(2.0)).is_literal());
  CHECK(Expr::neg(Expr::number(2.0)).literal_value() == -2.0);
  CHECK_FALSE(x.is_literal());
}

TEST_CASE("empty expression evaluates to an error") {
  const Expr e;
  CHECK(e.empty());
  CHECK_THROWS(e.evaluate(std::vector<double>{}, std::vector<double>{}));
}
