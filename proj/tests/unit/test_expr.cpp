#include "test_util.hpp"

#include "conformal/expr.hpp"

#include <cmath>
#include <numbers>

using namespace conformal;
using conformal::expr::Expression;
using conformal::testing::kUV;

namespace {

// Random expression text over u, v that is defined everywhere.
std::string random_source(std::mt19937_64& rng, int depth) {
  std::uniform_int_distribution<int> pick(0, depth <= 0 ? 2 : 11);
  std::uniform_real_distribution<double> constant(-2.0, 2.0);
  switch (pick(rng)) {
    case 0: return "u";
    case 1: return "v";
    case 2: return "(" + std::to_string(constant(rng)) + ")";
    case 3: return "(" + random_source(rng, depth - 1) + " + " + random_source(rng, depth - 1) + ")";
    case 4: return "(" + random_source(rng, depth - 1) + " - " + random_source(rng, depth - 1) + ")";
    case 5: return "(" + random_source(rng, depth - 1) + " * " + random_source(rng, depth - 1) + ")";
    case 6: return "sin(" + random_source(rng, depth - 1) + ")";
    case 7: return "cos(" + random_source(rng, depth - 1) + ")";
    case 8: return "exp(sin(" + random_source(rng, depth - 1) + "))";
    case 9: return "(" + random_source(rng, depth - 1) + ")^2";
    case 10: return "sqrt(1 + (" + random_source(rng, depth - 1) + ")^2)";
    default: return "atan2(" + random_source(rng, depth - 1) + ", 2 + cos(" + random_source(rng, depth - 1) + "))";
  }
}

}  // namespace

TEST_CASE("parse and evaluate") {
  const Expression e = Expression::parse("sin(u)*v", kUV);
  CHECK(e.eval({std::numbers::pi / 2, 2.0}) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(Expression::parse("exp(0)", {}).eval({}) == 1.0);
  CHECK(Expression::parse("atan2(1,0)", {}).eval({}) == doctest::Approx(std::numbers::pi / 2));
  CHECK(Expression::parse("2^3^2", {}).eval({}) == 512.0);
  CHECK(Expression::parse("-2^2", {}).eval({}) == -4.0);
  CHECK(Expression::parse("pi", {}).eval({}) == std::numbers::pi);
  CHECK(Expression::parse("1 - 2 - 3", {}).eval({}) == -4.0);
  CHECK(Expression::parse("8 / 4 / 2", {}).eval({}) == 1.0);
}

TEST_CASE("syntax errors carry the offset") {
  try {
    (void)Expression::parse("sin(", {"u"});
    FAIL("no error");
  } catch (const SyntaxError& e) {
    CHECK(e.offset() == 4);
    CHECK(e.kind() == ErrorKind::syntax);
  }
  CHECK_ERROR_KIND(Expression::parse("u +", kUV), ErrorKind::syntax);
  CHECK_ERROR_KIND(Expression::parse("(u", kUV), ErrorKind::syntax);
  CHECK_ERROR_KIND(Expression::parse("u v", kUV), ErrorKind::syntax);
}

TEST_CASE("unknown identifiers") {
  try {
    (void)Expression::parse("u^2 - w", kUV);
    FAIL("no error");
  } catch (const UnknownIdentifier& e) {
    CHECK(e.name() == "w");
  }
  CHECK_ERROR_KIND(Expression::parse("foo(u)", kUV), ErrorKind::unknown_identifier);
}

TEST_CASE("domain errors and missing bindings") {
  const Expression log_u = Expression::parse("log(u)", {"u"});
  CHECK_ERROR_KIND(log_u.eval({-1.0}), ErrorKind::domain);
  CHECK_ERROR_KIND(Expression::parse("1/u", {"u"}).eval({0.0}), ErrorKind::domain);
  CHECK_ERROR_KIND(Expression::parse("sqrt(u)", {"u"}).eval({-1.0}), ErrorKind::domain);
  const Expression uv = Expression::parse("u*v", kUV);
  CHECK(uv.eval(std::map<std::string, double>{{"u", 2.0}, {"v", 3.0}}) == 6.0);
  CHECK_ERROR_KIND(uv.eval(std::map<std::string, double>{{"u", 2.0}}), ErrorKind::missing_binding);
}

TEST_CASE("symbolic derivatives") {
  CHECK(Expression::parse("sin(u)", {"u"}).differentiate("u").eval({0.0}) == 1.0);
  CHECK(Expression::parse("u*v", kUV).differentiate("u").eval({3.0, 5.0}) == 5.0);
  const Expression d = Expression::parse("exp(u^2)", {"u"}).differentiate("u");
  const Expression f = Expression::parse("exp(u^2)", {"u"});
  const double h = 1e-5;
  const double fd = (f.eval({1.0 + h}) - f.eval({1.0 - h})) / (2 * h);
  CHECK(d.eval({1.0}) == doctest::Approx(2 * std::exp(1.0)).epsilon(1e-14));
  CHECK(d.eval({1.0}) == doctest::Approx(fd).epsilon(1e-8));
  CHECK(Expression::parse("u^v", kUV).differentiate("v").eval({2.0, 3.0}) ==
        doctest::Approx(8 * std::log(2.0)));
  CHECK(Expression::parse("u", kUV).differentiate("v").is_constant());
}

TEST_CASE("print then parse preserves values") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> x(-1.5, 1.5);
  for (int k = 0; k < 40; ++k) {
    const Expression e = Expression::parse(random_source(rng, 5), kUV);
    const Expression back = Expression::parse(e.print(), kUV);
    for (int j = 0; j < 100; ++j) {
      const double u = x(rng), v = x(rng);
      CHECK(back.eval({u, v}) == e.eval({u, v}));
    }
  }
}

TEST_CASE("differentiation is linear") {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> x(-1.5, 1.5);
  for (int k = 0; k < 40; ++k) {
    const std::string a = random_source(rng, 4), b = random_source(rng, 4);
    const Expression sum = Expression::parse("(" + a + ") + (" + b + ")", kUV).differentiate("u");
    const Expression da = Expression::parse(a, kUV).differentiate("u");
    const Expression db = Expression::parse(b, kUV).differentiate("u");
    for (int j = 0; j < 20; ++j) {
      const double u = x(rng), v = x(rng);
      CHECK(std::abs(sum.eval({u, v}) - da.eval({u, v}) - db.eval({u, v})) <= 1e-12 * (1 + std::abs(sum.eval({u, v}))));
    }
  }
}

TEST_CASE("symbolic derivatives match finite differences on random trees") {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> x(-1.0, 1.0);
  const double h = 1e-5;
  for (int k = 0; k < 60; ++k) {
    const Expression e = Expression::parse(random_source(rng, 5), kUV);
    for (const char* var : {"u", "v"}) {
      const Expression d = e.differentiate(var);
      for (int j = 0; j < 10; ++j) {
        const double u = x(rng), v = x(rng);
        const bool du = std::string(var) == "u";
        const double fd = (e.eval({u + (du ? h : 0), v + (du ? 0 : h)}) -
                           e.eval({u - (du ? h : 0), v - (du ? 0 : h)})) / (2 * h);
        const double sym = d.eval({u, v});
        CHECK(std::abs(sym - fd) <= 1e-5 * (1 + std::abs(sym)));
      }
    }
  }
}
