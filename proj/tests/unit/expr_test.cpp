#include <doctest.h>

#include <cmath>
#include <random>

#include "jetinv/errors.hpp"
#include "jetinv/expr/identity.hpp"
#include "jetinv/expr/linalg.hpp"
#include "jetinv/expr/parser.hpp"

using namespace jetinv;

namespace {

Expression P(const char* s) { return parse(s); }

Rational at(const Expression& e, RationalPoint pt) { return e.eval(binding(pt)); }

}  // namespace

TEST_CASE("parse builds canonical expressions") {
  CHECK(canonical_equal(P("p*f_y - 3*f"), var_expr("p") * var_expr("f_y") - Expression(3) * var_expr("f")));
  CHECK(P("(x+y)^2 - x^2 - 2*x*y - y^2").is_zero());
  CHECK(P("f_yx") == P("f_xy"));
  CHECK(P("2^-1") == Expression(Rational(1, 2)));
  CHECK(P("-x^2") == -(var_expr("x") * var_expr("x")));
  CHECK(P("0.25*x") == P("x/4"));
}

TEST_CASE("parse reports syntax errors with position") {
  try {
    parse("x + * y");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.position() == 4);
  }
  CHECK_THROWS_AS(parse("(x+1"), ParseError);
  CHECK_THROWS_AS(parse("x/0"), ParseError);
  VariableSpace space({"x", "y"});
  ParseOptions opts;
  opts.declared = &space;
  CHECK_THROWS_AS(parse("x + z", opts), UnknownVariable);
  CHECK_NOTHROW(parse("x*y", opts));
}

TEST_CASE("radical atoms round-trip through print and parse") {
  Expression e = P("abs(g_p)^(1/2)");
  CHECK(e.has_radicals());
  CHECK(P(e.to_string().c_str()) == e);
  Expression s = P("abs(g_p)^(1/2)*abs(g_p)^(1/2)");
  CHECK(s == P("abs(g_p)"));
  CHECK(P("abs(g_p)^2") == P("g_p^2"));
  CHECK(P("abs(u)^(3/2)*abs(u)^(1/2)") == P("u^2"));
  Expression q = P("(p - g)/abs(g_p)^(1/2) + x^2/(y+1)");
  CHECK(canonical_equal(P(q.to_string().c_str()), q));
}

TEST_CASE("differentiate") {
  CHECK(P("p*g_y").differentiate(var("p")) == P("g_y"));
  CHECK(P("x^2*y").differentiate(var("x")) == P("2*x*y"));
  CHECK(canonical_equal(P("u^(1/2)").differentiate(var("u")), P("(1/2)*u^(-1/2)")));
  CHECK(canonical_equal(P("abs(u)^(1/2)").differentiate(var("u")), P("abs(u)^(1/2)/(2*u)")));
  CHECK(canonical_equal(P("1/(x*y+1)").differentiate(var("x")), P("-y/(x*y+1)^2")));
}

TEST_CASE("eval") {
  CHECK(at(P("p - g"), {{var("p"), 2}, {var("g"), 1}}) == 1);
  CHECK_THROWS_AS(at(P("x/y"), {{var("x"), 1}, {var("y"), 0}}), DivisionByZero);
  CHECK(at(P("abs(u)^(1/2)"), {{var("u"), -4}}) == 2);
  CHECK_THROWS_AS(at(P("u^(1/2)"), {{var("u"), -4}}), RadicandError);
  double v = P("abs(u)^(1/2)").evalf([](VarId) { return -2.0; });
  CHECK(v == doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("identity testing") {
  CHECK(canonical_equal(P("(p-g)^2"), P("p^2 - 2*p*g + g^2")));
  CHECK(probabilistic_equal(P("(p-g)^2"), P("p^2 - 2*p*g + g^2"), 20));
  CHECK_FALSE(probabilistic_equal(P("g_p"), P("g_p + 1"), 20));
  CHECK_FALSE(canonical_equal(P("g_p"), P("g_p + 1")));
  // both sign charts of |g_p| are sampled
  CHECK(probabilistic_equal(P("(abs(g_p)^(1/2))^2"), P("abs(g_p)"), 30));
  CHECK(probabilistic_equal(P("(abs(f)^(3/2)/abs(p*f_y - 3*f*f_y)^(1/2))^2"),
                            P("abs(f)^3/abs(p*f_y - 3*f*f_y)"), 30));
}

TEST_CASE("reciprocal rationalizes radicals") {
  Expression t = P("abs(u)^(1/2)");
  Expression r = (Expression(1) + t).reciprocal();
  CHECK(canonical_equal(r * (Expression(1) + t), Expression(1)));
  CHECK(probabilistic_equal(r, P("1/(1 + abs(u)^(1/2))"), 10));
  Expression w = P("x + abs(u)^(1/4)");
  CHECK(canonical_equal(w / w, Expression(1)));
}

TEST_CASE("rational linear algebra") {
  RationalMatrix m = {{1, 2}, {3, 4}};
  CHECK(determinant(m) == -2);
  CHECK(rank(RationalMatrix{{1, 2, 3}, {2, 4, 6}}) == 1);
  auto c = solve_in_span({{1, 0, 1}, {0, 1, 1}}, {2, 3, 5});
  REQUIRE(c);
  CHECK((*c)[0] == 2);
  CHECK((*c)[1] == 3);
  CHECK_FALSE(solve_in_span({{1, 0, 1}, {0, 1, 1}}, {2, 3, 4}));
}

// ----------------------------------------------------------- properties

namespace {

Expression random_expression(std::mt19937_64& rng, int depth) {
  static const char* atoms[] = {"x", "y", "p", "f", "f_x", "g_p", "2", "3/2"};
  std::uniform_int_distribution<int> pick(0, 7), op(0, 4);
  if (depth == 0) return P(atoms[pick(rng)]);
  Expression a = random_expression(rng, depth - 1), b = random_expression(rng, depth - 1);
  switch (op(rng)) {
    case 0: return a + b;
    case 1: return a - b;
    case 2: return a * b;
    case 3: return b.is_zero() ? a : a / (b * b + Expression(1));
    default: return a.pow(2);
  }
}

}  // namespace

TEST_CASE("property: print/parse round trip") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 40; ++i) {
    Expression e = random_expression(rng, 3);
    CHECK(canonical_equal(P(e.to_string().c_str()), e));
  }
}

TEST_CASE("property: partial derivatives commute and are linear") {
  std::mt19937_64 rng(11);
  VarId u = var("x"), v = var("f_x");
  for (int i = 0; i < 25; ++i) {
    Expression e1 = random_expression(rng, 3), e2 = random_expression(rng, 2);
    CHECK(canonical_equal(e1.differentiate(u).differentiate(v), e1.differentiate(v).differentiate(u)));
    Rational q1(3, 7), q2(-5, 2);
    Expression lhs = (Expression(q1) * e1 + Expression(q2) * e2).differentiate(u);
    Expression rhs = Expression(q1) * e1.differentiate(u) + Expression(q2) * e2.differentiate(u);
    CHECK(canonical_equal(lhs, rhs));
  }
}

TEST_CASE("property: derivative matches central differences") {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> coord(0.5, 1.5);
  VarId x = var("x");
  int checked = 0;
  for (int i = 0; i < 40; ++i) {
    Expression e = random_expression(rng, 3) * P("abs(g_p)^(1/2)");
    Expression de = e.differentiate(x);
    std::unordered_map<VarId, double> pt;
    for (VarId w : e.free_variables()) pt[w] = coord(rng);
    pt[x] = coord(rng);
    double h = 1e-5;
    auto value_at = [&](double xv) {
      auto copy = pt;
      copy[x] = xv;
      return e.evalf([&](VarId w) { return copy.at(w); });
    };
    double fd = (value_at(pt[x] + h) - value_at(pt[x] - h)) / (2 * h);
    double exact = de.evalf([&](VarId w) { return pt.at(w); });
    double scale = std::max({1.0, std::fabs(exact), std::fabs(value_at(pt[x]))});
    CHECK(std::fabs(fd - exact) / scale < 1e-6);
    ++checked;
  }
  CHECK(checked == 40);
}
