#include <doctest.h>

#include <cmath>

#include "jetinv/expr/identity.hpp"
#include "jetinv/expr/parser.hpp"
#include "jetinv/invariants/pi.hpp"
#include "jetinv/invariants/pitilde.hpp"
#include "jetinv/sl3/sl3.hpp"
#include "jetinv/sl3/transform.hpp"

using namespace jetinv;

namespace {

Expression P(const char* s) { return parse(s); }

SL3Element only(const char* name) {
  SL3Element g;
  for (std::size_t i = 0; i < kSl3ParameterNames.size(); ++i) {
    g.params[i] = kSl3ParameterNames[i] == name ? Expression(1) : Expression();
  }
  return g;
}

}  // namespace

TEST_CASE("point fields of basis elements") {
  auto [xi, eta] = only("a0").point_field();
  CHECK(xi == P("1"));
  CHECK(eta.is_zero());
  auto [xi_c, eta_c] = only("c1").point_field();
  CHECK(xi_c == P("x^2"));
  CHECK(eta_c == P("x*y"));
  CHECK(sl3_basis().size() == 8);
  CHECK(SL3Element{}.is_zero());
}

TEST_CASE("basis fields are linearly independent") {
  // the coefficient of every parameter in the generic field is a distinct basis field
  auto basis = sl3_basis();
  for (std::size_t i = 0; i < basis.size(); ++i) {
    for (std::size_t j = 0; j < basis.size(); ++j) {
      auto [xi, eta] = basis[j].point_field();
      Expression coef = sl3_generic().point_field().first.differentiate(var(kSl3ParameterNames[i]));
      CHECK((coef == xi) == (i == j || (xi.is_zero() && coef.is_zero())));
      (void)eta;
    }
  }
}

TEST_CASE("generic lift on base coordinates") {
  const auto& X = lift_generic(Bundle::pi);
  auto [xi, eta] = sl3_generic().point_field();
  CHECK(X.apply(P("x")) == xi);
  CHECK(X.apply(P("p")) == prolong_contact(xi, eta));
  CHECK(lift(SL3Element{}, Bundle::pi).apply(P("f_x*g + p")).is_zero());
}

TEST_CASE("bracket of basis fields") {
  // [d/dx, x d/dx] = d/dx
  SL3Element c = bracket(only("a0"), only("a11"));
  CHECK(c.params[0] == P("1"));
  for (int i = 1; i < 8; ++i) CHECK(c.params[i].is_zero());
}

TEST_CASE("relative invariance examples") {
  const Catalog& c = catalog_pi();
  CHECK(check_relative(c("I0"), *c.entry("I0").weight, Bundle::pi));
  CHECK(check_relative(P("g_p"), P("2*(c2*x + a12)*(p - g)"), Bundle::pi));
  CHECK_FALSE(check_relative(P("g_p"), P("0"), Bundle::pi));
}

TEST_CASE("absolute invariance examples") {
  CHECK(check_absolute(catalog_pi()("J2"), Bundle::pi));
  CHECK_FALSE(check_absolute(catalog_pi()("I0"), Bundle::pi));
  CHECK(check_absolute(catalog_pitilde()("M1"), Bundle::pitilde));
}

TEST_CASE("weight cocycle condition") {
  const Catalog& c = catalog_pi();
  CHECK(check_weight_cocycle(*c.entry("I0").weight, Bundle::pi));
  CHECK(check_weight_cocycle(*c.entry("L1").weight, Bundle::pi));
  // flip the sign of one term
  Weight broken = *c.entry("L1").weight + P("4*a11");
  CHECK_FALSE(check_weight_cocycle(broken, Bundle::pi));
}

TEST_CASE("products of relative invariants carry summed weights") {
  const Catalog& c = catalog_pi();
  const auto& I1 = c.entry("I1");
  const auto& L1 = c.entry("L1");
  CHECK(check_relative(I1.expr * L1.expr, *I1.weight + *L1.weight, Bundle::pi));
  CHECK(canonical_equal(*c.entry("L7").weight, Expression(Rational(3, 2)) * *I1.weight));
}

TEST_CASE("exact projective maps") {
  RationalMatrix3 id{};
  for (int i = 0; i < 3; ++i) id[i][i] = 1;
  auto m = prolonged_map(id);
  CHECK(m[0] == P("x"));
  CHECK(m[1] == P("y"));
  CHECK(m[2] == P("p"));

  RationalMatrix3 scale = id;
  scale[1][1] = 2;
  Section s = pushforward({Bundle::pitilde, P("y*p"), P("p")}, scale);
  CHECK(canonical_equal(s.f, P("y*p/2")));
  auto back = inverse(scale);
  CHECK(back[1][1] == Rational(1, 2));
}

TEST_CASE("matrix exponential and rationalization") {
  Matrix3 e = matrix_exp(sl3_matrix({0, 0, 0.1, 0, 0, 0, 0, 0}));
  // a11 = 0.1 gives diag(0.1 - 0.1/3, -0.1/3, -0.1/3)
  CHECK(e[0][0] == doctest::Approx(std::exp(0.2 / 3)));
  CHECK(e[1][1] == doctest::Approx(std::exp(-0.1 / 3)));
  auto r = rationalize(e, 1024);
  CHECK(std::abs(to_double(r)[0][0] - e[0][0]) <= 0.5 / 1024);
  auto inv = matrix_inverse(e);
  CHECK(inv[0][0] * e[0][0] == doctest::Approx(1));
}

TEST_CASE("map_point avoids the singular locus") {
  Matrix3 m{{{1, 0, 0}, {0, 1, 0}, {1, 0, 1}}};  // (x, y) -> (x, y) / (x + 1)
  CHECK_FALSE(map_point(m, {-1, 1, 1}).has_value());
  auto q = map_point(m, {2, 1, 1});
  REQUIRE(q.has_value());
  CHECK((*q)[1] == doctest::Approx(1.0 / 3));
}

TEST_CASE("pushforward preserves the signature pointwise") {
  // f = x y + p^2 under a shear; M1 at q equals M1 of the image at the image point
  Section s{Bundle::pitilde, P("x*y + p^2"), P("p")};
  RationalMatrix3 m{};
  for (int i = 0; i < 3; ++i) m[i][i] = 1;
  m[0][1] = Rational(1, 4);
  m[2][0] = Rational(1, 8);
  Section t = pushforward(s, m);
  std::array<double, 3> q{1.2, 1.5, 1.3};
  auto image = map_point(to_double(m), q);
  REQUIRE(image.has_value());
  const Catalog& c = catalog_pitilde();
  for (const char* name : {"M1", "M2", "M5"}) {
    double a = eval_invariant(c, name, s, q);
    double b = eval_invariant(c, name, t, *image);
    CHECK(b == doctest::Approx(a).epsilon(1e-9));
  }
}
