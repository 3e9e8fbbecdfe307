#include <doctest.h>

#include <random>

#include "jetinv/errors.hpp"
#include "jetinv/expr/identity.hpp"
#include "jetinv/expr/parser.hpp"
#include "jetinv/reduction/reduction.hpp"

using namespace jetinv;

namespace {

Expression P(const char* s) { return parse(s); }

Expression random_poly2(std::mt19937& rng, const Expression& u, const Expression& v, int terms) {
  std::uniform_int_distribution<int> coef(-3, 3), power(0, 2);
  Expression out;
  for (int t = 0; t < terms; ++t) out += Expression(coef(rng)) * u.pow(power(rng)) * v.pow(power(rng));
  return out;
}

DualInput dual_example() {
  return {P("0"),
          P("-2*p/x"),
          {P("y - p*x"), P("p")},
          {P("y + p*x"), P("-p*x^2")},
          P("-(a2 - a1)^2/(4*b1)"),
          P("-(a2 - a1)^2/(4*b2)")};
}

}  // namespace

TEST_CASE("curve family to section") {
  Section s = family_to_section({P("y - p*x"), P("p")});
  CHECK(s.f.is_zero());
  CHECK(s.g == P("p"));
  CHECK_THROWS_AS(family_to_section({P("x"), P("y")}), InputError);
  CHECK(independent({P("y - p*x"), P("p")}));
  CHECK_FALSE(independent({P("p"), P("2*p + 1")}));
}

TEST_CASE("contact integrality") {
  CurveFamily lines{P("y - p*x"), P("p")};
  CHECK(check_contact_integrality(lines, P("0")).matches);
  auto r = check_contact_integrality(lines, P("1"));
  CHECK(r.contact);
  CHECK_FALSE(r.matches);
  CHECK_FALSE(check_contact_integrality({P("x"), P("y")}, P("0")).matches);
  CHECK(is_integral(P("y - p*x"), P("0")));
  CHECK_FALSE(is_integral(P("y"), P("0")));
}

TEST_CASE("associated equation examples") {
  auto e0 = associated_equation(P("b1"));
  CHECK(e0.c.is_zero());
  CHECK(e0.G2.is_zero());
  auto e1 = associated_equation(P("a1*b1"));
  CHECK(canonical_equal(e1.c, P("-b1/a1")));
  CHECK(canonical_equal(e1.G2, P("2*b1/a1^2")));
  auto e2 = associated_equation(P("a1 + b1"));
  CHECK(e2.c == P("-1"));
  CHECK(e2.G2.is_zero());
}

TEST_CASE("associated ode with a supplied inverse") {
  auto eq = associated_equation(P("a1 + (b1 - a2)^2/2"));
  CHECK_FALSE(associated_ode(eq).has_value());
  auto ode = associated_ode(eq, P("b1 + 1/c"));
  REQUIRE(ode.has_value());
  CHECK(canonical_equal(*ode, P("p^3")));
  CHECK_THROWS_AS(associated_ode(eq, P("b1 + c")), InputError);
}

TEST_CASE("dual pair of roots") {
  DualInput in = dual_example();
  CHECK(is_integral(in.integrals1.a, in.lambda1));
  DualPair pair = dual_swap(in);
  CHECK(canonical_equal(pair.first.G2, P("2*b1/(a1 - a2)^2")));
  DualPair swapped = dual_swap(swap_labels(in));
  CHECK(canonical_equal(swapped.first.G2, pair.second.G2));
  DualInput twice = swap_labels(swap_labels(in));
  CHECK(twice.h12 == in.h12);
  CHECK(twice.h21 == in.h21);
  CHECK(twice.lambda2 == in.lambda2);

  DualInput same = in;
  same.lambda2 = same.lambda1;
  CHECK_THROWS_AS(dual_swap(same), InputError);
  DualInput wrong = in;
  wrong.integrals2.b = P("p*x^2");
  CHECK_THROWS_AS(dual_swap(wrong), InputError);
}

TEST_CASE("sections are invariant under reparametrization of the family") {
  std::mt19937 rng(3);
  std::uniform_int_distribution<int> unit(1, 3);
  CurveFamily base{P("y - p*x + p^2"), P("p + x*y")};
  Section s = family_to_section(base);
  for (int trial = 0; trial < 5; ++trial) {
    // triangular change (a, b) -> (alpha a + q(b), beta b + r(alpha a + q(b))), Jacobian alpha beta
    Expression phi = Expression(unit(rng)) * base.a + random_poly2(rng, base.b, Expression(1), 2);
    Expression psi = Expression(unit(rng)) * base.b + random_poly2(rng, phi, Expression(1), 2);
    Section t = family_to_section({phi, psi});
    CHECK(canonical_equal(t.f, s.f));
    CHECK(canonical_equal(t.g, s.g));
  }
}

TEST_CASE("integrals of a contact field give its constraint") {
  struct Flow {
    const char* G;
    const char* u;
    const char* v;
  };
  std::mt19937 rng(5);
  for (Flow fl : {Flow{"0", "y - p*x", "p"}, Flow{"1", "p - x", "y - p*x + x^2/2"},
                  Flow{"x", "p - x^2/2", "y - p*x + x^3/3"}}) {
    Expression u = P(fl.u), v = P(fl.v);
    for (int trial = 0; trial < 3; ++trial) {
      Expression a = u + random_poly2(rng, v, Expression(1), 2);
      Expression b = v + Expression(trial + 1) * u.pow(2);
      REQUIRE(is_integral(a, P(fl.G)));
      REQUIRE(is_integral(b, P(fl.G)));
      Section s = family_to_section({a, b});
      CHECK(canonical_equal(s.f, P(fl.G)));
      CHECK(canonical_equal(s.g, P("p")));
    }
  }
}
