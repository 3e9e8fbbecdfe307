#include <doctest.h>

#include "jetinv/errors.hpp"
#include "jetinv/expr/identity.hpp"
#include "jetinv/expr/parser.hpp"
#include "jetinv/invariants/pitilde.hpp"

using namespace jetinv;

namespace {

Expression P(const char* s) { return parse(s); }

const Catalog& C() { return catalog_pitilde(); }

}  // namespace

TEST_CASE("pitilde catalog entries") {
  CHECK(C()("I0") == P("f"));
  CHECK(C()("I1") == P("p*f_y*f_p - 3*f*f_y + f_x*f_p"));
  CHECK(C().of_kind(InvariantKind::relative).size() == 7);
  CHECK(C().of_kind(InvariantKind::absolute).size() == 5);
  CHECK(canonical_equal(C()("M1"), C()("H1") / C()("I1")));
  CHECK(canonical_equal(C()("M5"), C()("H5") / C()("I1").pow(2)));
}

TEST_CASE("pitilde weights") {
  const Weight& mu0 = *C().entry("I0").weight;
  const Weight& mu1 = *C().entry("I1").weight;
  CHECK(canonical_equal(*C().entry("H1").weight, mu1));
  CHECK(canonical_equal(*C().entry("H5").weight, Expression(2) * mu1));
  // independent weights of order 0 and 1: no absolute invariant below order 2
  CHECK_FALSE(proportionality(mu0, mu1).has_value());
}

TEST_CASE("pitilde invariants of y'' = y y'") {
  Section s{Bundle::pitilde, P("y*p"), P("p")};
  std::array<double, 3> q{1, 1, 2};
  CHECK(eval_invariant(C(), "I0", s, q) == doctest::Approx(2));
  CHECK(eval_invariant(C(), "I1", s, q) == doctest::Approx(-8));
  CHECK(eval_invariant(C(), "H1", s, q) == doctest::Approx(-4));
  CHECK(eval_invariant(C(), "M1", s, q) == doctest::Approx(0.5));
}

TEST_CASE("pitilde degenerate sections") {
  CHECK(restrict_to_section(C()("H1"), {Bundle::pitilde, P("y"), P("p")}).is_zero());
  CHECK(restrict_to_section(C()("I1"), {Bundle::pitilde, P("y"), P("p")}) == P("-3*y"));
  CHECK_THROWS_AS(eval_invariant(C(), "M1", {Bundle::pitilde, P("5"), P("p")}, {1, 1, 1}),
                  SingularPoint);
  CHECK_THROWS_AS(eval_invariant(C(), "M1", {Bundle::pitilde, P("0"), P("p")}, {1, 1, 1}),
                  SingularPoint);
}

TEST_CASE("pitilde derivations commute with the generic field") {
  for (int i = 0; i < 3; ++i) CHECK(check_derivation_invariant(C().derivations()[i], Bundle::pitilde));
}

TEST_CASE("pitilde commutation relations and a sign-flip control") {
  auto rels = commutator_relations_pitilde();
  REQUIRE(rels.size() == 3);
  for (const auto& ok : check_commutators(C(), rels, positive_chart_pitilde())) {
    CHECK((ok[0] && ok[1] && ok[2]));
  }
  auto flipped = rels[1];
  flipped.rhs[1] = -flipped.rhs[1];
  auto ok = check_commutators(C(), {flipped}, positive_chart_pitilde())[0];
  CHECK_FALSE((ok[0] && ok[1] && ok[2]));
}

TEST_CASE("pitilde syzygies") {
  auto printed = syzygies_formal();
  REQUIRE(printed.size() == 5);
  CHECK(printed[2] == P("3*M23 - 3*M14 + M5"));
  CHECK(printed[3] == P("6*M31 - 6*M13 + 2*M1*M5 - 3*M3^2 - 6*M1"));
  auto holds = check_syzygies(printed);
  CHECK_FALSE(holds[0]);
  CHECK(holds[1]);
  CHECK_FALSE(holds[2]);
  CHECK(holds[3]);
  CHECK(holds[4]);
  auto corrected = syzygies_corrected_formal();
  for (bool b : check_syzygies(corrected)) CHECK(b);
  auto jacobi = syzygies_from_jacobi();
  REQUIRE(jacobi.size() == 3);
  for (int k = 0; k < 3; ++k) CHECK(proportionality(jacobi[k], corrected[k]).has_value());
  CHECK(*proportionality(jacobi[1], printed[1]) == Rational(-1, 72));
}

TEST_CASE("pitilde det U10") {
  auto rows = u10_rows();
  std::vector<std::pair<int, int>> expected{{1, 1}, {1, 2}, {1, 3}, {1, 4}, {1, 5},
                                            {2, 1}, {2, 2}, {2, 4}, {2, 5}, {3, 5}};
  CHECK(rows == expected);
  auto r = check_det_u10(10, 9, det_u10_observed(), 1);
  CHECK(r.plus == 10);
  auto printed = check_det_u10(5, 9, det_u10_formula(), 1);
  CHECK(printed.plus == 0);
}

TEST_CASE("pitilde signature functions") {
  auto names = signature_names_pitilde();
  CHECK(names.size() == 10);
  CHECK(signature_functions_pitilde().size() == 10);
  CHECK(names[0] == "m1");
}
