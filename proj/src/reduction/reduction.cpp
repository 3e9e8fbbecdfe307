#include "jetinv/reduction/reduction.hpp"

#include "jetinv/errors.hpp"

namespace jetinv {

namespace {

Expression d(const Expression& e, std::string_view v) { return e.differentiate(var(v)); }

}  // namespace

bool independent(const CurveFamily& F) {
  const char* axes[3] = {"x", "y", "p"};
  for (int i = 0; i < 3; ++i) {
    for (int j = i + 1; j < 3; ++j) {
      Expression minor = d(F.a, axes[i]) * d(F.b, axes[j]) - d(F.a, axes[j]) * d(F.b, axes[i]);
      if (!minor.is_zero()) return true;
    }
  }
  return false;
}

Section family_to_section(const CurveFamily& F) {
  Expression ax = d(F.a, "x"), ay = d(F.a, "y"), ap = d(F.a, "p");
  Expression bx = d(F.b, "x"), by = d(F.b, "y"), bp = d(F.b, "p");
  Expression den = ay * bp - ap * by;
  if (den.is_zero()) throw InputError("degenerate family: a_y b_p - a_p b_y vanishes identically");
  Section s;
  s.bundle = Bundle::pi;
  s.f = (ax * by - ay * bx) / den;
  s.g = (ap * bx - ax * bp) / den;
  return s;
}

Expression along_field(const Expression& e, const Expression& lambda) {
  return d(e, "x") + var_expr("p") * d(e, "y") + lambda * d(e, "p");
}

bool is_integral(const Expression& e, const Expression& lambda) {
  return along_field(e, lambda).is_zero();
}

IntegralityReport check_contact_integrality(const CurveFamily& F, const Expression& G) {
  IntegralityReport r;
  Section s;
  try {
    s = family_to_section(F);
  } catch (const InputError&) {
    return r;
  }
  r.contact = (s.g - var_expr("p")).is_zero();
  if (r.contact) {
    r.f = s.f;
    r.matches = (s.f - G).is_zero();
  }
  return r;
}

AssociatedEquation associated_equation(const Expression& h) {
  Expression ha = d(h, "a1"), hb = d(h, "b1");
  if (hb.is_zero()) throw InputError("h_b1 vanishes identically");
  Expression haa = d(ha, "a1"), hab = d(ha, "b1"), hbb = d(hb, "b1");
  AssociatedEquation out;
  out.c = -ha / hb;
  out.G2 = -(haa * hb * hb - Expression(2) * ha * hb * hab + hbb * ha * ha) / hb.pow(3);
  return out;
}

std::optional<Expression> associated_ode(const AssociatedEquation& eq,
                                         const std::optional<Expression>& a2_of_abc) {
  Expression g = eq.G2;
  if (g.depends_on(var("a2"))) {
    if (!a2_of_abc) return std::nullopt;
    // c(a1, b1, a2(a1, b1, c)) must give back c
    Expression back = eq.c.substitute({{var("a2"), *a2_of_abc}});
    if (!(back - var_expr("c")).is_zero()) {
      throw InputError("supplied a2(a, b, c) does not invert c = -h_a1 / h_b1");
    }
    g = g.substitute({{var("a2"), *a2_of_abc}});
  }
  return g.substitute({{var("a1"), var_expr("x")}, {var("b1"), var_expr("y")}, {var("c"), var_expr("p")}});
}

namespace {

/// h(a1, b1, a2, b2) with the integrals substituted, as a function of (x, y, p).
Expression on_integrals(const Expression& h, const DualInput& in) {
  return h.substitute({{var("a1"), in.integrals1.a},
                       {var("b1"), in.integrals1.b},
                       {var("a2"), in.integrals2.a},
                       {var("b2"), in.integrals2.b}});
}

/// Renames (a1, b1, a2, b2) -> (a2, b2, a1, b1).
Expression exchange(const Expression& h) {
  return h.substitute({{var("a1"), var_expr("a2")},
                       {var("b1"), var_expr("b2")},
                       {var("a2"), var_expr("a1")},
                       {var("b2"), var_expr("b1")}});
}

}  // namespace

void check_roots_and_integrals(const DualInput& in) {
  if ((in.lambda1 - in.lambda2).is_zero()) throw InputError("roots are not distinct");
  if (!independent(in.integrals1) || !independent(in.integrals2)) {
    throw InputError("integrals are not independent");
  }
  if (!is_integral(in.integrals1.a, in.lambda1) || !is_integral(in.integrals1.b, in.lambda1)) {
    throw InputError("(a1, b1) are not integrals of X1");
  }
  if (!is_integral(in.integrals2.a, in.lambda2) || !is_integral(in.integrals2.b, in.lambda2)) {
    throw InputError("(a2, b2) are not integrals of X2");
  }
  if (!(on_integrals(in.h12, in) - in.integrals2.b).is_zero()) {
    throw InputError("b2 != h12(a1, b1, a2) on the integrals");
  }
}

DualPair dual_swap(const DualInput& in) {
  check_roots_and_integrals(in);
  if (!(on_integrals(in.h21, in) - in.integrals1.b).is_zero()) {
    throw InputError("b1 != h21(a2, b2, a1) on the integrals");
  }
  DualPair out;
  out.first = associated_equation(in.h12);
  // in the exchanged labels h21 plays the role of h12
  out.second = associated_equation(exchange(in.h21));
  return out;
}

DualInput swap_labels(const DualInput& in) {
  return {in.lambda2, in.lambda1, in.integrals2, in.integrals1, exchange(in.h21), exchange(in.h12)};
}

}  // namespace jetinv
