#pragma once

#include <optional>
#include <string>

#include "jetinv/jets/jets.hpp"

namespace jetinv {

/// Curves {a = const, b = const} in R^3(x, y, p).
struct CurveFamily {
  Expression a;
  Expression b;
};

/// Some 2x2 minor of d(a, b)/d(x, y, p) is not identically zero.
bool independent(const CurveFamily& family);

/// f = (a_x b_y - a_y b_x) / D, g = (a_p b_x - a_x b_p) / D, D = a_y b_p - a_p b_y.
/// Throws InputError when D vanishes identically.
Section family_to_section(const CurveFamily& family);

/// X(e) for X = d/dx + p d/dy + lambda d/dp.
Expression along_field(const Expression& e, const Expression& lambda);
bool is_integral(const Expression& e, const Expression& lambda);

struct IntegralityReport {
  bool contact = false;  // the family's direction field is d/dx + p d/dy + f d/dp
  std::optional<Expression> f;
  bool matches = false;  // contact and f == G
};
IntegralityReport check_contact_integrality(const CurveFamily& family, const Expression& G);

/// Coordinates (a, b, c) = (a1, b1, -h_a1 / h_b1) and the right side G2 of the
/// associated equation, for b2 = h(a1, b1, a2). Expressions are in a1, b1, a2.
struct AssociatedEquation {
  Expression c;
  Expression G2;
};
AssociatedEquation associated_equation(const Expression& h);

/// G2 as the right side of y'' = G2(x, y, p) with (x, y, p) = (a, b, c). When
/// G2 depends on a2, `a2_of_abc` must give a2 as a function of (a1, b1, c)
/// written in the variables a1, b1, c; it is checked to invert c. Returns
/// nullopt if a2 remains.
std::optional<Expression> associated_ode(const AssociatedEquation& eq,
                                         const std::optional<Expression>& a2_of_abc = std::nullopt);

/// Roots y'' = lambda_1, y'' = lambda_2 with integral pairs of X1, X2; h12 gives b2 in
/// terms of (a1, b1, a2) and h21 gives b1 in terms of (a2, b2, a1), both in
/// the variables a1, b1, a2, b2.
struct DualInput {
  Expression lambda1, lambda2;
  CurveFamily integrals1, integrals2;
  Expression h12, h21;
};

struct DualPair {
  AssociatedEquation first;   // determined by X2, from h12
  AssociatedEquation second;  // determined by X1, roles exchanged, from h21
};

/// Distinct roots, independent integrals of X1 and X2, and b2 = h12(a1, b1, a2)
/// on them. h21 is not used. Throws InputError naming the failed check.
void check_roots_and_integrals(const DualInput& in);

/// Verifies distinct roots, the integrals and both interdependencies exactly,
/// then builds both associated equations. Throws InputError naming the failed check.
DualPair dual_swap(const DualInput& in);
/// Exchanges the labels 1 and 2.
DualInput swap_labels(const DualInput& in);

}  // namespace jetinv
