#pragma once

#include <array>
#include <memory>
#include <utility>
#include <vector>

#include "jetinv/expr/expression.hpp"
#include "jetinv/jets/jets.hpp"

namespace jetinv {

/// Parameters in the order a0, b0, a11, a12, a21, a22, c1, c2 (kSl3ParameterNames).
struct SL3Element {
  std::array<Expression, 8> params;

  const Expression& operator[](std::string_view name) const;
  /// xi = a0 + a11 x + a12 y + (c1 x + c2 y) x, eta = b0 + a21 x + a22 y + (c1 x + c2 y) y.
  std::pair<Expression, Expression> point_field() const;
  bool is_zero() const;
};

/// The eight coordinate fields, one parameter set to 1.
std::vector<SL3Element> sl3_basis();
/// Element whose parameters are the formal variables a0 ... c2.
SL3Element sl3_generic();

/// Bracket [X, Y] = XY - YX of the point fields, read back as parameters.
SL3Element bracket(const SL3Element& a, const SL3Element& b);

/// Contact prolongation of the point field, lifted to jets of the bundle.
LiftedField lift(const SL3Element& g, Bundle bundle, int budget = kDefaultOrderBudget);
/// Shared lift of the generic element; components are cached across calls.
const LiftedField& lift_generic(Bundle bundle);

/// Weight: expression linear in the parameters a0 ... c2.
using Weight = Expression;

Weight weight_at(const Weight& mu, const SL3Element& g);

/// X(F) - mu F == 0 for the generic field.
bool check_relative(const Expression& f, const Weight& mu, Bundle bundle);
/// X(I) == 0 for the generic field.
bool check_absolute(const Expression& invariant, Bundle bundle);

/// mu_[X,Y] = X(mu_Y) - Y(mu_X) over all 28 basis pairs.
bool check_weight_cocycle(const Weight& mu, Bundle bundle);

/// Coefficient vector of a weight over the given monomial basis, or nullopt if
/// the weight has a term outside it.
std::optional<std::vector<Rational>> weight_coordinates(const Weight& mu,
                                                        const std::vector<Expression>& basis);

/// Every weight lies in the Q-span of the generators (coordinates over `monomials`).
bool weights_in_span(const std::vector<Weight>& weights, const std::vector<Weight>& generators,
                     const std::vector<Expression>& monomials);

/// 3x3 matrix of the projective transformation exp(g) of the plane, with
/// (x, y) -> ((m11 x + m12 y + m13) / (m31 x + m32 y + m33), (m21 x + ...) / (...)).
using Matrix3 = std::array<std::array<double, 3>, 3>;
Matrix3 sl3_matrix(const std::array<double, 8>& params);
Matrix3 matrix_exp(const Matrix3& m);
Matrix3 matrix_inverse(const Matrix3& m);

}  // namespace jetinv
