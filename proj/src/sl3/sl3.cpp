#include "jetinv/sl3/sl3.hpp"

#include <cmath>
#include <stdexcept>

#include "jetinv/expr/linalg.hpp"

namespace jetinv {

namespace {

int param_index(std::string_view name) {
  for (std::size_t i = 0; i < kSl3ParameterNames.size(); ++i) {
    if (kSl3ParameterNames[i] == name) return static_cast<int>(i);
  }
  throw std::invalid_argument("unknown sl3 parameter " + std::string(name));
}

/// Coefficient of x^i y^j in a polynomial expression of x and y.
Rational coefficient_xy(const Expression& e, std::uint32_t i, std::uint32_t j) {
  if (!e.is_polynomial()) throw std::logic_error("bracket field is not polynomial");
  VarId x = var("x"), y = var("y");
  for (const auto& t : e.numerator().terms()) {
    if (t.mono.degree(x) == i && t.mono.degree(y) == j && t.mono.total_degree() == i + j) {
      return t.coef;
    }
  }
  return 0;
}

}  // namespace

const Expression& SL3Element::operator[](std::string_view name) const {
  return params[param_index(name)];
}

std::pair<Expression, Expression> SL3Element::point_field() const {
  Expression x = var_expr("x"), y = var_expr("y");
  const auto& P = *this;
  Expression quad = P["c1"] * x + P["c2"] * y;
  Expression xi = P["a0"] + P["a11"] * x + P["a12"] * y + quad * x;
  Expression eta = P["b0"] + P["a21"] * x + P["a22"] * y + quad * y;
  return {xi, eta};
}

bool SL3Element::is_zero() const {
  for (const auto& p : params) {
    if (!p.is_zero()) return false;
  }
  return true;
}

std::vector<SL3Element> sl3_basis() {
  std::vector<SL3Element> out(8);
  for (std::size_t i = 0; i < 8; ++i) out[i].params[i] = Expression(1);
  return out;
}

SL3Element sl3_generic() {
  SL3Element g;
  for (std::size_t i = 0; i < 8; ++i) g.params[i] = var_expr(kSl3ParameterNames[i]);
  return g;
}

SL3Element bracket(const SL3Element& a, const SL3Element& b) {
  auto [xa, ya] = a.point_field();
  auto [xb, yb] = b.point_field();
  VarId x = var("x"), y = var("y");
  auto apply = [&](const Expression& xi, const Expression& eta, const Expression& f) {
    return xi * f.differentiate(x) + eta * f.differentiate(y);
  };
  Expression xi = apply(xa, ya, xb) - apply(xb, yb, xa);
  Expression eta = apply(xa, ya, yb) - apply(xb, yb, ya);
  SL3Element out;
  auto set = [&](std::string_view n, Rational v) { out.params[param_index(n)] = Expression(v); };
  set("a0", coefficient_xy(xi, 0, 0));
  set("a11", coefficient_xy(xi, 1, 0));
  set("a12", coefficient_xy(xi, 0, 1));
  set("c1", coefficient_xy(xi, 2, 0));
  set("c2", coefficient_xy(xi, 1, 1));
  set("b0", coefficient_xy(eta, 0, 0));
  set("a21", coefficient_xy(eta, 1, 0));
  set("a22", coefficient_xy(eta, 0, 1));
  auto [rxi, reta] = out.point_field();
  if (!canonical_equal(rxi, xi) || !canonical_equal(reta, eta)) {
    throw std::logic_error("bracket left the algebra");
  }
  return out;
}

LiftedField lift(const SL3Element& g, Bundle bundle, int budget) {
  auto [xi, eta] = g.point_field();
  Expression zeta = prolong_contact(xi, eta);
  return LiftedField(xi, eta, zeta, bundle, budget);
}

const LiftedField& lift_generic(Bundle bundle) {
  static const LiftedField pi = lift(sl3_generic(), Bundle::pi);
  static const LiftedField pitilde = lift(sl3_generic(), Bundle::pitilde);
  return bundle == Bundle::pi ? pi : pitilde;
}

Weight weight_at(const Weight& mu, const SL3Element& g) {
  std::map<VarId, Expression> images;
  for (std::size_t i = 0; i < 8; ++i) images.emplace(var(kSl3ParameterNames[i]), g.params[i]);
  return mu.substitute(images);
}

bool check_relative(const Expression& f, const Weight& mu, Bundle bundle) {
  return (lift_generic(bundle).apply(f) - mu * f).is_zero();
}

bool check_absolute(const Expression& invariant, Bundle bundle) {
  return lift_generic(bundle).apply(invariant).is_zero();
}

bool check_weight_cocycle(const Weight& mu, Bundle bundle) {
  auto basis = sl3_basis();
  std::vector<LiftedField> lifts;
  for (const auto& b : basis) lifts.push_back(lift(b, bundle));
  for (std::size_t i = 0; i < basis.size(); ++i) {
    for (std::size_t j = i + 1; j < basis.size(); ++j) {
      Weight lhs = weight_at(mu, bracket(basis[i], basis[j]));
      Weight rhs = lifts[i].apply(weight_at(mu, basis[j])) - lifts[j].apply(weight_at(mu, basis[i]));
      if (!canonical_equal(lhs, rhs)) return false;
    }
  }
  return true;
}

std::optional<std::vector<Rational>> weight_coordinates(const Weight& mu,
                                                        const std::vector<Expression>& basis) {
  if (!mu.is_polynomial()) return std::nullopt;
  std::vector<Rational> coords(basis.size(), 0);
  for (const auto& t : mu.numerator().terms()) {
    bool found = false;
    for (std::size_t i = 0; i < basis.size() && !found; ++i) {
      const auto& b = basis[i].numerator();
      if (b.size() == 1 && b.leading().mono == t.mono) {
        coords[i] = t.coef / b.leading().coef;
        found = true;
      }
    }
    if (!found) return std::nullopt;
  }
  return coords;
}

bool weights_in_span(const std::vector<Weight>& weights, const std::vector<Weight>& generators,
                     const std::vector<Expression>& monomials) {
  RationalMatrix rows;
  for (const auto& g : generators) {
    auto c = weight_coordinates(g, monomials);
    if (!c) return false;
    rows.push_back(*c);
  }
  for (const auto& w : weights) {
    auto c = weight_coordinates(w, monomials);
    if (!c || !solve_in_span(rows, *c)) return false;
  }
  return true;
}

Matrix3 sl3_matrix(const std::array<double, 8>& q) {
  // q in parameter order a0, b0, a11, a12, a21, a22, c1, c2
  double m33 = -(q[2] + q[5]) / 3;
  return {{{q[2] + m33, q[3], q[0]}, {q[4], q[5] + m33, q[1]}, {-q[6], -q[7], m33}}};
}

Matrix3 matrix_exp(const Matrix3& m) {
  Matrix3 result{}, term{};
  for (int i = 0; i < 3; ++i) result[i][i] = term[i][i] = 1;
  for (int k = 1; k < 40; ++k) {
    Matrix3 next{};
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        for (int l = 0; l < 3; ++l) next[i][j] += term[i][l] * m[l][j];
        next[i][j] /= k;
      }
    }
    term = next;
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) result[i][j] += term[i][j];
    }
  }
  return result;
}

Matrix3 matrix_inverse(const Matrix3& m) {
  Matrix3 inv{};
  double det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
               m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
               m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
  if (std::fabs(det) < 1e-300) throw std::domain_error("singular matrix");
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      int i1 = (j + 1) % 3, i2 = (j + 2) % 3, j1 = (i + 1) % 3, j2 = (i + 2) % 3;
      inv[i][j] = (m[i1][j1] * m[i2][j2] - m[i1][j2] * m[i2][j1]) / det;
    }
  }
  return inv;
}

}  // namespace jetinv
