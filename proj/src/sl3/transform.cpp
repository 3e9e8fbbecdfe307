#include "jetinv/sl3/transform.hpp"

#include <cmath>
#include <stdexcept>

namespace jetinv {

RationalMatrix3 rationalize(const Matrix3& m, long denominator) {
  RationalMatrix3 out;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      out[i][j] = Rational(std::lround(m[i][j] * denominator), denominator);
      out[i][j].canonicalize();
    }
  }
  return out;
}

Matrix3 to_double(const RationalMatrix3& m) {
  Matrix3 out;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) out[i][j] = m[i][j].get_d();
  }
  return out;
}

RationalMatrix3 inverse(const RationalMatrix3& m) {
  auto cof = [&](int r, int c) {
    int r0 = (r + 1) % 3, r1 = (r + 2) % 3, c0 = (c + 1) % 3, c1 = (c + 2) % 3;
    return Rational(m[r0][c0] * m[r1][c1] - m[r0][c1] * m[r1][c0]);
  };
  Rational det = m[0][0] * cof(0, 0) + m[0][1] * cof(0, 1) + m[0][2] * cof(0, 2);
  if (det == 0) throw std::invalid_argument("singular projective matrix");
  RationalMatrix3 out;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) out[i][j] = cof(j, i) / det;
  }
  return out;
}

std::array<Expression, 3> prolonged_map(const RationalMatrix3& m) {
  Expression x = var_expr("x"), y = var_expr("y"), p = var_expr("p");
  auto row = [&](int i) { return Expression(m[i][0]) * x + Expression(m[i][1]) * y + Expression(m[i][2]); };
  Expression w = row(2);
  Expression X = row(0) / w, Y = row(1) / w;
  VarId vx = var("x"), vy = var("y");
  Expression P = (Y.differentiate(vx) + p * Y.differentiate(vy)) /
                 (X.differentiate(vx) + p * X.differentiate(vy));
  return {X, Y, P};
}

std::optional<std::array<double, 3>> map_point(const Matrix3& m, const std::array<double, 3>& q) {
  auto [x, y, p] = q;
  double w = m[2][0] * x + m[2][1] * y + m[2][2];
  double wp = m[2][0] + m[2][1] * p;
  double u = m[0][0] * x + m[0][1] * y + m[0][2], v = m[1][0] * x + m[1][1] * y + m[1][2];
  double up = m[0][0] + m[0][1] * p, vp = m[1][0] + m[1][1] * p;
  // dX = (up w - u wp) / w^2 dx, dY = (vp w - v wp) / w^2 dx
  double dx = up * w - u * wp, dy = vp * w - v * wp;
  if (std::fabs(w) < 1e-12 || std::fabs(dx) < 1e-12) return std::nullopt;
  return std::array<double, 3>{u / w, v / w, dy / dx};
}

Section pushforward(const Section& s, const RationalMatrix3& m) {
  Expression g = s.bundle == Bundle::pi ? s.g : var_expr("p");
  VarId vx = var("x"), vy = var("y"), vp = var("p");
  auto along = [&](const Expression& e) {
    return e.differentiate(vx) + g * e.differentiate(vy) + s.f * e.differentiate(vp);
  };
  auto fwd = prolonged_map(m);
  Expression vX = along(fwd[0]);
  Expression new_g = along(fwd[1]) / vX;
  Expression new_f = along(fwd[2]) / vX;
  auto back = prolonged_map(inverse(m));
  std::map<VarId, Expression> images{{vx, back[0]}, {vy, back[1]}, {vp, back[2]}};
  Section out;
  out.bundle = s.bundle;
  out.f = new_f.substitute(images);
  if (s.bundle == Bundle::pi) {
    out.g = new_g.substitute(images);
  } else {
    out.g = var_expr("p");
  }
  return out;
}

}  // namespace jetinv
