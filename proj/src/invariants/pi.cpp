#include "jetinv/invariants/pi.hpp"

#include <cmath>
#include <mutex>

#include "jetinv/errors.hpp"
#include "jetinv/expr/linalg.hpp"
#include "jetinv/expr/parser.hpp"

namespace jetinv {

namespace {

CatalogText pi_text() {
  CatalogText t;
  t.bundle = Bundle::pi;
  const char* mu_l1 = "-2*a11 + a22 - 3*a12*g - 3*c1*x - 3*c2*g*x";
  t.relative = {
      {"I0", 0, "p - g", "-a11 + a22 - a12*(p+g) - c1*x + c2*(y - x*(p+g))"},
      {"I1", 1, "g_p", "2*(c2*x + a12)*(p-g)"},
      {"L1", 1, "g_x + g*g_y + f*g_p", mu_l1},
      {"L2", 1, "(-2+g_p)*f + (p-g)*f_p - p*g_y - g_x",
       "-2*a11 + a22 - a12*(p+2*g) - 3*c1*x - c2*(p+2*g)*x"},
      {"L3", 1, "-f^2 + (p*g_y + g_x)*f + (p*f_y + f_x)*(p-g)",
       "-4*a11 + 2*a22 - 2*a12*(2*p+g) - 6*c1*x - 2*c2*(2*p+g)*x"},
      {"L4", 1, "(-2+g_p)*f^2 + (g_x + g*g_y)*f + (f_x + g*f_y + f*f_p)*(p-g)",
       "-4*a11 + 2*a22 - 3*a12*(p+g) - 6*c1*x - 3*c2*(p+g)*x"},
      {"L5", 2, "(p-g)*(f_pp*(p-g) + f*g_pp + 2*f_p*(g_p-1)) + 2*f*(g_p-1)^2", mu_l1},
      {"L6", 2, "(p-g)*(g_xp + g*g_yp + f*g_pp + (4*f_p - 2*g_y)*g_p) + 6*f*g_p*(g_p-1)",
       "-2*a11 + a22 + a12*(p-4*g) - 3*c1*x + c2*(p-4*g)*x"},
      {"L7", 2, "g_pp*(p-g) + 2*g_p^2 + 2*g_p", "3*(c2*x + a12)*(p-g)"},
      {"L8", 2, "p*(p-g)*g_yp + (p-g)*g_xp + 2*g_p*(p*g_y + g_x + f)", mu_l1},
      {"L9", 2,
       "(p-g)*(g_xx + 2*g*g_xy + g^2*g_yy + f*(2*g_xp + 2*g*g_yp + f*g_pp)"
       " + 4*f_p*(g_x + g*g_y + f*g_p))"
       " + 2*f*g_p*(3*f*(g_p-1) + 4*g_x + 4*g*g_y) - 2*(g_x + g*g_y)*(4*f - g_x - g*g_y)",
       "-4*a11 + 2*a22 - a12*(p+5*g) - c2*(p+5*g)*x",
       // the printed weight lacks the c1 term; this one passes the invariance check
       "-4*a11 + 2*a22 - a12*(p+5*g) - 6*c1*x - c2*(p+5*g)*x"},
      {"L10", 2,
       "(p-g)*(g_xx + (p+g)*g_xy + p*g*g_yy + f*(g_xp + p*g_yp) + g_p*(p*f_y + f_x + 3*f*g_y))"
       " + 3*f*g_p*(g_x + g*g_y) + (g_x + p*g_y)*(3*g_x + (p+2*g)*g_y)",
       "-4*a11 + 2*a22 - 2*a12*(p+2*g) - 6*c1*x - 2*c2*(p+2*g)*x"},
  };
  Rational half(1, 2), three_halves(3, 2);
  t.absolute = {
      {"J1", 1, "abs(I1)^(1/2)*L2/L1", {{"I1", half}, {"L2", 1}, {"L1", -1}}},
      {"J2", 1, "I1^2*L3/L1^2", {{"I1", 2}, {"L3", 1}, {"L1", -2}}},
      {"J3", 1, "abs(I1)^(3/2)*L4/L1^2", {{"I1", three_halves}, {"L4", 1}, {"L1", -2}}},
      {"K1", 2, "L5/L1", {{"L5", 1}, {"L1", -1}}},
      {"K2", 2, "L6/(abs(I1)^(1/2)*L1)", {{"L6", 1}, {"I1", -half}, {"L1", -1}}},
      {"K3", 2, "L7/abs(I1)^(3/2)", {{"L7", 1}, {"I1", -three_halves}}},
      {"K4", 2, "L8/L1", {{"L8", 1}, {"L1", -1}}},
      {"K5", 2, "abs(I1)^(1/2)*L9/L1^2", {{"I1", half}, {"L9", 1}, {"L1", -2}}},
      {"K6", 2, "I1*L10/L1^2", {{"I1", 1}, {"L10", 1}, {"L1", -2}}},
  };
  t.derivations = {{
      {"0", "0", "I0/abs(I1)^(1/2)"},
      {"I0*I1/L1", "p*I0*I1/L1", "0"},
      {"I0*abs(I1)^(1/2)/L1", "g*I0*abs(I1)^(1/2)/L1", "f*I0*abs(I1)^(1/2)/L1"},
  }};
  return t;
}

Expression P(const std::string& s) {
  ParseOptions opts;
  opts.symbols = &catalog_pi().symbols();
  return parse(s, opts);
}

}  // namespace

const Catalog& catalog_pi() {
  static const Catalog catalog(pi_text());
  return catalog;
}

std::vector<CommutatorRelation> commutator_relations_pi() {
  return {
      {1, 2, {P("K4/2"), P("K3 - K2 + 3*J1"), P("-1")}},
      {1, 3, {P("(K2 - 2*J1)/2"), P("1"), P("(K3 - 2*K2 + 6*J1)/2")}},
      {2, 3, {P("J2"), P("K5 - K2 + J3"), P("(K4 - 2*K6)/2")}},
  };
}

std::vector<std::string> u12_row_names() {
  std::vector<std::string> names = {"K1", "K2", "K3"};
  for (int i = 1; i <= 3; ++i) {
    for (int k = 1; k <= 3; ++k) names.push_back("nabla" + std::to_string(i) + "J" + std::to_string(k));
  }
  return names;
}

std::vector<Expression> u12_rows() {
  const auto& c = catalog_pi();
  std::vector<Expression> rows = {c("K1"), c("K2"), c("K3")};
  for (int i = 1; i <= 3; ++i) {
    for (int k = 1; k <= 3; ++k) rows.push_back(c.nabla(i, c("J" + std::to_string(k))));
  }
  return rows;
}

Expression det_u12_formula() { return P("2*I0^23*I1^14*(L1*L3 + L2*L4)/L1^23"); }

Expression det_u12_formula_j() { return P("2*I0^23*I1^12*(J2 + J1*J3)/L1^20"); }

Expression det_u12_observed() { return P("2*I0^26*I1^13*(L1*L3 + L2*L4)/L1^25"); }

std::array<std::array<Expression, 3>, 3> matrix_w() {
  const auto& c = catalog_pi();
  std::array<std::array<Expression, 3>, 3> w;
  for (int i = 0; i < 3; ++i) {
    for (int k = 0; k < 3; ++k) w[i][k] = c.nabla(i + 1, c("J" + std::to_string(k + 1)));
  }
  return w;
}

std::array<std::array<Expression, 3>, 3> matrix_u() {
  const auto& c = catalog_pi();
  std::array<std::array<Expression, 3>, 3> u;
  for (int i = 0; i < 3; ++i) {
    for (int k = 0; k < 3; ++k) u[i][k] = total_derivative(c("J" + std::to_string(k + 1)), i);
  }
  return u;
}

namespace {

/// Exact rational value of each expression at a sampled jet point.
std::vector<Rational> eval_all(const std::vector<Expression>& es, const RationalPoint& pt) {
  auto b = binding(pt);
  std::vector<Rational> out;
  out.reserve(es.size());
  for (const auto& e : es) out.push_back(e.eval(b));
  return out;
}

const std::vector<Expression>& u12_symbols() {
  static const std::vector<Expression> symbols = [] {
    std::vector<Expression> out;
    auto cols = jets_of_order(Bundle::pi, 2);
    for (const auto& r : u12_rows()) {
      auto row = symbol_row(r, cols);
      out.insert(out.end(), row.begin(), row.end());
    }
    return out;
  }();
  return symbols;
}

}  // namespace

DetReport check_det_u12(int points, std::uint64_t seed, const Expression& rhs_in, int i1_sign) {
  std::vector<std::pair<Expression, int>> chart = {{catalog_pi()("I1"), i1_sign}};
  std::vector<Expression> symbols;
  for (const auto& e : u12_symbols()) symbols.push_back(i1_sign ? on_chart(e, chart) : e);
  Expression rhs = i1_sign ? on_chart(rhs_in, chart) : rhs_in;
  std::vector<Expression> all = symbols;
  all.push_back(rhs);
  PointSampler sampler(all, seed);
  DetReport report;
  int plus = 0, minus = 0;
  int attempts = 0;
  while (report.points < points && attempts++ < 20 * points) {
    auto pt = sampler.next();
    if (!pt) continue;
    try {
      auto vals = eval_all(symbols, *pt);
      Rational expected = rhs.eval(binding(*pt));
      RationalMatrix m(12, std::vector<Rational>(12));
      for (int i = 0; i < 12; ++i) {
        for (int j = 0; j < 12; ++j) m[i][j] = vals[12 * i + j];
      }
      Rational det = determinant(m);
      ++report.points;
      if (det == expected) ++plus;
      if (det == -expected) ++minus;
    } catch (const DivisionByZero&) {
      ++report.skipped;
    }
  }
  report.plus = plus;
  report.minus = minus;
  if (report.points > 0 && plus == report.points) {
    report.sign = 1;
  } else if (report.points > 0 && minus == report.points) {
    report.sign = -1;
  }
  report.failures = report.sign == 0 ? report.points - std::max(plus, minus) : 0;
  if (report.sign == 0 && report.failures == 0) report.failures = report.points;
  return report;
}

IdentityReport check_det_u_w(int points, std::uint64_t seed) {
  auto w = matrix_w();
  auto u = matrix_u();
  Expression factor = P("-L1^2/(I0^4*I1)");
  std::vector<Expression> all{factor};
  for (int i = 0; i < 3; ++i) {
    for (int k = 0; k < 3; ++k) {
      all.push_back(w[i][k]);
      all.push_back(u[i][k]);
    }
  }
  PointSampler sampler(all, seed);
  IdentityReport report;
  int attempts = 0;
  while (report.points < points && attempts++ < 20 * points) {
    auto pt = sampler.next();
    if (!pt) continue;
    try {
      auto b = binding(*pt);
      RationalMatrix mw(3, std::vector<Rational>(3)), mu(3, std::vector<Rational>(3));
      for (int i = 0; i < 3; ++i) {
        for (int k = 0; k < 3; ++k) {
          mw[i][k] = w[i][k].eval(b);
          mu[i][k] = u[i][k].eval(b);
        }
      }
      Rational f = factor.eval(b);
      ++report.points;
      if (determinant(mu) != f * determinant(mw)) ++report.failures;
    } catch (const DivisionByZero&) {
      ++report.skipped;
    }
  }
  return report;
}

RegularityReport regularity_pi(const SectionJets::Values& v, double tau) {
  static const std::vector<std::pair<std::string, Expression>> factors = [] {
    const auto& c = catalog_pi();
    return std::vector<std::pair<std::string, Expression>>{
        {"I0", c("I0")},
        {"I1", c("I1")},
        {"L1", c("L1")},
        {"L1L3+L2L4", c("L1") * c("L3") + c("L2") * c("L4")}};
  }();
  static const auto w = matrix_w();
  RegularityReport report;
  for (const auto& [name, f] : factors) {
    if (numerically_zero(f, v, tau)) report.vanishing.push_back(name);
  }
  if (report.vanishing.empty()) {
    double m[3][3];
    double scale = 0;
    try {
      for (int i = 0; i < 3; ++i) {
        for (int k = 0; k < 3; ++k) {
          m[i][k] = SectionJets::eval(w[i][k], v);
          scale = std::max(scale, std::fabs(m[i][k]));
        }
      }
      double det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
                   m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
                   m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
      if (!(std::fabs(det) > tau * std::max(1.0, scale * scale * scale))) {
        report.vanishing.push_back("detW");
      }
    } catch (const DivisionByZero&) {
      report.vanishing.push_back("detW");
    }
  }
  report.regular = report.vanishing.empty();
  return report;
}

RegularityReport regularity_pi(const Section& s, const std::array<double, 3>& point, double tau) {
  SectionJets jets(s, 2);
  try {
    return regularity_pi(jets.at(point), tau);
  } catch (const DivisionByZero&) {
    return {false, {"section"}};
  }
}

Chart positive_chart_pi() { return {{catalog_pi()("I1"), 1}}; }

std::vector<std::string> signature_names_pi() {
  std::vector<std::string> names = {"j1", "j2", "j3", "k1", "k2", "k3"};
  for (int i = 1; i <= 3; ++i) {
    for (int k = 1; k <= 3; ++k) names.push_back("j" + std::to_string(i) + std::to_string(k));
  }
  return names;
}

std::vector<Expression> signature_functions_pi() {
  const auto& c = catalog_pi();
  std::vector<Expression> out = {c("J1"), c("J2"), c("J3"), c("K1"), c("K2"), c("K3")};
  for (int i = 1; i <= 3; ++i) {
    for (int k = 1; k <= 3; ++k) out.push_back(c.nabla(k, c("J" + std::to_string(i))));
  }
  return out;
}

}  // namespace jetinv
