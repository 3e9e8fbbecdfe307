#include "jetinv/invariants/pitilde.hpp"

#include <mutex>

#include "jetinv/errors.hpp"
#include "jetinv/expr/linalg.hpp"
#include "jetinv/expr/parser.hpp"

namespace jetinv {

namespace {

CatalogText pitilde_text() {
  CatalogText t;
  t.bundle = Bundle::pitilde;
  const char* mu_i1 = "-4*a11 + a22 - 5*a12*p - 7*c1*x - c2*(5*x*p + 2*y)";
  t.relative = {
      {"I0", 0, "f", "-2*a11 + a22 - 3*a12*p - 3*c1*x - 3*c2*x*p"},
      {"I1", 1, "p*f_y*f_p - 3*f*f_y + f_x*f_p", mu_i1},
      {"H1", 2, "3*f_pp*f^2 - 2*f*f_p^2", mu_i1},
      {"H2", 2, "3*f*(f_xx + 2*p*f_xy + p^2*f_yy) - 4*(p*f_y + f_x)^2",
       "2*(-3*a11 + a22 - 4*a12*p - 5*c1*x - c2*(4*x*p + y))"},
      {"H3", 2,
       "3*f*f_p*f_xp + 3*f*(p*f_p - 3*f)*f_yp + 3*f*(p*f_y + f_x)*f_pp"
       " + f_p*(9*f*f_y - 5*f_p*(p*f_y + f_x))",
       "-5*a11 + a22 - 6*a12*p - 9*c1*x - 3*c2*(2*x*p + y)"},
      {"H4", 2,
       "3*f*(f_p*f_xx + (2*p*f_p - 3*f)*f_xy + (p*f_y + f_x)*(f_xp + p*f_yp)"
       " + p*(p*f_p - 3*f)*f_yy) - (p*f_y + f_x)*(7*f_p*(p*f_y + f_x) - 12*f*f_y)",
       "-7*a11 + 2*a22 - 9*a12*p - 12*c1*x - 3*c2*(3*x*p + y)"},
      {"H5", 2,
       "3*f*(f_p^2*f_xx + 2*f_p*(p*f_p - 3*f)*f_xy + (p*f_p - 3*f)^2*f_yy"
       " + 2*(2*p*f_y*f_p + 2*f_x*f_p - 3*f*f_y)*f_xp"
       " + 2*(2*p^2*f_y*f_p + 2*p*f_x*f_p - 6*p*f*f_y - 3*f*f_x)*f_yp + (p*f_y + f_x)^2*f_pp)"
       " - 18*f_p^2*(p*f_y + f_x)^2 + 60*f*f_y*f_p*(p*f_y + f_x) - 36*f^2*f_y^2",
       "2*(-4*a11 + a22 - 5*a12*p - 7*c1*x - c2*(5*x*p + 2*y))"},
  };
  Rational half(1, 2), three_halves(3, 2);
  t.absolute = {
      {"M1", 2, "H1/I1", {{"H1", 1}, {"I1", -1}}},
      {"M2", 2, "H2/(I0*I1)", {{"H2", 1}, {"I0", -1}, {"I1", -1}}},
      {"M3", 2, "abs(I0)^(1/2)*H3/abs(I1)^(3/2)", {{"I0", half}, {"H3", 1}, {"I1", -three_halves}}},
      {"M4", 2, "H4/(abs(I0)^(1/2)*abs(I1)^(3/2))",
       {{"H4", 1}, {"I0", -half}, {"I1", -three_halves}}},
      {"M5", 2, "H5/I1^2", {{"H5", 1}, {"I1", -2}}},
  };
  t.derivations = {{
      {"0", "0", "abs(I0)^(3/2)/abs(I1)^(1/2)"},
      {"abs(I0)^(1/2)/abs(I1)^(1/2)", "p*abs(I0)^(1/2)/abs(I1)^(1/2)", "0"},
      {"f_p*I0/I1", "(p*f_p - 3*f)*I0/I1", "(p*f_y + f_x)*I0/I1"},
  }};
  return t;
}

Expression P(const std::string& s) {
  ParseOptions opts;
  opts.symbols = &catalog_pitilde().symbols();
  return parse(s, opts);
}

}  // namespace

const Catalog& catalog_pitilde() {
  static const Catalog catalog(pitilde_text());
  return catalog;
}

std::vector<std::pair<Expression, int>> positive_chart_pitilde() {
  const auto& c = catalog_pitilde();
  return {{c("I0"), 1}, {c("I1"), 1}};
}

std::vector<CommutatorRelation> commutator_relations_pitilde() {
  return {
      {1, 2, {P("M4/6"), P("-M3/6"), P("-1/3")}},
      {1, 3, {P("(M5 - 4)/6"), P("M1/3"), P("-M3/3")}},
      {2, 3, {P("M2/3"), P("(M5 + 4)/6"), P("-M4/3")}},
  };
}

const Expression& m_derived(int i, int k) {
  static std::mutex mutex;
  static std::map<std::pair<int, int>, Expression> cache;
  std::lock_guard lock(mutex);
  auto key = std::make_pair(i, k);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  const auto& c = catalog_pitilde();
  Expression v = c.nabla(i, c("M" + std::to_string(k)));
  return cache.emplace(key, std::move(v)).first->second;
}

std::vector<std::string> formal_symbol_names() {
  std::vector<std::string> names;
  for (int k = 1; k <= 5; ++k) names.push_back("M" + std::to_string(k));
  for (int i = 1; i <= 3; ++i) {
    for (int k = 1; k <= 5; ++k) names.push_back("M" + std::to_string(i) + std::to_string(k));
  }
  return names;
}

namespace {

const char* const kSyzygyText[5] = {
    "6*M34 - 6*M25 - M4*M5 + 12*M4 + 6*M2*M3 + 12*M2",
    "12*M33 - 12*M15 + 24*M21 + 12*M1*M4 - 2*M3*M5 - 24*M3",
    "3*M23 - 3*M14 + M5",
    "6*M31 - 6*M13 + 2*M1*M5 - 3*M3^2 - 6*M1",
    "6*M32 - 6*M24 + 2*M2*M5 - 3*M4^2 + 6*M2",
};

}  // namespace

std::vector<Expression> syzygies() {
  std::vector<Expression> out;
  for (const auto& f : syzygies_formal()) out.push_back(instantiate_formal(f));
  return out;
}

Expression instantiate_formal(const Expression& formal) {
  const auto& c = catalog_pitilde();
  std::map<VarId, Expression> images;
  for (int k = 1; k <= 5; ++k) {
    images[var("M" + std::to_string(k))] = c("M" + std::to_string(k));
    for (int i = 1; i <= 3; ++i) {
      images[var("M" + std::to_string(i) + std::to_string(k))] = m_derived(i, k);
    }
  }
  return formal.substitute(images);
}

std::vector<Expression> syzygies_corrected_formal() {
  auto out = syzygies_formal();
  out[0] = parse("6*M34 - 6*M25 - M4*M5 + 12*M4 + 6*M2*M3 + 12*M12");
  out[2] = parse("3*M23 - 3*M14 - M5");
  return out;
}

std::optional<Rational> proportionality(const Expression& a, const Expression& b) {
  if (a.is_zero() || b.is_zero()) return std::nullopt;
  Expression r = a / b;
  if (!r.is_constant()) return std::nullopt;
  return r.constant_value();
}

std::vector<bool> check_syzygies(const std::vector<Expression>& formal) {
  auto chart = positive_chart_pitilde();
  std::vector<bool> out;
  for (const auto& f : formal) out.push_back(on_chart(instantiate_formal(f), chart).is_zero());
  return out;
}

std::vector<Expression> syzygies_formal() {
  std::vector<Expression> out;
  for (const char* s : kSyzygyText) out.push_back(parse(s));
  return out;
}

std::vector<Expression> syzygies_from_jacobi() {
  // Write [D_i, D_j] = sum_k r^k_ij D_k with r over formal M symbols, where
  // D_i(M_k) = M_ik. The Jacobi identity
  //   [D_1,[D_2,D_3]] + [D_2,[D_3,D_1]] + [D_3,[D_1,D_2]] = 0
  // expands to sum over cyclic (i,j,l) of D_i(r_jl) D + r_jl [D_i, D] terms;
  // the coefficient of each D_m must vanish, giving three scalar relations.
  std::array<std::array<std::array<Expression, 3>, 4>, 4> r{};  // r[i][j][k]
  const char* texts[3][3] = {{"M4/6", "-M3/6", "-1/3"},
                             {"(M5 - 4)/6", "M1/3", "-M3/3"},
                             {"M2/3", "(M5 + 4)/6", "-M4/3"}};
  int pairs[3][2] = {{1, 2}, {1, 3}, {2, 3}};
  for (int n = 0; n < 3; ++n) {
    int i = pairs[n][0], j = pairs[n][1];
    for (int k = 0; k < 3; ++k) {
      r[i][j][k] = parse(texts[n][k]);
      r[j][i][k] = -r[i][j][k];
    }
  }
  // D_i applied to a polynomial in M1..M5: chain rule with D_i(M_k) = M_ik.
  auto D = [](int i, const Expression& e) {
    Expression out;
    for (int k = 1; k <= 5; ++k) {
      VarId mk = var("M" + std::to_string(k));
      Expression d = e.differentiate(mk);
      if (!d.is_zero()) out += d * var_expr("M" + std::to_string(i) + std::to_string(k));
    }
    return out;
  };
  // [D_a, [D_b, D_c]] = sum_k ( D_a(r_bc^k) D_k + r_bc^k [D_a, D_k] )
  std::array<Expression, 3> total;
  int cyc[3][3] = {{1, 2, 3}, {2, 3, 1}, {3, 1, 2}};
  for (auto& t : cyc) {
    int a = t[0], b = t[1], c = t[2];
    for (int k = 1; k <= 3; ++k) {
      const Expression& coef = r[b][c][k - 1];
      total[k - 1] += D(a, coef);
      if (a == k) continue;
      for (int m = 1; m <= 3; ++m) total[m - 1] += coef * r[a][k][m - 1];
    }
  }
  return {total[0], total[1], total[2]};
}

std::vector<std::pair<int, int>> u10_rows() {
  return {{1, 1}, {1, 2}, {1, 3}, {1, 4}, {1, 5}, {2, 1}, {2, 2}, {2, 4}, {2, 5}, {3, 5}};
}

Expression det_u10_formula() { return P("-3^20*I0^30/I1^25"); }

Expression det_u10_observed() { return P("-3^20*I0^30/I1^20"); }

DetReport check_det_u10(int points, std::uint64_t seed, const Expression& rhs_in, int chart_sign) {
  auto cols = jets_of_order(Bundle::pitilde, 3);
  const auto& c = catalog_pitilde();
  std::vector<std::pair<Expression, int>> chart = {{c("I0"), chart_sign}, {c("I1"), chart_sign}};
  std::vector<Expression> symbols;
  for (const auto& [i, k] : u10_rows()) {
    Expression row = chart_sign ? on_chart(m_derived(i, k), chart) : m_derived(i, k);
    auto s = symbol_row(row, cols);
    symbols.insert(symbols.end(), s.begin(), s.end());
  }
  Expression rhs = chart_sign ? on_chart(rhs_in, chart) : rhs_in;
  std::vector<Expression> all = symbols;
  all.push_back(rhs);
  PointSampler sampler(all, seed);
  DetReport report;
  int attempts = 0;
  while (report.points < points && attempts++ < 20 * points) {
    auto pt = sampler.next();
    if (!pt) continue;
    try {
      auto b = binding(*pt);
      RationalMatrix m(10, std::vector<Rational>(10));
      for (int i = 0; i < 10; ++i) {
        for (int j = 0; j < 10; ++j) m[i][j] = symbols[10 * i + j].eval(b);
      }
      Rational det = determinant(m);
      Rational expected = rhs.eval(b);
      ++report.points;
      if (det == expected) ++report.plus;
      if (det == -expected) ++report.minus;
    } catch (const DivisionByZero&) {
      ++report.skipped;
    }
  }
  if (report.points > 0 && report.plus == report.points) {
    report.sign = 1;
  } else if (report.points > 0 && report.minus == report.points) {
    report.sign = -1;
  }
  report.failures = report.sign == 0 ? report.points : 0;
  return report;
}

std::vector<std::string> signature_names_pitilde() {
  return {"m1", "m2", "m3", "m4", "m5", "m11", "m12", "m13", "m21", "m22"};
}

std::vector<Expression> signature_functions_pitilde() {
  const auto& c = catalog_pitilde();
  return {c("M1"),         c("M2"),         c("M3"),         c("M4"),         c("M5"),
          m_derived(1, 1), m_derived(1, 2), m_derived(1, 3), m_derived(2, 1), m_derived(2, 2)};
}

}  // namespace jetinv
