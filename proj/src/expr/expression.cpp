#include "jetinv/expr/expression.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <sstream>

#include "jetinv/errors.hpp"

namespace jetinv {

// ---------------------------------------------------------- FactorRegistry

FactorRegistry& FactorRegistry::instance() {
  static FactorRegistry registry;
  return registry;
}

const Polynomial& FactorRegistry::get(FactorId id) const {
  std::lock_guard lock(mutex_);
  return entries_.at(id)->poly;
}

FactorId FactorRegistry::intern(const Polynomial& primitive) {
  std::lock_guard lock(mutex_);
  std::size_t h = primitive.hash();
  auto [lo, hi] = by_hash_.equal_range(h);
  for (auto it = lo; it != hi; ++it) {
    if (entries_[it->second]->poly == primitive) return it->second;
  }
  auto id = static_cast<FactorId>(entries_.size());
  entries_.push_back(std::make_unique<Entry>(Entry{primitive, primitive.variables()}));
  by_hash_.emplace(h, id);
  return id;
}

std::vector<FactorId> FactorRegistry::candidates_for(const Polynomial& q) const {
  auto qvars = q.variables();
  std::vector<FactorId> out;
  std::lock_guard lock(mutex_);
  for (FactorId id = 0; id < entries_.size(); ++id) {
    const auto& e = *entries_[id];
    if (e.vars.size() < 2 && e.poly.size() < 2) continue;  // bare variables are split off earlier
    if (e.poly.size() > q.size()) continue;
    if (!std::includes(qvars.begin(), qvars.end(), e.vars.begin(), e.vars.end())) continue;
    out.push_back(id);
  }
  return out;
}

namespace {

const Polynomial& factor(FactorId id) { return FactorRegistry::instance().get(id); }

bool is_radical(VarId v) { return var_info(v).kind == VarKind::radical; }

Denominator merge_add(const Denominator& a, const Denominator& b) {
  Denominator out;
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      out.push_back(b[j++]);
    } else {
      out.emplace_back(a[i].first, a[i].second + b[j].second);
      ++i;
      ++j;
    }
  }
  return out;
}

Denominator merge_max(const Denominator& a, const Denominator& b) {
  Denominator out;
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      out.push_back(b[j++]);
    } else {
      out.emplace_back(a[i].first, std::max(a[i].second, b[j].second));
      ++i;
      ++j;
    }
  }
  return out;
}

std::uint32_t exponent_in(const Denominator& d, FactorId id) {
  for (const auto& [f, e] : d) {
    if (f == id) return e;
  }
  return 0;
}

Polynomial expand(const Denominator& d) {
  Polynomial p(1);
  for (const auto& [f, e] : d) p = p * factor(f).pow(e);
  return p;
}

/// Multiplies num by prod F^(target_e - have_e).
Polynomial lift_to(const Polynomial& num, const Denominator& have, const Denominator& target) {
  Polynomial p = num;
  for (const auto& [f, e] : target) {
    std::uint32_t h = exponent_in(have, f);
    if (e > h) p = p * factor(f).pow(e - h);
  }
  return p;
}

template <class Pred>
void cancel(Polynomial& num, Denominator& den, Pred want) {
  if (num.is_zero()) {
    den.clear();
    return;
  }
  for (auto& [f, e] : den) {
    if (!want(f)) continue;
    const Polynomial& fp = factor(f);
    while (e > 0 && maybe_divides(num, fp)) {
      auto q = num.divide_exact(fp);
      if (!q) break;
      num = std::move(*q);
      --e;
    }
  }
  std::erase_if(den, [](const auto& fe) { return fe.second == 0; });
}

struct DivisorSplit {
  Rational content = 1;
  Denominator factors;
};

/// Factors a radical-free divisor over the registry.
DivisorSplit register_divisor(Polynomial q) {
  if (q.is_zero()) throw DivisionByZero("division by zero");
  DivisorSplit out;
  if (q.is_constant()) {
    out.content = q.constant_value();
    return out;
  }
  auto& registry = FactorRegistry::instance();
  out.content = q.content();
  q = q * (1 / out.content);
  Monomial m = q.monomial_content();
  if (!m.is_one()) {
    q = q.divide_monomial(m);
    for (std::size_t i = 0; i < m.size(); ++i) {
      FactorId id = registry.intern(Polynomial::variable(m.var_at(i)));
      out.factors = merge_add(out.factors, {{id, m.exp_at(i)}});
    }
  }
  if (!q.is_constant()) {
    for (FactorId id : registry.candidates_for(q)) {
      const Polynomial& f = registry.get(id);
      std::uint32_t e = 0;
      while (!q.is_constant() && maybe_divides(q, f)) {
        auto d = q.divide_exact(f);
        if (!d) break;
        q = std::move(*d);
        ++e;
      }
      if (e) out.factors = merge_add(out.factors, {{id, e}});
      if (q.is_constant()) break;
    }
  }
  if (!q.is_constant()) {
    FactorId id = registry.intern(q);
    out.factors = merge_add(out.factors, {{id, 1}});
  } else {
    out.content *= q.constant_value();
  }
  return out;
}

/// Rewrites the radical atoms of one monomial into normal form: for each base a
/// single atom |B|^(1/n) with exponent below the period and coprime to n.
/// Returns false when the monomial is already normal.
bool normalize_radical_monomial(const Monomial& m, Monomial& out, Polynomial& extra) {
  struct Group {
    const RadicalInfo* info;
    std::vector<std::pair<VarId, std::uint32_t>> atoms;
  };
  std::vector<Group> groups;
  bool needed = false;
  for (std::size_t i = 0; i < m.size(); ++i) {
    const auto& info = var_info(m.var_at(i));
    if (!info.radical) continue;
    const auto& r = *info.radical;
    std::uint32_t e = m.exp_at(i);
    if (e >= r.period() || std::gcd(e, r.root) != 1) needed = true;
    auto it = std::find_if(groups.begin(), groups.end(), [&](const Group& g) {
      return g.info->absolute == r.absolute && *g.info->base == *r.base;
    });
    if (it == groups.end()) {
      groups.push_back({&r, {{m.var_at(i), e}}});
    } else {
      it->atoms.emplace_back(m.var_at(i), e);
      needed = true;
    }
  }
  if (!needed) return false;
  out = Monomial();
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (!var_info(m.var_at(i)).radical) out = out * Monomial::of(m.var_at(i), m.exp_at(i));
  }
  extra = Polynomial(1);
  for (const auto& g : groups) {
    std::uint32_t l = 1;
    for (const auto& [v, e] : g.atoms) l = std::lcm(l, var_info(v).radical->root);
    std::uint32_t total = 0;
    for (const auto& [v, e] : g.atoms) total += e * (l / var_info(v).radical->root);
    std::uint32_t per = g.info->absolute ? 2 * l : l;
    std::uint32_t wraps = total / per;
    total %= per;
    if (wraps) extra = extra * g.info->base->pow(wraps * (g.info->absolute ? 2 : 1));
    if (total == 0) continue;
    std::uint32_t d = std::gcd(total, l);
    std::uint32_t root = l / d, e = total / d;
    if (!g.info->absolute && root == 1) {
      extra = extra * g.info->base->pow(e);
      continue;
    }
    VarId t = VariableTable::instance().intern_radical(*g.info->base, root, g.info->absolute);
    out = out * Monomial::of(t, e);
  }
  return true;
}

bool reduce_radicals_inplace(Polynomial& p) {
  Polynomial out;
  std::vector<Term> plain;
  bool touched_any = false;
  for (const auto& t : p.terms()) {
    Monomial m;
    Polynomial extra;
    if (normalize_radical_monomial(t.mono, m, extra)) {
      touched_any = true;
      out += Polynomial::monomial(m, t.coef) * extra;
    } else {
      plain.push_back(t);
    }
  }
  if (!touched_any) return false;
  p = out + Polynomial::from_terms(std::move(plain));
  return true;
}

bool polynomial_has_radicals(const Polynomial& p) {
  for (VarId v : p.variables()) {
    if (is_radical(v)) return true;
  }
  return false;
}

std::uint32_t base_power(const RadicalInfo& r) { return r.absolute ? 2 : 1; }

/// Exact integer n-th root of a non-negative rational, if it exists.
std::optional<Rational> exact_root(const Rational& q, std::uint32_t n) {
  if (q < 0) return std::nullopt;
  mpz_class rn, rd;
  bool ok_n = mpz_root(rn.get_mpz_t(), q.get_num_mpz_t(), n) != 0;
  bool ok_d = mpz_root(rd.get_mpz_t(), q.get_den_mpz_t(), n) != 0;
  if (!ok_n || !ok_d) return std::nullopt;
  Rational r(rn, rd);
  r.canonicalize();
  return r;
}

}  // namespace

Polynomial reduce_radicals(const Polynomial& p) {
  Polynomial q = p;
  reduce_radicals_inplace(q);
  return q;
}

// -------------------------------------------------------------- Expression

Expression::Expression(Polynomial p) : num_(std::move(p)) { reduce_radicals_inplace(num_); }

Expression Expression::variable(VarId v) { return Expression(Polynomial::variable(v)); }

Expression Expression::make(Polynomial num, Denominator den, bool full_cancel) {
  Expression e;
  bool reduced = reduce_radicals_inplace(num);
  if (num.is_zero()) return e;
  if (full_cancel || reduced) cancel(num, den, [](FactorId) { return true; });
  e.num_ = std::move(num);
  e.den_ = std::move(den);
  return e;
}

Polynomial Expression::denominator() const { return expand(den_); }

bool Expression::has_radicals() const { return polynomial_has_radicals(num_); }

Expression Expression::operator-() const {
  Expression e = *this;
  e.num_ = -e.num_;
  return e;
}

Expression operator+(const Expression& a, const Expression& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.den_ == b.den_) {
    Polynomial num = a.num_ + b.num_;
    Denominator den = a.den_;
    Expression r;
    if (num.is_zero()) return r;
    cancel(num, den, [](FactorId) { return true; });
    r.num_ = std::move(num);
    r.den_ = std::move(den);
    return r;
  }
  Denominator l = merge_max(a.den_, b.den_);
  Polynomial num = lift_to(a.num_, a.den_, l) + lift_to(b.num_, b.den_, l);
  Expression r;
  if (num.is_zero()) return r;
  cancel(num, l, [&](FactorId f) {
    std::uint32_t ea = exponent_in(a.den_, f), eb = exponent_in(b.den_, f);
    return ea == eb;
  });
  r.num_ = std::move(num);
  r.den_ = std::move(l);
  return r;
}

Expression operator-(const Expression& a, const Expression& b) { return a + (-b); }

Expression operator*(const Expression& a, const Expression& b) {
  if (a.is_zero() || b.is_zero()) return {};
  if (a.is_constant()) {
    Expression r = b;
    r.num_ = r.num_ * a.num_.constant_value();
    return r;
  }
  if (b.is_constant()) {
    Expression r = a;
    r.num_ = r.num_ * b.num_.constant_value();
    return r;
  }
  Polynomial an = a.num_, bn = b.num_;
  Denominator ad = a.den_, bd = b.den_;
  cancel(an, bd, [](FactorId) { return true; });
  cancel(bn, ad, [](FactorId) { return true; });
  return Expression::make(an * bn, merge_add(ad, bd), false);
}

Expression Expression::reciprocal() const {
  if (is_zero()) throw DivisionByZero("division by zero");
  Polynomial n = num_;
  Polynomial mult(1);
  std::vector<const RadicalInfo*> radical_bases;
  std::vector<std::uint32_t> radical_base_powers;

  Monomial content = n.monomial_content();
  Monomial radical_part;
  for (std::size_t i = 0; i < content.size(); ++i) {
    VarId v = content.var_at(i);
    if (!is_radical(v)) continue;
    radical_part = radical_part * Monomial::of(v, content.exp_at(i));
    const auto& r = *var_info(v).radical;
    mult = mult * Polynomial::monomial(Monomial::of(v, r.period() - content.exp_at(i)), 1);
    radical_bases.push_back(&r);
    radical_base_powers.push_back(base_power(r));
  }
  if (!radical_part.is_one()) n = n.divide_monomial(radical_part);

  // Multiplying by the conjugate that flips odd powers of t leaves only even
  // powers, which normalize to the atom of half the root.
  for (int guard = 0;; ++guard) {
    VarId v = 0;
    bool found = false;
    for (VarId w : n.variables()) {
      if (is_radical(w) && (!found || var_info(w).radical->root > var_info(v).radical->root)) {
        v = w;
        found = true;
      }
    }
    if (!found) break;
    std::uint32_t root = var_info(v).radical->root;
    if ((root & (root - 1)) != 0) {
      throw UnsupportedOperation("cannot rationalize a radical of root " + std::to_string(root));
    }
    if (guard > 64) throw UnsupportedOperation("radical rationalization did not terminate");
    std::vector<Term> conj;
    for (const auto& t : n.terms()) {
      bool flip = (t.mono.degree(v) & 1u) != 0;
      conj.push_back({t.mono, flip ? Rational(-t.coef) : t.coef});
    }
    Polynomial c = Polynomial::from_terms(std::move(conj));
    n = reduce_radicals(n * c);
    mult = reduce_radicals(mult * c);
  }

  DivisorSplit split = register_divisor(n);
  Denominator den = split.factors;
  for (std::size_t i = 0; i < radical_bases.size(); ++i) {
    DivisorSplit b = register_divisor(radical_bases[i]->base->pow(radical_base_powers[i]));
    split.content *= b.content;
    den = merge_add(den, b.factors);
  }
  Polynomial num = mult * expand(den_) * (1 / split.content);
  return make(std::move(num), std::move(den), true);
}

Expression operator/(const Expression& a, const Expression& b) {
  if (b.is_zero()) throw DivisionByZero("division by zero");
  if (b.is_constant()) {
    Expression r = a;
    r.num_ = r.num_ * (1 / b.num_.constant_value());
    return r;
  }
  return a * b.reciprocal();
}

Expression Expression::pow(long e) const {
  if (e < 0) return reciprocal().pow(-e);
  Expression result(1), base = *this;
  while (e) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}

std::set<VarId> Expression::atoms() const {
  auto vs = num_.variables();
  for (const auto& [f, e] : den_) {
    auto fv = factor(f).variables();
    vs.insert(fv.begin(), fv.end());
  }
  return vs;
}

std::set<VarId> Expression::free_variables() const {
  std::set<VarId> out;
  for (VarId v : atoms()) {
    const auto& info = var_info(v);
    if (info.radical) {
      auto bv = info.radical->base->variables();
      out.insert(bv.begin(), bv.end());
    } else {
      out.insert(v);
    }
  }
  return out;
}

bool Expression::depends_on(VarId v) const { return free_variables().count(v) != 0; }

Expression apply_derivation(const Expression& e, const std::function<Expression(VarId)>& image) {
  if (e.is_zero()) return {};
  std::map<VarId, Expression> memo;
  auto img = [&](VarId v) -> const Expression& {
    auto it = memo.find(v);
    if (it == memo.end()) it = memo.emplace(v, image(v)).first;
    return it->second;
  };
  // derivation of a radical-free polynomial; polynomial part returned separately
  auto derive_poly = [&](const Polynomial& p, Expression& rest) {
    Polynomial acc;
    for (VarId v : p.variables()) {
      if (is_radical(v)) continue;
      const Expression& iv = img(v);
      if (iv.is_zero()) continue;
      Polynomial dp = p.partial(v);
      if (iv.is_polynomial()) {
        acc += dp * iv.numerator();
      } else {
        rest += Expression(dp) * iv;
      }
    }
    return acc;
  };

  Expression rest;
  Polynomial acc = derive_poly(e.num_, rest);
  Expression radical_part;
  for (VarId t : e.num_.variables()) {
    if (!is_radical(t)) continue;
    const auto& r = *var_info(t).radical;
    Expression base_rest;
    Polynomial dbase = derive_poly(*r.base, base_rest);
    Expression db = Expression(dbase) + base_rest;
    if (db.is_zero()) continue;
    Polynomial dn = e.num_.partial(t) * Polynomial::variable(t);
    radical_part += Expression(dn) * db / (Expression(*r.base) * Rational(r.root));
  }

  std::vector<std::size_t> moving;
  std::vector<Polynomial> dfs;
  Expression generic_den_part;
  for (std::size_t i = 0; i < e.den_.size(); ++i) {
    const Polynomial& f = factor(e.den_[i].first);
    Expression frest;
    Polynomial df = derive_poly(f, frest);
    if (!frest.is_zero()) {
      generic_den_part += Expression(f).reciprocal() * frest * Rational(e.den_[i].second);
    }
    if (df.is_zero()) continue;
    moving.push_back(i);
    dfs.push_back(std::move(df));
  }

  Polynomial prod_f(1);
  for (std::size_t i : moving) prod_f = prod_f * factor(e.den_[i].first);
  Polynomial s;
  for (std::size_t k = 0; k < moving.size(); ++k) {
    Polynomial term = dfs[k] * Rational(e.den_[moving[k]].second);
    for (std::size_t j = 0; j < moving.size(); ++j) {
      if (j != k) term = term * factor(e.den_[moving[j]].first);
    }
    s += term;
  }
  Denominator main_den = e.den_;
  for (std::size_t i : moving) main_den[i].second += 1;
  Expression total = Expression::make(acc * prod_f - e.num_ * s, main_den, true);

  Expression extra = rest + radical_part;
  if (!generic_den_part.is_zero()) extra -= Expression(e.num_) * generic_den_part;
  if (!extra.is_zero()) total += extra * Expression::make(Polynomial(1), e.den_, false);
  return total;
}

Expression Expression::differentiate(VarId v) const {
  return apply_derivation(*this, [v](VarId w) { return Expression(w == v ? 1 : 0); });
}

Expression Expression::substitute(const std::map<VarId, Expression>& images) const {
  if (images.empty()) return *this;
  bool all_polynomial = true;
  for (const auto& [v, img] : images) all_polynomial = all_polynomial && img.is_polynomial() && !img.has_radicals();

  std::map<VarId, std::vector<Expression>> powers;
  auto power_of = [&](VarId v, const Expression& base, std::uint32_t e) -> const Expression& {
    auto& list = powers[v];
    if (list.empty()) list.push_back(Expression(1));
    while (list.size() <= e) list.push_back(list.back() * base);
    return list[e];
  };
  auto touches = [&](const Polynomial& p) {
    for (VarId v : p.variables()) {
      if (images.count(v)) return true;
    }
    return false;
  };

  Expression num_sub;
  Polynomial poly_acc;
  for (const auto& t : num_.terms()) {
    Monomial kept;
    Expression factor_expr(1);
    bool changed = false;
    for (std::size_t i = 0; i < t.mono.size(); ++i) {
      VarId v = t.mono.var_at(i);
      std::uint32_t e = t.mono.exp_at(i);
      auto it = images.find(v);
      if (it != images.end()) {
        factor_expr = factor_expr * power_of(v, it->second, e);
        changed = true;
        continue;
      }
      const auto& info = var_info(v);
      if (info.radical && touches(*info.radical->base)) {
        Expression base = Expression(*info.radical->base).substitute(images);
        Rational q(e, info.radical->root);
        q.canonicalize();
        factor_expr = factor_expr * (info.radical->absolute ? abs_pow(base, q) : rational_pow(base, q));
        changed = true;
        continue;
      }
      kept = kept * Monomial::of(v, e);
    }
    if (!changed) {
      poly_acc += Polynomial::monomial(kept, t.coef);
    } else if (all_polynomial && factor_expr.is_polynomial()) {
      poly_acc += Polynomial::monomial(kept, t.coef) * factor_expr.numerator();
    } else {
      num_sub += Expression(Polynomial::monomial(kept, t.coef)) * factor_expr;
    }
  }
  Expression result = Expression(poly_acc) + num_sub;
  Denominator kept_den;
  for (const auto& [f, e] : den_) {
    const Polynomial& fp = factor(f);
    if (touches(fp)) {
      result = result / Expression(fp).substitute(images).pow(e);
    } else {
      kept_den.emplace_back(f, e);
    }
  }
  if (!kept_den.empty()) result = result * make(Polynomial(1), kept_den, false);
  return result;
}

std::string Expression::to_string() const {
  if (den_.empty()) return num_.to_string();
  std::vector<std::string> parts;
  for (const auto& [f, e] : den_) {
    std::string s = "(" + factor(f).to_string() + ")";
    if (e != 1) s += "^" + std::to_string(e);
    parts.push_back(std::move(s));
  }
  std::sort(parts.begin(), parts.end());
  std::string den;
  for (const auto& p : parts) den += (den.empty() ? "" : "*") + p;
  return "(" + num_.to_string() + ")/(" + den + ")";
}

std::ostream& operator<<(std::ostream& os, const Expression& e) { return os << e.to_string(); }

Rational Expression::eval(const std::function<Rational(VarId)>& value) const {
  std::map<VarId, Rational> radicals;
  auto lookup = [&](VarId v) -> Rational {
    const auto& info = var_info(v);
    if (!info.radical) return value(v);
    auto it = radicals.find(v);
    if (it != radicals.end()) return it->second;
    const auto& r = *info.radical;
    Rational b = r.base->eval(value);
    if (r.absolute) {
      b = abs(b);
    } else if (b < 0) {
      throw RadicandError("negative base under a strict rational power");
    }
    auto root = exact_root(b, r.root);
    if (!root) throw RadicandError("radical does not evaluate to a rational number");
    radicals.emplace(v, *root);
    return *root;
  };
  Rational d = 1;
  for (const auto& [f, e] : den_) {
    Rational fv = factor(f).eval(value);
    if (fv == 0) throw DivisionByZero("denominator factor " + factor(f).to_string() + " vanishes");
    for (std::uint32_t k = 0; k < e; ++k) d *= fv;
  }
  return num_.eval(lookup) / d;
}

double Expression::evalf(const std::function<double(VarId)>& value) const {
  std::map<VarId, double> radicals;
  auto lookup = [&](VarId v) -> double {
    const auto& info = var_info(v);
    if (!info.radical) return value(v);
    auto it = radicals.find(v);
    if (it != radicals.end()) return it->second;
    const auto& r = *info.radical;
    double b = r.base->evalf(value);
    if (r.absolute) {
      b = std::fabs(b);
    } else if (b < 0) {
      throw RadicandError("negative base under a strict rational power");
    }
    double root = std::pow(b, 1.0 / r.root);
    radicals.emplace(v, root);
    return root;
  };
  double d = 1;
  for (const auto& [f, e] : den_) {
    double fv = factor(f).evalf(value);
    if (fv == 0) throw DivisionByZero("denominator factor " + factor(f).to_string() + " vanishes");
    d *= std::pow(fv, static_cast<int>(e));
  }
  return num_.evalf(lookup) / d;
}

namespace {

/// Builds |c|^q or c^q for a rational constant, exactly when possible.
std::optional<Rational> constant_power(const Rational& c, const Rational& q, bool absolute) {
  Rational base = absolute ? Rational(abs(c)) : c;
  if (base < 0) return std::nullopt;
  long num = q.get_num().get_si();
  unsigned long den = q.get_den().get_ui();
  auto root = exact_root(base, static_cast<std::uint32_t>(den));
  if (!root) return std::nullopt;
  if (*root == 0) {
    if (num < 0) throw DivisionByZero("zero raised to a negative power");
    return Rational(0);
  }
  Rational r = 1;
  Rational f = num >= 0 ? *root : Rational(1 / *root);
  for (long k = 0; k < std::labs(num); ++k) r *= f;
  return r;
}

/// |P|^(a/n) or P^(a/n) for a single polynomial P (radical-free, nonconstant).
Expression polynomial_power(const Polynomial& p, long a, std::uint32_t n, bool absolute) {
  std::uint32_t g = std::gcd(static_cast<std::uint32_t>(std::labs(a)), n);
  if (g == 0) return Expression(1);
  a /= static_cast<long>(g);
  n /= g;
  if (n == 1) {
    if (!absolute || a % 2 == 0) return Expression(p).pow(a);
  }
  Polynomial base = p;
  Rational c = p.content();
  Rational factor_value = 1;
  Rational c_abs = abs(c);
  if (auto root = exact_root(c_abs, n)) {
    base = p * (1 / c_abs);
    factor_value = *root;
    if (a < 0) factor_value = 1 / factor_value;
    Rational fv = 1;
    for (long k = 0; k < std::labs(a); ++k) fv *= factor_value;
    factor_value = fv;
  }
  if (absolute && base.leading().coef < 0) base = -base;
  VarId t = VariableTable::instance().intern_radical(base, n, absolute);
  Expression tv = Expression::variable(t);
  return tv.pow(a) * Expression(factor_value);
}

Expression general_power(const Expression& e, const Rational& q, bool absolute) {
  if (e.has_radicals()) {
    throw UnsupportedOperation("rational power of an expression that already contains radicals");
  }
  if (q.get_den() == 1 && (!absolute || q.get_num() % 2 == 0)) return e.pow(q.get_num().get_si());
  if (e.is_zero()) {
    if (q < 0) throw DivisionByZero("zero raised to a negative power");
    return Expression(0);
  }
  long a = q.get_num().get_si();
  auto n = static_cast<std::uint32_t>(q.get_den().get_ui());
  Expression result(1);
  const Polynomial& num = e.numerator();
  if (num.is_constant()) {
    if (auto v = constant_power(num.constant_value(), q, absolute)) {
      result = Expression(*v);
    } else {
      result = polynomial_power(num, a, n, absolute);
    }
  } else {
    result = polynomial_power(num, a, n, absolute);
  }
  for (const auto& [f, k] : e.denominator_factors()) {
    result = result * polynomial_power(factor(f), -a * static_cast<long>(k), n, absolute);
  }
  return result;
}

}  // namespace

Expression abs_pow(const Expression& e, const Rational& q) { return general_power(e, q, true); }

Expression rational_pow(const Expression& e, const Rational& q) {
  return general_power(e, q, false);
}

bool canonical_equal(const Expression& a, const Expression& b) { return (a - b).is_zero(); }

}  // namespace jetinv
