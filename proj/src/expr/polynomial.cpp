#include "jetinv/expr/polynomial.hpp"

#include <algorithm>
#include <boost/functional/hash.hpp>
#include <cmath>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace jetinv {

// ---------------------------------------------------------------- Monomial

Monomial Monomial::of(VarId v, std::uint32_t e) {
  Monomial m;
  if (e == 0) return m;
  if (e > kMaxExp) throw std::overflow_error("monomial exponent overflow");
  m.packed_.push_back((v << kExpBits) | e);
  return m;
}

std::uint32_t Monomial::degree(VarId v) const {
  for (auto p : packed_) {
    if ((p >> kExpBits) == v) return p & kMaxExp;
  }
  return 0;
}

std::uint32_t Monomial::total_degree() const {
  std::uint32_t d = 0;
  for (auto p : packed_) d += p & kMaxExp;
  return d;
}

Monomial Monomial::operator*(const Monomial& o) const {
  Monomial r;
  r.packed_.reserve(packed_.size() + o.packed_.size());
  std::size_t i = 0, j = 0;
  while (i < packed_.size() && j < o.packed_.size()) {
    VarId a = packed_[i] >> kExpBits, b = o.packed_[j] >> kExpBits;
    if (a == b) {
      std::uint32_t e = (packed_[i] & kMaxExp) + (o.packed_[j] & kMaxExp);
      if (e > kMaxExp) throw std::overflow_error("monomial exponent overflow");
      r.packed_.push_back((a << kExpBits) | e);
      ++i;
      ++j;
    } else if (a < b) {
      r.packed_.push_back(packed_[i++]);
    } else {
      r.packed_.push_back(o.packed_[j++]);
    }
  }
  while (i < packed_.size()) r.packed_.push_back(packed_[i++]);
  while (j < o.packed_.size()) r.packed_.push_back(o.packed_[j++]);
  return r;
}

std::optional<Monomial> Monomial::divide(const Monomial& o) const {
  Monomial r;
  std::size_t i = 0, j = 0;
  while (j < o.packed_.size()) {
    VarId b = o.packed_[j] >> kExpBits;
    while (i < packed_.size() && (packed_[i] >> kExpBits) < b) r.packed_.push_back(packed_[i++]);
    if (i == packed_.size() || (packed_[i] >> kExpBits) != b) return std::nullopt;
    std::uint32_t ea = packed_[i] & kMaxExp, eb = o.packed_[j] & kMaxExp;
    if (ea < eb) return std::nullopt;
    if (ea > eb) r.packed_.push_back((b << kExpBits) | (ea - eb));
    ++i;
    ++j;
  }
  while (i < packed_.size()) r.packed_.push_back(packed_[i++]);
  return r;
}

Monomial Monomial::with_exponent(VarId v, std::uint32_t e) const {
  if (e > kMaxExp) throw std::overflow_error("monomial exponent overflow");
  Monomial r;
  bool placed = false;
  for (auto p : packed_) {
    VarId a = p >> kExpBits;
    if (!placed && a >= v) {
      if (e) r.packed_.push_back((v << kExpBits) | e);
      placed = true;
      if (a == v) continue;
    }
    r.packed_.push_back(p);
  }
  if (!placed && e) r.packed_.push_back((v << kExpBits) | e);
  return r;
}

int Monomial::compare(const Monomial& a, const Monomial& b) {
  std::size_t i = 0, j = 0;
  while (i < a.packed_.size() && j < b.packed_.size()) {
    VarId va = a.packed_[i] >> kExpBits, vb = b.packed_[j] >> kExpBits;
    if (va != vb) return va < vb ? 1 : -1;
    std::uint32_t ea = a.packed_[i] & kMaxExp, eb = b.packed_[j] & kMaxExp;
    if (ea != eb) return ea < eb ? -1 : 1;
    ++i;
    ++j;
  }
  if (i < a.packed_.size()) return 1;
  if (j < b.packed_.size()) return -1;
  return 0;
}

std::size_t Monomial::hash() const { return boost::hash_range(packed_.begin(), packed_.end()); }

namespace {

std::string rational_exponent(std::uint32_t num, std::uint32_t den) {
  std::uint32_t g = std::gcd(num, den);
  num /= g;
  den /= g;
  if (den == 1) return std::to_string(num);
  return "(" + std::to_string(num) + "/" + std::to_string(den) + ")";
}

}  // namespace

std::string Monomial::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < packed_.size(); ++i) {
    if (!out.empty()) out += "*";
    const auto& info = var_info(var_at(i));
    std::uint32_t e = exp_at(i);
    if (info.radical) {
      const auto& r = *info.radical;
      std::string base = r.base->to_string();
      out += (r.absolute ? "abs(" + base + ")" : "(" + base + ")") + "^" +
             rational_exponent(e, r.root);
      continue;
    }
    out += info.name;
    if (e != 1) out += "^" + std::to_string(e);
  }
  return out;
}

// -------------------------------------------------------------- Polynomial

namespace {

struct Descending {
  bool operator()(const Monomial& a, const Monomial& b) const { return Monomial::compare(a, b) > 0; }
};

}  // namespace

Polynomial::Polynomial(const Rational& c) {
  if (c != 0) terms_.push_back({Monomial(), c});
}

Polynomial Polynomial::variable(VarId v) { return monomial(Monomial::of(v), 1); }

Polynomial Polynomial::monomial(const Monomial& m, const Rational& c) {
  Polynomial p;
  if (c != 0) p.terms_.push_back({m, c});
  return p;
}

Polynomial Polynomial::from_terms(std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(),
            [](const Term& a, const Term& b) { return Monomial::compare(a.mono, b.mono) > 0; });
  Polynomial p;
  for (auto& t : terms) {
    if (!p.terms_.empty() && p.terms_.back().mono == t.mono) {
      p.terms_.back().coef += t.coef;
    } else {
      if (!p.terms_.empty() && p.terms_.back().coef == 0) p.terms_.pop_back();
      p.terms_.push_back(std::move(t));
    }
  }
  if (!p.terms_.empty() && p.terms_.back().coef == 0) p.terms_.pop_back();
  return p;
}

bool Polynomial::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one());
}

Rational Polynomial::constant_value() const {
  if (terms_.empty()) return 0;
  if (!is_constant()) throw std::logic_error("polynomial is not constant");
  return terms_[0].coef;
}

Polynomial Polynomial::operator-() const {
  Polynomial r = *this;
  for (auto& t : r.terms_) t.coef = -t.coef;
  return r;
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
  Polynomial r;
  r.terms_.reserve(terms_.size() + o.terms_.size());
  std::size_t i = 0, j = 0;
  while (i < terms_.size() && j < o.terms_.size()) {
    int c = Monomial::compare(terms_[i].mono, o.terms_[j].mono);
    if (c > 0) {
      r.terms_.push_back(terms_[i++]);
    } else if (c < 0) {
      r.terms_.push_back(o.terms_[j++]);
    } else {
      Rational s = terms_[i].coef + o.terms_[j].coef;
      if (s != 0) r.terms_.push_back({terms_[i].mono, std::move(s)});
      ++i;
      ++j;
    }
  }
  while (i < terms_.size()) r.terms_.push_back(terms_[i++]);
  while (j < o.terms_.size()) r.terms_.push_back(o.terms_[j++]);
  return r;
}

Polynomial Polynomial::operator-(const Polynomial& o) const { return *this + (-o); }

Polynomial Polynomial::operator*(const Rational& c) const {
  if (c == 0) return {};
  Polynomial r = *this;
  for (auto& t : r.terms_) t.coef *= c;
  return r;
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
  if (is_zero() || o.is_zero()) return {};
  if (o.is_constant()) return *this * o.terms_[0].coef;
  if (is_constant()) return o * terms_[0].coef;
  const Polynomial& small = terms_.size() <= o.terms_.size() ? *this : o;
  const Polynomial& large = terms_.size() <= o.terms_.size() ? o : *this;
  if (small.terms_.size() == 1) {
    Polynomial r;
    r.terms_.reserve(large.terms_.size());
    for (const auto& t : large.terms_) {
      r.terms_.push_back({t.mono * small.terms_[0].mono, t.coef * small.terms_[0].coef});
    }
    return r;  // multiplication by a monomial preserves the order
  }
  std::unordered_map<Monomial, Rational, MonomialHash> acc;
  acc.reserve(small.terms_.size() * large.terms_.size());
  Rational prod;
  for (const auto& a : small.terms_) {
    for (const auto& b : large.terms_) {
      prod = a.coef * b.coef;
      auto [it, inserted] = acc.try_emplace(a.mono * b.mono, prod);
      if (!inserted) it->second += prod;
    }
  }
  std::vector<Term> terms;
  terms.reserve(acc.size());
  for (auto& [m, c] : acc) {
    if (c != 0) terms.push_back({m, std::move(c)});
  }
  std::sort(terms.begin(), terms.end(),
            [](const Term& a, const Term& b) { return Monomial::compare(a.mono, b.mono) > 0; });
  Polynomial r;
  r.terms_ = std::move(terms);
  return r;
}

Polynomial Polynomial::pow(std::uint32_t e) const {
  Polynomial result(1), base = *this;
  while (e) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}

bool operator==(const Polynomial& a, const Polynomial& b) {
  if (a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i) {
    if (!(a.terms_[i].mono == b.terms_[i].mono) || a.terms_[i].coef != b.terms_[i].coef) return false;
  }
  return true;
}

std::uint32_t Polynomial::degree(VarId v) const {
  std::uint32_t d = 0;
  for (const auto& t : terms_) d = std::max(d, t.mono.degree(v));
  return d;
}

std::set<VarId> Polynomial::variables() const {
  std::set<VarId> vs;
  for (const auto& t : terms_) {
    for (std::size_t i = 0; i < t.mono.size(); ++i) vs.insert(t.mono.var_at(i));
  }
  return vs;
}

bool Polynomial::depends_on(VarId v) const {
  for (const auto& t : terms_) {
    if (t.mono.degree(v)) return true;
  }
  return false;
}

Polynomial Polynomial::partial(VarId v) const {
  std::vector<Term> out;
  for (const auto& t : terms_) {
    std::uint32_t e = t.mono.degree(v);
    if (!e) continue;
    out.push_back({t.mono.with_exponent(v, e - 1), t.coef * e});
  }
  return from_terms(std::move(out));
}

std::vector<Polynomial> Polynomial::coefficients_in(VarId v) const {
  std::vector<std::vector<Term>> buckets(degree(v) + 1);
  for (const auto& t : terms_) {
    std::uint32_t e = t.mono.degree(v);
    buckets[e].push_back({t.mono.with_exponent(v, 0), t.coef});
  }
  std::vector<Polynomial> out;
  out.reserve(buckets.size());
  for (auto& b : buckets) out.push_back(from_terms(std::move(b)));
  return out;
}

std::optional<Polynomial> Polynomial::divide_exact(const Polynomial& d) const {
  if (d.is_zero()) throw std::domain_error("division by zero polynomial");
  if (is_zero()) return Polynomial();
  if (d.is_constant()) return *this * (1 / d.terms_[0].coef);
  if (!terms_.back().mono.divide(d.terms_.back().mono)) return std::nullopt;
  if (!terms_.front().mono.divide(d.terms_.front().mono)) return std::nullopt;
  for (VarId v : d.variables()) {
    if (d.degree(v) > degree(v)) return std::nullopt;
  }
  std::map<Monomial, Rational, Descending> rem;
  for (const auto& t : terms_) rem.emplace(t.mono, t.coef);
  const Term& lead = d.terms_.front();
  Rational lead_inv = 1 / lead.coef;
  std::vector<Term> quotient;
  while (!rem.empty()) {
    auto it = rem.begin();
    auto qm = it->first.divide(lead.mono);
    if (!qm) return std::nullopt;
    Rational qc = it->second * lead_inv;
    rem.erase(it);
    for (std::size_t k = 1; k < d.terms_.size(); ++k) {
      Monomial m = d.terms_[k].mono * *qm;
      Rational c = d.terms_[k].coef * qc;
      auto [pos, inserted] = rem.try_emplace(std::move(m), -c);
      if (!inserted) {
        pos->second -= c;
        if (pos->second == 0) rem.erase(pos);
      }
    }
    quotient.push_back({std::move(*qm), std::move(qc)});
  }
  Polynomial q;
  q.terms_ = std::move(quotient);
  return q;
}

Rational Polynomial::content() const {
  if (terms_.empty()) return 1;
  mpz_class num_gcd = 0, den_lcm = 1;
  for (const auto& t : terms_) {
    mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), t.coef.get_num_mpz_t());
    mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), t.coef.get_den_mpz_t());
  }
  Rational c(num_gcd, den_lcm);
  c.canonicalize();
  if (terms_.front().coef < 0) c = -c;
  return c;
}

Monomial Polynomial::monomial_content() const {
  if (terms_.empty()) return {};
  Monomial m = terms_.front().mono;
  for (const auto& t : terms_) {
    Monomial next;
    for (std::size_t i = 0; i < m.size(); ++i) {
      std::uint32_t e = std::min(m.exp_at(i), t.mono.degree(m.var_at(i)));
      if (e) next = next * Monomial::of(m.var_at(i), e);
    }
    m = next;
    if (m.is_one()) break;
  }
  return m;
}

Polynomial Polynomial::divide_monomial(const Monomial& m) const {
  Polynomial r;
  r.terms_.reserve(terms_.size());
  for (const auto& t : terms_) {
    auto q = t.mono.divide(m);
    if (!q) throw std::logic_error("monomial does not divide polynomial");
    r.terms_.push_back({*q, t.coef});
  }
  return r;
}

std::size_t Polynomial::hash() const {
  std::size_t h = terms_.size();
  for (const auto& t : terms_) {
    boost::hash_combine(h, t.mono.hash());
    boost::hash_combine(h, mpz_get_ui(t.coef.get_num_mpz_t()));
    boost::hash_combine(h, mpz_get_ui(t.coef.get_den_mpz_t()));
    boost::hash_combine(h, mpz_sgn(t.coef.get_num_mpz_t()));
  }
  return h;
}

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& t : terms_) {
    Rational c = t.coef;
    bool negative = c < 0;
    if (negative) c = -c;
    if (first) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    first = false;
    if (t.mono.is_one()) {
      out += c.get_str();
    } else if (c == 1) {
      out += t.mono.to_string();
    } else {
      out += c.get_str() + "*" + t.mono.to_string();
    }
  }
  return out;
}

std::ostream& operator<<(std::ostream& os, const Polynomial& p) { return os << p.to_string(); }

Rational Polynomial::eval(const std::function<Rational(VarId)>& value) const {
  std::unordered_map<VarId, Rational> cache;
  auto get = [&](VarId v) -> const Rational& {
    auto it = cache.find(v);
    if (it == cache.end()) it = cache.emplace(v, value(v)).first;
    return it->second;
  };
  Rational sum = 0, term, power;
  for (const auto& t : terms_) {
    term = t.coef;
    for (std::size_t i = 0; i < t.mono.size(); ++i) {
      mpz_pow_ui(power.get_num_mpz_t(), get(t.mono.var_at(i)).get_num_mpz_t(), t.mono.exp_at(i));
      mpz_pow_ui(power.get_den_mpz_t(), get(t.mono.var_at(i)).get_den_mpz_t(), t.mono.exp_at(i));
      term *= power;
    }
    sum += term;
  }
  return sum;
}

double Polynomial::evalf(const std::function<double(VarId)>& value) const {
  std::unordered_map<VarId, double> cache;
  double sum = 0;
  for (const auto& t : terms_) {
    double term = t.coef.get_d();
    for (std::size_t i = 0; i < t.mono.size(); ++i) {
      VarId v = t.mono.var_at(i);
      auto it = cache.find(v);
      if (it == cache.end()) it = cache.emplace(v, value(v)).first;
      term *= std::pow(it->second, static_cast<int>(t.mono.exp_at(i)));
    }
    sum += term;
  }
  return sum;
}

double Polynomial::magnitude(const std::function<double(VarId)>& value) const {
  double sum = 0;
  for (const auto& t : terms_) {
    double term = std::fabs(t.coef.get_d());
    for (std::size_t i = 0; i < t.mono.size(); ++i) {
      term *= std::pow(std::fabs(value(t.mono.var_at(i))), static_cast<int>(t.mono.exp_at(i)));
    }
    sum += term;
  }
  return sum;
}

// ------------------------------------------------------------------- modp

namespace modp {

std::uint64_t mul(std::uint64_t a, std::uint64_t b) {
  unsigned __int128 x = static_cast<unsigned __int128>(a) * b;
  std::uint64_t r = static_cast<std::uint64_t>(x & kPrime) + static_cast<std::uint64_t>(x >> 61);
  while (r >= kPrime) r -= kPrime;
  return r;
}

std::uint64_t add(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r = a + b;
  return r >= kPrime ? r - kPrime : r;
}

std::uint64_t sub(std::uint64_t a, std::uint64_t b) { return a >= b ? a - b : a + kPrime - b; }

std::uint64_t pow(std::uint64_t a, std::uint64_t e) {
  std::uint64_t r = 1;
  while (e) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

std::uint64_t inv(std::uint64_t a) {
  if (a == 0) throw std::domain_error("modular inverse of zero");
  return pow(a, kPrime - 2);
}

std::uint64_t reduce(const Rational& q) {
  std::uint64_t n = mpz_fdiv_ui(q.get_num_mpz_t(), kPrime);
  if (mpz_cmp_ui(q.get_den_mpz_t(), 1) == 0) return n;
  std::uint64_t d = mpz_fdiv_ui(q.get_den_mpz_t(), kPrime);
  return mul(n, inv(d));
}

std::uint64_t random_point(VarId v, std::uint64_t salt) {
  std::uint64_t z = (static_cast<std::uint64_t>(v) + 1) * 0x9E3779B97F4A7C15ULL ^ salt;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  z ^= z >> 31;
  return z % kPrime;
}

}  // namespace modp

namespace {

std::vector<std::uint64_t> univariate_image(const Polynomial& p, VarId v, std::uint64_t salt) {
  std::vector<std::uint64_t> coeffs(p.degree(v) + 1, 0);
  for (const auto& t : p.terms()) {
    std::uint64_t c = modp::reduce(t.coef);
    std::uint32_t e = 0;
    for (std::size_t i = 0; i < t.mono.size(); ++i) {
      VarId w = t.mono.var_at(i);
      if (w == v) {
        e = t.mono.exp_at(i);
      } else {
        c = modp::mul(c, modp::pow(modp::random_point(w, salt), t.mono.exp_at(i)));
      }
    }
    coeffs[e] = modp::add(coeffs[e], c);
  }
  return coeffs;
}

}  // namespace

bool maybe_divides(const Polynomial& n, const Polynomial& d) {
  if (d.is_constant()) return true;
  if (n.is_zero()) return true;
  const VarId v = *d.variables().begin();
  constexpr std::uint64_t salt = 0x5bd1e995u;
  auto nu = univariate_image(n, v, salt);
  auto du = univariate_image(d, v, salt);
  while (!du.empty() && du.back() == 0) du.pop_back();
  if (du.size() != d.degree(v) + 1) return true;  // leading coefficient vanished; no information
  if (du.size() == 1) return true;
  std::uint64_t lead_inv = modp::inv(du.back());
  for (std::size_t k = nu.size(); k-- >= du.size();) {
    std::uint64_t q = modp::mul(nu[k], lead_inv);
    if (q == 0) continue;
    std::size_t shift = k - (du.size() - 1);
    for (std::size_t j = 0; j < du.size(); ++j) {
      nu[shift + j] = modp::sub(nu[shift + j], modp::mul(q, du[j]));
    }
  }
  for (std::size_t k = 0; k + 1 < du.size() && k < nu.size(); ++k) {
    if (nu[k] != 0) return false;
  }
  return true;
}

}  // namespace jetinv
