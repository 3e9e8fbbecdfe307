#pragma once

#include <gmpxx.h>

#include <boost/container/small_vector.hpp>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "jetinv/expr/variable.hpp"

namespace jetinv {

using Rational = mpq_class;

/// Power product of interned variables. Factors are packed (var << 12 | exponent)
/// and kept sorted by variable id.
class Monomial {
 public:
  static constexpr std::uint32_t kExpBits = 12;
  static constexpr std::uint32_t kMaxExp = (1u << kExpBits) - 1;

  Monomial() = default;
  static Monomial of(VarId v, std::uint32_t e = 1);

  bool is_one() const { return packed_.empty(); }
  std::size_t size() const { return packed_.size(); }
  VarId var_at(std::size_t i) const { return packed_[i] >> kExpBits; }
  std::uint32_t exp_at(std::size_t i) const { return packed_[i] & kMaxExp; }
  std::uint32_t degree(VarId v) const;
  std::uint32_t total_degree() const;

  Monomial operator*(const Monomial& o) const;
  /// Returns this / o when o divides this.
  std::optional<Monomial> divide(const Monomial& o) const;
  Monomial with_exponent(VarId v, std::uint32_t e) const;

  /// Lexicographic order on (variable id, exponent); a monomial order.
  friend bool operator<(const Monomial& a, const Monomial& b) { return compare(a, b) < 0; }
  friend bool operator==(const Monomial& a, const Monomial& b) { return a.packed_ == b.packed_; }
  static int compare(const Monomial& a, const Monomial& b);

  std::size_t hash() const;
  std::string to_string() const;

 private:
  boost::container::small_vector<std::uint32_t, 6> packed_;
};

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const { return m.hash(); }
};

struct Term {
  Monomial mono;
  Rational coef;
};

/// Sparse multivariate polynomial over Q. Terms sorted by decreasing monomial.
class Polynomial {
 public:
  Polynomial() = default;
  Polynomial(const Rational& c);  // NOLINT: constants convert implicitly
  Polynomial(long c) : Polynomial(Rational(c)) {}  // NOLINT
  static Polynomial variable(VarId v);
  static Polynomial monomial(const Monomial& m, const Rational& c);
  static Polynomial from_terms(std::vector<Term> terms);  // combines and sorts

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  Rational constant_value() const;  // valid when is_constant()
  std::size_t size() const { return terms_.size(); }
  const std::vector<Term>& terms() const { return terms_; }
  const Term& leading() const { return terms_.front(); }

  Polynomial operator-() const;
  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial operator*(const Polynomial& o) const;
  Polynomial operator*(const Rational& c) const;
  Polynomial& operator+=(const Polynomial& o) { return *this = *this + o; }
  Polynomial& operator-=(const Polynomial& o) { return *this = *this - o; }
  Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }
  Polynomial pow(std::uint32_t e) const;

  friend bool operator==(const Polynomial& a, const Polynomial& b);
  friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

  std::uint32_t degree(VarId v) const;
  std::set<VarId> variables() const;
  bool depends_on(VarId v) const;
  Polynomial partial(VarId v) const;
  /// Coefficients of powers of v: result[k] is the coefficient of v^k.
  std::vector<Polynomial> coefficients_in(VarId v) const;
  /// Exact division; nullopt if d does not divide this.
  std::optional<Polynomial> divide_exact(const Polynomial& d) const;

  /// Content c with sign chosen so that (*this / c) has positive leading coefficient.
  Rational content() const;
  /// Largest monomial dividing every term.
  Monomial monomial_content() const;
  Polynomial divide_monomial(const Monomial& m) const;

  std::size_t hash() const;
  std::string to_string() const;

  /// Evaluate with every variable supplied by `value`.
  Rational eval(const std::function<Rational(VarId)>& value) const;
  double evalf(const std::function<double(VarId)>& value) const;
  /// Sum of |term| at the point; magnitude scale for relative zero tests.
  double magnitude(const std::function<double(VarId)>& value) const;

 private:
  std::vector<Term> terms_;
};

std::ostream& operator<<(std::ostream& os, const Polynomial& p);

/// Arithmetic modulo the Mersenne prime 2^61 - 1, used for fast divisibility prechecks.
namespace modp {
inline constexpr std::uint64_t kPrime = (1ULL << 61) - 1;
std::uint64_t reduce(const Rational& q);
std::uint64_t mul(std::uint64_t a, std::uint64_t b);
std::uint64_t add(std::uint64_t a, std::uint64_t b);
std::uint64_t sub(std::uint64_t a, std::uint64_t b);
std::uint64_t inv(std::uint64_t a);
std::uint64_t pow(std::uint64_t a, std::uint64_t e);
/// Deterministic pseudo-random residue attached to a variable.
std::uint64_t random_point(VarId v, std::uint64_t salt);
}  // namespace modp

/// Probabilistic necessary condition for d | n: images under a random
/// univariate specialization must divide modulo a large prime.
bool maybe_divides(const Polynomial& n, const Polynomial& d);

}  // namespace jetinv
