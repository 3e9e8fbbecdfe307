#pragma once

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "jetinv/expr/polynomial.hpp"
#include "jetinv/expr/variable.hpp"

namespace jetinv {

using FactorId = std::uint32_t;

/// Interned denominator factors: primitive, radical-free polynomials with a
/// positive leading coefficient. Single variables are factors too.
class FactorRegistry {
 public:
  static FactorRegistry& instance();
  const Polynomial& get(FactorId id) const;
  FactorId intern(const Polynomial& primitive);
  std::vector<FactorId> candidates_for(const Polynomial& q) const;

 private:
  FactorRegistry() = default;
  struct Entry {
    Polynomial poly;
    std::set<VarId> vars;
  };
  mutable std::mutex mutex_;
  std::vector<std::unique_ptr<Entry>> entries_;
  std::unordered_multimap<std::size_t, FactorId> by_hash_;
};

/// Denominator in factored form, sorted by factor id, exponents positive.
using Denominator = std::vector<std::pair<FactorId, std::uint32_t>>;

/// Exact rational expression N / prod F_i^e_i. The numerator may contain
/// radical atoms |B|^(1/n); their exponents are kept below the radical period,
/// so equal values have equal representations on a common factor base.
/// Expressions are immutable values.
class Expression {
 public:
  Expression() = default;
  Expression(const Rational& c) : num_(c) {}  // NOLINT
  Expression(long c) : num_(Rational(c)) {}  // NOLINT
  Expression(int c) : num_(Rational(c)) {}   // NOLINT
  explicit Expression(Polynomial p);
  static Expression variable(VarId v);
  static Expression variable(std::string_view name) { return variable(var(name)); }

  const Polynomial& numerator() const { return num_; }
  const Denominator& denominator_factors() const { return den_; }
  Polynomial denominator() const;

  bool is_zero() const { return num_.is_zero(); }
  bool is_constant() const { return den_.empty() && num_.is_constant(); }
  bool is_polynomial() const { return den_.empty(); }
  bool has_radicals() const;
  Rational constant_value() const { return num_.constant_value(); }

  Expression operator-() const;
  friend Expression operator+(const Expression& a, const Expression& b);
  friend Expression operator-(const Expression& a, const Expression& b);
  friend Expression operator*(const Expression& a, const Expression& b);
  friend Expression operator/(const Expression& a, const Expression& b);
  Expression& operator+=(const Expression& o) { return *this = *this + o; }
  Expression& operator-=(const Expression& o) { return *this = *this - o; }
  Expression& operator*=(const Expression& o) { return *this = *this * o; }
  Expression& operator/=(const Expression& o) { return *this = *this / o; }
  Expression pow(long e) const;
  Expression reciprocal() const;

  /// Structural identity of canonical forms.
  friend bool operator==(const Expression& a, const Expression& b) {
    return a.den_ == b.den_ && a.num_ == b.num_;
  }

  /// Every variable the value depends on, looking through radical bases and denominators.
  std::set<VarId> free_variables() const;
  /// Variables that appear directly, including radical atoms themselves.
  std::set<VarId> atoms() const;
  bool depends_on(VarId v) const;

  Expression differentiate(VarId v) const;
  Expression substitute(const std::map<VarId, Expression>& images) const;

  std::string to_string() const;

  Rational eval(const std::function<Rational(VarId)>& value) const;
  double evalf(const std::function<double(VarId)>& value) const;

 private:
  friend class ExpressionBuilder;
  friend Expression abs_pow(const Expression& e, const Rational& q);
  friend Expression rational_pow(const Expression& e, const Rational& q);
  friend Expression apply_derivation(const Expression& e,
                                     const std::function<Expression(VarId)>& image);

  static Expression make(Polynomial num, Denominator den, bool full_cancel);

  Polynomial num_;
  Denominator den_;
};

std::ostream& operator<<(std::ostream& os, const Expression& e);

inline Expression var_expr(std::string_view name) { return Expression::variable(name); }

/// |e|^q; for non-integer q the result carries an absolute radical atom.
Expression abs_pow(const Expression& e, const Rational& q);
/// e^q with e assumed positive; for non-integer q the result carries a strict radical atom.
Expression rational_pow(const Expression& e, const Rational& q);

/// Applies the derivation defined by its values on variables. The image
/// callback is only invoked for non-radical variables; radical atoms are
/// differentiated by d|B|^(1/n) = (1/n) |B|^(1/n) dB / B.
Expression apply_derivation(const Expression& e, const std::function<Expression(VarId)>& image);

/// Brings every radical exponent below its period using t^(2n) = B^2 (absolute)
/// or t^n = B (strict).
Polynomial reduce_radicals(const Polynomial& p);

/// Exact zero test of a - b.
bool canonical_equal(const Expression& a, const Expression& b);

}  // namespace jetinv
