#include "jetinv/expr/parser.hpp"

#include <cctype>

#include "jetinv/errors.hpp"

namespace jetinv {

namespace {

class Parser {
 public:
  Parser(std::string_view text, const ParseOptions& options) : text_(text), options_(options) {}

  Expression run() {
    Expression e = expr();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, pos_); }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  bool peek_digit() {
    skip_space();
    return pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]));
  }

  Expression expr() {
    Expression e = term();
    for (;;) {
      if (accept('+')) {
        e += term();
      } else if (accept('-')) {
        e -= term();
      } else {
        return e;
      }
    }
  }

  Expression term() {
    Expression e = unary();
    for (;;) {
      if (accept('*')) {
        e *= unary();
      } else if (accept('/')) {
        std::size_t at = pos_;
        Expression d = unary();
        if (d.is_zero()) throw ParseError("division by zero", at);
        e /= d;
      } else {
        return e;
      }
    }
  }

  Expression unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return power();
  }

  Expression power() {
    bool is_abs = false;
    Expression base = primary(is_abs);
    if (!accept('^')) return is_abs ? abs_pow(base, 1) : base;
    Rational q = exponent();
    if (is_abs) return abs_pow(base, q);
    if (q.get_den() == 1) return base.pow(q.get_num().get_si());
    return rational_pow(base, q);
  }

  mpz_class integer() {
    if (!peek_digit()) fail("expected an integer");
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    return mpz_class(std::string(text_.substr(start, pos_ - start)));
  }

  Rational exponent() {
    if (accept('(')) {
      bool neg = accept('-');
      Rational q(integer());
      if (accept('/')) {
        mpz_class d = integer();
        if (d == 0) fail("zero denominator in exponent");
        q /= Rational(d);
      }
      expect(')');
      return neg ? Rational(-q) : q;
    }
    bool neg = accept('-');
    Rational q(integer());
    return neg ? Rational(-q) : q;
  }

  Expression number() {
    std::size_t start = pos_;
    mpz_class whole = integer();
    Rational value(whole);
    if (pos_ < text_.size() && text_[pos_] == '.') {
      ++pos_;
      std::size_t fstart = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (pos_ == fstart) throw ParseError("malformed number", start);
      mpz_class frac(std::string(text_.substr(fstart, pos_ - fstart)));
      mpz_class scale;
      mpz_ui_pow_ui(scale.get_mpz_t(), 10, pos_ - fstart);
      value += Rational(frac, scale);
      value.canonicalize();
    }
    return Expression(value);
  }

  Expression identifier() {
    std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      ++pos_;
    }
    std::string_view name = text_.substr(start, pos_ - start);
    if (name == "abs") fail("abs must be applied to a parenthesized argument");
    if (options_.symbols) {
      auto it = options_.symbols->find(name);
      if (it != options_.symbols->end()) return it->second;
    }
    if (options_.declared && !options_.declared->contains(name)) {
      throw UnknownVariable(std::string(name));
    }
    return Expression::variable(name);
  }

  Expression primary(bool& is_abs) {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Expression e = expr();
      expect(')');
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      if (text_.substr(pos_, 3) == "abs") {
        std::size_t save = pos_;
        pos_ += 3;
        if (accept('(')) {
          Expression e = expr();
          expect(')');
          is_abs = true;
          return e;
        }
        pos_ = save;
      }
      return identifier();
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string_view text_;
  const ParseOptions& options_;
  std::size_t pos_ = 0;
};

}  // namespace

Expression parse(std::string_view text, const ParseOptions& options) {
  return Parser(text, options).run();
}

}  // namespace jetinv
