#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace jetinv {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : std::runtime_error(what + " at position " + std::to_string(position)), position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

class UnknownVariable : public std::runtime_error {
 public:
  explicit UnknownVariable(const std::string& name)
      : std::runtime_error("unknown variable '" + name + "'"), name_(name) {}
  const std::string& name() const { return name_; }

 private:
  std::string name_;
};

class DivisionByZero : public std::domain_error {
 public:
  explicit DivisionByZero(const std::string& what) : std::domain_error(what) {}
};

/// Strict rational power of a negative number, or an exact root that is not rational.
class RadicandError : public std::domain_error {
 public:
  explicit RadicandError(const std::string& what) : std::domain_error(what) {}
};

class UnsupportedOperation : public std::logic_error {
 public:
  explicit UnsupportedOperation(const std::string& what) : std::logic_error(what) {}
};

class OrderBudgetExceeded : public std::out_of_range {
 public:
  explicit OrderBudgetExceeded(const std::string& what) : std::out_of_range(what) {}
};

/// A point where a named invariant denominator vanishes.
class SingularPoint : public std::domain_error {
 public:
  SingularPoint(const std::string& factor, const std::string& what)
      : std::domain_error(what), factor_(factor) {}
  const std::string& factor() const { return factor_; }

 private:
  std::string factor_;
};

class InputError : public std::runtime_error {
 public:
  explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace jetinv
