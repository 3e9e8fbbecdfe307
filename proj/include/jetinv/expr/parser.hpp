#pragma once

#include <map>
#include <string>
#include <string_view>

#include "jetinv/expr/expression.hpp"

namespace jetinv {

struct ParseOptions {
  /// When set, identifiers outside the space raise UnknownVariable.
  const VariableSpace* declared = nullptr;
  /// Named sub-expressions substituted in place of identifiers (catalog macros such as I1).
  const std::map<std::string, Expression, std::less<>>* symbols = nullptr;
};

/// Grammar:
///   expr    := term (('+' | '-') term)*
///   term    := unary (('*' | '/') unary)*
///   unary   := '-' unary | power
///   power   := primary ('^' exponent)?
///   exponent:= integer | '-' integer | '(' ['-'] integer ['/' integer] ')'
///   primary := number | identifier | '(' expr ')' | 'abs' '(' expr ')'
/// Numbers may carry a decimal fraction, read exactly. E^(n/m) with m > 1 is a
/// strict power (base assumed positive); abs(E)^(n/m) is the absolute form.
Expression parse(std::string_view text, const ParseOptions& options = {});

}  // namespace jetinv
