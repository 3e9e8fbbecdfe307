#pragma once

#include <optional>
#include <vector>

#include "jetinv/expr/polynomial.hpp"

namespace jetinv {

/// Dense matrix over Q, row-major.
using RationalMatrix = std::vector<std::vector<Rational>>;

/// Row echelon form in place; returns the rank.
std::size_t row_reduce(RationalMatrix& m);
std::size_t rank(RationalMatrix m);
Rational determinant(RationalMatrix m);
/// Coefficients c with sum_i c_i rows[i] = target, or nullopt if target is outside the span.
std::optional<std::vector<Rational>> solve_in_span(const RationalMatrix& rows,
                                                   const std::vector<Rational>& target);

}  // namespace jetinv
