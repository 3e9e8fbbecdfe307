#pragma once

#include <array>
#include <optional>

#include "jetinv/jets/jets.hpp"
#include "jetinv/sl3/sl3.hpp"

namespace jetinv {

/// Exact projective matrix. Any invertible real matrix acts on the plane as
/// its rescaling by det^(-1/3), an element of SL3.
using RationalMatrix3 = std::array<std::array<Rational, 3>, 3>;

/// Rounds every entry to the nearest multiple of 1 / denominator.
RationalMatrix3 rationalize(const Matrix3& m, long denominator);
Matrix3 to_double(const RationalMatrix3& m);
RationalMatrix3 inverse(const RationalMatrix3& m);

/// (X, Y, P) as expressions in x, y, p: the projective map of the plane and
/// its contact prolongation P = (Y_x + p Y_y) / (X_x + p X_y).
std::array<Expression, 3> prolonged_map(const RationalMatrix3& m);

/// Numeric image of (x, y, p); nullopt on the singular locus of the map.
std::optional<std::array<double, 3>> map_point(const Matrix3& m, const std::array<double, 3>& q);

/// Pushforward of the direction field d/dx + g d/dy + f d/dp by the prolonged
/// map, rewritten in the new coordinates (again named x, y, p). Over pitilde
/// the result again has g = p.
Section pushforward(const Section& s, const RationalMatrix3& m);

}  // namespace jetinv
