#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <unordered_map>
#include <vector>

#include "jetinv/expr/expression.hpp"

namespace jetinv {

using RationalPoint = std::unordered_map<VarId, Rational>;

/// Draws random rational points for a set of expressions such that every
/// radical atom evaluates to a rational number: for each radical base B one
/// variable occurring linearly in B is solved from B = +-s^n with s random.
/// Absolute radicals get both signs, so both sign charts are exercised.
class PointSampler {
 public:
  PointSampler(const std::vector<Expression>& exprs, std::uint64_t seed);

  /// nullopt when the solve step hit a vanishing coefficient; just retry.
  std::optional<RationalPoint> next();

  const std::vector<VarId>& variables() const { return free_; }

 private:
  struct Solve {
    VarId radical;
    VarId target;
  };
  Rational random_rational();

  std::vector<VarId> free_;
  std::vector<Solve> solves_;
  std::mt19937_64 rng_;
};

/// Restricts e to a sign chart: each absolute radical |B|^(1/n) whose base is
/// (a constant multiple of) one of the listed expressions F with chart sign s
/// becomes the strict power (s F / c)^(1/n), which assumes s F > 0.
Expression on_chart(const Expression& e, const std::vector<std::pair<Expression, int>>& signs);

std::function<Rational(VarId)> binding(const RationalPoint& point);

/// Evaluates e1 and e2 at `trials` random rational points and requires exact
/// agreement. Points on a singular denominator are skipped; throws
/// std::runtime_error("unable to sample") if too many are skipped.
bool probabilistic_equal(const Expression& e1, const Expression& e2, int trials = 20,
                         std::uint64_t seed = 1);

}  // namespace jetinv
