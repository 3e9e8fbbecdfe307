#include "jetinv/expr/identity.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

#include "jetinv/errors.hpp"

namespace jetinv {

namespace {

bool assign_solves(const std::vector<VarId>& radicals, std::vector<VarId>& order,
                   std::vector<VarId>& targets, std::set<VarId>& used) {
  if (order.size() == radicals.size()) return true;
  for (VarId r : radicals) {
    if (std::find(order.begin(), order.end(), r) != order.end()) continue;
    const Polynomial& base = *var_info(r).radical->base;
    for (VarId v : base.variables()) {
      if (used.count(v) || base.degree(v) != 1) continue;
      // v must not appear in a base that is already fixed
      bool clash = false;
      for (VarId done : order) clash = clash || var_info(done).radical->base->depends_on(v);
      if (clash) continue;
      order.push_back(r);
      targets.push_back(v);
      used.insert(v);
      if (assign_solves(radicals, order, targets, used)) return true;
      order.pop_back();
      targets.pop_back();
      used.erase(v);
    }
  }
  return false;
}

}  // namespace

PointSampler::PointSampler(const std::vector<Expression>& exprs, std::uint64_t seed)
    : rng_(seed) {
  std::set<VarId> free;
  std::vector<VarId> radicals;
  std::vector<const Polynomial*> seen_bases;
  for (const auto& e : exprs) {
    for (VarId v : e.atoms()) {
      const auto& info = var_info(v);
      if (!info.radical) {
        free.insert(v);
        continue;
      }
      auto bv = info.radical->base->variables();
      free.insert(bv.begin(), bv.end());
      bool dup = false;
      for (const auto* b : seen_bases) dup = dup || *b == *info.radical->base;
      if (dup) continue;
      seen_bases.push_back(info.radical->base.get());
      radicals.push_back(v);
    }
  }
  free_.assign(free.begin(), free.end());
  std::vector<VarId> order, targets;
  std::set<VarId> used;
  if (!assign_solves(radicals, order, targets, used)) {
    throw UnsupportedOperation("no rational parametrization for the radical bases");
  }
  for (std::size_t i = 0; i < order.size(); ++i) solves_.push_back({order[i], targets[i]});
}

Rational PointSampler::random_rational() {
  std::uniform_int_distribution<long> num(-60, 60);
  std::uniform_int_distribution<long> den(1, 17);
  long n = num(rng_);
  if (n == 0) n = 1;
  Rational q(n, den(rng_));
  q.canonicalize();
  return q;
}

std::optional<RationalPoint> PointSampler::next() {
  RationalPoint point;
  for (VarId v : free_) point[v] = random_rational();
  auto value = binding(point);
  std::bernoulli_distribution coin(0.5);
  for (const auto& s : solves_) {
    const auto& r = *var_info(s.radical).radical;
    auto coeffs = r.base->coefficients_in(s.target);
    Rational c = coeffs.size() > 1 ? coeffs[1].eval(value) : Rational(0);
    if (c == 0) return std::nullopt;
    Rational d = coeffs[0].eval(value);
    Rational root = random_rational();
    Rational target = 1;
    for (std::uint32_t k = 0; k < r.root; ++k) target *= root;
    if (r.absolute && coin(rng_)) target = -target;
    point[s.target] = (target - d) / c;
  }
  return point;
}

Expression on_chart(const Expression& e, const std::vector<std::pair<Expression, int>>& signs) {
  std::map<VarId, Expression> images;
  for (VarId v : e.atoms()) {
    const auto& info = var_info(v);
    if (!info.radical || !info.radical->absolute) continue;
    const Polynomial& base = *info.radical->base;
    for (const auto& [f, sign] : signs) {
      if (!f.is_polynomial() || f.is_constant()) continue;
      Rational c = f.numerator().content();
      if (f.numerator() * (1 / abs(c)) != base && f.numerator() * (-1 / abs(c)) != base) continue;
      // base = +-F/|c|; the sign of base on the chart follows from the sign of F
      int base_sign = (f.numerator() * (1 / abs(c)) == base) ? sign : -sign;
      Polynomial positive = base_sign > 0 ? base : -base;
      images.emplace(v, rational_pow(Expression(positive), Rational(1, info.radical->root)));
      break;
    }
  }
  return images.empty() ? e : e.substitute(images);
}

std::function<Rational(VarId)> binding(const RationalPoint& point) {
  return [&point](VarId v) -> Rational {
    auto it = point.find(v);
    if (it == point.end()) throw UnknownVariable(var_info(v).name);
    return it->second;
  };
}

bool probabilistic_equal(const Expression& e1, const Expression& e2, int trials,
                         std::uint64_t seed) {
  PointSampler sampler({e1, e2}, seed);
  int done = 0, attempts = 0;
  while (done < trials) {
    if (++attempts > 50 * trials + 50) throw std::runtime_error("unable to sample");
    auto point = sampler.next();
    if (!point) continue;
    auto value = binding(*point);
    try {
      if (e1.eval(value) != e2.eval(value)) return false;
    } catch (const DivisionByZero&) {
      continue;
    }
    ++done;
  }
  return true;
}

}  // namespace jetinv
