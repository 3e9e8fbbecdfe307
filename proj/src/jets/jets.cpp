#include "jetinv/jets/jets.hpp"

#include <stdexcept>

#include "jetinv/errors.hpp"

namespace jetinv {

std::string to_string(Bundle b) { return b == Bundle::pi ? "pi" : "pitilde"; }

Bundle bundle_from_string(std::string_view s) {
  if (s == "pi") return Bundle::pi;
  if (s == "pitilde") return Bundle::pitilde;
  throw InputError("unknown bundle '" + std::string(s) + "'");
}

int jet_order(const Expression& e) {
  int order = 0;
  for (VarId v : e.free_variables()) {
    const auto& info = var_info(v);
    if (info.jet) order = std::max(order, info.jet->order());
  }
  return order;
}

Expression total_derivative(const Expression& e, int axis, int budget) {
  return apply_derivation(e, [axis, budget](VarId v) -> Expression {
    const auto& info = var_info(v);
    if (info.kind == VarKind::base) return Expression(info.base_axis == axis ? 1 : 0);
    if (info.jet) {
      if (info.jet->order() + 1 > budget) {
        throw OrderBudgetExceeded("total derivative of " + info.name + " exceeds order " +
                                  std::to_string(budget));
      }
      return Expression::variable(jet_var(info.jet->raised(axis)));
    }
    return Expression(0);
  });
}

Expression TotalDerivation::apply(const Expression& e, int budget) const {
  Expression out;
  for (int axis = 0; axis < 3; ++axis) {
    if (coef[axis].is_zero()) continue;
    out += coef[axis] * total_derivative(e, axis, budget);
  }
  return out;
}

Expression prolong_contact(const Expression& xi, const Expression& eta) {
  VarId x = var("x"), y = var("y"), p = var("p");
  if (xi.depends_on(p) || eta.depends_on(p)) {
    throw std::invalid_argument("prolong_contact expects a point field independent of p");
  }
  Expression pe = Expression::variable(p);
  return eta.differentiate(x) + pe * (eta.differentiate(y) - xi.differentiate(x)) -
         pe * pe * xi.differentiate(y);
}

LiftedField::LiftedField(Expression xi, Expression eta, Expression zeta, Bundle bundle,
                         int budget)
    : base_{std::move(xi), std::move(eta), std::move(zeta)}, bundle_(bundle), budget_(budget), cache_(std::make_unique<Cache>()) {}

const Expression& LiftedField::component(const JetIndex& idx) const {
  std::lock_guard lock(cache_->mutex);
  std::string key = idx.name();
  auto it = cache_->components.find(key);
  if (it != cache_->components.end()) return it->second;
  if (idx.order() > budget_) {
    throw OrderBudgetExceeded("lift component " + key + " exceeds order " + std::to_string(budget_));
  }
  if (bundle_ == Bundle::pitilde && idx.fiber != 'f') {
    throw std::invalid_argument("the bundle pitilde has only the fiber f");
  }
  VarId x = var("x"), y = var("y"), p = var("p");
  const auto& [xi, eta, zeta] = base_;
  Expression value;
  if (idx.order() == 0) {
    Expression f = var_expr("f");
    Expression g = bundle_ == Bundle::pi ? var_expr("g") : var_expr("p");
    Expression transport = xi.differentiate(p) * f + xi.differentiate(y) * g + xi.differentiate(x);
    if (idx.fiber == 'f') {
      value = zeta.differentiate(p) * f + zeta.differentiate(y) * g + zeta.differentiate(x) -
              transport * f;
    } else {
      value = eta.differentiate(p) * f + eta.differentiate(y) * g + eta.differentiate(x) -
              transport * g;
    }
  } else {
    int v = 0;
    while (idx.counts[v] == 0) ++v;
    JetIndex lower = idx;
    --lower.counts[v];
    value = total_derivative(component(lower), v, budget_);
    for (int w = 0; w < 3; ++w) {
      Expression dc = total_derivative(base_[w], v, budget_);
      if (dc.is_zero()) continue;
      value -= Expression::variable(jet_var(lower.raised(w))) * dc;
    }
  }
  return cache_->components.emplace(key, std::move(value)).first->second;
}

Expression LiftedField::image(VarId v) const {
  const auto& info = var_info(v);
  if (info.kind == VarKind::base) return base_[info.base_axis];
  if (info.jet) return component(*info.jet);
  return Expression(0);
}

Expression LiftedField::apply(const Expression& e) const {
  return apply_derivation(e, [this](VarId v) { return image(v); });
}

Expression section_jet(const Section& s, const JetIndex& idx) {
  Expression e = idx.fiber == 'f' ? s.f : s.g;
  if (idx.fiber == 'g' && s.bundle == Bundle::pitilde) e = var_expr("p");
  for (int axis = 0; axis < 3; ++axis) {
    for (int k = 0; k < idx.counts[axis]; ++k) e = e.differentiate(base_var(axis));
  }
  return e;
}

Expression restrict_to_section(const Expression& e, const Section& s) {
  std::map<VarId, Expression> images;
  for (VarId v : e.free_variables()) {
    const auto& info = var_info(v);
    if (info.jet) images.emplace(v, section_jet(s, *info.jet));
  }
  return e.substitute(images);
}

SectionJets::SectionJets(Section s, int order) : section_(std::move(s)), order_(order) {
  std::string_view fibers = section_.bundle == Bundle::pi ? "fg" : "f";
  std::map<std::string, Expression> done;
  for (char fiber : fibers) {
    for (int n = 0; n <= order; ++n) {
      for (int a = n; a >= 0; --a) {
        for (int b = n - a; b >= 0; --b) {
          JetIndex idx{fiber, {static_cast<std::uint8_t>(a), static_cast<std::uint8_t>(b),
                               static_cast<std::uint8_t>(n - a - b)}};
          Expression e;
          if (n == 0) {
            e = section_jet(section_, idx);
          } else {
            // differentiate the already formed neighbour with one fewer count
            int axis = a > 0 ? 0 : (b > 0 ? 1 : 2);
            JetIndex lower = idx;
            --lower.counts[axis];
            e = done.at(lower.name()).differentiate(base_var(axis));
          }
          done.emplace(idx.name(), e);
          jets_.emplace_back(jet_var(idx), std::move(e));
        }
      }
    }
  }
}

SectionJets::Values SectionJets::at(const std::array<double, 3>& q) const {
  Values v;
  for (int axis = 0; axis < 3; ++axis) v[base_var(axis)] = q[axis];
  auto base = [&](VarId id) -> double {
    const auto& info = var_info(id);
    if (info.kind == VarKind::base) return q[info.base_axis];
    throw UnknownVariable(info.name);
  };
  for (const auto& [id, e] : jets_) v[id] = e.evalf(base);
  return v;
}

double SectionJets::eval(const Expression& e, const Values& v) {
  return e.evalf([&](VarId id) {
    auto it = v.find(id);
    if (it == v.end()) throw UnknownVariable(var_info(id).name);
    return it->second;
  });
}

}  // namespace jetinv
