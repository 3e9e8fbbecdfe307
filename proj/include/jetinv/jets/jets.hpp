#pragma once

#include <array>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "jetinv/expr/expression.hpp"

namespace jetinv {

enum class Bundle { pi, pitilde };

std::string to_string(Bundle b);
Bundle bundle_from_string(std::string_view s);

inline constexpr int kDefaultOrderBudget = 4;

/// Base (x, y, p); fibers (f, g) over pi, (f) over pitilde; jets up to `order`.
struct BundleDescriptor {
  Bundle bundle = Bundle::pi;
  int order = kDefaultOrderBudget;

  std::string_view fibers() const { return bundle == Bundle::pi ? "fg" : "f"; }
  VariableSpace space() const { return VariableSpace::jets(fibers(), order); }
};

/// Highest jet order among the free variables of e (0 if none).
int jet_order(const Expression& e);

/// d e / d v for the base axis v (0 = x, 1 = y, 2 = p).
Expression total_derivative(const Expression& e, int axis, int budget = kDefaultOrderBudget);

/// A d/dx + B d/dy + C d/dp.
struct TotalDerivation {
  std::array<Expression, 3> coef;

  Expression apply(const Expression& e, int budget = kDefaultOrderBudget) const;
};

/// zeta = eta_x + p (eta_y - xi_x) - p^2 xi_y for a point field (xi, eta).
Expression prolong_contact(const Expression& xi, const Expression& eta);

/// A field xi d/dx + eta d/dy + zeta d/dp on R^3 lifted to jets of a bundle.
/// Fiber components are built lazily: order 0 by the transport formula for
/// the direction field d/dx + g d/dy + f d/dp, higher orders recursively by
///   Phi_{s+v} = D_v Phi_s - sum_w u_{s+w} D_v(c_w),  c = (xi, eta, zeta).
class LiftedField {
 public:
  LiftedField(Expression xi, Expression eta, Expression zeta, Bundle bundle,
              int budget = kDefaultOrderBudget);

  const Expression& base(int axis) const { return base_[axis]; }
  Bundle bundle() const { return bundle_; }
  const Expression& component(const JetIndex& idx) const;
  /// The derivation's value on a variable: base coefficient, jet component, or 0.
  Expression image(VarId v) const;
  Expression apply(const Expression& e) const;

 private:
  std::array<Expression, 3> base_;
  Bundle bundle_;
  int budget_;
  struct Cache {
    std::recursive_mutex mutex;
    std::map<std::string, Expression> components;
  };
  std::unique_ptr<Cache> cache_;
};

/// Concrete section: expressions in x, y, p for f (and g over pi).
struct Section {
  Bundle bundle = Bundle::pitilde;
  Expression f;
  Expression g;
};

/// Replaces each jet coordinate by the matching partial derivative of the section.
Expression restrict_to_section(const Expression& e, const Section& s);

/// Partial derivative of a section component for a jet index.
Expression section_jet(const Section& s, const JetIndex& idx);

/// Numeric jets of a section. Partial derivatives are formed once, by
/// differentiating lower ones, and evaluated per point.
class SectionJets {
 public:
  using Values = std::unordered_map<VarId, double>;

  SectionJets(Section s, int order);

  const Section& section() const { return section_; }
  int order() const { return order_; }
  /// Base and jet coordinates at q; throws DivisionByZero off the section's domain.
  Values at(const std::array<double, 3>& q) const;
  /// Value of a jet expression; variables outside `v` raise UnknownVariable.
  static double eval(const Expression& e, const Values& v);

 private:
  Section section_;
  int order_;
  std::vector<std::pair<VarId, Expression>> jets_;
};

}  // namespace jetinv
