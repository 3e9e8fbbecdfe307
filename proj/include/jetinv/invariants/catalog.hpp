#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "jetinv/expr/identity.hpp"
#include "jetinv/jets/jets.hpp"
#include "jetinv/sl3/sl3.hpp"

namespace jetinv {

enum class InvariantKind { relative, absolute };

struct InvariantEntry {
  std::string name;
  Bundle bundle = Bundle::pi;
  int order = 0;
  Expression expr;
  InvariantKind kind = InvariantKind::relative;
  std::optional<Weight> weight;  // relative entries, as printed
  /// Set when the printed weight fails the invariance check and a corrected
  /// one has been verified in its place.
  std::optional<Weight> corrected_weight;
  /// Absolute entries as products of powers of relative ones, |F|^q for fractional q.
  std::vector<std::pair<std::string, Rational>> factors;
};

/// Raw catalog data as formula text; relative formulas are over jets, absolute
/// ones and derivation coefficients may use the names of relative entries.
struct CatalogText {
  struct Relative {
    const char* name;
    int order;
    const char* formula;
    const char* weight;
    const char* corrected_weight = nullptr;
  };
  struct Absolute {
    const char* name;
    int order;
    const char* formula;
    std::vector<std::pair<const char*, Rational>> factors;
  };
  Bundle bundle;
  std::vector<Relative> relative;
  std::vector<Absolute> absolute;
  std::array<std::array<const char*, 3>, 3> derivations;  // (A, B, C) per derivation
};

class Catalog {
 public:
  explicit Catalog(const CatalogText& text);

  Bundle bundle() const { return bundle_; }
  const std::vector<InvariantEntry>& entries() const { return entries_; }
  std::vector<const InvariantEntry*> of_kind(InvariantKind kind) const;
  const InvariantEntry& entry(std::string_view name) const;
  const Expression& operator()(std::string_view name) const { return entry(name).expr; }
  const std::array<TotalDerivation, 3>& derivations() const { return derivations_; }
  /// nabla_i applied to e, i in 1..3.
  Expression nabla(int i, const Expression& e) const;
  /// Parser symbol table with every entry name.
  const std::map<std::string, Expression, std::less<>>& symbols() const { return symbols_; }

  /// The corrected weight if there is one, else the printed weight.
  const Weight& verified_weight(std::string_view name) const;
  /// mu(numerator) - mu(denominator) for an absolute entry, from verified weights.
  Weight weight_balance(const InvariantEntry& e) const;

 private:
  Bundle bundle_;
  std::vector<InvariantEntry> entries_;
  std::array<TotalDerivation, 3> derivations_;
  std::map<std::string, Expression, std::less<>> symbols_;
};

/// Relative entries whose zero set makes `e` singular (denominator factors
/// and radical bases of e), in catalog order.
std::vector<const InvariantEntry*> singular_guards(const Catalog& c, const Expression& e);

/// |F| <= tau * (sum of |terms| of F) at the jet values.
bool numerically_zero(const Expression& f, const SectionJets::Values& v, double tau);

/// Value of e on a section at a base point. Throws SingularPoint naming the
/// first vanishing guard.
double eval_on_section(const Catalog& c, const Expression& e, const SectionJets& s,
                       const std::array<double, 3>& point, double tau = 1e-9);
/// Same for a catalog entry by name.
double eval_invariant(const Catalog& c, std::string_view name, const Section& s,
                      const std::array<double, 3>& point, double tau = 1e-9);

/// X(A_j) = nabla(xi^j) for j = x, y, p with the generic lifted field: the
/// coefficient form of [X, nabla] = 0.
bool check_derivation_invariant(const TotalDerivation& d, Bundle bundle);

/// One printed commutation relation [nabla_i, nabla_j] = sum_k r_k nabla_k.
struct CommutatorRelation {
  int i, j;
  std::array<Expression, 3> rhs;
};

/// Coefficients of [nabla_i, nabla_j] on d/dx, d/dy, d/dp.
std::array<Expression, 3> commutator_coefficients(const Catalog& c, int i, int j);
/// Difference of both sides of a relation, per coefficient; all zero iff it holds.
std::array<Expression, 3> commutator_defect(const Catalog& c, const CommutatorRelation& r);

/// Sign chart: pairs (F, s) with |F| read as s F.
using Chart = std::vector<std::pair<Expression, int>>;
/// Per relation, whether each of the three coefficient identities holds on the chart.
std::vector<std::array<bool, 3>> check_commutators(const Catalog& c,
                                                   const std::vector<CommutatorRelation>& rels,
                                                   const Chart& chart);

/// Partial derivatives of e with respect to the listed jet coordinates.
std::vector<Expression> symbol_row(const Expression& e, const std::vector<VarId>& jets);

/// All jet coordinates of the given order over the catalog's fibers, in the
/// order f_xx, f_xy, f_xp, f_yy, f_yp, f_pp, g_xx, ... (lexicographic in x < y < p).
std::vector<VarId> jets_of_order(Bundle bundle, int order);

}  // namespace jetinv
