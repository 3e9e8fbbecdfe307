#include "jetinv/invariants/catalog.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "jetinv/errors.hpp"
#include "jetinv/expr/parser.hpp"

namespace jetinv {

Catalog::Catalog(const CatalogText& text) : bundle_(text.bundle) {
  ParseOptions opts;
  opts.symbols = &symbols_;
  for (const auto& r : text.relative) {
    InvariantEntry e;
    e.name = r.name;
    e.bundle = bundle_;
    e.order = r.order;
    e.expr = parse(r.formula);
    e.kind = InvariantKind::relative;
    e.weight = parse(r.weight, opts);
    if (r.corrected_weight) e.corrected_weight = parse(r.corrected_weight, opts);
    symbols_.emplace(e.name, e.expr);
    entries_.push_back(std::move(e));
  }
  for (const auto& a : text.absolute) {
    InvariantEntry e;
    e.name = a.name;
    e.bundle = bundle_;
    e.order = a.order;
    e.expr = parse(a.formula, opts);
    e.kind = InvariantKind::absolute;
    for (const auto& [n, q] : a.factors) e.factors.emplace_back(n, q);
    entries_.push_back(std::move(e));
  }
  for (const auto& e : entries_) symbols_.emplace(e.name, e.expr);
  for (int i = 0; i < 3; ++i) {
    for (int k = 0; k < 3; ++k) derivations_[i].coef[k] = parse(text.derivations[i][k], opts);
  }
}

std::vector<const InvariantEntry*> Catalog::of_kind(InvariantKind kind) const {
  std::vector<const InvariantEntry*> out;
  for (const auto& e : entries_) {
    if (e.kind == kind) out.push_back(&e);
  }
  return out;
}

const InvariantEntry& Catalog::entry(std::string_view name) const {
  for (const auto& e : entries_) {
    if (e.name == name) return e;
  }
  throw std::out_of_range("no catalog entry " + std::string(name));
}

Expression Catalog::nabla(int i, const Expression& e) const {
  return derivations_.at(i - 1).apply(e);
}

const Weight& Catalog::verified_weight(std::string_view name) const {
  const auto& e = entry(name);
  return e.corrected_weight ? *e.corrected_weight : e.weight.value();
}

Weight Catalog::weight_balance(const InvariantEntry& e) const {
  Weight total;
  for (const auto& [name, q] : e.factors) total += Expression(q) * verified_weight(name);
  return total;
}

bool check_derivation_invariant(const TotalDerivation& d, Bundle bundle) {
  const LiftedField& lifted = lift_generic(bundle);
  for (int j = 0; j < 3; ++j) {
    Expression lhs = lifted.apply(d.coef[j]);
    Expression rhs = d.apply(lifted.base(j));
    if (!canonical_equal(lhs, rhs)) return false;
  }
  return true;
}

std::array<Expression, 3> commutator_coefficients(const Catalog& c, int i, int j) {
  const auto& di = c.derivations().at(i - 1);
  const auto& dj = c.derivations().at(j - 1);
  std::array<Expression, 3> out;
  for (int w = 0; w < 3; ++w) out[w] = di.apply(dj.coef[w]) - dj.apply(di.coef[w]);
  return out;
}

std::array<Expression, 3> commutator_defect(const Catalog& c, const CommutatorRelation& r) {
  auto lhs = commutator_coefficients(c, r.i, r.j);
  for (int w = 0; w < 3; ++w) {
    for (int k = 0; k < 3; ++k) lhs[w] -= r.rhs[k] * c.derivations()[k].coef[w];
  }
  return lhs;
}

std::vector<Expression> symbol_row(const Expression& e, const std::vector<VarId>& jets) {
  std::vector<Expression> row;
  row.reserve(jets.size());
  for (VarId v : jets) row.push_back(e.differentiate(v));
  return row;
}

std::vector<VarId> jets_of_order(Bundle bundle, int order) {
  std::vector<VarId> out;
  std::string_view fibers = bundle == Bundle::pi ? "fg" : "f";
  for (char fiber : fibers) {
    // multisets of {x, y, p} of size `order`, lexicographic
    for (int i = order; i >= 0; --i) {
      for (int j = order - i; j >= 0; --j) {
        JetIndex idx{fiber, {static_cast<std::uint8_t>(i), static_cast<std::uint8_t>(j),
                             static_cast<std::uint8_t>(order - i - j)}};
        out.push_back(jet_var(idx));
      }
    }
  }
  return out;
}

std::vector<const InvariantEntry*> singular_guards(const Catalog& c, const Expression& e) {
  std::set<FactorId> den;
  for (const auto& [id, k] : e.denominator_factors()) den.insert(id);
  std::vector<Polynomial> bases;
  for (VarId v : e.atoms()) {
    const auto& info = var_info(v);
    if (info.radical) bases.push_back(*info.radical->base);
  }
  std::vector<const InvariantEntry*> out;
  for (const auto* r : c.of_kind(InvariantKind::relative)) {
    bool hit = false;
    auto inv = Expression(1) / r->expr;
    if (!inv.denominator_factors().empty()) {
      hit = std::all_of(inv.denominator_factors().begin(), inv.denominator_factors().end(),
                        [&](const auto& f) { return den.count(f.first) > 0; });
    }
    Polynomial num = r->expr.numerator();
    for (const auto& b : bases) {
      if (hit) break;
      if (b.size() != num.size() || num.is_zero()) continue;
      Rational ratio = b.leading().coef / num.leading().coef;
      hit = b == num * ratio;
    }
    if (hit) out.push_back(r);
  }
  return out;
}

bool numerically_zero(const Expression& f, const SectionJets::Values& v, double tau) {
  auto lookup = [&](VarId id) {
    auto it = v.find(id);
    if (it == v.end()) throw UnknownVariable(var_info(id).name);
    return it->second;
  };
  double value = SectionJets::eval(f, v);
  double scale = std::max(1.0, f.numerator().magnitude(lookup));
  return !(std::fabs(value) > tau * scale);
}

double eval_on_section(const Catalog& c, const Expression& e, const SectionJets& s,
                       const std::array<double, 3>& point, double tau) {
  SectionJets::Values v;
  try {
    v = s.at(point);
  } catch (const DivisionByZero& ex) {
    throw SingularPoint("section", std::string("section undefined: ") + ex.what());
  }
  for (const auto* g : singular_guards(c, e)) {
    if (numerically_zero(g->expr, v, tau)) throw SingularPoint(g->name, g->name + " vanishes");
  }
  try {
    return SectionJets::eval(e, v);
  } catch (const DivisionByZero& ex) {
    throw SingularPoint("denominator", ex.what());
  }
}

double eval_invariant(const Catalog& c, std::string_view name, const Section& s,
                      const std::array<double, 3>& point, double tau) {
  const Expression& e = c(name);
  SectionJets jets(s, std::max(jet_order(e), 0));
  return eval_on_section(c, e, jets, point, tau);
}

std::vector<std::array<bool, 3>> check_commutators(const Catalog& c,
                                                   const std::vector<CommutatorRelation>& rels,
                                                   const Chart& chart) {
  std::vector<std::array<bool, 3>> out;
  for (const auto& r : rels) {
    auto d = commutator_defect(c, r);
    std::array<bool, 3> ok{};
    for (int k = 0; k < 3; ++k) ok[k] = on_chart(d[k], chart).is_zero();
    out.push_back(ok);
  }
  return out;
}

}  // namespace jetinv
