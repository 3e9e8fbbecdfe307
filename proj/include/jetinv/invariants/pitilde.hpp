#pragma once

#include <optional>
#include <string>
#include <vector>

#include "jetinv/expr/identity.hpp"
#include "jetinv/invariants/catalog.hpp"
#include "jetinv/invariants/pi.hpp"

namespace jetinv {

/// I0, I1, H1 ... H5 with weights; M1 ... M5; nabla_1 ... nabla_3.
const Catalog& catalog_pitilde();

std::vector<CommutatorRelation> commutator_relations_pitilde();

/// M_ik = nabla_i M_k, i in 1..3, k in 1..5 (cached).
const Expression& m_derived(int i, int k);

/// The five printed syzygies as expressions that should vanish.
std::vector<Expression> syzygies();

/// The first three syzygies re-derived from the commutation relations and the
/// Jacobi identity, written over formal symbols M1..M5, M11..M35 and
/// returned as polynomials in those symbols (up to a nonzero factor).
std::vector<Expression> syzygies_from_jacobi();
/// The printed syzygies over the same formal symbols.
std::vector<Expression> syzygies_formal();
/// Formal symbol names: M1..M5, then M11..M35.
std::vector<std::string> formal_symbol_names();
/// The first and third printed relations with the forms that the Jacobi
/// identity produces (12 M12 for 12 M2, and -M5 for +M5); the others as printed.
std::vector<Expression> syzygies_corrected_formal();
/// Formal relation over M symbols -> jet expression with M_ik = nabla_i M_k.
Expression instantiate_formal(const Expression& formal);
/// c with a = c b for a nonzero rational c, if there is one.
std::optional<Rational> proportionality(const Expression& a, const Expression& b);
/// Each formal relation vanishes identically on the positive chart.
std::vector<bool> check_syzygies(const std::vector<Expression>& formal);

/// Rows of U10: M11, M12, M13, M14, M15, M21, M22, M24, M25, M35.
std::vector<std::pair<int, int>> u10_rows();
Expression det_u10_formula();
/// The closed form the determinant matches exactly on the charts sign I0 = sign I1.
Expression det_u10_observed();
DetReport check_det_u10(int points, std::uint64_t seed, const Expression& rhs, int chart_sign = 0);

/// (m1..m5, m11, m12, m13, m21, m22).
std::vector<std::string> signature_names_pitilde();
std::vector<Expression> signature_functions_pitilde();

/// Chart on which the printed relations are stated: I0 > 0 and I1 > 0.
std::vector<std::pair<Expression, int>> positive_chart_pitilde();

}  // namespace jetinv
