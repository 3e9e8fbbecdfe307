#pragma once

#include <string>
#include <vector>

#include "jetinv/expr/identity.hpp"
#include "jetinv/invariants/catalog.hpp"

namespace jetinv {

/// I0, I1, L1 ... L10 with weights; J1 ... J3, K1 ... K6; nabla_1 ... nabla_3.
const Catalog& catalog_pi();

/// The three printed relations for [nabla_1, nabla_2], [nabla_1, nabla_3], [nabla_2, nabla_3].
std::vector<CommutatorRelation> commutator_relations_pi();

/// Chart on which the printed relations are stated: I1 > 0.
Chart positive_chart_pi();

/// Names of the 12 second-order invariants K1, K2, K3, nabla_i J_k (i outer).
std::vector<std::string> u12_row_names();
/// Their expressions, in the same order.
std::vector<Expression> u12_rows();

/// Right-hand sides of the determinant identity, both printed forms.
Expression det_u12_formula();
Expression det_u12_formula_j();
/// The closed form that the determinant actually matches (exact at every sampled point).
Expression det_u12_observed();

/// W_ik = nabla_i J_k and U_ik = d J_k / d x_i (3x3).
std::array<std::array<Expression, 3>, 3> matrix_w();
std::array<std::array<Expression, 3>, 3> matrix_u();

struct IdentityReport {
  int points = 0;
  int failures = 0;
  int skipped = 0;
  bool passed() const { return failures == 0 && points > 0; }
};

/// det U12 vs the printed formula at `points` random rational jets. The sign
/// of the determinant depends on row/column order; `sign` records the factor
/// (+1 or -1) that made the comparison succeed, or 0.
struct DetReport : IdentityReport {
  int sign = 0;
  int plus = 0, minus = 0;  // points where det = rhs, det = -rhs
};
/// det U12 against `rhs`; i1_sign selects the chart sign(I1) (0: both charts).
DetReport check_det_u12(int points, std::uint64_t seed, const Expression& rhs, int i1_sign = 0);
IdentityReport check_det_u_w(int points, std::uint64_t seed);

/// Evaluated invariant data at one point of a concrete section.
struct RegularityReport {
  bool regular = false;
  std::vector<std::string> vanishing;  // names of factors below threshold
};

/// Numeric regularity test I0 I1 L1 (L1 L3 + L2 L4) det W != 0 at a base point.
RegularityReport regularity_pi(const Section& s, const std::array<double, 3>& point,
                               double tau = 1e-9);
RegularityReport regularity_pi(const SectionJets::Values& v, double tau = 1e-9);

/// The 15 signature functions J1..J3, K1..K3, nabla_k J_i in the printed order
/// (j_ik = nabla_k J_i).
std::vector<std::string> signature_names_pi();
std::vector<Expression> signature_functions_pi();

}  // namespace jetinv
