#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "jetinv/invariants/catalog.hpp"

namespace jetinv {

/// Base box [x0,x1] x [y0,y1] x [p0,p1].
struct Box {
  std::array<std::array<double, 2>, 3> range{{{1, 2}, {1, 2}, {1, 2}}};

  bool contains(const std::array<double, 3>& q, double margin = 0) const;
  double width(int axis) const { return range[axis][1] - range[axis][0]; }
};

struct SignaturePoint {
  std::array<double, 3> base{};
  std::array<int, 2> signs{};  // sign I0, sign I1
  std::vector<double> coords;
};

/// The signature map of one section: 15 coordinates over pi, 10 over pitilde.
class SignatureMap {
 public:
  explicit SignatureMap(const Section& s);

  Bundle bundle() const { return jets_.section().bundle; }
  const std::vector<std::string>& names() const;
  std::size_t dimension() const { return functions_->size(); }
  /// Indices of the coordinates a chart may be built from: j1..j3 over pi, m1..m5 over pitilde.
  std::vector<int> chart_candidates() const;

  /// Signature at q, or nullopt if q is not regular; `vanishing` receives the reasons.
  std::optional<SignaturePoint> at(const std::array<double, 3>& q, double tau = 1e-9,
                                   std::vector<std::string>* vanishing = nullptr) const;
  /// Selected coordinates at q without regularity tests (nullopt if undefined).
  std::optional<Eigen::VectorXd> coords(const std::array<double, 3>& q,
                                        const std::vector<int>& which) const;
  /// d coords / d(x, y, p) by central differences, rows in `which` order.
  std::optional<Eigen::MatrixXd> jacobian(const std::array<double, 3>& q,
                                          const std::vector<int>& which) const;

 private:
  SectionJets jets_;
  const std::vector<Expression>* functions_;
  std::vector<Expression> guards_;
  std::vector<std::string> guard_names_;
};

struct SignatureSample {
  Bundle bundle = Bundle::pitilde;
  std::vector<std::string> names;
  std::vector<SignaturePoint> points;
  int total = 0;
  std::map<std::string, int> vanishing;  // reason -> number of grid points
};

/// Some SL3 elements, such as (x, y) -> (x, -y), reverse the orientation of
/// invariant derivations. They flip the signs of the odd coordinates and may
/// move a point to another sign chart. Over pitilde the group is generated by
/// the orientations e1, e2 of nabla_1, nabla_2: M3 ~ e1, M4 ~ e2, and both
/// chart signs change when e1 e2 = -1. Over pi one sign d reverses nabla_1,
/// nabla_3, J1, J3, K2, K3, and sign I1 is kept.
struct SignSymmetry {
  std::string name;
  std::array<int, 2> chart_factor{1, 1};  // multiplies (sign I0, sign I1)
  std::vector<int> coord_sign;
};
/// All group elements, identity first.
const std::vector<SignSymmetry>& sign_symmetries(Bundle b);
/// Charts compared by the equivalence procedure: (sign I0, sign I1) over
/// pitilde; over pi the coordinates do not see sign I0, so it is dropped.
std::array<int, 2> chart_key(Bundle b, const std::array<int, 2>& signs);

/// Evaluates the signature on an n0 x n1 x n2 grid including the box corners.
SignatureSample sample_signature(const SignatureMap& map, const Box& box,
                                 const std::array<int, 3>& grid, double tau = 1e-9);

/// Numeric rank by singular values relative to the largest.
int numeric_rank(const Eigen::MatrixXd& m, double rel = 1e-6);

/// Subset of `candidates` of size r maximizing the r-th singular value of the
/// corresponding rows of `jac`.
std::pair<std::vector<int>, double> best_chart(const Eigen::MatrixXd& jac,
                                               const std::vector<int>& candidates, int r);

struct GermReport {
  bool orbit_regular = false;  // I0 I1 != 0 (pitilde), full regularity (pi)
  std::vector<std::string> vanishing;
  int rank = 0;                // numeric rank of the signature Jacobian
  std::vector<double> singular_values;
  std::vector<int> chart;      // best-conditioned triple among the chart candidates
  double chart_sigma = 0;      // its smallest singular value
};

/// Regular-germ conditions at q: orbit regularity, rank of the signature
/// Jacobian, and the best-conditioned chart triple.
GermReport regular_germ_check(const SignatureMap& map, const std::array<double, 3>& q,
                              double tau = 1e-9);

}  // namespace jetinv
