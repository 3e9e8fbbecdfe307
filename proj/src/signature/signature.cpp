#include "jetinv/signature/signature.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>

#include "jetinv/errors.hpp"
#include "jetinv/invariants/pi.hpp"
#include "jetinv/invariants/pitilde.hpp"
#include "jetinv/signature/parallel.hpp"

namespace jetinv {

namespace {

const std::vector<Expression>& functions_for(Bundle b) {
  static const std::vector<Expression> pi = signature_functions_pi();
  static const std::vector<Expression> tilde = signature_functions_pitilde();
  return b == Bundle::pi ? pi : tilde;
}

int sign_of(double v) { return v > 0 ? 1 : (v < 0 ? -1 : 0); }

}  // namespace

bool Box::contains(const std::array<double, 3>& q, double margin) const {
  for (int a = 0; a < 3; ++a) {
    double m = margin * width(a);
    if (q[a] < range[a][0] - m || q[a] > range[a][1] + m) return false;
  }
  return true;
}

SignatureMap::SignatureMap(const Section& s)
    : jets_(s, s.bundle == Bundle::pi ? 2 : 3), functions_(&functions_for(s.bundle)) {
  const Catalog& c = s.bundle == Bundle::pi ? catalog_pi() : catalog_pitilde();
  guards_ = {c("I0"), c("I1")};
  guard_names_ = {"I0", "I1"};
}

const std::vector<std::string>& SignatureMap::names() const {
  static const std::vector<std::string> pi = signature_names_pi();
  static const std::vector<std::string> tilde = signature_names_pitilde();
  return bundle() == Bundle::pi ? pi : tilde;
}

const std::vector<SignSymmetry>& sign_symmetries(Bundle b) {
  static const std::vector<SignSymmetry> tilde = [] {
    std::vector<SignSymmetry> out;
    for (int e2 : {1, -1}) {
      for (int e1 : {1, -1}) {
        // M1..M5, then nabla_i M_k for (i, k) = 11, 12, 13, 21, 22
        std::array<int, 6> m{0, 1, 1, e1, e2, 1};
        std::array<int, 4> nabla{0, e1, e2, 1};
        SignSymmetry g;
        g.name = "e1=" + std::to_string(e1) + ",e2=" + std::to_string(e2);
        g.chart_factor = {e1 * e2, e1 * e2};
        for (int k = 1; k <= 5; ++k) g.coord_sign.push_back(m[k]);
        for (auto [i, k] : {std::pair{1, 1}, {1, 2}, {1, 3}, {2, 1}, {2, 2}}) {
          g.coord_sign.push_back(nabla[i] * m[k]);
        }
        out.push_back(g);
      }
    }
    return out;
  }();
  static const std::vector<SignSymmetry> pi = [] {
    std::vector<SignSymmetry> out;
    for (int d : {1, -1}) {
      std::array<int, 4> J{0, d, 1, d}, nabla{0, d, 1, d};
      SignSymmetry g;
      g.name = "d=" + std::to_string(d);
      g.coord_sign = {J[1], J[2], J[3], 1, d, d};
      // j_ik = nabla_k J_i
      for (int i = 1; i <= 3; ++i) {
        for (int k = 1; k <= 3; ++k) g.coord_sign.push_back(J[i] * nabla[k]);
      }
      out.push_back(g);
    }
    return out;
  }();
  return b == Bundle::pi ? pi : tilde;
}

std::array<int, 2> chart_key(Bundle b, const std::array<int, 2>& signs) {
  return b == Bundle::pi ? std::array<int, 2>{0, signs[1]} : signs;
}

std::vector<int> SignatureMap::chart_candidates() const {
  if (bundle() == Bundle::pi) return {0, 1, 2};
  return {0, 1, 2, 3, 4};
}

std::optional<SignaturePoint> SignatureMap::at(const std::array<double, 3>& q, double tau,
                                               std::vector<std::string>* vanishing) const {
  std::vector<std::string> local;
  auto& why = vanishing ? *vanishing : local;
  SectionJets::Values v;
  try {
    v = jets_.at(q);
  } catch (const std::domain_error&) {
    why.push_back("section");
    return std::nullopt;
  }
  SignaturePoint out;
  out.base = q;
  try {
    for (int i = 0; i < 2; ++i) out.signs[i] = sign_of(SectionJets::eval(guards_[i], v));
    if (bundle() == Bundle::pi) {
      auto reg = regularity_pi(v, tau);
      why.insert(why.end(), reg.vanishing.begin(), reg.vanishing.end());
    } else {
      for (int i = 0; i < 2; ++i) {
        if (numerically_zero(guards_[i], v, tau)) why.push_back(guard_names_[i]);
      }
    }
    if (!why.empty()) return std::nullopt;
    out.coords.reserve(functions_->size());
    for (const auto& f : *functions_) {
      double x = SectionJets::eval(f, v);
      if (!std::isfinite(x)) {
        why.push_back("overflow");
        return std::nullopt;
      }
      out.coords.push_back(x);
    }
  } catch (const std::domain_error&) {
    why.push_back("denominator");
    return std::nullopt;
  }
  return out;
}

std::optional<Eigen::VectorXd> SignatureMap::coords(const std::array<double, 3>& q,
                                                    const std::vector<int>& which) const {
  try {
    auto v = jets_.at(q);
    Eigen::VectorXd out(which.size());
    for (std::size_t i = 0; i < which.size(); ++i) {
      out(i) = SectionJets::eval((*functions_)[which[i]], v);
      if (!std::isfinite(out(i))) return std::nullopt;
    }
    return out;
  } catch (const std::domain_error&) {
    return std::nullopt;
  }
}

std::optional<Eigen::MatrixXd> SignatureMap::jacobian(const std::array<double, 3>& q,
                                                      const std::vector<int>& which) const {
  Eigen::MatrixXd jac(which.size(), 3);
  for (int a = 0; a < 3; ++a) {
    double h = 1e-5 * std::max(1.0, std::fabs(q[a]));
    auto qp = q, qm = q;
    qp[a] += h;
    qm[a] -= h;
    auto fp = coords(qp, which), fm = coords(qm, which);
    if (!fp || !fm) return std::nullopt;
    jac.col(a) = (*fp - *fm) / (2 * h);
  }
  return jac;
}

SignatureSample sample_signature(const SignatureMap& map, const Box& box,
                                 const std::array<int, 3>& grid, double tau) {
  for (int a = 0; a < 3; ++a) {
    if (grid[a] < 2) throw InputError("grid resolution must be at least 2 per axis");
    if (!(box.range[a][1] > box.range[a][0])) throw InputError("degenerate box");
  }
  std::size_t n = static_cast<std::size_t>(grid[0]) * grid[1] * grid[2];
  std::vector<std::optional<SignaturePoint>> slots(n);
  std::vector<std::vector<std::string>> reasons(n);
  parallel_for(n, [&](std::size_t idx) {
    std::size_t r = idx;
    std::array<double, 3> q;
    for (int a = 2; a >= 0; --a) {
      int k = static_cast<int>(r % grid[a]);
      r /= grid[a];
      q[a] = box.range[a][0] + box.width(a) * k / (grid[a] - 1);
    }
    slots[idx] = map.at(q, tau, &reasons[idx]);
  });
  SignatureSample out;
  out.bundle = map.bundle();
  out.names = map.names();
  out.total = static_cast<int>(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (slots[i]) out.points.push_back(std::move(*slots[i]));
    for (const auto& why : reasons[i]) ++out.vanishing[why];
  }
  return out;
}

int numeric_rank(const Eigen::MatrixXd& m, double rel) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const auto& s = svd.singularValues();
  if (s.size() == 0 || !(s(0) > 0)) return 0;
  int r = 0;
  for (int i = 0; i < s.size(); ++i) {
    if (s(i) > rel * s(0)) ++r;
  }
  return r;
}

std::pair<std::vector<int>, double> best_chart(const Eigen::MatrixXd& jac,
                                               const std::vector<int>& candidates, int r) {
  std::vector<int> best;
  double best_sigma = -1;
  int n = static_cast<int>(candidates.size());
  if (r <= 0 || r > n) return {best, 0};
  std::vector<bool> mask(n, false);
  std::fill(mask.begin(), mask.begin() + r, true);
  do {
    std::vector<int> pick;
    for (int i = 0; i < n; ++i) {
      if (mask[i]) pick.push_back(candidates[i]);
    }
    Eigen::MatrixXd sub(r, jac.cols());
    for (int i = 0; i < r; ++i) sub.row(i) = jac.row(pick[i]);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(sub);
    double sigma = svd.singularValues()(r - 1);
    if (sigma > best_sigma) {
      best_sigma = sigma;
      best = pick;
    }
  } while (std::prev_permutation(mask.begin(), mask.end()));
  return {best, best_sigma};
}

GermReport regular_germ_check(const SignatureMap& map, const std::array<double, 3>& q,
                              double tau) {
  GermReport report;
  auto point = map.at(q, tau, &report.vanishing);
  report.orbit_regular = point.has_value();
  if (!point) return report;
  std::vector<int> all(map.dimension());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);
  auto jac = map.jacobian(q, all);
  if (!jac) return report;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(*jac);
  for (int i = 0; i < svd.singularValues().size(); ++i) {
    report.singular_values.push_back(svd.singularValues()(i));
  }
  report.rank = numeric_rank(*jac);
  auto [chart, sigma] = best_chart(*jac, map.chart_candidates(), 3);
  report.chart = chart;
  report.chart_sigma = sigma;
  return report;
}

}  // namespace jetinv
