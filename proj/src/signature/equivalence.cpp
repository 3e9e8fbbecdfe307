#include "jetinv/signature/equivalence.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <map>
#include <sstream>

#include "jetinv/signature/parallel.hpp"

namespace jetinv {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::equivalent:
      return "equivalent";
    case Verdict::not_equivalent:
      return "not-equivalent";
    case Verdict::inconclusive:
      return "inconclusive";
  }
  return "inconclusive";
}

namespace {

using Points = std::vector<const SignaturePoint*>;

double rel_diff(double a, double b) { return std::fabs(a - b) / std::max(1.0, std::fabs(b)); }

std::string fmt_point(const std::array<double, 3>& q) {
  std::ostringstream os;
  os.precision(6);
  os << "(" << q[0] << ", " << q[1] << ", " << q[2] << ")";
  return os.str();
}

struct Chart {
  int rank = 0;
  std::vector<int> coords;
};

/// Finite-difference Jacobians of large pushforward expressions carry noise
/// near 1e-4 relative in their null directions.
constexpr double kChartRankTol = 1e-3;

/// Rank and best-conditioned coordinates of the target signature, from
/// Jacobians at up to 15 spread-out samples.
Chart choose_chart(const SignatureMap& map, const Points& pts) {
  std::vector<int> all(map.dimension());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);
  std::vector<Eigen::MatrixXd> jacs;
  std::size_t stride = std::max<std::size_t>(1, pts.size() / 15);
  for (std::size_t i = 0; i < pts.size() && jacs.size() < 15; i += stride) {
    if (auto j = map.jacobian(pts[i]->base, all)) jacs.push_back(*j);
  }
  Chart chart;
  if (jacs.empty()) return chart;
  std::map<int, int> votes;
  for (const auto& j : jacs) ++votes[numeric_rank(j, kChartRankTol)];
  chart.rank = std::max_element(votes.begin(), votes.end(), [](auto& a, auto& b) {
                 return a.second < b.second;
               })->first;
  if (chart.rank == 0) return chart;
  auto pick = [&](const std::vector<int>& candidates) {
    std::map<std::vector<int>, std::vector<double>> sigmas;
    for (const auto& j : jacs) {
      auto [c, s] = best_chart(j, candidates, chart.rank);
      sigmas[c].push_back(s);
    }
    // the subset chosen most often, ties broken by its median sigma
    std::vector<int> best;
    std::size_t best_votes = 0;
    for (auto& [c, s] : sigmas) {
      if (s.size() > best_votes) {
        best_votes = s.size();
        best = c;
      }
    }
    return best;
  };
  auto candidates = map.chart_candidates();
  if (static_cast<int>(candidates.size()) >= chart.rank) {
    chart.coords = pick(candidates);
    // fall back to every coordinate if the candidates are degenerate
    Eigen::MatrixXd sub(chart.rank, 3);
    for (int i = 0; i < chart.rank; ++i) sub.row(i) = jacs[0].row(chart.coords[i]);
    if (numeric_rank(sub, kChartRankTol) < chart.rank) chart.coords = pick(all);
  } else {
    chart.coords = pick(all);
  }
  return chart;
}

struct MatchResult {
  bool converged = false;
  std::array<double, 3> base{};
  double chart_residual = 0;
  double residual = 0;
};

double max_rel(const Eigen::VectorXd& v, const Eigen::VectorXd& target) {
  double m = 0;
  for (int i = 0; i < v.size(); ++i) m = std::max(m, std::fabs(v(i)) / std::max(1.0, std::fabs(target(i))));
  return m;
}

/// Gauss-Newton with step halving on sigma_which(q) - target, scaled by
/// max(1, |target_i|). With `solve` it stops once the scaled residual is below
/// tol / 1000 (an exact chart match); otherwise it runs to a stationary point.
MatchResult refine(const SignatureMap& map, const Box& box, const std::vector<int>& which,
                   const Eigen::VectorXd& target, std::array<double, 3> q, bool solve,
                   const EquivOptions& o) {
  MatchResult out;
  Eigen::VectorXd w(target.size());
  for (int i = 0; i < target.size(); ++i) w(i) = 1 / std::max(1.0, std::fabs(target(i)));
  auto value = map.coords(q, which);
  if (!value) return out;
  Eigen::VectorXd f = *value - target;
  double err = max_rel(f, target);
  double ss = (f.array() * w.array()).matrix().squaredNorm();
  for (int it = 0; it < 40; ++it) {
    if (solve && err <= o.tol * 1e-5) break;
    auto jac = map.jacobian(q, which);
    if (!jac) return out;
    Eigen::MatrixXd wj = w.asDiagonal() * *jac;
    Eigen::Vector3d step = -wj.completeOrthogonalDecomposition().solve((f.array() * w.array()).matrix());
    bool improved = false;
    for (double t = 1; t > 1e-4; t /= 2) {
      std::array<double, 3> trial{q[0] + t * step(0), q[1] + t * step(1), q[2] + t * step(2)};
      auto v = map.coords(trial, which);
      if (!v) continue;
      Eigen::VectorXd g = *v - target;
      double s2 = (g.array() * w.array()).matrix().squaredNorm();
      if (s2 < ss) {
        q = trial;
        f = g;
        ss = s2;
        err = max_rel(g, target);
        improved = true;
        break;
      }
    }
    if (!improved || !box.contains(q, o.box_margin)) break;
    if (!solve && step.norm() < 1e-12 * (1 + std::hypot(q[0], q[1], q[2]))) break;
  }
  out.base = q;
  out.chart_residual = err;
  out.converged = box.contains(q, o.box_margin) && (!solve || err <= o.tol * 1e-3);
  return out;
}

struct PointOutcome {
  bool matched = false;
  MatchResult best;
  const SignaturePoint* source = nullptr;
};

struct Direction {
  DirectionReport report;
  std::vector<PointOutcome> certificates;
};

constexpr int kCertificateCap = 5;

Eigen::MatrixXd coordinate_matrix(const Points& pts, const std::vector<int>& which) {
  Eigen::MatrixXd m(pts.size(), which.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = 0; j < which.size(); ++j) m(i, j) = pts[i]->coords[which[j]];
  }
  return m;
}

Eigen::VectorXd spread(const Eigen::MatrixXd& m) {
  Eigen::VectorXd s = ((m.rowwise() - m.colwise().mean()).array().square().colwise().mean()).sqrt();
  for (int j = 0; j < s.size(); ++j) {
    if (!(s(j) > 0)) s(j) = 1;
  }
  return s;
}

/// Indices of the k rows of m nearest to x in the metric scaled by `scale`.
std::vector<int> nearest(const Eigen::MatrixXd& m, const Eigen::VectorXd& x,
                         const Eigen::VectorXd& scale, int k) {
  std::vector<std::pair<double, int>> dist(m.rows());
  for (int i = 0; i < m.rows(); ++i) {
    dist[i] = {((m.row(i).transpose() - x).array() / scale.array()).matrix().squaredNorm(), i};
  }
  k = std::min<int>(k, static_cast<int>(dist.size()));
  std::partial_sort(dist.begin(), dist.begin() + k, dist.end());
  std::vector<int> out(k);
  for (int i = 0; i < k; ++i) out[i] = dist[i].second;
  return out;
}

/// Matches every source point onto the target signature. Without `full`
/// only the chart match runs (used to rank sign symmetries).
Direction match_direction(const Points& src, const SignatureSide& target, const Points& tgt,
                          const EquivOptions& o, bool full = true) {
  Direction out;
  out.report.samples = static_cast<int>(src.size());
  const SignatureMap& map = *target.map;
  Chart chart = choose_chart(map, tgt);
  out.report.rank = chart.rank;
  for (int c : chart.coords) out.report.chart.push_back(map.names()[c]);
  if (chart.coords.empty() || tgt.empty()) return out;

  std::vector<int> all(map.dimension());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);
  int r = static_cast<int>(chart.coords.size());
  Eigen::MatrixXd tc = coordinate_matrix(tgt, chart.coords);
  Eigen::MatrixXd tf = coordinate_matrix(tgt, all);
  Eigen::VectorXd chart_scale = spread(tc), full_scale = spread(tf);
  // chart values far outside the sampled target range cannot be matched inside the box
  Eigen::VectorXd lo = tc.colwise().minCoeff().transpose(), hi = tc.colwise().maxCoeff().transpose();
  Eigen::VectorXd margin = 0.05 * (hi - lo);
  for (int j = 0; j < margin.size(); ++j) margin(j) += o.tol * std::max({1.0, std::fabs(lo(j)), std::fabs(hi(j))});
  int k = std::min<int>(o.neighbors, static_cast<int>(tgt.size()));
  std::atomic<int> certified{0};

  std::vector<PointOutcome> outcomes(src.size());
  parallel_for(src.size(), [&](std::size_t s) {
    const SignaturePoint& a = *src[s];
    PointOutcome& pc = outcomes[s];
    pc.source = &a;
    Eigen::VectorXd a_chart(r), a_full(all.size());
    for (int j = 0; j < r; ++j) a_chart(j) = a.coords[chart.coords[j]];
    for (std::size_t j = 0; j < all.size(); ++j) a_full(j) = a.coords[j];
    for (int j = 0; j < r; ++j) {
      if (a_chart(j) < lo(j) - margin(j) || a_chart(j) > hi(j) + margin(j)) return;
    }

    auto full_residual = [&](MatchResult& m) {
      auto sig = map.at(m.base, o.tau_sing);
      if (!sig) return false;
      m.residual = 0;
      for (std::size_t i = 0; i < a.coords.size(); ++i) {
        m.residual = std::max(m.residual, rel_diff(sig->coords[i], a.coords[i]));
      }
      return true;
    };

    // stage 1: local linear fit of the base point over chart neighbours, then an exact chart match
    auto nb = nearest(tc, a_chart, chart_scale, k);
    Eigen::MatrixXd design(nb.size(), r + 1), bases(nb.size(), 3);
    for (std::size_t n = 0; n < nb.size(); ++n) {
      design(n, 0) = 1;
      design.row(n).tail(r) = ((tc.row(nb[n]).transpose() - a_chart).array() / chart_scale.array()).matrix();
      for (int ax = 0; ax < 3; ++ax) bases(n, ax) = tgt[nb[n]]->base[ax];
    }
    Eigen::MatrixXd coef = design.completeOrthogonalDecomposition().solve(bases);
    std::array<double, 3> q0;
    for (int ax = 0; ax < 3; ++ax) {
      q0[ax] = std::clamp(coef(0, ax), target.box.range[ax][0], target.box.range[ax][1]);
    }
    MatchResult m = refine(map, target.box, chart.coords, a_chart, q0, true, o);
    if (m.converged && full_residual(m) && m.residual <= o.tol) {
      pc.matched = true;
      pc.best = m;
      return;
    }
    if (!full || certified.load() >= kCertificateCap) return;

    // stage 2: least squares on every coordinate from the nearest samples in the full
    // signature, then a chart match from the best interior optimum
    MatchResult best;
    bool found = false;
    for (int i : nearest(tf, a_full, full_scale, k)) {
      MatchResult f = refine(map, target.box, all, a_full, tgt[i]->base, false, o);
      if (!f.converged || !target.box.contains(f.base, -0.01) || !full_residual(f)) continue;
      if (!found || f.residual < best.residual) {
        best = f;
        found = true;
      }
      if (best.residual <= o.tol) break;
    }
    if (!found) return;
    if (best.residual > o.tol) {
      MatchResult c = refine(map, target.box, chart.coords, a_chart, best.base, true, o);
      if (!c.converged || !full_residual(c)) return;
      best = c;
      if (best.residual > 10 * o.tol) ++certified;
    }
    pc.matched = true;
    pc.best = best;
  });
  for (auto& pc : outcomes) {
    if (!pc.matched) continue;
    ++out.report.matched;
    out.report.max_residual = std::max(out.report.max_residual, pc.best.residual);
    if (pc.best.residual > 10 * o.tol) out.certificates.push_back(pc);
  }
  return out;
}

}  // namespace

namespace {

/// Samples of both sides on charts related by a sign symmetry, each also
/// written in the other side's sign convention.
struct Pairing {
  const SignSymmetry* g = nullptr;
  std::array<int, 2> chart_a{}, chart_b{};
  Points a_raw, b_raw;
  std::vector<SignaturePoint> a_as_b, b_as_a;
};

std::vector<SignaturePoint> resign(const Points& pts, const SignSymmetry& g) {
  std::vector<SignaturePoint> out;
  out.reserve(pts.size());
  for (const auto* p : pts) {
    SignaturePoint q = *p;
    for (std::size_t i = 0; i < q.coords.size(); ++i) q.coords[i] *= g.coord_sign[i];
    for (int k = 0; k < 2; ++k) q.signs[k] *= g.chart_factor[k];
    out.push_back(std::move(q));
  }
  return out;
}

Points pointers(const std::vector<SignaturePoint>& v) {
  Points out;
  for (const auto& p : v) out.push_back(&p);
  return out;
}

std::optional<std::string> disjoint_ranges(const Pairing& pr, const std::vector<std::string>& names,
                                           const EquivOptions& o) {
  for (std::size_t i = 0; i < names.size(); ++i) {
    auto range = [&](auto begin, auto end, auto coord) {
      double lo = INFINITY, hi = -INFINITY;
      for (auto it = begin; it != end; ++it) {
        lo = std::min(lo, coord(*it));
        hi = std::max(hi, coord(*it));
      }
      return std::make_pair(lo, hi);
    };
    auto [lo_a, hi_a] = range(pr.a_as_b.begin(), pr.a_as_b.end(),
                              [&](const SignaturePoint& p) { return p.coords[i]; });
    auto [lo_b, hi_b] = range(pr.b_raw.begin(), pr.b_raw.end(),
                              [&](const SignaturePoint* p) { return p->coords[i]; });
    double gap = 10 * o.tol * std::max({1.0, std::fabs(lo_a), std::fabs(hi_a), std::fabs(lo_b), std::fabs(hi_b)});
    if (lo_a > hi_b + gap || lo_b > hi_a + gap) {
      std::ostringstream os;
      os << "disjoint range certificate: " << names[i] << " in [" << lo_a << ", " << hi_a
         << "] vs [" << lo_b << ", " << hi_b << "]";
      return os.str();
    }
  }
  return std::nullopt;
}

EquivalenceVerdict decide_pairing(const Pairing& pr, const SignatureSide& a, const SignatureSide& b,
                                  const EquivOptions& o) {
  EquivalenceVerdict v;
  v.chart = pr.chart_a;
  Direction fwd = match_direction(pointers(pr.a_as_b), b, pr.b_raw, o);
  Direction bwd = match_direction(pointers(pr.b_as_a), a, pr.a_raw, o);
  v.forward = fwd.report;
  v.backward = bwd.report;
  v.matched = fwd.report.matched + bwd.report.matched;
  v.max_residual = std::max(fwd.report.max_residual, bwd.report.max_residual);
  if (fwd.report.rank != bwd.report.rank) {
    v.diagnostics.push_back("signature ranks differ: " + std::to_string(bwd.report.rank) + " vs " +
                            std::to_string(fwd.report.rank));
  }
  auto certify = [&](const Direction& d, const char* from, const char* to) {
    for (std::size_t i = 0; i < std::min<std::size_t>(3, d.certificates.size()); ++i) {
      const auto& c = d.certificates[i];
      std::ostringstream os;
      os << "residual certificate: " << from << fmt_point(c.source->base) << " vs " << to
         << fmt_point(c.best.base) << ", chart residual " << c.best.chart_residual << ", residual "
         << c.best.residual;
      v.diagnostics.push_back(os.str());
    }
  };
  certify(fwd, "A", "B");
  certify(bwd, "B", "A");
  if (!fwd.certificates.empty() || !bwd.certificates.empty()) {
    v.verdict = Verdict::not_equivalent;
    return v;
  }
  // pooled over both sides: a box inside the image of the other is fully covered one way only
  int samples = fwd.report.samples + bwd.report.samples;
  double coverage = samples ? double(v.matched) / samples : 0;
  if (coverage < o.coverage) {
    std::ostringstream os;
    os << "coverage " << coverage << " below " << o.coverage;
    v.diagnostics.push_back(os.str());
    return v;
  }
  if (v.max_residual > o.tol) {
    std::ostringstream os;
    os << "max residual " << v.max_residual << " above tolerance " << o.tol
       << " without a certificate";
    v.diagnostics.push_back(os.str());
    return v;
  }
  v.verdict = Verdict::equivalent;
  return v;
}

/// Chart matches of a small evenly spaced subsample: ranks the symmetries.
int screen(const Pairing& pr, const SignatureSide& b, const EquivOptions& o) {
  constexpr std::size_t kScreen = 24;
  Points sub;
  std::size_t stride = std::max<std::size_t>(1, pr.a_as_b.size() / kScreen);
  for (std::size_t i = 0; i < pr.a_as_b.size() && sub.size() < kScreen; i += stride) {
    sub.push_back(&pr.a_as_b[i]);
  }
  return match_direction(sub, b, pr.b_raw, o, false).report.matched;
}

}  // namespace

EquivalenceVerdict decide_equivalence(const SignatureSide& a, const SignatureSide& b,
                                      const EquivOptions& o) {
  EquivalenceVerdict v;
  Bundle bundle = a.map->bundle();
  if (bundle != b.map->bundle()) {
    v.diagnostics.push_back("inputs live on different bundles");
    return v;
  }
  std::map<std::array<int, 2>, Points> charts_a, charts_b;
  for (const auto& p : a.sample->points) charts_a[chart_key(bundle, p.signs)].push_back(&p);
  for (const auto& p : b.sample->points) charts_b[chart_key(bundle, p.signs)].push_back(&p);

  // for every sign symmetry, the chart of A with the most partners in B
  std::vector<Pairing> pairings;
  std::size_t best_n = 0;
  for (const auto& g : sign_symmetries(bundle)) {
    Pairing pr;
    std::size_t n_best = 0;
    for (const auto& [key, pts] : charts_a) {
      auto target = chart_key(bundle, {key[0] * g.chart_factor[0], key[1] * g.chart_factor[1]});
      auto it = charts_b.find(target);
      if (it == charts_b.end()) continue;
      std::size_t n = std::min(pts.size(), it->second.size());
      if (n > n_best) {
        n_best = n;
        pr.g = &g;
        pr.chart_a = key;
        pr.chart_b = target;
        pr.a_raw = pts;
        pr.b_raw = it->second;
      }
    }
    best_n = std::max(best_n, n_best);
    if (pr.g && static_cast<int>(n_best) >= o.min_samples) {
      pr.a_as_b = resign(pr.a_raw, g);
      pr.b_as_a = resign(pr.b_raw, g);
      pairings.push_back(std::move(pr));
    }
  }
  if (pairings.empty()) {
    std::ostringstream os;
    if (best_n == 0) {
      os << "no pair of sign charts related by a sign symmetry has samples on both sides";
    } else {
      os << "too few regular samples on related sign charts: " << best_n << " (need "
         << o.min_samples << ")";
    }
    v.diagnostics.push_back(os.str());
    return v;
  }

  // disjoint coordinate ranges certify inequivalence without any matching
  const auto& names = a.map->names();
  std::vector<const Pairing*> live;
  std::vector<std::string> range_certificates;
  for (const auto& pr : pairings) {
    if (auto cert = disjoint_ranges(pr, names, o)) {
      range_certificates.push_back(*cert + " (sign symmetry " + pr.g->name + ")");
    } else {
      live.push_back(&pr);
    }
  }
  if (live.empty()) {
    v.chart = pairings.front().chart_a;
    v.diagnostics = range_certificates;
    v.verdict = Verdict::not_equivalent;
    return v;
  }
  if (live.size() > 1) {
    std::vector<int> score(live.size());
    for (std::size_t i = 0; i < live.size(); ++i) score[i] = screen(*live[i], b, o);
    std::vector<std::size_t> order(live.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](auto x, auto y) { return score[x] > score[y]; });
    std::vector<const Pairing*> sorted;
    for (auto i : order) sorted.push_back(live[i]);
    live = sorted;
  }

  // not-equivalent needs a certificate under every symmetry; the first equivalent pairing wins
  std::optional<EquivalenceVerdict> inconclusive, refuted;
  for (const Pairing* pr : live) {
    EquivalenceVerdict r = decide_pairing(*pr, a, b, o);
    r.symmetry = pr->g->name;
    r.diagnostics.insert(r.diagnostics.begin(), "sign symmetry " + pr->g->name);
    if (r.verdict == Verdict::equivalent) return r;
    auto& slot = r.verdict == Verdict::not_equivalent ? refuted : inconclusive;
    if (!slot) slot = std::move(r);
  }
  EquivalenceVerdict out = inconclusive ? *inconclusive : *refuted;
  out.diagnostics.insert(out.diagnostics.end(), range_certificates.begin(), range_certificates.end());
  return out;
}

}  // namespace jetinv
