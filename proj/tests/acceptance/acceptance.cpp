// One PASS/FAIL line per acceptance criterion. Sub-checks that fail are
// listed under their criterion; the exit code is 0 iff the failing sub-checks
// are exactly the known misprints in kKnownFailures.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "jetinv/cli/verify.hpp"
#include "jetinv/expr/identity.hpp"
#include "jetinv/expr/parser.hpp"
#include "jetinv/reduction/reduction.hpp"
#include "jetinv/signature/equivalence.hpp"
#include "jetinv/signature/signature.hpp"
#include "jetinv/sl3/transform.hpp"

using namespace jetinv;

namespace {

struct Sub {
  std::string name;
  bool pass;
  std::string detail;
};

struct Criterion {
  int id;
  std::string title;
  double budget_seconds;
  std::function<std::vector<Sub>()> run;
};

const std::set<std::string> kKnownFailures = {
    "1: pi/L9 printed weight",
    "3: pi weights span mu(I0, I1, L1, L3)",
    "6: syzygy 1",
    "6: syzygy 3",
    "6: syzygy 1 follows from commutators + Jacobi",
    "6: syzygy 3 follows from commutators + Jacobi",
    "7: det U12 = 2 I0^23 I1^14 (L1 L3 + L2 L4) / L1^23",
    "7: det U12 = 2 I0^23 I1^12 (J2 + J1 J3) / L1^20",
    "7: det U10 = -3^20 I0^30 / I1^25",
};

std::vector<Sub> from_suite(const std::string& suite) {
  std::vector<Sub> out;
  for (const auto& r : run_suite(suite, {100, 1})) {
    if (r.counted) out.push_back({r.name, r.pass, r.detail});
  }
  return out;
}

Section ode(const std::string& f) { return {Bundle::pitilde, parse(f), parse("p")}; }

struct Run {
  EquivalenceVerdict verdict;
  double seconds;
};

Run equivalence(const Section& a, const Box& box_a, const Section& b, const Box& box_b) {
  auto t0 = std::chrono::steady_clock::now();
  SignatureMap ma(a), mb(b);
  auto sa = sample_signature(ma, box_a, {10, 10, 10});
  auto sb = sample_signature(mb, box_b, {10, 10, 10});
  auto v = decide_equivalence({&ma, box_a, &sa}, {&mb, box_b, &sb});
  return {v, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count()};
}

std::string describe(const Run& r) {
  std::ostringstream os;
  os << to_string(r.verdict.verdict) << ", max residual " << r.verdict.max_residual << ", coverage "
     << r.verdict.forward.coverage() << "/" << r.verdict.backward.coverage() << ", " << r.seconds
     << "s";
  return os.str();
}

std::vector<Sub> criterion8() {
  std::vector<Sub> out;
  auto half = equivalence(ode("y*p"), Box{}, ode("y*p/2"), Box{});
  out.push_back({"y p vs y p / 2 equivalent, residual <= 1e-6",
                 half.verdict.verdict == Verdict::equivalent && half.verdict.max_residual <= 1e-6 &&
                     half.seconds < 60,
                 describe(half)});
  auto other = equivalence(ode("y"), Box{}, ode("y*p"), Box{});
  bool certificate = false;
  for (const auto& d : other.verdict.diagnostics) {
    certificate = certificate || (d.find("disjoint") != std::string::npos && d.find("m1") != std::string::npos);
  }
  out.push_back({"y vs y p not equivalent with an m1 disjoint-range certificate",
                 other.verdict.verdict == Verdict::not_equivalent && certificate && other.seconds < 60,
                 describe(other) + (other.verdict.diagnostics.empty() ? "" : "; " + other.verdict.diagnostics[0])});
  return out;
}

/// Bounding box of the image of `box` on an n^3 grid; nullopt if a point is
/// singular or far out.
std::optional<Box> bounding_image(const Matrix3& m, const Box& box, int n) {
  Box out;
  for (auto& r : out.range) r = {INFINITY, -INFINITY};
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        std::array<double, 3> q{box.range[0][0] + box.width(0) * i / (n - 1),
                                box.range[1][0] + box.width(1) * j / (n - 1),
                                box.range[2][0] + box.width(2) * k / (n - 1)};
        auto img = map_point(m, q);
        if (!img) return std::nullopt;
        for (int a = 0; a < 3; ++a) {
          if (!std::isfinite((*img)[a]) || std::abs((*img)[a]) > 50) return std::nullopt;
          out.range[a][0] = std::min(out.range[a][0], (*img)[a]);
          out.range[a][1] = std::max(out.range[a][1], (*img)[a]);
        }
      }
    }
  }
  return out;
}

/// The projective denominator of m keeps one sign, at least 0.05 in size, over the box.
bool denominator_stable(const Matrix3& m, const Box& box) {
  double lo = INFINITY, hi = -INFINITY;
  for (double x : box.range[0]) {
    for (double y : box.range[1]) {
      double w = m[2][0] * x + m[2][1] * y + m[2][2];
      lo = std::min(lo, w);
      hi = std::max(hi, w);
    }
  }
  return lo * hi > 0 && std::min(std::abs(lo), std::abs(hi)) >= 0.05;
}

/// A box inside the image of `box`: it starts at the image of the centre,
/// shaped like the image of a small core, and grows as far as its whole 9^3
/// grid still pulls back into `box`. Then every sample of the pushforward has
/// its preimage among the original points, on the same side of the singular
/// lines. nullopt near the singular locus.
std::optional<Box> image_box(const RationalMatrix3& r, const Box& box) {
  Matrix3 m = to_double(r), mi = to_double(inverse(r));
  if (!denominator_stable(m, box)) return std::nullopt;
  Box core;
  std::array<double, 3> centre;
  for (int a = 0; a < 3; ++a) {
    centre[a] = (box.range[a][0] + box.range[a][1]) / 2;
    core.range[a] = {centre[a] - box.width(a) / 40, centre[a] + box.width(a) / 40};
  }
  auto shape = bounding_image(m, core, 3);
  auto c = map_point(m, centre);
  if (!shape || !c) return std::nullopt;
  auto inside = [&](const Box& out) {
    if (!denominator_stable(mi, out)) return false;
    for (int a = 0; a < 3; ++a) {
      if (!(out.width(a) > 1e-3) || std::abs(out.range[a][0]) > 10 || std::abs(out.range[a][1]) > 10) return false;
    }
    auto back = bounding_image(mi, out, 9);
    return back && box.contains({back->range[0][0], back->range[1][0], back->range[2][0]}) &&
           box.contains({back->range[0][1], back->range[1][1], back->range[2][1]});
  };
  for (double scale : {16.0, 12.0, 8.0, 6.0, 4.0, 3.0, 2.0, 1.5, 1.0}) {
    Box out;
    for (int a = 0; a < 3; ++a) {
      double half = scale * shape->width(a) / 2;
      out.range[a] = {(*c)[a] - half, (*c)[a] + half};
    }
    if (!inside(out)) continue;
    // then push single faces outwards while the box stays inside
    for (double step : {0.5, 0.2, 0.1, 0.05}) {
      for (bool grown = true; grown;) {
        grown = false;
        for (int face = 0; face < 6; ++face) {
          Box trial = out;
          int a = face / 2;
          double d = step * out.width(a);
          trial.range[a][face % 2] += face % 2 ? d : -d;
          if (inside(trial)) {
            out = trial;
            grown = true;
          }
        }
      }
    }
    return out;
  }
  return std::nullopt;
}

std::vector<Sub> criterion9() {
  std::vector<Sub> out;
  std::mt19937 rng(2026);
  std::uniform_int_distribution<int> eighths(-8, 8);
  Section s = ode("y*p");
  int rejected = 0;
  while (out.size() < 20) {
    std::array<double, 8> params;
    std::ostringstream label;
    for (int i = 0; i < 8; ++i) {
      int k = eighths(rng);
      params[i] = k / 8.0;
      label << (i ? "," : "") << k << "/8";
    }
    auto m = rationalize(matrix_exp(sl3_matrix(params)), 1024);
    auto box = image_box(m, Box{});
    if (!box) {
      ++rejected;
      continue;
    }
    auto r = equivalence(s, Box{}, pushforward(s, m), *box);
    out.push_back({"pushforward " + std::to_string(out.size() + 1) + " (" + label.str() + ")",
                   r.verdict.verdict == Verdict::equivalent, describe(r)});
  }
  out.push_back({"draws rejected near a singular locus: " + std::to_string(rejected), true, {}});
  return out;
}

Expression random_poly(std::mt19937& rng, const Expression& u, int terms) {
  std::uniform_int_distribution<int> coef(-4, 4), power(0, 3);
  Expression out;
  for (int t = 0; t < terms; ++t) out += Expression(coef(rng)) * u.pow(power(rng));
  return out;
}

std::vector<Sub> criterion10() {
  std::vector<Sub> out;
  Section lines = family_to_section({parse("y - p*x"), parse("p")});
  out.push_back({"(y - p x, p) gives (f, g) = (0, p)", lines.f.is_zero() && lines.g == parse("p"), {}});
  auto eq = associated_equation(parse("a1*b1"));
  out.push_back({"h = a1 b1 gives G2 = 2 b1 / a1^2", canonical_equal(eq.G2, parse("2*b1/a1^2")),
                 eq.G2.to_string()});
  std::mt19937 rng(10);
  std::uniform_int_distribution<int> scale(1, 4), sign(0, 1);
  std::vector<CurveFamily> bases{{parse("y - p*x"), parse("p")},
                                 {parse("y - p*x + p^2"), parse("p + x*y")}};
  int ok = 0;
  std::string detail;
  for (int trial = 0; trial < 10; ++trial) {
    const CurveFamily& base = bases[trial % 2];
    Section s = family_to_section(base);
    // (a, b) -> (phi, psi) with phi = alpha a + q(b), psi = beta b + r(phi): Jacobian alpha beta
    Expression alpha(scale(rng) * (sign(rng) ? 1 : -1)), beta(scale(rng));
    Expression phi = alpha * base.a + random_poly(rng, base.b, 3);
    Expression psi = beta * base.b + random_poly(rng, phi, 3);
    Section t = family_to_section({phi, psi});
    bool same = canonical_equal(s.f, t.f) && canonical_equal(s.g, t.g);
    ok += same;
    if (!same && detail.empty()) detail = "phi = " + phi.to_string() + ", psi = " + psi.to_string();
  }
  out.push_back({"10 random polynomial reparametrizations leave (f, g) unchanged (" +
                     std::to_string(ok) + "/10)",
                 ok == 10, detail});
  return out;
}

}  // namespace

int main() {
  std::vector<Criterion> criteria{
      {1, "relative invariance with the printed weights", 120, [] { return from_suite("weights"); }},
      {2, "absolute invariance and weight balance", 120, [] { return from_suite("absolute"); }},
      {3, "weight generators over Q", 1, [] { return from_suite("generators"); }},
      {4, "invariant derivations", 120, [] { return from_suite("derivations"); }},
      {5, "commutation relations", 180, [] { return from_suite("commutators"); }},
      {6, "syzygies and their derivation from the commutators", 180, [] { return from_suite("syzygies"); }},
      {7, "determinant identities at 100 rational points", 600, [] { return from_suite("determinants"); }},
      {8, "equivalence reproduction on [1,2]^3, grid 10^3", 120, criterion8},
      {9, "20 random sl3 pushforwards of y'' = y y'", 600, criterion9},
      {10, "reduction consistency", 60, criterion10},
  };

  std::set<std::string> failing;
  for (const auto& c : criteria) {
    auto t0 = std::chrono::steady_clock::now();
    auto subs = c.run();
    double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    subs.push_back({"runtime within " + std::to_string(static_cast<int>(c.budget_seconds)) + "s",
                    seconds < c.budget_seconds, {}});
    int passed = std::count_if(subs.begin(), subs.end(), [](const Sub& s) { return s.pass; });
    std::printf("%s  %2d  %s  (%d/%zu, %.1fs)\n", passed == static_cast<int>(subs.size()) ? "PASS" : "FAIL",
                c.id, c.title.c_str(), passed, subs.size(), seconds);
    for (const auto& s : subs) {
      std::string key = std::to_string(c.id) + ": " + s.name;
      if (!s.pass) {
        failing.insert(key);
        std::printf("        %s %s%s%s\n", kKnownFailures.count(key) ? "known  " : "FAILED ", s.name.c_str(),
                    s.detail.empty() ? "" : "  -- ", s.detail.c_str());
      } else if (c.id >= 8) {
        std::printf("        ok      %s%s%s\n", s.name.c_str(), s.detail.empty() ? "" : "  -- ",
                    s.detail.c_str());
      }
    }
    std::fflush(stdout);
  }

  std::vector<std::string> unexpected, missing;
  std::set_difference(failing.begin(), failing.end(), kKnownFailures.begin(), kKnownFailures.end(),
                      std::back_inserter(unexpected));
  std::set_difference(kKnownFailures.begin(), kKnownFailures.end(), failing.begin(), failing.end(),
                      std::back_inserter(missing));
  for (const auto& u : unexpected) std::printf("unexpected failure: %s\n", u.c_str());
  for (const auto& m : missing) std::printf("known failure did not reproduce: %s\n", m.c_str());
  std::printf("%zu failing sub-checks, %zu unexpected, %zu known not reproduced\n", failing.size(),
              unexpected.size(), missing.size());
  return unexpected.empty() && missing.empty() ? 0 : 1;
}
