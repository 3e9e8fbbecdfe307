#include <doctest.h>

#include "jetinv/errors.hpp"
#include "jetinv/expr/parser.hpp"
#include "jetinv/signature/equivalence.hpp"
#include "jetinv/signature/signature.hpp"
#include "jetinv/sl3/transform.hpp"

using namespace jetinv;

namespace {

Section ode(const char* f) { return {Bundle::pitilde, parse(f), parse("p")}; }

EquivalenceVerdict compare(const Section& a, const Box& box_a, const Section& b, const Box& box_b,
                           int n = 8) {
  SignatureMap ma(a), mb(b);
  auto sa = sample_signature(ma, box_a, {n, n, n});
  auto sb = sample_signature(mb, box_b, {n, n, n});
  return decide_equivalence({&ma, box_a, &sa}, {&mb, box_b, &sb});
}

}  // namespace

TEST_CASE("sampling y'' = y y' on the unit box") {
  SignatureMap m(ode("y*p"));
  auto s = sample_signature(m, Box{}, {10, 10, 10});
  CHECK(s.total == 1000);
  CHECK(s.points.size() == 1000);
  CHECK(s.points.front().signs == std::array<int, 2>{1, -1});
  CHECK(s.points.front().coords.size() == 10);
  CHECK(s.names.front() == "m1");
}

TEST_CASE("sections without regular points") {
  SignatureMap flat(ode("3"));
  auto s = sample_signature(flat, Box{}, {3, 3, 3});
  CHECK(s.points.empty());
  CHECK(s.vanishing.count("I1") == 1);
  SignatureMap pi_flat({Bundle::pi, parse("1"), parse("p + x")});
  CHECK(sample_signature(pi_flat, Box{}, {3, 3, 3}).points.empty());
}

TEST_CASE("sampling rejects bad grids and boxes") {
  SignatureMap m(ode("y*p"));
  CHECK_THROWS_AS(sample_signature(m, Box{}, {1, 3, 3}), InputError);
  Box flat;
  flat.range[0] = {1, 1};
  CHECK_THROWS_AS(sample_signature(m, flat, {3, 3, 3}), InputError);
}

TEST_CASE("numeric rank and chart choice") {
  Eigen::MatrixXd a(3, 3);
  a << 1, 0, 0, 0, 1, 0, 1, 1, 0;
  CHECK(numeric_rank(a) == 2);
  auto [chart, sigma] = best_chart(a, {0, 1, 2}, 2);
  CHECK(chart.size() == 2);
  CHECK(sigma > 0.5);
}

TEST_CASE("regular germ conditions") {
  SignatureMap yp(ode("y*p"));
  auto g = regular_germ_check(yp, {1.5, 1.5, 1.5});
  CHECK(g.orbit_regular);
  // y'' = y y' has a two dimensional symmetry algebra: rank 1
  CHECK(g.rank == 1);
  SignatureMap generic(ode("x*y + p^2"));
  CHECK(regular_germ_check(generic, {1.5, 1.5, 1.5}).rank == 3);
}

TEST_CASE("equivalence is reflexive") {
  auto v = compare(ode("y*p"), Box{}, ode("y*p"), Box{});
  CHECK(v.verdict == Verdict::equivalent);
  CHECK(v.max_residual <= 1e-12);
}

TEST_CASE("y'' = y and y'' = y y' are not equivalent, in both orders") {
  auto v = compare(ode("y"), Box{}, ode("y*p"), Box{});
  CHECK(v.verdict == Verdict::not_equivalent);
  REQUIRE_FALSE(v.diagnostics.empty());
  CHECK(v.diagnostics.front().find("m1") != std::string::npos);
  CHECK(compare(ode("y*p"), Box{}, ode("y"), Box{}).verdict == Verdict::not_equivalent);
}

TEST_CASE("a scaling pushforward is equivalent on the image box") {
  Box image;
  image.range = {{{1, 2}, {2, 4}, {2, 4}}};
  CHECK(compare(ode("y*p"), Box{}, ode("y*p/2"), image).verdict == Verdict::equivalent);
}

TEST_CASE("a generic section against its pushforward and a perturbation") {
  RationalMatrix3 m{};
  for (int i = 0; i < 3; ++i) m[i][i] = 1;
  m[0][1] = Rational(1, 8);
  Section s = ode("x*y + p^2");
  Section t = pushforward(s, m);
  Box image;
  image.range = {{{1.125, 2.25}, {1, 2}, {0.9, 1.95}}};
  auto v = compare(s, Box{}, t, image, 10);
  CHECK(v.verdict == Verdict::equivalent);
  auto w = compare(s, Box{}, ode("x*y + p^2 + p/10"), Box{}, 10);
  CHECK(w.verdict == Verdict::not_equivalent);
  CHECK_FALSE(w.diagnostics.empty());
}

TEST_CASE("too few samples are inconclusive") {
  auto v = compare(ode("y*p"), Box{}, ode("y*p"), Box{}, 4);
  CHECK(v.verdict == Verdict::inconclusive);
}

TEST_CASE("orientation reversing maps act on signatures through the sign symmetries") {
  auto mat = [](std::array<std::array<int, 3>, 3> e) {
    RationalMatrix3 m{};
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) m[i][j] = e[i][j];
    return m;
  };
  std::vector<RationalMatrix3> maps{
      mat({{{-1, 0, 0}, {0, -1, 0}, {0, 0, 1}}}), mat({{{1, 0, 0}, {0, -1, 0}, {0, 0, -1}}}),
      mat({{{-1, 0, 0}, {0, 1, 0}, {0, 0, -1}}}), mat({{{0, 1, 0}, {1, 0, 0}, {0, 0, -1}}}),
      mat({{{0, 0, 1}, {0, 1, 0}, {-1, 0, 0}}}), mat({{{1, 0, 0}, {0, -1, 0}, {0, 0, 1}}}),
      mat({{{-1, 0, 0}, {0, 1, 0}, {0, 0, 1}}}), mat({{{0, 1, 0}, {1, 0, 0}, {0, 0, 1}}}),
      mat({{{0, 1, 0}, {1, 0, 0}, {1, 0, -1}}})};
  std::vector<Section> sections{ode("x*y + p^2"), {Bundle::pi, parse("y + x*p + x^2"), parse("p + y^2 + x*p")}};
  std::vector<std::array<double, 3>> points{{1.5, 1.2, 1.7}, {1.1, 1.8, 1.3}, {1.7, 1.4, 1.9}};
  for (const auto& s : sections) {
    SignatureMap a(s);
    const auto& group = sign_symmetries(s.bundle);
    bool flipped = false;
    for (const auto& m : maps) {
      SignatureMap b(pushforward(s, m));
      for (const auto& q : points) {
        auto img = map_point(to_double(m), q);
        REQUIRE(img);
        auto pa = a.at(q);
        auto pb = b.at(*img);
        if (!pa || !pb) continue;
        bool explained = false;
        for (std::size_t k = 0; k < group.size() && !explained; ++k) {
          const auto& g = group[k];
          auto key = chart_key(s.bundle, {pa->signs[0] * g.chart_factor[0], pa->signs[1] * g.chart_factor[1]});
          if (key != chart_key(s.bundle, pb->signs)) continue;
          bool same = true;
          for (std::size_t i = 0; i < pa->coords.size(); ++i) {
            double x = g.coord_sign[i] * pa->coords[i], y = pb->coords[i];
            same = same && std::fabs(x - y) <= 1e-6 * std::max({1.0, std::fabs(x), std::fabs(y)});
          }
          if (same) {
            explained = true;
            flipped = flipped || k > 0;
          }
        }
        CHECK(explained);
      }
    }
    CHECK(flipped);
  }
}

TEST_CASE("a reflection moving the sign chart is still equivalent") {
  RationalMatrix3 m{};
  m[0][0] = 1;
  m[1][1] = -1;
  m[2][2] = 1;
  Section s = ode("x*y + p^2");
  Box image;
  image.range = {{{1, 2}, {-2, -1}, {-2, -1}}};
  auto v = compare(s, Box{}, pushforward(s, m), image, 10);
  CHECK(v.verdict == Verdict::equivalent);
  CHECK(v.symmetry != sign_symmetries(Bundle::pitilde).front().name);
}
