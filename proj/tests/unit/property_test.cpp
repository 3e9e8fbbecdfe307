#include <doctest.h>

#include <cmath>
#include <random>

#include "jetinv/expr/parser.hpp"
#include "jetinv/signature/signature.hpp"
#include "jetinv/sl3/sl3.hpp"
#include "jetinv/sl3/transform.hpp"

using namespace jetinv;

namespace {

SL3Element random_element(std::mt19937& rng) {
  std::uniform_int_distribution<int> coef(-3, 3);
  SL3Element g;
  for (auto& p : g.params) p = Expression(coef(rng));
  return g;
}

SL3Element add(const SL3Element& a, const SL3Element& b) {
  SL3Element out;
  for (int i = 0; i < 8; ++i) out.params[i] = a.params[i] + b.params[i];
  return out;
}

SL3Element negate(const SL3Element& a) {
  SL3Element out;
  for (int i = 0; i < 8; ++i) out.params[i] = -a.params[i];
  return out;
}

}  // namespace

TEST_CASE("property: the bracket is antisymmetric, bilinear and satisfies Jacobi") {
  std::mt19937 rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    auto a = random_element(rng), b = random_element(rng), c = random_element(rng);
    CHECK(add(bracket(a, b), bracket(b, a)).is_zero());
    CHECK(add(bracket(add(a, b), c), negate(add(bracket(a, c), bracket(b, c)))).is_zero());
    auto jacobi = add(add(bracket(a, bracket(b, c)), bracket(b, bracket(c, a))), bracket(c, bracket(a, b)));
    CHECK(jacobi.is_zero());
  }
}

TEST_CASE("property: sign symmetries form a group of involutions") {
  for (Bundle bundle : {Bundle::pi, Bundle::pitilde}) {
    const auto& group = sign_symmetries(bundle);
    REQUIRE(!group.empty());
    for (int s : group.front().coord_sign) CHECK(s == 1);
    CHECK(group.front().chart_factor == std::array<int, 2>{1, 1});
    for (const auto& g : group) {
      for (const auto& h : group) {
        std::vector<int> prod(g.coord_sign.size());
        for (std::size_t i = 0; i < prod.size(); ++i) prod[i] = g.coord_sign[i] * h.coord_sign[i];
        std::array<int, 2> factor{g.chart_factor[0] * h.chart_factor[0], g.chart_factor[1] * h.chart_factor[1]};
        bool closed = false;
        for (const auto& k : group) closed = closed || (k.coord_sign == prod && k.chart_factor == factor);
        CHECK(closed);
      }
    }
  }
}

TEST_CASE("property: random sl3 maps carry signatures to signatures up to sign symmetry") {
  std::mt19937 rng(23);
  std::uniform_real_distribution<double> small(-0.25, 0.25), unit(1.1, 1.9);
  std::vector<Section> sections{{Bundle::pitilde, parse("x*y + p^2"), parse("p")},
                                {Bundle::pi, parse("y + x*p + x^2"), parse("p + y^2 + x*p")}};
  for (const auto& s : sections) {
    SignatureMap a(s);
    const auto& group = sign_symmetries(s.bundle);
    int compared = 0;
    for (int trial = 0; trial < 4; ++trial) {
      std::array<double, 8> params;
      for (auto& v : params) v = small(rng);
      auto m = rationalize(matrix_exp(sl3_matrix(params)), 1024);
      SignatureMap b(pushforward(s, m));
      for (int k = 0; k < 3; ++k) {
        std::array<double, 3> q{unit(rng), unit(rng), unit(rng)};
        auto img = map_point(to_double(m), q);
        if (!img) continue;
        auto pa = a.at(q);
        auto pb = b.at(*img);
        if (!pa || !pb) continue;
        ++compared;
        bool explained = false;
        for (const auto& g : group) {
          auto key = chart_key(s.bundle, {pa->signs[0] * g.chart_factor[0], pa->signs[1] * g.chart_factor[1]});
          if (key != chart_key(s.bundle, pb->signs)) continue;
          bool same = true;
          for (std::size_t i = 0; i < pa->coords.size(); ++i) {
            double x = g.coord_sign[i] * pa->coords[i], y = pb->coords[i];
            same = same && std::fabs(x - y) <= 1e-6 * std::max({1.0, std::fabs(x), std::fabs(y)});
          }
          explained = explained || same;
        }
        CHECK(explained);
      }
    }
    CHECK(compared >= 8);
  }
}
