#include "doctest.h"
#include "psl/hensel.hpp"

using namespace psl;

namespace {
FieldPtr q3zeta3() { return PadicField::make(3, 1, {3, 3, 1}); }
}  // namespace

TEST_CASE("newton polygon of simple point sets") {
  // single segment
  auto segs = newton_polygon({{0, 2}, {1, 3}, {8, 0}});
  REQUIRE(segs.size() == 1);
  CHECK(segs[0].slope == Rational(-1, 4));
  CHECK(segs[0].length == 8);
  // two segments
  segs = newton_polygon({{0, 4}, {1, 1}, {3, 0}});
  REQUIRE(segs.size() == 2);
  CHECK(segs[0].slope == Rational(-3));
  CHECK(segs[1].slope == Rational(-1, 2));
}

TEST_CASE("roots of X^2+X+1 over Q3(zeta3)") {
  auto K = q3zeta3();
  PadicPoly f = {K->one(), K->one(), K->one()};
  auto roots = hensel_roots(f, K);
  REQUIRE(roots.size() == 2);
  // zeta3 = 1 + pi is one of the roots
  auto z = K->one() + K->uniformizer();
  bool found = false;
  for (auto& r : roots) found = found || r == z;
  CHECK(found);
  for (auto& r : roots) {
    auto v = poly_eval(f, r);
    CHECK(v.is_zero());
  }
}

TEST_CASE("Teichmuller root set over the unramified quadratic extension of Q3") {
  auto K = PadicField::make(3, 2, {-3, 1});
  // X^8 - 1 has the full prime-to-p root set (q = 9)
  PadicPoly f(9, K->zero());
  f[0] = K->from_int(-1);
  f[8] = K->one();
  auto roots = hensel_roots(f, K);
  CHECK(roots.size() == 8);
}

TEST_CASE("p-th power detection matches the filtration cutoff") {
  auto K = q3zeta3();
  auto pi = K->uniformizer();
  // 1 + pi^4 has level > p*e0 = 3, so it is a cube
  CHECK(is_pth_power(K->one() + pi.pow(4)));
  // 1 + pi is not a cube
  CHECK(!is_pth_power(K->one() + pi));
  // explicit cube
  CHECK(is_pth_power((K->one() + pi).pow(3)));
  // uniformizer is not
  CHECK(!is_pth_power(pi));
  CHECK(is_pth_power(pi.pow(3)));
  // X^3 - (1+pi) has no roots, X^3 - (1+pi^4) has a root
  PadicPoly g(4, K->zero());
  g[0] = -(K->one() + pi);
  g[3] = K->one();
  CHECK(hensel_roots(g, K).empty());
  g[0] = -(K->one() + pi.pow(4));
  CHECK(hensel_roots(g, K).size() == 3);  // all three cube roots (mu_3 in K)
}

TEST_CASE("roots of negative valuation are found through the polygon") {
  auto K = q3zeta3();
  auto pi = K->uniformizer();
  // (X - pi^{-2})(X - 1) = X^2 - (1 + pi^{-2})X + pi^{-2}
  PadicPoly f = {pi.pow(-2), -(K->one() + pi.pow(-2)), K->one()};
  auto roots = hensel_roots(f, K);
  REQUIRE(roots.size() == 2);
  CHECK(roots[0].valuation() == -2);
  CHECK(roots[1].valuation() == 0);
  CHECK(roots[0] == pi.pow(-2));
  CHECK(roots[1] == K->one());
}

TEST_CASE("root re-substitution stays small") {
  auto K = q3zeta3();
  SplitMix rng(777);
  for (int t = 0; t < 20; ++t) {
    // random monic cubic with small integer coefficients
    PadicPoly f = {K->from_int(long(rng.below(9)) - 4), K->from_int(long(rng.below(9)) - 4),
                   K->from_int(long(rng.below(9)) - 4), K->one()};
    std::vector<PadicElement> roots;
    try {
      roots = hensel_roots(f, K);
    } catch (const Error& e) {
      CHECK(e.code == Err::PrecisionInsufficient);  // repeated factor at precision
      continue;
    }
    for (auto& r : roots) {
      auto v = poly_eval(f, r);
      if (!v.is_zero()) CHECK(v.valuation() >= K->precision() - 8);
    }
  }
}

TEST_CASE("mu_p detection is honest") {
  CHECK(contains_mu_p(q3zeta3()));
  CHECK(contains_mu_p(PadicField::make(3, 1, {3, 9, 18, 21, 15, 6, 1})));
  CHECK(!contains_mu_p(PadicField::make(3, 1, {-3, 1})));  // Q3 itself
  // e0 integral but zeta_3 absent: Q3(sqrt(3)) via X^2 - 3
  CHECK(!contains_mu_p(PadicField::make(3, 1, {-3, 0, 1})));
  // e0 integral with zeta_3 present: Q3(sqrt(-3)) via X^2 + 3
  CHECK(contains_mu_p(PadicField::make(3, 1, {3, 0, 1})));
  // the degree-8 field used for the supersingular tests: X^8 + 3
  CHECK(contains_mu_p(PadicField::make(3, 1, {3, 0, 0, 0, 0, 0, 0, 0, 1})));
}
