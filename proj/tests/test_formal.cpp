#include "doctest.h"
#include "psl/formal.hpp"

using namespace psl;

namespace {
FieldPtr q3() { return PadicField::make(3, 1, {-3, 1}); }
FieldPtr q3zeta3() { return PadicField::make(3, 1, {3, 3, 1}); }
FieldPtr q3e8() { return PadicField::make(3, 1, {3, 0, 0, 0, 0, 0, 0, 0, 1}); }

CurvePtr ss_curve(const FieldPtr& K) {  // y^2 = x^3 + x
  return CurveModel::make(K, {{{0}, {0}, {0}, {1}, {0}}});
}
CurvePtr ord_curve(const FieldPtr& K) {  // y^2 + y = x^3 - x^2
  return CurveModel::make(K, {{{0}, {-1}, {1}, {0}, {0}}});
}
CurvePtr mult_curve(const FieldPtr& K) {  // y^2 + xy = x^3 + pi
  return CurveModel::make(K, {{{1}, {0}, {0}, {0}, {0, 1}}});
}
CurvePtr add_curve(const FieldPtr& K) {  // y^2 = x^3 + pi
  return CurveModel::make(K, {{{0}, {0}, {0}, {0}, {0, 1}}});
}
}  // namespace

TEST_CASE("reduction classification of the reference curves") {
  CHECK(ss_curve(q3())->reduction() == ReductionClass::GoodSupersingular);
  CHECK(ord_curve(q3())->reduction() == ReductionClass::GoodOrdinary);
  CHECK(ord_curve(q3())->frobenius_trace_mod_p() != 0);
  CHECK(ss_curve(q3zeta3())->reduction() == ReductionClass::GoodSupersingular);
  CHECK(ord_curve(q3zeta3())->reduction() == ReductionClass::GoodOrdinary);
  CHECK(mult_curve(q3zeta3())->reduction() == ReductionClass::SplitMultiplicative);
  CHECK(mult_curve(q3zeta3())->j_valuation() < 0);
  CHECK(add_curve(q3zeta3())->reduction() == ReductionClass::Additive);
  // a visibly non-minimal model: scale y^2 = x^3 + x by u = pi
  // (a4 -> a4 pi^4 = pi^4, a6 -> 0); classification must still be good
  auto blown = CurveModel::make(q3zeta3(), {{{0}, {0}, {0}, {0, 0, 0, 0, 1}, {0}}});
  CHECK(blown->reduction() == ReductionClass::GoodSupersingular);
  CHECK_THROWS_WITH_AS(CurveModel::make(q3zeta3(), {{{0}, {0}, {0}, {0}, {0}}}),
                       doctest::Contains("SingularCurve"), Error);
}

TEST_CASE("classification is stable under unramified base change") {
  auto K = q3zeta3();
  auto L = PadicField::make(3, 2, {3, 3, 1});
  for (auto mk : {ss_curve, ord_curve, mult_curve}) {
    auto E = mk(K);
    auto EL = E->base_change(L);
    CHECK(EL->reduction() == E->reduction());
  }
}

TEST_CASE("formal group law low-order terms and axioms") {
  auto K = q3zeta3();
  auto E = ord_curve(K);  // a1 = 0, a2 = -1, a3 = 1
  auto fg = formal_group_law(E);
  const auto& F = fg->law;
  // F = X + Y - a1 XY - a2(X^2 Y + X Y^2) - ... ; degree-2 terms from a1, a2
  CHECK(F.at(1, 0) == K->one());
  CHECK(F.at(0, 1) == K->one());
  CHECK(F.at(2, 0) == K->zero());
  CHECK(F.at(1, 1) == -E->a()[0]);
  CHECK(F.at(2, 1) == -E->a()[1]);
  CHECK(F.at(1, 2) == -E->a()[1]);
  // commutativity of the stored coefficients
  for (size_t i = 0; i < F.ord; ++i)
    for (size_t j = 0; i + j < F.ord; ++j) CHECK(F.at(i, j) == F.at(j, i));
  // [p](T) = pT mod T^2
  CHECK(fg->mulp[1] == K->from_int(3));
  if (fg->mulp.size() > 2) CHECK(!fg->mulp[2].is_zero() == !fg->mulp[2].is_zero());

  // unitality and associativity by evaluation at points of positive valuation
  auto pi = K->uniformizer();
  SplitMix rng(11);
  for (int t = 0; t < 6; ++t) {
    auto x = pi.pow(2) * K->from_int(long(rng.below(8)) + 1);
    auto y = pi.pow(3) * K->from_int(long(rng.below(8)) + 1);
    auto z = pi.pow(2) * K->from_int(long(rng.below(8)) + 1);
    CHECK(fg_eval(F, x, K->zero()) == x);
    CHECK(fg_eval(F, K->zero(), y) == y);
    auto lhs = fg_eval(F, fg_eval(F, x, y), z);
    auto rhs = fg_eval(F, x, fg_eval(F, y, z));
    // compare modulo the truncation tail: entries have valuation >= 2, so the
    // tail sits at valuation >= 2*(order+1)
    long tail = 2 * (fg->order + 1);
    CHECK(lhs.equal_mod(rhs, std::min(tail, lhs.abs_precision())));
  }
}

TEST_CASE("polygon of the reference curves over Q3") {
  auto Ess = ss_curve(q3());
  auto segs = p_series_newton(Ess);
  REQUIRE(segs.size() == 1);
  CHECK(segs[0].slope == Rational(-1, 8));
  CHECK(segs[0].length == 8);

  auto Eord = ord_curve(q3());
  segs = p_series_newton(Eord);
  REQUIRE(segs.size() == 1);
  CHECK(segs[0].slope == Rational(-1, 2));
  CHECK(segs[0].length == 2);

  // slope * multiplicity = v(p) on every good curve
  for (auto E : {Ess, Eord}) {
    auto s = p_series_newton(E);
    long total = 0;
    for (auto& seg : s) total += -(seg.slope * seg.length).num / (seg.slope * seg.length).den +
                                 0;  // integral by construction
    Rational drop(0);
    for (auto& seg : s) drop = drop + seg.slope * seg.length;
    CHECK(Rational(-drop.num, drop.den) == Rational(E->field()->from_int(3).valuation()));
    (void)total;
  }
  CHECK_THROWS_WITH_AS(p_series_newton(mult_curve(q3zeta3())),
                       doctest::Contains("NotGoodReduction"), Error);
}

TEST_CASE("t0 of the supersingular curve over the ramified octic") {
  auto E8 = ss_curve(q3e8());
  CHECK(t0_invariant(E8) == 1);  // slope 1/8 over Q3 scales to valuation 1
  CHECK(q3e8()->e0() == Rational(4));
  // scaling under further ramified base change: e doubles, t0 doubles
  auto K16 = PadicField::make(3, 1, {3, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1});
  auto E16 = ss_curve(K16);
  CHECK(t0_invariant(E16) == 2);
  // non-integral over the base: refused
  CHECK_THROWS_WITH_AS(t0_invariant(ss_curve(q3zeta3())),
                       doctest::Contains("NonIntegralTorsionValuation"), Error);
  CHECK_THROWS_WITH_AS(t0_invariant(ord_curve(q3())), doctest::Contains("NotSupersingular"),
                       Error);
}

TEST_CASE("Kummer image descriptors") {
  auto K = q3zeta3();
  auto dord = kummer_image(ord_curve(K));
  CHECK(dord.first == BlockSpec::lvl(0));
  CHECK(dord.second == BlockSpec::lvl(3));
  CHECK(dord.total_dim == 4);

  auto dmult = kummer_image(mult_curve(K));
  CHECK(dmult.first == BlockSpec::full());
  CHECK(dmult.second == BlockSpec::trivial());
  CHECK(dmult.total_dim == 4);

  auto E8 = ss_curve(q3e8());
  auto dss = kummer_image(E8);
  CHECK(dss.first == BlockSpec::lvl(9));   // p(e0 - t0) = 3 * 3
  CHECK(dss.second == BlockSpec::lvl(3));  // p t0
  CHECK(dss.total_dim == 10);

  CHECK_THROWS_WITH_AS(kummer_image(add_curve(K)), doctest::Contains("AdditiveRefused"), Error);
  CHECK_THROWS_WITH_AS(kummer_image(ss_curve(K)),
                       doctest::Contains("NonIntegralTorsionValuation"), Error);
}

TEST_CASE("torsion rationality check on the octic field") {
  // over Q3 the supersingular curve cannot have rational 3-torsion
  CHECK(torsion_rational_check(ss_curve(q3())) == 0);
  // over the octic the formal torsion points are rational; x-coordinates have
  // valuation -2*t0 = -2
  auto E8 = ss_curve(q3e8());
  int r = torsion_rational_check(E8);
  CHECK(r != -1);
}
