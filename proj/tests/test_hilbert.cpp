#include "doctest.h"
#include "psl/hilbert.hpp"

using namespace psl;

namespace {
FieldPtr q3zeta3() { return PadicField::make(3, 1, {3, 3, 1}); }
FieldPtr q3zeta9() { return PadicField::make(3, 1, {3, 9, 18, 21, 15, 6, 1}); }

UnitClass random_class(const std::shared_ptr<const UnitsContext>& ctx, SplitMix& rng,
                       bool unit_only = false, bool nontrivial = true) {
  unsigned p = ctx->field()->p();
  for (;;) {
    FpVec c(ctx->dim(), 0);
    for (size_t i = unit_only ? 1 : 0; i < c.size(); ++i) c[i] = unsigned(rng.below(p));
    if (unit_only) c[0] = 0;
    if (nontrivial && fp_is_zero(c)) continue;
    return ctx->class_from_coords(c);
  }
}
}  // namespace

TEST_CASE("pairing matrix shape, skewness, nondegeneracy") {
  for (auto K : {q3zeta3(), q3zeta9()}) {
    auto ctx = HilbertContext::get(K);
    const auto& M = ctx->matrix().m;
    size_t d = ctx->units().dim();
    REQUIRE(M.size() == d);
    unsigned p = K->p();
    for (size_t i = 0; i < d; ++i)
      for (size_t j = 0; j < d; ++j) CHECK((M[i][j] + M[j][i]) % p == 0);
    for (size_t i = 0; i < d; ++i) CHECK(M[i][i] == 0);
    FpSpan s(p, d);
    for (size_t i = 0; i < d; ++i) s.add(M[i]);
    CHECK(s.rank() == d);
    CHECK(M[pairing_matrix(K).ref_i][pairing_matrix(K).ref_j] == 1);
  }
}

TEST_CASE("norm subgroup has codimension one and contains b") {
  auto K = q3zeta3();
  auto ctx = HilbertContext::get(K);
  SplitMix rng(2024);
  for (int t = 0; t < 8; ++t) {
    auto b = random_class(UnitsContext::get(K), rng);
    auto ns = norm_subgroup(K, b.rep);
    CHECK(ns->image.rank() == ctx->units().dim() - 1);
    CHECK(ns->contains(b.coords));  // b = N(root)
  }
  CHECK_THROWS_WITH_AS(norm_subgroup(K, (K->one() + K->uniformizer()).pow(3)),
                       doctest::Contains("TrivialKummer"), Error);
}

TEST_CASE("matrix exponents agree with norm-membership triviality") {
  for (auto K : {q3zeta3(), q3zeta9()}) {
    auto ctx = HilbertContext::get(K);
    auto uctx = UnitsContext::get(K);
    SplitMix rng(55);
    for (int t = 0; t < 40; ++t) {
      auto a = random_class(uctx, rng);
      auto b = random_class(uctx, rng);
      bool by_matrix = ctx->exponent(a.coords, b.coords) == 0;
      bool by_norms = symbol_trivial(a, b.rep);
      CHECK(by_matrix == by_norms);
    }
  }
}

TEST_CASE("bilinearity and skewness on random classes") {
  auto K = q3zeta3();
  auto ctx = HilbertContext::get(K);
  auto uctx = UnitsContext::get(K);
  unsigned p = K->p();
  SplitMix rng(66);
  for (int t = 0; t < 60; ++t) {
    auto a = random_class(uctx, rng), a2 = random_class(uctx, rng), b = random_class(uctx, rng);
    unsigned lhs = ctx->exponent(fp_add(a.coords, a2.coords, p), b.coords);
    unsigned rhs = (ctx->exponent(a.coords, b.coords) + ctx->exponent(a2.coords, b.coords)) % p;
    CHECK(lhs == rhs);
    CHECK((ctx->exponent(a.coords, b.coords) + ctx->exponent(b.coords, a.coords)) % p == 0);
  }
}

TEST_CASE("Steinberg relation on sampled elements") {
  auto K = q3zeta3();
  SplitMix rng(77);
  int checked = 0;
  for (int t = 0; t < 300 && checked < 60; ++t) {
    // random element a with a != 0, 1
    long v = long(rng.below(3)) - 1;
    auto u = K->from_pi_poly({long(rng.below(3)), long(rng.below(3)), long(rng.below(3)),
                              long(rng.below(3))});
    if (u.is_zero()) continue;
    auto a = u.shift(v - (u.is_zero() ? 0 : 0));
    if (a.is_zero()) continue;
    auto one_minus = K->one() - a;
    if (one_minus.is_zero()) continue;
    CHECK(symbol_trivial(a, one_minus));
    CHECK(symbol_trivial(a, -a));
    ++checked;
  }
  CHECK(checked >= 60);
}

TEST_CASE("order table matches the three-case prediction") {
  for (auto K : {q3zeta3(), q3zeta9()}) {
    long pe0 = K->pe0();
    for (long m = 0; m <= pe0 + 1; ++m)
      for (long n = 0; n <= pe0 + 1; ++n) {
        long got = image_order(K, BlockSpec::lvl(m), BlockSpec::lvl(n));
        long want = predicted_image_order(K, m, n);
        CHECK_MESSAGE(got == want, K->key(), " m=", m, " n=", n);
      }
    // full-row cases
    for (long m = 0; m <= pe0 + 1; ++m) {
      long got = image_order(K, BlockSpec::full(), BlockSpec::lvl(m));
      long want = (m <= pe0) ? long(K->p()) : 1;
      CHECK_MESSAGE(got == want, K->key(), " full x ", m);
    }
    CHECK(image_order(K, BlockSpec::full(), BlockSpec::full()) == long(K->p()));
  }
  // spec examples
  auto K3 = q3zeta3();
  CHECK(image_order(K3, BlockSpec::full(), BlockSpec::lvl(3)) == 3);
  CHECK(image_order(K3, BlockSpec::lvl(2), BlockSpec::lvl(2)) == 1);
  CHECK(image_order(K3, BlockSpec::lvl(1), BlockSpec::lvl(2)) == 3);
  CHECK(image_order(K3, BlockSpec::lvl(3), BlockSpec::lvl(3)) == 1);
  auto K9 = q3zeta9();
  CHECK(image_order(K9, BlockSpec::lvl(3), BlockSpec::lvl(3)) == 3);
}

TEST_CASE("unramified norms are level-surjective on the unit filtration") {
  // over the unramified adjunction of the top class, the norm hits every
  // basis class of each level, checked through the level-restricted span
  auto K = q3zeta3();
  auto hc = HilbertContext::get(K);
  auto uctx = UnitsContext::get(K);
  FpVec top(uctx->dim(), 0);
  top[uctx->dim() - 1] = 1;
  auto ns = hc->norm_subgroup_line(top);
  REQUIRE(ns->tower != nullptr);
  for (long m = 1; m <= K->pe0(); ++m) {
    for (size_t i = 1; i < uctx->dim(); ++i) {
      if (uctx->slot_level(i) < m) continue;
      FpVec e(uctx->dim(), 0);
      e[i] = 1;
      CHECK_MESSAGE(ns->solve_preimage(e, m).has_value(), "level ", m, " slot ", i);
    }
  }
}

TEST_CASE("pairing against the uniformizer detects the top class") {
  // (pi, g) is nontrivial for the top-level basis class g
  auto K = q3zeta3();
  auto ctx = HilbertContext::get(K);
  auto uctx = UnitsContext::get(K);
  auto g = uctx->basis()[uctx->dim() - 1];
  CHECK(ctx->exponent(uctx->coords_of(K->uniformizer()), g.coords) != 0);
  CHECK(!symbol_trivial(K->uniformizer(), g.rep));
  // sigma-image classes at the top level pair trivially with pi
  const auto& fq = K->residue_field();
  auto abar = ctx->units().sigma_a();
  for (uint64_t idx = 0; idx < fq.q(); ++idx) {
    FqElem x = fq.from_index(idx);
    FqElem sx = fq.add(fq.pow(x, K->p()), fq.mul(abar, x));
    if (fq.is_zero(sx)) continue;
    auto elt = K->one() + K->teichmuller(sx) * K->uniformizer().pow(3);
    CHECK(ctx->exponent(elt, K->uniformizer()) == 0);
  }
}

TEST_CASE("symbol calculation chain at the top level") {
  // exponent(1 + x*pi^(pe0-n), 1 + pi^n) = n * exponent(1 + x*pi^pe0, pi).
  // The sign is forced by the Steinberg relation; see the derivation below.
  auto K = q3zeta3();
  auto ctx = HilbertContext::get(K);
  const auto& fq = K->residue_field();
  unsigned p = K->p();
  long pe0 = K->pe0();
  auto pi = K->uniformizer();
  for (long n = 1; n < pe0; ++n) {
    if (n % p == 0) continue;
    for (uint64_t idx = 0; idx < fq.q(); ++idx) {
      FqElem x = fq.from_index(idx);
      PadicElement lhs_a =
          fq.is_zero(x) ? K->one() : K->one() + K->teichmuller(x) * pi.pow(pe0 - n);
      PadicElement rhs_a = fq.is_zero(x) ? K->one() : K->one() + K->teichmuller(x) * pi.pow(pe0);
      unsigned lhs = ctx->exponent(lhs_a, K->one() + pi.pow(n));
      unsigned rhs = (unsigned)(((long)n * (long)ctx->exponent(rhs_a, pi)) % (long)p);
      CHECK_MESSAGE(lhs == rhs, "n=", n, " x=", fq.str(x));
    }
  }
}

TEST_CASE("the chain sign is pinned by explicit norm witnesses") {
  // Pairing-free derivation of the relative sign between the (top, pi) block
  // and the (level, level) blocks. N(1 + root) = 1 + b in K[X]/(X^p - b)
  // certifies (1+b, b) = 0; expanding in canonical coordinates pins the
  // ratio. Any matrix satisfying all memberships must put the SAME sign on
  // both blocks, which is what the previous test asserts.
  auto K = q3zeta3();
  auto uctx = UnitsContext::get(K);
  auto ctx = HilbertContext::get(K);
  auto pi = K->uniformizer();
  auto b1 = pi * (K->one() + pi);
  auto b2 = pi * (K->one() + pi.pow(2));
  for (auto& b : {b1, b2}) {
    auto L = adjoin_pth_root(K, b);
    auto one_plus = L->norm(L->one() + L->root());
    CHECK(one_plus == K->one() + b);
    CHECK(ctx->exponent(one_plus, b) == 0);
  }
  // alpha = (1+pi, pi) and beta = (1+pi^2, pi) vanish: both are norms from
  // K(pi^{1/p})
  auto nsPi = norm_subgroup(K, pi);
  CHECK(nsPi->contains(uctx->coords_of(K->one() + pi)));
  CHECK(nsPi->contains(uctx->coords_of(K->one() + pi.pow(2))));
  // putting the two facts together: (1+pi^2, 1+pi) = +(1+pi^3, pi)
  CHECK(ctx->exponent(K->one() + pi.pow(2), K->one() + pi) ==
        ctx->exponent(K->one() + pi.pow(3), pi));
}
