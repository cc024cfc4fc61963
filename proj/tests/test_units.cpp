#include "doctest.h"
#include "psl/units.hpp"

using namespace psl;

namespace {
FieldPtr q3zeta3() { return PadicField::make(3, 1, {3, 3, 1}); }
FieldPtr q3zeta9() { return PadicField::make(3, 1, {3, 9, 18, 21, 15, 6, 1}); }
FieldPtr q3zeta3_unr2() { return PadicField::make(3, 2, {3, 3, 1}); }
FieldPtr q5zeta5() { return PadicField::make(5, 1, {5, 10, 10, 5, 1}); }
}  // namespace

TEST_CASE("basis sizes and levels") {
  auto ctx = UnitsContext::get(q3zeta3());
  REQUIRE(ctx->dim() == 4);
  CHECK(ctx->slot_level(0) == -1);
  CHECK(ctx->slot_level(1) == 1);
  CHECK(ctx->slot_level(2) == 2);
  CHECK(ctx->slot_level(3) == 3);

  auto ctx9 = UnitsContext::get(q3zeta9());
  REQUIRE(ctx9->dim() == 8);  // [K:Q3] = 6 plus uniformizer and top class
  std::vector<long> lv;
  for (size_t i = 0; i < 8; ++i) lv.push_back(ctx9->slot_level(i));
  CHECK(lv == std::vector<long>{-1, 1, 2, 4, 5, 7, 8, 9});

  auto ctx2 = UnitsContext::get(q3zeta3_unr2());
  REQUIRE(ctx2->dim() == 6);  // f = 2 doubles the level blocks
  std::vector<long> lv2;
  for (size_t i = 0; i < 6; ++i) lv2.push_back(ctx2->slot_level(i));
  CHECK(lv2 == std::vector<long>{-1, 1, 1, 2, 2, 3});

  CHECK_THROWS_WITH_AS(UnitsContext::get(PadicField::make(3, 1, {-3, 1})),
                       doctest::Contains("NoMuP"), Error);
}

TEST_CASE("coordinates are well defined and homomorphic") {
  for (auto K : {q3zeta3(), q3zeta9(), q3zeta3_unr2(), q5zeta5()}) {
    auto ctx = UnitsContext::get(K);
    // basis elements have unit coordinates
    for (size_t i = 0; i < ctx->dim(); ++i) {
      FpVec c = ctx->coords_of(ctx->basis()[i].rep);
      FpVec want(ctx->dim(), 0);
      want[i] = 1;
      CHECK(c == want);
    }
    // coords(x*y) = coords(x) + coords(y) on random products of basis powers
    SplitMix rng(42);
    for (int t = 0; t < 25; ++t) {
      FpVec ca(ctx->dim()), cb(ctx->dim());
      for (auto& v : ca) v = unsigned(rng.below(K->p()));
      for (auto& v : cb) v = unsigned(rng.below(K->p()));
      auto x = ctx->class_from_coords(ca);
      auto y = ctx->class_from_coords(cb);
      CHECK(ctx->coords_of(x.rep * y.rep) == fp_add(ca, cb, K->p()));
    }
    // coords kill p-th powers
    auto pi = K->uniformizer();
    auto z = (K->one() + pi).pow(K->p());
    CHECK(fp_is_zero(ctx->coords_of(z)));
  }
}

TEST_CASE("filtration levels match the spec examples") {
  auto K = q3zeta3();
  auto pi = K->uniformizer();
  CHECK(filtration_level(K->one() + pi) == LevelTag{LevelTag::UnitLevel, 1});
  // cube kills the level-1 part; remaining class has level 3
  auto ctx = UnitsContext::get(K);
  auto g = ctx->basis()[3].rep;  // 1 + c*pi^3
  auto x = (K->one() + pi).pow(3) * g;
  CHECK(filtration_level(x) == LevelTag{LevelTag::UnitLevel, 3});
  // beyond p*e0 the class is trivial
  CHECK(filtration_level(K->one() + pi.pow(4)) == LevelTag{LevelTag::Trivial, 0});
  CHECK(filtration_level(pi.pow(3)) == LevelTag{LevelTag::Trivial, 0});
  CHECK_THROWS_WITH_AS(filtration_level(pi), doctest::Contains("NotAUnit"), Error);
  // level is invariant under multiplication by p-th powers
  SplitMix rng(7);
  for (int t = 0; t < 30; ++t) {
    FpVec c(ctx->dim(), 0);
    for (auto& v : c) v = unsigned(rng.below(3));
    if (fp_is_zero(c)) continue;
    auto cl = ctx->class_from_coords(c);
    auto other = (K->one() + pi.mul_int(long(rng.below(3)))).pow(3);
    CHECK(ctx->level_of(ctx->coords_of(cl.rep * other)) == cl.level());
  }
}

TEST_CASE("graded dimension counts") {
  for (auto K : {q3zeta3(), q3zeta9(), q3zeta3_unr2(), q5zeta5()}) {
    auto ctx = UnitsContext::get(K);
    long pe0 = K->pe0();
    unsigned p = K->p(), f = K->f();
    // graded piece dims: f at p∤m below pe0, 0 at p|m below pe0, 1 at pe0, 0 beyond
    for (long m = 0; m <= pe0 + 2; ++m) {
      long d = ctx->subgroup_dim(m) - ctx->subgroup_dim(m + 1);
      long want;
      if (m < pe0)
        want = (m % p && m >= 1) ? f : (m == 0 ? 0 : 0);
      else if (m == pe0)
        want = 1;
      else
        want = 0;
      CHECK_MESSAGE(d == want, "field ", K->key(), " m=", m);
    }
    CHECK(ctx->full_dim() == long(K->degree()) + 2);
    CHECK(ctx->subgroup_dim(0) == long(K->degree()) + 1);
    // basis count by level agrees with the closed dimension formula
    for (long m = 0; m <= pe0 + 2; ++m) {
      long cnt = 0;
      for (size_t i = 1; i < ctx->dim(); ++i)
        if (ctx->slot_level(i) >= std::max(m, 1L)) ++cnt;
      CHECK(cnt == ctx->subgroup_dim(m));
    }
  }
  auto K = q3zeta3();
  CHECK(subgroup_dim(K, 0) == 3);
  CHECK(subgroup_dim(K, 4) == 0);
  CHECK(subgroup_dim_full(K) == 4);
}

TEST_CASE("supersingular split-level dimension identity") {
  for (auto K : {q3zeta9(), PadicField::make(3, 1, {3, 0, 0, 0, 0, 0, 0, 0, 1})}) {
    auto ctx = UnitsContext::get(K);
    long e0 = long(K->e()) / (K->p() - 1);
    for (long t0 = 1; t0 < e0; ++t0) {
      long d1 = ctx->subgroup_dim(K->p() * (e0 - t0));
      long d2 = ctx->subgroup_dim(K->p() * t0);
      CHECK(d1 + d2 == long(K->degree()) + 2);
    }
  }
}

TEST_CASE("basis nontriviality is certified by p-th-root absence") {
  auto ctx = UnitsContext::get(q3zeta3());
  for (const auto& b : ctx->basis()) CHECK(!is_pth_power(b.rep));
}

TEST_CASE("csv dump shape") {
  auto csv = units_basis_csv(q3zeta3());
  CHECK(csv.substr(0, 36) == "level,representative,coordinates\nuni");
  CHECK(csv == units_basis_csv(q3zeta3()));  // deterministic
}
