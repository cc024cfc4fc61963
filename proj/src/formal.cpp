#include "psl/formal.hpp"

#include <algorithm>

namespace psl {

const char* reduction_name(ReductionClass c) {
  switch (c) {
    case ReductionClass::GoodOrdinary: return "good-ordinary";
    case ReductionClass::GoodSupersingular: return "good-supersingular";
    case ReductionClass::SplitMultiplicative: return "split-multiplicative";
    case ReductionClass::NonsplitMultiplicative: return "nonsplit-multiplicative";
    case ReductionClass::Additive: return "additive";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// truncated series helpers
// ---------------------------------------------------------------------------

namespace {

USeries us_zero(const FieldPtr& K, size_t n) { return USeries(n, K->zero()); }

USeries us_add(const USeries& a, const USeries& b) {
  USeries r = a;
  for (size_t i = 0; i < r.size() && i < b.size(); ++i) r[i] = r[i] + b[i];
  return r;
}

USeries us_mul(const FieldPtr& K, const USeries& a, const USeries& b, size_t n) {
  USeries r = us_zero(K, n);
  for (size_t i = 0; i < a.size() && i < n; ++i) {
    if (a[i].is_zero()) continue;
    for (size_t j = 0; j < b.size() && i + j < n; ++j) {
      if (b[j].is_zero()) continue;
      r[i + j] = r[i + j] + a[i] * b[j];
    }
  }
  return r;
}

USeries us_scale(const USeries& a, const PadicElement& c) {
  USeries r = a;
  for (auto& x : r) x = x * c;
  return r;
}

// inverse of a series with unit constant term
USeries us_inv(const FieldPtr& K, const USeries& a, size_t n) {
  USeries r = us_zero(K, n);
  PadicElement c0i = a[0].inv();
  r[0] = c0i;
  for (size_t k = 1; k < n; ++k) {
    PadicElement acc = K->zero();
    for (size_t i = 1; i <= k && i < a.size(); ++i) acc = acc + a[i] * r[k - i];
    r[k] = -(acc * c0i);
  }
  return r;
}

BSeries bs_zero(const FieldPtr& K, size_t ord) {
  BSeries s;
  s.ord = ord;
  s.c.assign(ord * ord, K->zero());
  return s;
}

BSeries bs_add(const BSeries& a, const BSeries& b) {
  BSeries r = a;
  for (size_t i = 0; i < r.c.size(); ++i) r.c[i] = r.c[i] + b.c[i];
  return r;
}

BSeries bs_mul(const FieldPtr& K, const BSeries& a, const BSeries& b) {
  size_t ord = a.ord;
  BSeries r = bs_zero(K, ord);
  for (size_t i1 = 0; i1 < ord; ++i1)
    for (size_t j1 = 0; i1 + j1 < ord; ++j1) {
      const PadicElement& x = a.at(i1, j1);
      if (x.is_zero()) continue;
      for (size_t i2 = 0; i1 + i2 < ord; ++i2)
        for (size_t j2 = 0; i2 + j2 < ord && i1 + i2 + j1 + j2 < ord; ++j2) {
          const PadicElement& y = b.at(i2, j2);
          if (y.is_zero()) continue;
          r.at(i1 + i2, j1 + j2) = r.at(i1 + i2, j1 + j2) + x * y;
        }
    }
  return r;
}

BSeries bs_scale(const BSeries& a, const PadicElement& c) {
  BSeries r = a;
  for (auto& x : r.c) x = x * c;
  return r;
}

// inverse of a bivariate series with unit constant term, by Newton iteration
BSeries bs_inv(const FieldPtr& K, const BSeries& a) {
  BSeries r = bs_zero(K, a.ord);
  r.at(0, 0) = a.at(0, 0).inv();
  size_t steps = 1;
  while ((size_t(1) << steps) < a.ord + 1) ++steps;
  for (size_t s = 0; s <= steps; ++s) {
    BSeries t = bs_mul(K, a, r);
    BSeries u = bs_zero(K, a.ord);
    for (size_t i = 0; i < u.c.size(); ++i) u.c[i] = -t.c[i];
    u.at(0, 0) = u.at(0, 0) + K->from_int(2);
    r = bs_mul(K, r, u);
  }
  return r;
}

}  // namespace

PadicElement series_eval(const USeries& s, const PadicElement& x) {
  const FieldPtr& K = x.field();
  PadicElement acc = K->zero();
  for (size_t i = s.size(); i-- > 0;) acc = acc * x + s[i];
  return acc;
}

PadicElement fg_eval(const BSeries& s, const PadicElement& x, const PadicElement& y) {
  const FieldPtr& K = x.field();
  PadicElement acc = K->zero();
  for (size_t i = s.ord; i-- > 0;) {
    PadicElement row = K->zero();
    for (size_t j = s.ord; j-- > 0;) {
      if (i + j >= s.ord) continue;
      row = row * y + s.at(i, j);
    }
    acc = acc * x + row;
  }
  return acc;
}

// ---------------------------------------------------------------------------
// CurveModel
// ---------------------------------------------------------------------------

std::shared_ptr<const CurveModel> CurveModel::make(const FieldPtr& K,
                                                   const std::array<CoeffSpec, 5>& a) {
  return std::shared_ptr<const CurveModel>(new CurveModel(K, a));
}

CurveModel::CurveModel(const FieldPtr& K, const std::array<CoeffSpec, 5>& a)
    : K_(K), input_(a) {
  for (size_t i = 0; i < 5; ++i) a_[i] = K->from_pi_poly(a[i]);
  classify();
}

std::shared_ptr<const CurveModel> CurveModel::base_change(const FieldPtr& L) const {
  return make(L, input_);
}

void CurveModel::classify() {
  const PadicElement &a1 = a_[0], &a2 = a_[1], &a3 = a_[2], &a4 = a_[3], &a6 = a_[4];
  PadicElement b2 = a1 * a1 + a2.mul_int(4);
  PadicElement b4 = a4.mul_int(2) + a1 * a3;
  PadicElement b6 = a3 * a3 + a6.mul_int(4);
  PadicElement disc;
  {
    PadicElement b8 = a1 * a1 * a6 + (a2 * a6).mul_int(4) - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
    disc = -(b2 * b2 * b8) - (b4 * b4 * b4).mul_int(8) - (b6 * b6).mul_int(27) +
           (b2 * b4 * b6).mul_int(9);
  }
  PadicElement c4 = b2 * b2 - b4.mul_int(24);
  if (disc.is_zero()) fail(Err::SingularCurve, "discriminant vanishes at the working precision");
  long vdisc_in = disc.valuation();
  long vc4_in = c4.is_zero() ? vdisc_in + 1000 : c4.valuation();
  v_j_ = 3 * vc4_in - vdisc_in;

  // short form y^2 = x^3 + Ax^2 + Bx + C (p odd, so 2 and 4 are units)
  PadicElement quarter = K_->from_int(4).inv();
  PadicElement A = b2 * quarter;
  PadicElement B = b4 * K_->from_int(2).inv();
  PadicElement C = b6 * quarter;

  const auto& fq = K_->residue_field();
  if (fq.q() > 100000) fail(Err::Internal, "residue field too large for exhaustive counting");
  PadicElement pi = K_->uniformizer();

  auto cubic_disc = [&](const PadicElement& A_, const PadicElement& B_, const PadicElement& C_) {
    return (A_ * B_ * C_).mul_int(18) - (A_ * A_ * A_ * C_).mul_int(4) + A_ * A_ * B_ * B_ -
           (B_ * B_ * B_).mul_int(4) - (C_ * C_).mul_int(27);
  };
  auto translate = [&](PadicElement& A_, PadicElement& B_, PadicElement& C_,
                       const PadicElement& r) {
    PadicElement nA = A_ + r.mul_int(3);
    PadicElement nB = B_ + (A_ * r).mul_int(2) + (r * r).mul_int(3);
    PadicElement nC = C_ + A_ * r * r + B_ * r + r * r * r;
    A_ = nA;
    B_ = nB;
    C_ = nC;
  };
  auto residue_of = [&](const PadicElement& x) {
    return (!x.is_zero() && x.valuation() == 0) ? x.residue() : fq.zero();
  };

  long guard = vdisc_in / 12 + 4;
  for (long iter = 0;; ++iter) {
    if (iter >= guard) fail(Err::NotMinimal, "minimal-model pass failed to terminate");
    PadicElement d = cubic_disc(A, B, C);
    if (d.is_zero()) fail(Err::SingularCurve, "discriminant vanishes at the working precision");
    if (d.valuation() == 0) {
      // good reduction: exhaustive residue point count decides the trace
      FqElem Ar = residue_of(A), Br = residue_of(B), Cr = residue_of(C);
      long chi_sum = 0;
      for (uint64_t ix = 0; ix < fq.q(); ++ix) {
        FqElem x = fq.from_index(ix);
        FqElem fx =
            fq.add(fq.add(fq.mul(fq.mul(x, x), x), fq.mul(Ar, fq.mul(x, x))),
                   fq.add(fq.mul(Br, x), Cr));
        chi_sum += fq.chi(fx);
      }
      long aq = -chi_sum;
      aq_mod_p_ = ((aq % (long)K_->p()) + K_->p()) % K_->p();
      cls_ = (aq_mod_p_ == 0) ? ReductionClass::GoodSupersingular : ReductionClass::GoodOrdinary;
      v_disc_ = d.valuation();
      simp_ = {A, B, C};
      return;
    }
    // locate the singular point of the reduction (unique, hence rational)
    bool found = false;
    FqElem x0bar = fq.zero();
    {
      FqElem Ar = residue_of(A), Br = residue_of(B), Cr = residue_of(C);
      FqElem three = fq.from_index(3 % fq.p());
      for (uint64_t ix = 0; ix < fq.q() && !found; ++ix) {
        FqElem x = fq.from_index(ix);
        FqElem fx = fq.add(fq.add(fq.mul(fq.mul(x, x), x), fq.mul(Ar, fq.mul(x, x))),
                           fq.add(fq.mul(Br, x), Cr));
        FqElem dfx =
            fq.add(fq.mul(three, fq.mul(x, x)), fq.add(fq.mul(fq.add(Ar, Ar), x), Br));
        if (fq.is_zero(fx) && fq.is_zero(dfx)) {
          x0bar = x;
          found = true;
        }
      }
    }
    if (!found) fail(Err::Internal, "positive discriminant valuation without a singular point");
    translate(A, B, C, K_->from_residue(x0bar));
    if (!A.is_zero() && A.valuation() == 0) {
      // node: tangent directions are y = +-sqrt(A) x
      cls_ = fq.chi(A.residue()) == 1 ? ReductionClass::SplitMultiplicative
                                      : ReductionClass::NonsplitMultiplicative;
      PadicElement d2 = cubic_disc(A, B, C);
      v_disc_ = d2.valuation();
      simp_ = {A, B, C};
      return;
    }
    // cusp; search for a deeper translation enabling the rescale
    bool rescaled = false;
    std::vector<PadicElement> shifts = {K_->zero()};
    for (uint64_t t1 = 1; t1 < fq.q(); ++t1)
      shifts.push_back(pi * K_->from_residue(fq.from_index(t1)));
    for (uint64_t t1 = 0; t1 < fq.q(); ++t1)
      for (uint64_t t2 = 1; t2 < fq.q(); ++t2)
        shifts.push_back(pi * K_->from_residue(fq.from_index(t1)) +
                         pi * pi * K_->from_residue(fq.from_index(t2)));
    for (const auto& r : shifts) {
      PadicElement A2 = A, B2 = B, C2 = C;
      translate(A2, B2, C2, r);
      auto vok = [](const PadicElement& x, long v) { return x.is_zero() || x.valuation() >= v; };
      if (vok(A2, 2) && vok(B2, 4) && vok(C2, 6)) {
        A = A2.shift(-2);
        B = B2.shift(-4);
        C = C2.shift(-6);
        rescaled = true;
        break;
      }
    }
    if (!rescaled) {
      cls_ = ReductionClass::Additive;
      PadicElement d2 = cubic_disc(A, B, C);
      v_disc_ = d2.is_zero() ? d2.abs_precision() : d2.valuation();
      simp_ = {A, B, C};
      return;
    }
  }
}

// ---------------------------------------------------------------------------
// formal group
// ---------------------------------------------------------------------------

std::shared_ptr<const FormalGroupData> formal_group_law(const CurvePtr& E, long order) {
  const FieldPtr& K = E->field();
  long def = long(K->p()) * long(K->p()) + 2;
  if (order < 0) order = def;
  if (order < 4) fail(Err::TruncationTooSmall, "truncation order must be at least 4");
  {
    std::lock_guard<std::mutex> lk(E->fg_mu_);
    if (E->fg_ && E->fg_->order >= order) return E->fg_;
  }
  const PadicElement &a1 = E->a()[0], &a2 = E->a()[1], &a3 = E->a()[2], &a4 = E->a()[3],
                     &a6 = E->a()[4];
  size_t n = size_t(order);
  size_t wn = n + 4;
  // w(z) = z^3 + a1 z w + a2 z^2 w + a3 w^2 + a4 z w^2 + a6 w^3
  USeries z3 = us_zero(K, wn);
  z3[3] = K->one();
  USeries w = z3;
  for (size_t it = 0; it < wn; ++it) {
    USeries w2 = us_mul(K, w, w, wn);
    USeries w3 = us_mul(K, w2, w, wn);
    USeries t = z3;
    USeries zw = us_zero(K, wn);
    for (size_t i = 0; i + 1 < wn; ++i) zw[i + 1] = w[i];
    USeries z2w = us_zero(K, wn);
    for (size_t i = 0; i + 2 < wn; ++i) z2w[i + 2] = w[i];
    USeries zw2 = us_zero(K, wn);
    for (size_t i = 0; i + 1 < wn; ++i) zw2[i + 1] = w2[i];
    t = us_add(t, us_scale(zw, a1));
    t = us_add(t, us_scale(z2w, a2));
    t = us_add(t, us_scale(w2, a3));
    t = us_add(t, us_scale(zw2, a4));
    t = us_add(t, us_scale(w3, a6));
    w = t;
  }
  size_t ord = n;
  // lambda = sum_m w_m * (z1^{m-1} + z1^{m-2} z2 + ... + z2^{m-1})
  BSeries lam = bs_zero(K, ord);
  for (size_t m = 3; m < wn; ++m) {
    if (w[m].is_zero()) continue;
    for (size_t i = 0; i <= m - 1; ++i) {
      size_t j = m - 1 - i;
      if (i >= ord || j >= ord || i + j >= ord) continue;
      lam.at(i, j) = lam.at(i, j) + w[m];
    }
  }
  // nu = w(z1) - lambda * z1
  BSeries nu = bs_zero(K, ord);
  for (size_t i = 0; i < ord && i < wn; ++i) nu.at(i, 0) = w[i];
  {
    BSeries lz = bs_zero(K, ord);
    for (size_t i = 0; i + 1 < ord; ++i)
      for (size_t j = 0; i + 1 + j < ord; ++j) lz.at(i + 1, j) = lam.at(i, j);
    for (size_t i = 0; i < nu.c.size(); ++i) nu.c[i] = nu.c[i] - lz.c[i];
  }
  BSeries lam2 = bs_mul(K, lam, lam);
  BSeries denom = bs_zero(K, ord);
  denom.at(0, 0) = K->one();
  denom = bs_add(denom, bs_scale(lam, a2));
  denom = bs_add(denom, bs_scale(lam2, a4));
  denom = bs_add(denom, bs_scale(bs_mul(K, lam2, lam), a6));
  // z3 = -z1 - z2 - A2/D with A2 the z^2 coefficient of the substituted chord
  BSeries numer = bs_scale(lam, -a1);
  numer = bs_add(numer, bs_scale(lam2, -a3));
  numer = bs_add(numer, bs_scale(nu, -a2));
  numer = bs_add(numer, bs_scale(bs_mul(K, lam, nu), (-a4).mul_int(2)));
  numer = bs_add(numer, bs_scale(bs_mul(K, lam2, nu), (-a6).mul_int(3)));
  BSeries z3s = bs_mul(K, numer, bs_inv(K, denom));
  {
    // z3 = -z1 - z2 + numer/denom
    z3s.at(1, 0) = z3s.at(1, 0) - K->one();
    z3s.at(0, 1) = z3s.at(0, 1) - K->one();
  }
  // inversion series i(z) = -z * (1 - a1 z - a3 w(z))^{-1}
  USeries invden = us_zero(K, n);
  invden[0] = K->one();
  if (n > 1) invden[1] = invden[1] - a1;
  for (size_t i = 0; i < n && i < wn; ++i) invden[i] = invden[i] - a3 * w[i];
  USeries invs = us_inv(K, invden, n);
  USeries iser = us_zero(K, n);
  for (size_t i = 0; i + 1 < n; ++i) iser[i + 1] = -invs[i];
  // F = i(z3): Horner over the bivariate argument
  BSeries F = bs_zero(K, ord);
  for (size_t k = n; k-- > 0;) {
    F = bs_mul(K, F, z3s);
    F.at(0, 0) = F.at(0, 0) + iser[k];
  }
  // [p](T) by repeated addition through the law
  USeries T = us_zero(K, n);
  if (n > 1) T[1] = K->one();
  auto f_eval_series = [&](const USeries& u, const USeries& v) {
    std::vector<USeries> up(ord), vp(ord);
    up[0] = us_zero(K, n);
    up[0][0] = K->one();
    vp[0] = up[0];
    for (size_t k = 1; k < ord; ++k) {
      up[k] = us_mul(K, up[k - 1], u, n);
      vp[k] = us_mul(K, vp[k - 1], v, n);
    }
    USeries acc = us_zero(K, n);
    for (size_t i = 0; i < ord; ++i)
      for (size_t j = 0; i + j < ord; ++j) {
        if (F.at(i, j).is_zero()) continue;
        acc = us_add(acc, us_scale(us_mul(K, up[i], vp[j], n), F.at(i, j)));
      }
    return acc;
  };
  USeries cur = T;
  for (unsigned k = 2; k <= K->p(); ++k) cur = f_eval_series(cur, T);

  auto data = std::make_shared<FormalGroupData>();
  data->order = order;
  data->law = std::move(F);
  data->mulp = std::move(cur);
  data->wexp = std::move(w);
  {
    std::lock_guard<std::mutex> lk(E->fg_mu_);
    if (!E->fg_ || E->fg_->order < order) E->fg_ = data;
    return E->fg_;
  }
}

std::vector<PolygonSegment> p_series_newton(const CurvePtr& E) {
  if (E->reduction() != ReductionClass::GoodOrdinary &&
      E->reduction() != ReductionClass::GoodSupersingular)
    fail(Err::NotGoodReduction,
         std::string("reduction class is ") + reduction_name(E->reduction()));
  const FieldPtr& K = E->field();
  auto fg = formal_group_law(E);
  const USeries& mp = fg->mulp;
  long p2 = long(K->p()) * long(K->p());
  if (long(mp.size()) < p2 + 1) fail(Err::TruncationTooSmall, "[p] series truncated below p^2");
  long d_unit = -1;
  for (long d = 1; d <= p2 && size_t(d) < mp.size(); ++d) {
    if (!mp[size_t(d)].is_zero() && mp[size_t(d)].valuation() == 0) {
      d_unit = d;
      break;
    }
  }
  if (d_unit != long(K->p()) && d_unit != p2)
    fail(Err::Internal, "height vertex of the [p] series not at p or p^2");
  std::vector<std::pair<long, long>> pts;
  for (long d = 1; d <= d_unit; ++d) {
    if (mp[size_t(d)].is_zero()) continue;
    pts.push_back({d - 1, mp[size_t(d)].valuation()});
  }
  return newton_polygon(pts);
}

long t0_invariant(const CurvePtr& E) {
  if (E->reduction() != ReductionClass::GoodSupersingular)
    fail(Err::NotSupersingular,
         std::string("reduction class is ") + reduction_name(E->reduction()));
  auto segs = p_series_newton(E);
  if (segs.size() != 1) fail(Err::Internal, "supersingular polygon is not a single segment");
  Rational slope = segs[0].slope;
  Rational t0(-slope.num, slope.den);
  if (!t0.is_integer())
    fail(Err::NonIntegralTorsionValuation,
         "torsion valuation " + t0.str() + " is not an integer over this field");
  long t = long(t0.num);
  Rational e0 = E->field()->e0();
  if (!(Rational(0) < t0 && t0 < e0))
    fail(Err::Internal, "t0 = " + std::to_string(t) + " outside (0, e0)");
  return t;
}

int torsion_rational_check(const CurvePtr& E) {
  const FieldPtr& K = E->field();
  if (K->p() != 3) return -1;
  const PadicElement &a1 = E->a()[0], &a2 = E->a()[1], &a3 = E->a()[2], &a4 = E->a()[3],
                     &a6 = E->a()[4];
  PadicElement b2 = a1 * a1 + a2.mul_int(4);
  PadicElement b4 = a4.mul_int(2) + a1 * a3;
  PadicElement b6 = a3 * a3 + a6.mul_int(4);
  PadicElement b8 = a1 * a1 * a6 + (a2 * a6).mul_int(4) - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
  PadicPoly psi3 = {b8, b6.mul_int(3), b4.mul_int(3), b2, K->from_int(3)};
  std::vector<PadicElement> xs;
  try {
    xs = hensel_roots(psi3, K);
  } catch (const Error& e) {
    if (e.code == Err::PrecisionInsufficient) return -1;
    throw;
  }
  size_t good = 0;
  for (const auto& x0 : xs) {
    // y^2 + (a1 x0 + a3) y - (x0^3 + a2 x0^2 + a4 x0 + a6) = 0
    PadicPoly q = {-(x0 * x0 * x0 + a2 * x0 * x0 + a4 * x0 + a6), a1 * x0 + a3, K->one()};
    std::vector<PadicElement> ys;
    try {
      ys = hensel_roots(q, K);
    } catch (const Error& e) {
      if (e.code == Err::PrecisionInsufficient) return -1;
      throw;
    }
    if (ys.size() == 2) ++good;
  }
  return good >= 4 ? 1 : 0;
}

KummerImageDescriptor kummer_image(const CurvePtr& E) {
  const FieldPtr& K = E->field();
  switch (E->reduction()) {
    case ReductionClass::Additive:
      fail(Err::AdditiveRefused, "additive reduction is refused downstream");
    case ReductionClass::NonsplitMultiplicative:
      fail(Err::NonsplitUnsupported, "nonsplit multiplicative reduction is unsupported");
    default: break;
  }
  auto uctx = UnitsContext::get(K);  // requires mu_p in K
  long pe0 = K->pe0();
  KummerImageDescriptor d;
  d.cls = E->reduction();
  switch (E->reduction()) {
    case ReductionClass::GoodOrdinary:
      d.first = BlockSpec::lvl(0);
      d.second = BlockSpec::lvl(pe0);
      break;
    case ReductionClass::GoodSupersingular: {
      long t0 = t0_invariant(E);
      long e0 = long(K->e()) / (K->p() - 1);
      d.first = BlockSpec::lvl(long(K->p()) * (e0 - t0));
      d.second = BlockSpec::lvl(long(K->p()) * t0);
      break;
    }
    case ReductionClass::SplitMultiplicative:
      d.first = BlockSpec::full();
      d.second = BlockSpec::trivial();
      break;
    default: break;
  }
  auto dim_of = [&](const BlockSpec& s) -> long {
    switch (s.kind) {
      case BlockSpec::Full: return uctx->full_dim();
      case BlockSpec::TrivialBlock: return 0;
      case BlockSpec::Level: return uctx->subgroup_dim(s.level);
    }
    return 0;
  };
  d.total_dim = dim_of(d.first) + dim_of(d.second);
  if (d.total_dim != long(K->degree()) + 2)
    fail(Err::Internal, "image descriptor dimension is not [K:Qp]+2");
  int tc = torsion_rational_check(E);
  d.torsion_note = tc == 1   ? "p-torsion rationality verified by division polynomial"
                   : tc == 0 ? "p-torsion not rational at this precision; hypothesis asserted"
                             : "p-torsion rationality asserted (not decided at budget)";
  return d;
}

}  // namespace psl
