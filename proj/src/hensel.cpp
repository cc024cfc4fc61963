#include "psl/hensel.hpp"

#include <algorithm>
#include <climits>
#include <map>
#include <mutex>

namespace psl {

PadicElement poly_eval(const PadicPoly& f, const PadicElement& x) {
  const FieldPtr& K = x.field();
  PadicElement acc = K->zero();
  for (size_t i = f.size(); i-- > 0;) acc = acc * x + f[i];
  return acc;
}

PadicPoly poly_derivative(const PadicPoly& f) {
  PadicPoly d;
  for (size_t i = 1; i < f.size(); ++i) d.push_back(f[i].mul_int((long long)i));
  if (d.empty() && !f.empty()) d.push_back(f[0].field()->zero());
  return d;
}

std::vector<PolygonSegment> newton_polygon(const std::vector<std::pair<long, long>>& pts) {
  // lower convex hull, left to right; pts must be sorted by x with distinct x
  std::vector<std::pair<long, long>> hull;
  for (const auto& pt : pts) {
    while (hull.size() >= 2) {
      auto& a = hull[hull.size() - 2];
      auto& b = hull[hull.size() - 1];
      // keep b if it is strictly below segment a->pt
      long long cross = (long long)(b.first - a.first) * (pt.second - a.second) -
                        (long long)(b.second - a.second) * (pt.first - a.first);
      if (cross <= 0)
        hull.pop_back();
      else
        break;
    }
    hull.push_back(pt);
  }
  std::vector<PolygonSegment> segs;
  for (size_t i = 0; i + 1 < hull.size(); ++i) {
    Rational s(hull[i + 1].second - hull[i].second, hull[i + 1].first - hull[i].first);
    long len = hull[i + 1].first - hull[i].first;
    if (!segs.empty() && segs.back().slope == s)
      segs.back().length += len;
    else
      segs.push_back({s, len});
  }
  return segs;
}

std::vector<PolygonSegment> newton_polygon(const PadicPoly& f) {
  std::vector<std::pair<long, long>> pts;
  for (size_t d = 0; d < f.size(); ++d) {
    if (f[d].is_zero()) continue;
    pts.push_back({long(d), f[d].valuation()});
  }
  return newton_polygon(pts);
}

namespace {

// g(Y + a), then Y -> pi*Y, then divide out the minimal valuation.
PadicPoly shift_scale_normalize(const PadicPoly& g, const PadicElement& a) {
  PadicPoly t = g;
  size_t n = t.size();
  for (size_t k = 0; k + 1 < n; ++k)
    for (size_t j = n - 1; j-- > k;) t[j] = t[j] + a * t[j + 1];
  long minv = LONG_MAX;
  for (size_t k = 0; k < n; ++k) {
    t[k] = t[k].shift(long(k));
    if (!t[k].is_zero()) minv = std::min(minv, t[k].valuation());
  }
  if (minv == LONG_MAX) return {};  // everything vanished at precision
  for (auto& c : t) c = c.shift(-minv);
  return t;
}

PadicElement newton_refine(const PadicPoly& g, const PadicPoly& dg, PadicElement x) {
  for (int it = 0; it < 64; ++it) {
    PadicElement fx = poly_eval(g, x);
    if (fx.is_zero()) break;
    PadicElement fpx = poly_eval(dg, x);
    if (fpx.is_zero()) break;
    PadicElement step = fx / fpx;
    if (step.is_zero()) break;
    x = x - step;
  }
  // clamp the claimed precision of the root to what the certificate supports
  PadicElement fx = poly_eval(g, x);
  PadicElement fpx = poly_eval(dg, x);
  long va = fx.is_zero() ? fx.abs_precision() : fx.valuation();
  long vp = fpx.is_zero() ? fpx.abs_precision() : fpx.valuation();
  long claim = va - vp;
  if (x.is_zero()) return x;
  if (claim <= x.valuation()) fail(Err::PrecisionInsufficient, "root certificate too weak");
  return x.clamp_rel(claim - x.valuation());
}

void find_unit_roots(const PadicPoly& g, const FieldPtr& K, bool nonzero_residue_only, long depth,
                     long budget, const PadicElement& base, long scale,
                     std::vector<PadicElement>& out) {
  if (depth > budget)
    fail(Err::PrecisionInsufficient,
         "root search exhausted the precision budget (repeated factor or budget too small)");
  if (g.empty())
    fail(Err::PrecisionInsufficient, "polynomial vanished at the working precision");
  const auto& fq = K->residue_field();
  // residue polynomial
  std::vector<FqElem> gbar;
  for (const auto& c : g)
    gbar.push_back((!c.is_zero() && c.valuation() == 0) ? c.unit_residue() : fq.zero());
  bool bar_zero = true;
  for (auto& c : gbar)
    if (!fq.is_zero(c)) bar_zero = false;
  if (bar_zero) fail(Err::PrecisionInsufficient, "residue polynomial vanished");

  PadicPoly dg = poly_derivative(g);
  std::vector<FqElem> residue_roots = fq_poly_roots(fq, gbar);
  for (const FqElem& r : residue_roots) {
    if (nonzero_residue_only && fq.is_zero(r)) continue;
    PadicElement a = K->from_residue(r);
    PadicElement fa = poly_eval(g, a);
    PadicElement fpa = poly_eval(dg, a);
    long va = fa.is_zero() ? fa.abs_precision() : fa.valuation();
    long vp = fpa.is_zero() ? LONG_MAX / 4 : fpa.valuation();
    if (vp < LONG_MAX / 8 && va > 2 * vp) {
      PadicElement root = newton_refine(g, dg, a);
      out.push_back(base + root.shift(scale));
      continue;
    }
    if (fa.is_zero())
      fail(Err::PrecisionInsufficient, "undecidable residue disc at the working precision");
    PadicPoly h = shift_scale_normalize(g, a);
    find_unit_roots(h, K, false, depth + 1, budget, base + a.shift(scale), scale + 1, out);
  }
}

std::string sort_key(const PadicElement& x) {
  if (x.is_zero()) return std::string(1, char(0x7f));
  std::string s;
  long v = x.valuation();
  s += std::to_string(v) + "|";
  auto ds = x.digits(size_t(std::min<long>(x.rel_precision(), 24)));
  const auto& fq = x.field()->residue_field();
  for (auto& d : ds) s += std::to_string(fq.index(d)) + ",";
  return s;
}

}  // namespace

std::vector<PadicElement> hensel_roots(const PadicPoly& f_in, const FieldPtr& K) {
  PadicPoly f = f_in;
  while (!f.empty() && f.back().is_zero()) f.pop_back();
  if (f.empty()) fail(Err::RootOfZero, "polynomial is zero at the working precision");
  std::vector<PadicElement> roots;
  // low-order coefficients that vanish at precision contribute the root 0
  size_t k0 = 0;
  while (k0 < f.size() && f[k0].is_zero()) ++k0;
  if (k0 > 0) {
    roots.push_back(K->zero());
    f.erase(f.begin(), f.begin() + k0);
  }
  if (f.size() >= 2) {
    auto segs = newton_polygon(f);
    // collect integral candidate valuations (root valuation = -slope)
    std::vector<long> cands;
    for (auto& s : segs) {
      Rational t(-s.slope.num, s.slope.den);
      if (t.is_integer()) cands.push_back(long(t.num));
    }
    std::sort(cands.begin(), cands.end());
    cands.erase(std::unique(cands.begin(), cands.end()), cands.end());
    for (long t : cands) {
      PadicPoly g;
      long minv = LONG_MAX;
      for (size_t d = 0; d < f.size(); ++d) {
        PadicElement c = f[d].shift(t * long(d));
        g.push_back(c);
        if (!c.is_zero()) minv = std::min(minv, c.valuation());
      }
      for (auto& c : g) c = c.shift(-minv);
      std::vector<PadicElement> sub;
      find_unit_roots(g, K, /*nonzero_residue_only=*/true, 0, K->precision() + 4, K->zero(), 0,
                      sub);
      for (auto& y : sub) roots.push_back(y.shift(t));
    }
  }
  std::sort(roots.begin(), roots.end(), [](const PadicElement& a, const PadicElement& b) {
    return sort_key(a) < sort_key(b);
  });
  return roots;
}

bool is_pth_power(const PadicElement& x) {
  if (x.is_zero()) fail(Err::ZeroValuation, "p-th power test on zero");
  const FieldPtr& K = x.field();
  unsigned p = K->p();
  long v = x.valuation();
  if (((v % (long)p) + p) % p != 0) return false;
  PadicElement u = x.shift(-v);
  PadicPoly f(p + 1, K->zero());
  f[0] = -u;
  f[p] = K->one();
  return !hensel_roots(f, K).empty();
}

bool contains_mu_p(const FieldPtr& K) {
  static std::mutex mu;
  static std::map<std::string, bool> cache;
  {
    std::lock_guard<std::mutex> lk(mu);
    auto it = cache.find(K->key());
    if (it != cache.end()) return it->second;
  }
  bool ok = false;
  if (K->e0_integral()) {
    PadicPoly phi_p;
    for (unsigned i = 0; i < K->p(); ++i) phi_p.push_back(K->one());
    ok = !hensel_roots(phi_p, K).empty();
  }
  std::lock_guard<std::mutex> lk(mu);
  cache[K->key()] = ok;
  return ok;
}

}  // namespace psl
