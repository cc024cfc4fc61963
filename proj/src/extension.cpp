#include "psl/extension.hpp"

#include <algorithm>
#include <sstream>

namespace psl {

namespace {

inline uint64_t mulmod_u(uint64_t a, uint64_t b, uint64_t m) {
  return (uint64_t)((unsigned __int128)a * b % m);
}

uint64_t modinv_unit(uint64_t u, uint64_t mod, unsigned p, unsigned M) {
  // inverse of a unit mod p^M by Newton lifting from the mod-p inverse
  uint64_t z = fp_inv(unsigned(u % p), p);
  unsigned iters = 1;
  while ((1u << iters) < M + 1) ++iters;
  for (unsigned i = 0; i <= iters; ++i) {
    uint64_t t = mulmod_u(u, z, mod);
    t = (2 + mod - t) % mod;
    z = mulmod_u(z, t, mod);
  }
  return z;
}

}  // namespace

// ---------------------------------------------------------------------------
// ExtElem
// ---------------------------------------------------------------------------

static void check_handles(const ExtElem& a, const ExtElem& b) {
  if (a.E == nullptr || b.E == nullptr || a.E != b.E)
    fail(Err::NodeMismatch, "elements belong to different extension handles");
}

ExtElem ExtElem::operator+(const ExtElem& o) const {
  check_handles(*this, o);
  ExtElem r{E, c};
  for (size_t i = 0; i < c.size(); ++i) r.c[i] = c[i] + o.c[i];
  return r;
}

ExtElem ExtElem::operator-(const ExtElem& o) const {
  check_handles(*this, o);
  ExtElem r{E, c};
  for (size_t i = 0; i < c.size(); ++i) r.c[i] = c[i] - o.c[i];
  return r;
}

ExtElem ExtElem::operator-() const {
  ExtElem r{E, c};
  for (auto& x : r.c) x = -x;
  return r;
}

ExtElem ExtElem::operator*(const ExtElem& o) const {
  check_handles(*this, o);
  size_t d = c.size();
  const FieldPtr& K = E->base();
  std::vector<PadicElement> tmp(2 * d - 1, K->zero());
  for (size_t i = 0; i < d; ++i) {
    if (c[i].is_zero()) continue;
    for (size_t j = 0; j < d; ++j) {
      if (o.c[j].is_zero()) continue;
      tmp[i + j] = tmp[i + j] + c[i] * o.c[j];
    }
  }
  for (size_t k = 2 * d - 2; k >= d && k < tmp.size(); --k) {
    if (tmp[k].is_zero()) continue;
    tmp[k - d] = tmp[k - d] + tmp[k] * E->kummer_element();
    tmp[k] = K->zero();
  }
  ExtElem r{E, std::vector<PadicElement>(tmp.begin(), tmp.begin() + d)};
  return r;
}

ExtElem ExtElem::pow(long long n) const {
  if (n < 0) fail(Err::Internal, "ExtElem::pow expects n >= 0");
  ExtElem r = E->one(), b = *this;
  unsigned long long m = (unsigned long long)n;
  while (m) {
    if (m & 1) r = r * b;
    if (m >>= 1) b = b * b;
  }
  return r;
}

bool ExtElem::is_zero() const {
  for (const auto& x : c)
    if (!x.is_zero()) return false;
  return true;
}

std::string ExtElem::str() const {
  std::ostringstream s;
  for (size_t i = 0; i < c.size(); ++i) {
    if (i) s << " + ";
    s << "(" << c[i].str(4) << ")";
    if (i >= 1) s << "*r";
    if (i > 1) s << "^" << i;
  }
  return s.str();
}

// ---------------------------------------------------------------------------
// ExtensionHandle
// ---------------------------------------------------------------------------

ExtPtr ExtensionHandle::adjoin_pth_root(const FieldPtr& K, const PadicElement& b) {
  if (b.is_zero()) fail(Err::RootOfZero, "cannot adjoin a p-th root of zero");
  if (!contains_mu_p(K))
    fail(Err::NoPthRoots, "base field does not contain the p-th roots of unity");
  return ExtPtr(new ExtensionHandle(K, b));
}

ExtensionHandle::ExtensionHandle(const FieldPtr& K, PadicElement b) : K_(K), b_(std::move(b)) {
  unsigned p = K->p();
  long pe0 = K->pe0();
  if (is_pth_power(b_)) {
    deg_ = 1;
    cls_ = ExtClass::Trivial;
    PadicPoly f(p + 1, K->zero());
    f[0] = -b_;
    f[p] = K->one();
    auto roots = hensel_roots(f, K);
    if (roots.empty()) fail(Err::Internal, "p-th power without computable root");
    trivial_root_ = roots.front();
    unif_ = embed(K->uniformizer());
    return;
  }
  deg_ = p;
  long v = b_.valuation();
  long vmod = ((v % (long)p) + p) % p;
  if (vmod != 0) {
    cls_ = ExtClass::TotallyRamified;
    eLK_ = p;
    fLK_ = 1;
    break_ = pe0;
    diff_ = long(p - 1) * (pe0 + 1);
  } else {
    auto ctx = UnitsContext::get(K);
    LevelTag tag = ctx->level_of(ctx->coords_of(b_.shift(-v)));
    if (tag.kind != LevelTag::UnitLevel)
      fail(Err::Internal, "unexpected class shape for a non-p-th-power unit");
    if (tag.level == pe0) {
      cls_ = ExtClass::Unramified;
      fLK_ = p;
      eLK_ = 1;
      diff_ = 0;
      break_ = -1;
    } else {
      cls_ = ExtClass::TotallyRamified;
      eLK_ = p;
      fLK_ = 1;
      break_ = pe0 - tag.level;
      diff_ = long(p - 1) * (break_ + 1);
    }
  }
  if (cls_ == ExtClass::Unramified) {
    unif_ = embed(K->uniformizer());
  } else {
    ExtElem gamma = (vmod != 0) ? root() : root() - one();
    long vg = val(gamma);
    if (vg % (long)p == 0) fail(Err::Internal, "uniformizer search: generator has p-divisible valuation");
    unsigned a = fp_inv(unsigned(((vg % (long)p) + p) % p), p);
    long cnum = 1 - (long)a * vg;
    long cpow = cnum / (long)p;
    ExtElem cand = gamma.pow(a) * embed(K->uniformizer().pow(cpow));
    if (val(cand) != 1) fail(Err::Internal, "uniformizer search failed");
    unif_ = cand;
  }
}

ExtElem ExtensionHandle::zero() const {
  return ExtElem{this, std::vector<PadicElement>(deg_, K_->zero())};
}

ExtElem ExtensionHandle::one() const {
  auto r = zero();
  r.c[0] = K_->one();
  return r;
}

ExtElem ExtensionHandle::embed(const PadicElement& x) const {
  auto r = zero();
  r.c[0] = x;
  return r;
}

ExtElem ExtensionHandle::root() const {
  if (deg_ == 1) return embed(trivial_root_);
  auto r = zero();
  r.c[1] = K_->one();
  return r;
}

PadicElement ExtensionHandle::norm(const ExtElem& y) const {
  if (y.E != this) fail(Err::NodeMismatch, "norm of an element from another handle");
  if (deg_ == 1) return y.c[0];
  std::vector<std::vector<PadicElement>> m(deg_, std::vector<PadicElement>(deg_, K_->zero()));
  ExtElem cur = y;
  for (unsigned i = 0; i < deg_; ++i) {
    for (unsigned j = 0; j < deg_; ++j) m[j][i] = cur.c[j];
    if (i + 1 < deg_) cur = cur * root();
  }
  return bird_det<PadicElement>(std::move(m), K_->zero());
}

PadicElement ExtensionHandle::norm_one_plus(const ExtElem& z) const {
  if (z.E != this) fail(Err::NodeMismatch, "norm of an element from another handle");
  if (deg_ == 1) return K_->one() + z.c[0];
  unsigned n = deg_;
  std::vector<std::vector<PadicElement>> m(n, std::vector<PadicElement>(n, K_->zero()));
  ExtElem cur = z;
  for (unsigned i = 0; i < n; ++i) {
    for (unsigned j = 0; j < n; ++j) m[j][i] = cur.c[j];
    if (i + 1 < n) cur = cur * root();
  }
  // power traces of M_z
  std::vector<PadicElement> ptr(n + 1, K_->zero());
  std::vector<std::vector<PadicElement>> mk = m;
  for (unsigned k = 1; k <= n; ++k) {
    PadicElement tr = K_->zero();
    for (unsigned i = 0; i < n; ++i) tr = tr + mk[i][i];
    ptr[k] = tr;
    if (k < n) {
      std::vector<std::vector<PadicElement>> nxt(n, std::vector<PadicElement>(n, K_->zero()));
      for (unsigned i = 0; i < n; ++i)
        for (unsigned j = 0; j < n; ++j) {
          PadicElement acc = K_->zero();
          for (unsigned t = 0; t < n; ++t) acc = acc + mk[i][t] * m[t][j];
          nxt[i][j] = acc;
        }
      mk = std::move(nxt);
    }
  }
  // Newton's identities; k < p = n so the divisions are by units
  std::vector<PadicElement> es(n + 1, K_->zero());
  es[0] = K_->one();
  for (unsigned k = 1; k < n; ++k) {
    PadicElement acc = K_->zero();
    for (unsigned i = 1; i <= k; ++i) {
      PadicElement term = es[k - i] * ptr[i];
      acc = (i % 2 == 1) ? acc + term : acc - term;
    }
    es[k] = acc / K_->from_int((long long)k);
  }
  es[n] = bird_det<PadicElement>(m, K_->zero());
  PadicElement out = K_->zero();
  for (unsigned k = 0; k <= n; ++k) out = out + es[k];
  return out;
}

long ExtensionHandle::val(const ExtElem& y) const {
  PadicElement n = norm(y);
  if (n.is_zero())
    fail(Err::PrecisionLoss, "norm vanished at the working precision");
  long vn = n.valuation();
  if (vn % (long)fLK_ != 0) fail(Err::Internal, "norm valuation incompatible with residue degree");
  return vn / (long)fLK_;
}

std::string ExtensionHandle::describe() const {
  std::ostringstream s;
  s << "K[X]/(X^" << deg_;
  s << " - b), b = " << b_.str(4) << ", ";
  switch (cls_) {
    case ExtClass::Trivial: s << "trivial"; break;
    case ExtClass::Unramified: s << "unramified"; break;
    case ExtClass::TotallyRamified: s << "totally ramified"; break;
  }
  s << ", degree " << deg_ << ", different exponent " << diff_;
  return s.str();
}

ExtPtr adjoin_pth_root(const FieldPtr& K, const PadicElement& b) {
  return ExtensionHandle::adjoin_pth_root(K, b);
}

PadicElement relative_norm(const ExtPtr& L, const ExtElem& y) { return L->norm(y); }

// ---------------------------------------------------------------------------
// UnramifiedTower
// ---------------------------------------------------------------------------

UnramifiedTower::UnramifiedTower(const FieldPtr& K, unsigned d) : K_(K), d_(d) {
  if (d < 1) fail(Err::Internal, "tower degree must be >= 1");
  L_ = PadicField::make(K->p(), K->f() * d, K->eisenstein(), K->precision());
  if (L_->store_digits() != K->store_digits())
    fail(Err::Internal, "tower storage mismatch");

  // image of w_K: first root (deterministic order) of the lifted modulus of
  // the base residue field
  const auto& gK = K->residue_field().modulus();
  PadicPoly gpoly;
  for (unsigned c : gK) gpoly.push_back(L_->from_int((long long)c));
  PadicElement omega;
  if (K->f() == 1) {
    omega = L_->zero();  // modulus is w itself
  } else {
    auto roots = hensel_roots(gpoly, L_);
    if (roots.size() != K->f()) fail(Err::Internal, "unramified embedding root count");
    omega = roots.front();
  }

  auto elem_raw = [&](const PadicElement& x) -> Flat {
    if (x.is_zero()) return L_->fzero();
    if (x.raw_exp() < 0) fail(Err::Internal, "raw flat of a non-integral element");
    return L_->fshift_pi(x.raw_flat(), unsigned(x.raw_exp()));
  };

  emb_cols_.clear();
  PadicElement piL = L_->uniformizer();
  for (unsigned i = 0; i < K->e(); ++i) {
    for (unsigned j = 0; j < K->f(); ++j) {
      PadicElement m = piL.pow(i) * omega.pow(j);
      emb_cols_.push_back(elem_raw(m));
    }
  }

  // Frobenius: the root of the top residue modulus whose residue is the
  // q_K-power of the generator
  frob_cols_.clear();
  if (L_->f() == 1) {
    for (unsigned i = 0; i < L_->e(); ++i) frob_cols_.push_back(elem_raw(piL.pow(i)));
  } else {
    const auto& gL = L_->residue_field().modulus();
    PadicPoly gLpoly;
    for (unsigned c : gL) gLpoly.push_back(L_->from_int((long long)c));
    auto roots = hensel_roots(gLpoly, L_);
    uint64_t qK = 1;
    for (unsigned i = 0; i < K->f(); ++i) qK *= K->p();
    FqElem target = L_->residue_field().pow(L_->residue_field().gen(), qK);
    PadicElement sw;
    bool found = false;
    for (auto& r : roots)
      if (r.is_unit() && r.residue() == target) {
        sw = r;
        found = true;
        break;
      }
    if (!found) fail(Err::Internal, "Frobenius image of the residue generator not found");
    for (unsigned i = 0; i < L_->e(); ++i)
      for (unsigned j = 0; j < L_->f(); ++j) frob_cols_.push_back(elem_raw(piL.pow(i) * sw.pow(j)));
  }
}

Flat UnramifiedTower::apply_cols(const std::vector<Flat>& cols, const Flat& coords,
                                 const PadicField& src) const {
  Flat acc = L_->fzero();
  uint64_t mod = L_->modulus();
  for (size_t idx = 0; idx < cols.size() && idx < coords.size(); ++idx) {
    uint64_t c = coords[idx];
    if (!c) continue;
    for (size_t t = 0; t < acc.size(); ++t)
      acc[t] = (acc[t] + mulmod_u(c, cols[idx][t], mod)) % mod;
  }
  (void)src;
  return acc;
}

PadicElement UnramifiedTower::embed(const PadicElement& x) const {
  if (x.is_zero()) return PadicElement::make_zero(L_, x.abs_precision());
  Flat raw = apply_cols(emb_cols_, x.raw_flat(), *K_);
  return PadicElement::make(L_, std::move(raw), x.raw_exp(),
                            long(x.offset()) + x.rel_precision(), x.store());
}

PadicElement UnramifiedTower::frobenius(const PadicElement& y) const {
  if (y.is_zero()) return y;
  Flat raw = apply_cols(frob_cols_, y.raw_flat(), *L_);
  return PadicElement::make(L_, std::move(raw), y.raw_exp(),
                            long(y.offset()) + y.rel_precision(), y.store());
}

PadicElement UnramifiedTower::project(const PadicElement& y) const {
  if (y.is_zero()) return PadicElement::make_zero(K_, y.abs_precision());
  // solve emb * x = raw_flat(y) over Z/p^M
  size_t nr = L_->dim(), nc = K_->dim();
  uint64_t mod = L_->modulus();
  unsigned p = L_->p();
  std::vector<std::vector<uint64_t>> a(nr, std::vector<uint64_t>(nc + 1, 0));
  for (size_t r = 0; r < nr; ++r) {
    for (size_t c = 0; c < nc; ++c) a[r][c] = emb_cols_[c][r];
    a[r][nc] = y.raw_flat()[r];
  }
  std::vector<size_t> pivot_rows;
  std::vector<size_t> pivot_cols;
  size_t rr = 0;
  for (size_t c = 0; c < nc; ++c) {
    size_t sel = SIZE_MAX;
    for (size_t r = rr; r < nr; ++r)
      if (a[r][c] % p != 0) {
        sel = r;
        break;
      }
    if (sel == SIZE_MAX) fail(Err::Internal, "embedding matrix lost rank");
    std::swap(a[sel], a[rr]);
    uint64_t inv = modinv_unit(a[rr][c], mod, p, L_->store_digits());
    for (size_t j = 0; j <= nc; ++j) a[rr][j] = mulmod_u(a[rr][j], inv, mod);
    for (size_t r = 0; r < nr; ++r) {
      if (r == rr || a[r][c] == 0) continue;
      uint64_t k = a[r][c];
      for (size_t j = 0; j <= nc; ++j) {
        uint64_t sub = mulmod_u(k, a[rr][j], mod);
        a[r][j] = (a[r][j] + mod - sub) % mod;
      }
    }
    pivot_rows.push_back(rr);
    pivot_cols.push_back(c);
    ++rr;
  }
  // consistency: remaining rows must vanish at the element's precision
  Flat x(K_->dim(), 0);
  for (size_t k = 0; k < pivot_cols.size(); ++k) x[pivot_cols[k]] = a[pivot_rows[k]][nc];
  long claimed = long(y.offset()) + y.rel_precision();
  for (size_t r = rr; r < nr; ++r) {
    if (a[r][nc] == 0) continue;
    long vres = 0;
    uint64_t c = a[r][nc];
    while (c % p == 0) {
      c /= p;
      ++vres;
    }
    if (long(L_->e()) * vres < claimed)
      fail(Err::Internal, "element does not lie in the base field image");
  }
  return PadicElement::make(K_, std::move(x), y.raw_exp(), claimed, y.store());
}

PadicElement UnramifiedTower::norm(const PadicElement& y) const {
  PadicElement acc = y, cur = y;
  for (unsigned i = 1; i < d_; ++i) {
    cur = frobenius(cur);
    acc = acc * cur;
  }
  return project(acc);
}

}  // namespace psl
