#include "psl/padic.hpp"

#include <algorithm>
#include <climits>
#include <sstream>

namespace psl {

namespace {

constexpr long kInfVal = LONG_MAX / 4;

bool is_prime(unsigned n) {
  if (n < 2) return false;
  for (unsigned d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

inline uint64_t mulmod(uint64_t a, uint64_t b, uint64_t m) {
  return (uint64_t)((unsigned __int128)a * b % m);
}

long long vp_of(long long n, unsigned p) {
  if (n == 0) return -1;
  long long v = 0;
  while (n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

}  // namespace

// ---------------------------------------------------------------------------
// PadicField
// ---------------------------------------------------------------------------

FieldPtr PadicField::make(unsigned p, unsigned f, std::vector<long long> eisenstein,
                          long precision) {
  if (p == 2) fail(Err::EvenPrime, "p = 2 is outside the supported range");
  if (!is_prime(p)) fail(Err::NotPrime, "p = " + std::to_string(p));
  if (f < 1) fail(Err::NotEisenstein, "unramified degree must be >= 1");
  if (eisenstein.size() < 2) fail(Err::NotEisenstein, "polynomial must have degree >= 1");
  if (eisenstein.back() != 1) fail(Err::NotEisenstein, "polynomial must be monic");
  unsigned e = unsigned(eisenstein.size() - 1);
  for (unsigned i = 0; i < e; ++i) {
    if (eisenstein[i] % (long long)p != 0)
      fail(Err::NotEisenstein, "coefficient of X^" + std::to_string(i) + " not divisible by p");
  }
  if ((eisenstein[0] / (long long)p) % (long long)p == 0)
    fail(Err::NotEisenstein, "constant term has p-valuation > 1");
  return FieldPtr(new PadicField(p, f, std::move(eisenstein), precision));
}

PadicField::PadicField(unsigned p, unsigned f, std::vector<long long> eis, long precision)
    : p_(p), f_(f), e_(unsigned(eis.size() - 1)), eis_(std::move(eis)), fq_(p, f) {
  // default absolute precision: ceil(3*p*e0) + 8
  long defN = (3L * p_ * e_ + (p_ - 2)) / (p_ - 1) + 8;
  N_ = precision < 0 ? defN : precision;
  // require N >= p*e0 + 2, i.e. N(p-1) >= p*e + 2(p-1)
  if (N_ * long(p_ - 1) < long(p_) * long(e_) + 2L * (p_ - 1))
    fail(Err::PrecisionTooLow, "precision " + std::to_string(N_) + " below p*e0 + 2");

  unsigned base = unsigned((N_ + e_ - 1) / e_);
  unsigned M = 2 * base + 12;
  unsigned maxd = 0;
  {
    uint64_t lim = (uint64_t)1 << 62;
    uint64_t acc = 1;
    while (acc <= lim / p_) {
      acc *= p_;
      ++maxd;
    }
  }
  if (M > maxd) M = maxd;
  M_ = M;
  if ((long)e_ * (long)M_ < N_ + 2L * e_)
    fail(Err::PrecisionTooLow, "requested precision exceeds 64-bit coefficient storage");
  mod_ = 1;
  for (unsigned i = 0; i < M_; ++i) mod_ *= p_;
  dim_ = size_t(e_) * f_;

  eis_mod_.resize(e_ + 1);
  for (unsigned i = 0; i <= e_; ++i) eis_mod_[i] = mod_reduce(eis_[i]);

  std::ostringstream k;
  k << "p=" << p_ << ",f=" << f_ << ",eis=[";
  for (size_t i = 0; i < eis_.size(); ++i) k << (i ? "," : "") << eis_[i];
  k << "],N=" << N_;
  key_ = k.str();

  // B = -pi^e / p = (c0 + c1 pi + ... + c_{e-1} pi^{e-1}) / p, exact integers.
  b_ = fzero();
  for (unsigned i = 0; i < e_; ++i) b_[size_t(i) * f_] = mod_reduce(eis_[i] / (long long)p_);
  binv_ = funit_inv(b_);
  teich_cache_.assign(size_t(fq_.q()), Flat());
}

uint64_t PadicField::mod_reduce(long long v) const {
  long long m = (long long)mod_;
  long long r = v % m;
  if (r < 0) r += m;
  return (uint64_t)r;
}

bool PadicField::same_field(const PadicField& o) const { return this == &o || key_ == o.key_; }

long PadicField::pe0() const {
  if (!e0_integral()) fail(Err::NoMuP, "e0 = " + e0().str() + " is not an integer");
  return long(p_) * long(e_ / (p_ - 1));
}

std::string PadicField::to_json() const {
  std::ostringstream o;
  o << "{\"p\": " << p_ << ", \"f\": " << f_ << ", \"eisenstein\": [";
  for (size_t i = 0; i < eis_.size(); ++i) o << (i ? ", " : "") << eis_[i];
  o << "], \"precision\": " << N_ << "}";
  return o.str();
}

// ----- flat kernel ---------------------------------------------------------

Flat PadicField::fone() const {
  Flat a = fzero();
  a[0] = 1;
  return a;
}

Flat PadicField::fint(long long n) const {
  Flat a = fzero();
  a[0] = mod_reduce(n);
  return a;
}

Flat PadicField::flift(const FqElem& r) const {
  Flat a = fzero();
  for (unsigned j = 0; j < f_; ++j) a[j] = r[j];
  return a;
}

Flat PadicField::fadd(const Flat& a, const Flat& b) const {
  Flat r(dim_);
  for (size_t i = 0; i < dim_; ++i) {
    uint64_t s = a[i] + b[i];
    r[i] = s >= mod_ ? s - mod_ : s;
  }
  return r;
}

Flat PadicField::fsub(const Flat& a, const Flat& b) const {
  Flat r(dim_);
  for (size_t i = 0; i < dim_; ++i) r[i] = a[i] >= b[i] ? a[i] - b[i] : a[i] + mod_ - b[i];
  return r;
}

Flat PadicField::fneg(const Flat& a) const {
  Flat r(dim_);
  for (size_t i = 0; i < dim_; ++i) r[i] = a[i] ? mod_ - a[i] : 0;
  return r;
}

Flat PadicField::fscale(const Flat& a, long long k) const {
  uint64_t km = mod_reduce(k);
  Flat r(dim_);
  for (size_t i = 0; i < dim_; ++i) r[i] = mulmod(a[i], km, mod_);
  return r;
}

// reduce a raw coefficient grid (rows = pi-degree, cols = w-degree) into the
// canonical pi-degree < e, w-degree < f representation
Flat PadicField::fmul(const Flat& a, const Flat& b) const {
  size_t rows = 2 * e_ - 1, cols = 2 * f_ - 1;
  std::vector<uint64_t> tmp(rows * cols, 0);
  for (unsigned i1 = 0; i1 < e_; ++i1)
    for (unsigned j1 = 0; j1 < f_; ++j1) {
      uint64_t x = a[size_t(i1) * f_ + j1];
      if (!x) continue;
      for (unsigned i2 = 0; i2 < e_; ++i2)
        for (unsigned j2 = 0; j2 < f_; ++j2) {
          uint64_t y = b[size_t(i2) * f_ + j2];
          if (!y) continue;
          size_t idx = size_t(i1 + i2) * cols + (j1 + j2);
          tmp[idx] = (tmp[idx] + mulmod(x, y, mod_)) % mod_;
        }
    }
  // fold w-degrees >= f using the monic residue modulus
  const auto& g = fq_.modulus();
  for (size_t i = 0; i < rows; ++i)
    for (size_t j = cols; j-- > f_;) {
      uint64_t c = tmp[i * cols + j];
      if (!c) continue;
      tmp[i * cols + j] = 0;
      for (unsigned k = 0; k < f_; ++k) {
        if (!g[k]) continue;
        uint64_t sub = mulmod(c, g[k], mod_);
        size_t idx = i * cols + (j - f_ + k);
        tmp[idx] = (tmp[idx] + mod_ - sub) % mod_;
      }
    }
  // fold pi-degrees >= e using the Eisenstein polynomial
  for (size_t i = rows; i-- > e_;) {
    for (unsigned j = 0; j < f_; ++j) {
      uint64_t c = tmp[i * cols + j];
      if (!c) continue;
      tmp[i * cols + j] = 0;
      for (unsigned k = 0; k < e_; ++k) {
        if (!eis_mod_[k]) continue;
        uint64_t sub = mulmod(c, eis_mod_[k], mod_);
        size_t idx = (i - e_ + k) * cols + j;
        tmp[idx] = (tmp[idx] + mod_ - sub) % mod_;
      }
    }
  }
  Flat r(dim_);
  for (unsigned i = 0; i < e_; ++i)
    for (unsigned j = 0; j < f_; ++j) r[size_t(i) * f_ + j] = tmp[i * cols + j];
  return r;
}

Flat PadicField::fshift_pi(const Flat& a, unsigned r) const {
  Flat cur = a;
  // pi^e = -p * B, so e steps at a time cost one multiplication by B and p
  while (r >= e_) {
    cur = fscale(fmul(cur, b_), -(long long)p_);
    r -= e_;
  }
  if (r == 0) return cur;
  size_t rows = e_ + r;
  std::vector<uint64_t> tmp(rows * f_, 0);
  for (unsigned i = 0; i < e_; ++i)
    for (unsigned j = 0; j < f_; ++j) tmp[size_t(i + r) * f_ + j] = cur[size_t(i) * f_ + j];
  for (size_t i = rows; i-- > e_;)
    for (unsigned j = 0; j < f_; ++j) {
      uint64_t c = tmp[i * f_ + j];
      if (!c) continue;
      tmp[i * f_ + j] = 0;
      for (unsigned k = 0; k < e_; ++k) {
        if (!eis_mod_[k]) continue;
        uint64_t sub = mulmod(c, eis_mod_[k], mod_);
        size_t idx = (i - e_ + k) * f_ + j;
        tmp[idx] = (tmp[idx] + mod_ - sub) % mod_;
      }
    }
  Flat out(dim_);
  for (unsigned i = 0; i < e_; ++i)
    for (unsigned j = 0; j < f_; ++j) out[size_t(i) * f_ + j] = tmp[size_t(i) * f_ + j];
  return out;
}

Flat PadicField::fpow(Flat a, uint64_t n) const {
  Flat r = fone();
  while (n) {
    if (n & 1) r = fmul(r, a);
    a = fmul(a, a);
    n >>= 1;
  }
  return r;
}

long PadicField::fval(const Flat& a) const {
  long best = kInfVal;
  for (unsigned i = 0; i < e_; ++i)
    for (unsigned j = 0; j < f_; ++j) {
      uint64_t c = a[size_t(i) * f_ + j];
      if (!c) continue;
      long vp = 0;
      while (c % p_ == 0) {
        c /= p_;
        ++vp;
      }
      best = std::min(best, long(i) + long(e_) * vp);
    }
  return best;
}

Flat PadicField::ftrunc(const Flat& a, long r) const {
  Flat out(dim_, 0);
  if (r <= 0) return out;
  for (unsigned i = 0; i < e_; ++i) {
    long k = r - long(i);
    if (k <= 0) continue;
    long m = (k + e_ - 1) / e_;
    uint64_t pm = mod_;
    if (m < (long)M_) {
      pm = 1;
      for (long t = 0; t < m; ++t) pm *= p_;
    }
    for (unsigned j = 0; j < f_; ++j) out[size_t(i) * f_ + j] = a[size_t(i) * f_ + j] % pm;
  }
  return out;
}

FqElem PadicField::fresidue(const Flat& a) const {
  FqElem r(f_);
  for (unsigned j = 0; j < f_; ++j) r[j] = unsigned(a[j] % p_);
  return r;
}

Flat PadicField::funit_inv(const Flat& a) const {
  FqElem r0 = fresidue(a);
  if (fq_.is_zero(r0)) fail(Err::Internal, "unit inverse of a non-unit");
  Flat z = flift(fq_.inv(r0));
  Flat two = fint(2);
  unsigned iters = 1;
  while ((1u << iters) < M_ + 1) ++iters;
  for (unsigned i = 0; i <= iters; ++i) z = fmul(z, fsub(two, fmul(a, z)));
  return z;
}

Flat PadicField::fdiv_pi(const Flat& a, long d, unsigned& consumed) const {
  consumed = 0;
  if (d <= 0) return a;
  long q = (d + e_ - 1) / e_;
  unsigned r = unsigned(q * e_ - d);
  Flat y = r ? fshift_pi(a, r) : a;
  y = fmul(y, fpow(binv_, uint64_t(q)));
  if (q & 1) y = fneg(y);
  uint64_t pq = 1;
  for (long t = 0; t < q; ++t) pq *= p_;
  for (size_t i = 0; i < dim_; ++i) {
    if (y[i] % pq != 0)
      fail(Err::Internal, "pi-division applied to a value of insufficient valuation");
    y[i] /= pq;
  }
  consumed = unsigned(q);
  return y;
}

// ----- element factories ---------------------------------------------------

PadicElement PadicElement::make_zero(const FieldPtr& F, long absprec) {
  PadicElement x;
  x.F_ = F;
  x.zero_ = true;
  x.val_ = absprec;
  return x;
}

PadicElement PadicElement::make(const FieldPtr& F, Flat raw, long base, long claimed,
                                unsigned store) {
  long e = long(F->e());
  claimed = std::min(claimed, e * long(store));
  if (claimed <= 0) return make_zero(F, base);
  long t = F->fval(raw);
  if (t >= claimed) return make_zero(F, base + claimed);
  unsigned consumed = 0;
  long k = t / e;
  Flat u = k > 0 ? F->fdiv_pi(raw, k * e, consumed) : std::move(raw);
  PadicElement x;
  x.F_ = F;
  x.zero_ = false;
  x.val_ = base + t;
  x.off_ = unsigned(t - k * e);
  x.store_ = store - consumed;
  x.rel_ = std::min(claimed - t, e * long(x.store_) - long(x.off_));
  x.rel_ = std::min(x.rel_, F->precision() + e);
  if (x.rel_ <= 0)
    fail(Err::PrecisionLoss, "coefficient storage exhausted while normalizing");
  x.u_ = std::move(u);
  return x;
}

PadicElement PadicField::zero() const {
  return PadicElement::make_zero(shared_from_this(), N_);
}

PadicElement PadicField::one() const { return from_int(1); }

PadicElement PadicField::from_int(long long n) const {
  FieldPtr self = shared_from_this();
  if (n == 0) return PadicElement::make_zero(self, N_);
  return PadicElement::make(self, fint(n), 0, N_ + long(e_) * vp_of(n, p_), M_);
}

PadicElement PadicField::uniformizer() const {
  PadicElement x;
  x.F_ = shared_from_this();
  x.zero_ = false;
  x.val_ = 1;
  x.rel_ = N_;
  x.store_ = M_;
  x.u_ = fone();
  return x;
}

PadicElement PadicField::from_residue(const FqElem& r) const {
  return PadicElement::make(shared_from_this(), flift(r), 0, N_, M_);
}

PadicElement PadicField::from_pi_poly(const std::vector<long long>& digits) const {
  Flat acc = fzero();
  for (size_t k = 0; k < digits.size(); ++k) {
    if (!digits[k]) continue;
    Flat term = fshift_pi(fint(digits[k]), unsigned(k));
    acc = fadd(acc, term);
  }
  return PadicElement::make(shared_from_this(), acc, 0, N_, M_);
}

PadicElement PadicField::teichmuller(const FqElem& r) const {
  if (fq_.is_zero(r)) fail(Err::ZeroValuation, "Teichmuller lift of zero residue");
  uint64_t idx = fq_.index(r);
  {
    std::lock_guard<std::mutex> lk(teich_mu_);
    if (!teich_cache_[idx].empty()) {
      PadicElement x;
      x.F_ = shared_from_this();
      x.zero_ = false;
      x.val_ = 0;
      x.rel_ = N_;
      x.store_ = M_;
      x.u_ = teich_cache_[idx];
      return x;
    }
  }
  Flat x = flift(r);
  for (unsigned i = 0; i <= M_; ++i) x = fpow(x, fq_.q());
  {
    std::lock_guard<std::mutex> lk(teich_mu_);
    teich_cache_[idx] = x;
  }
  PadicElement out;
  out.F_ = shared_from_this();
  out.zero_ = false;
  out.val_ = 0;
  out.rel_ = N_;
  out.store_ = M_;
  out.u_ = std::move(x);
  return out;
}

// ---------------------------------------------------------------------------
// PadicElement
// ---------------------------------------------------------------------------

void PadicElement::check_same(const PadicElement& o) const {
  if (!F_ || !o.F_) fail(Err::FieldMismatch, "uninitialized element");
  if (!F_->same_field(*o.F_)) fail(Err::FieldMismatch, F_->key() + " vs " + o.F_->key());
}

long PadicElement::valuation() const {
  if (zero_) fail(Err::ZeroValuation, "element indistinguishable from zero at precision");
  return val_;
}

FqElem PadicElement::unit_residue() const {
  if (zero_) fail(Err::ZeroValuation, "residue of zero");
  // the pi^off row of the raw flat reduces to the residue of the logical
  // unit: every fold-down of higher pi powers lands in p-multiples
  FqElem r(F_->f());
  for (unsigned j = 0; j < F_->f(); ++j)
    r[j] = unsigned(u_[size_t(off_) * F_->f() + j] % F_->p());
  return r;
}

FqElem PadicElement::residue() const {
  if (zero_ || val_ != 0) fail(Err::NotAUnit, "residue requires valuation 0");
  return unit_residue();
}

PadicElement PadicElement::operator+(const PadicElement& o) const {
  check_same(o);
  if (zero_ && o.zero_) return make_zero(F_, std::min(val_, o.val_));
  if (zero_ || o.zero_) {
    const PadicElement& z = zero_ ? *this : o;
    const PadicElement& x = zero_ ? o : *this;
    long P = std::min(z.val_, x.abs_precision());
    if (x.val_ >= P) return make_zero(F_, P);
    PadicElement r = x;
    r.rel_ = P - x.val_;
    return r;
  }
  long r1 = raw_exp(), r2 = o.raw_exp();
  long rmin = std::min(r1, r2);
  Flat ua = r1 > rmin ? F_->fshift_pi(u_, unsigned(r1 - rmin)) : u_;
  Flat ub = r2 > rmin ? F_->fshift_pi(o.u_, unsigned(r2 - rmin)) : o.u_;
  long claimed = std::min(abs_precision(), o.abs_precision()) - rmin;
  return make(F_, F_->fadd(ua, ub), rmin, claimed, std::min(store_, o.store_));
}

PadicElement PadicElement::operator-() const {
  if (zero_) return *this;
  PadicElement r = *this;
  r.u_ = F_->fneg(u_);
  return r;
}

PadicElement PadicElement::operator-(const PadicElement& o) const { return *this + (-o); }

PadicElement PadicElement::operator*(const PadicElement& o) const {
  check_same(o);
  if (zero_ || o.zero_) return make_zero(F_, val_ + o.val_);
  Flat u = F_->fmul(u_, o.u_);
  long t = long(off_) + long(o.off_);
  unsigned consumed = 0;
  if (t >= long(F_->e())) {
    u = F_->fdiv_pi(u, long(F_->e()), consumed);
    t -= long(F_->e());
  }
  PadicElement r;
  r.F_ = F_;
  r.zero_ = false;
  r.val_ = val_ + o.val_;
  r.off_ = unsigned(t);
  r.store_ = std::min(store_, o.store_) - consumed;
  r.rel_ = std::min(rel_, o.rel_);
  r.rel_ = std::min(r.rel_, long(F_->e()) * long(r.store_) - long(r.off_));
  if (r.rel_ <= 0) fail(Err::PrecisionLoss, "coefficient storage exhausted in multiplication");
  r.u_ = u;
  return r;
}

PadicElement PadicElement::inv() const {
  if (zero_) fail(Err::DivisionByPrecisionZero, "inverse of zero at precision");
  Flat unit = u_;
  unsigned store = store_;
  if (off_ > 0) {
    unsigned consumed = 0;
    unit = F_->fdiv_pi(unit, long(off_), consumed);
    store -= consumed;
  }
  PadicElement r;
  r.F_ = F_;
  r.zero_ = false;
  r.val_ = -val_;
  r.off_ = 0;
  r.store_ = store;
  r.rel_ = std::min(rel_, long(F_->e()) * long(store));
  if (r.rel_ <= 0) fail(Err::PrecisionLoss, "coefficient storage exhausted in inversion");
  r.u_ = F_->funit_inv(unit);
  return r;
}

PadicElement PadicElement::pow(long long n) const {
  if (n < 0) return inv().pow(-n);
  if (n == 0) return F_->one();
  if (zero_) return make_zero(F_, val_ * n);
  PadicElement base = *this, r = F_->one();
  unsigned long long m = (unsigned long long)n;
  while (m) {
    if (m & 1) r = r * base;
    if (m >>= 1) base = base * base;
  }
  return r;
}

PadicElement PadicElement::mul_int(long long k) const {
  if (zero_) return *this;
  if (k == 0) return make_zero(F_, abs_precision());
  long extra = long(F_->e()) * vp_of(k, F_->p());
  return make(F_, F_->fscale(u_, k), raw_exp(), long(off_) + rel_ + extra, store_);
}

PadicElement PadicElement::shift(long k) const {
  PadicElement r = *this;
  r.val_ += k;
  return r;
}

PadicElement PadicElement::clamp_rel(long r) const {
  if (zero_) return *this;
  if (r <= 0) return make_zero(F_, val_);
  PadicElement x = *this;
  x.rel_ = std::min(x.rel_, r);
  return x;
}

bool PadicElement::operator==(const PadicElement& o) const {
  check_same(o);
  PadicElement d = *this - o;
  return d.zero_;
}

bool PadicElement::equal_mod(const PadicElement& o, long prec) const {
  check_same(o);
  PadicElement d = *this - o;
  if (d.zero_) return d.val_ >= prec;
  return d.val_ >= prec;
}

std::vector<FqElem> PadicElement::digits(size_t n) const {
  std::vector<FqElem> out;
  if (zero_) {
    out.assign(n, F_->residue_field().zero());
    return out;
  }
  // materialize the logical unit once, then peel digit by digit
  Flat t = u_;
  unsigned consumed = 0;
  if (off_ > 0) t = F_->fdiv_pi(t, long(off_), consumed);
  long avail = std::min(rel_, long(F_->e()) * long(store_ - consumed));
  for (size_t k = 0; k < n; ++k) {
    if (avail <= 0) break;
    FqElem d = F_->fresidue(t);
    out.push_back(d);
    t = F_->fsub(t, F_->flift(d));
    if (F_->fval(t) >= avail) {
      for (size_t k2 = k + 1; k2 < n; ++k2) out.push_back(F_->residue_field().zero());
      return out;
    }
    unsigned c2 = 0;
    t = F_->fdiv_pi(t, 1, c2);
    avail -= 1;
  }
  return out;
}

std::string PadicElement::str(size_t ndigits) const {
  if (zero_) return "O(pi^" + std::to_string(val_) + ")";
  const auto& fq = F_->residue_field();
  auto ds = digits(ndigits);
  std::ostringstream s;
  if (val_ != 0) s << "pi^" << val_ << "*(";
  bool first = true;
  for (size_t k = 0; k < ds.size(); ++k) {
    if (fq.is_zero(ds[k])) continue;
    if (!first) s << " + ";
    first = false;
    bool paren = ds[k].size() > 1 && std::count_if(ds[k].begin(), ds[k].end(),
                                                   [](unsigned c) { return c != 0; }) > 1;
    std::string cs = fq.str(ds[k]);
    if (k == 0)
      s << cs;
    else {
      if (paren)
        s << "(" << cs << ")";
      else if (cs != "1")
        s << cs << "*";
      s << "pi";
      if (k > 1) s << "^" << k;
    }
  }
  if (first) s << "0";
  s << " + O(pi^" << std::min<long>(rel_, long(ndigits)) << ")";
  if (val_ != 0) s << ")";
  return s.str();
}

PadicElement operator*(long long k, const PadicElement& x) { return x.mul_int(k); }

}  // namespace psl
