#include "psl/residue.hpp"

#include <algorithm>

namespace psl {

const char* err_name(Err e) {
  switch (e) {
    case Err::EvenPrime: return "EvenPrime";
    case Err::NotPrime: return "NotPrime";
    case Err::NotEisenstein: return "NotEisenstein";
    case Err::PrecisionTooLow: return "PrecisionTooLow";
    case Err::FieldMismatch: return "FieldMismatch";
    case Err::DivisionByPrecisionZero: return "DivisionByPrecisionZero";
    case Err::ZeroValuation: return "ZeroValuation";
    case Err::RootOfZero: return "RootOfZero";
    case Err::NoPthRoots: return "NoPthRoots";
    case Err::PrecisionLoss: return "PrecisionLoss";
    case Err::PrecisionInsufficient: return "PrecisionInsufficient";
    case Err::NoMuP: return "NoMuP";
    case Err::DegenerateBasis: return "DegenerateBasis";
    case Err::NotAUnit: return "NotAUnit";
    case Err::TrivialKummer: return "TrivialKummer";
    case Err::DegeneratePairing: return "DegeneratePairing";
    case Err::SingularCurve: return "SingularCurve";
    case Err::NotMinimal: return "NotMinimal";
    case Err::TruncationTooSmall: return "TruncationTooSmall";
    case Err::NotGoodReduction: return "NotGoodReduction";
    case Err::NonIntegralTorsionValuation: return "NonIntegralTorsionValuation";
    case Err::NotSupersingular: return "NotSupersingular";
    case Err::AdditiveRefused: return "AdditiveRefused";
    case Err::NonsplitUnsupported: return "NonsplitUnsupported";
    case Err::NodeMismatch: return "NodeMismatch";
    case Err::EdgeMismatch: return "EdgeMismatch";
    case Err::NotANorm: return "NotANorm";
    case Err::PatternUnsupported: return "PatternUnsupported";
    case Err::RuleChainNotFound: return "RuleChainNotFound";
    case Err::SupersingularFirstArgument: return "SupersingularFirstArgument";
    case Err::UnsupportedReduction: return "UnsupportedReduction";
    case Err::HypothesisNotAsserted: return "HypothesisNotAsserted";
    case Err::ConfigParse: return "ConfigParse";
    case Err::Unclassified: return "Unclassified";
    case Err::Internal: return "Internal";
  }
  return "Unknown";
}

static long long gcd_ll(long long a, long long b) {
  while (b) {
    long long t = a % b;
    a = b;
    b = t;
  }
  return a < 0 ? -a : a;
}

Rational::Rational(long long n, long long d) : num(n), den(d) {
  if (den == 0) fail(Err::Internal, "rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  long long g = gcd_ll(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
}

std::string Rational::str() const {
  if (den == 1) return std::to_string(num);
  return std::to_string(num) + "/" + std::to_string(den);
}

unsigned fp_inv(unsigned a, unsigned p) {
  a %= p;
  if (a == 0) fail(Err::Internal, "inverse of zero mod p");
  unsigned r = 1, b = a, e = p - 2;
  while (e) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return r;
}

FpVec fp_add(const FpVec& a, const FpVec& b, unsigned p) {
  FpVec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = (a[i] + b[i]) % p;
  return r;
}

FpVec fp_scale(const FpVec& a, unsigned c, unsigned p) {
  FpVec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] * c % p;
  return r;
}

bool fp_is_zero(const FpVec& a) {
  for (unsigned x : a)
    if (x) return false;
  return true;
}

bool FpSpan::add(const FpVec& v) {
  if (v.size() != dim_) fail(Err::Internal, "FpSpan dimension mismatch");
  FpVec cur = v;
  FpVec combo(ngen_ + 1, 0);
  combo[ngen_] = 1;
  for (auto& c : combos_) c.push_back(0);
  ++ngen_;
  for (size_t r = 0; r < rows_.size(); ++r) {
    unsigned c = cur[pivots_[r]];
    if (c) {
      unsigned k = fp_neg(c, p_);
      for (size_t j = 0; j < dim_; ++j) cur[j] = (cur[j] + k * rows_[r][j]) % p_;
      for (size_t j = 0; j < combo.size(); ++j) combo[j] = (combo[j] + k * combos_[r][j]) % p_;
    }
  }
  size_t piv = dim_;
  for (size_t j = 0; j < dim_; ++j)
    if (cur[j]) {
      piv = j;
      break;
    }
  if (piv == dim_) return false;
  unsigned inv = fp_inv(cur[piv], p_);
  for (size_t j = 0; j < dim_; ++j) cur[j] = cur[j] * inv % p_;
  for (size_t j = 0; j < combo.size(); ++j) combo[j] = combo[j] * inv % p_;
  rows_.push_back(cur);
  combos_.push_back(combo);
  pivots_.push_back(piv);
  return true;
}

bool FpSpan::contains(const FpVec& v) const { return express(v).has_value(); }

std::optional<FpVec> FpSpan::express(const FpVec& v) const {
  if (v.size() != dim_) fail(Err::Internal, "FpSpan dimension mismatch");
  FpVec cur = v;
  FpVec coeffs(ngen_, 0);
  for (size_t r = 0; r < rows_.size(); ++r) {
    unsigned c = cur[pivots_[r]];
    if (c) {
      unsigned k = fp_neg(c, p_);
      for (size_t j = 0; j < dim_; ++j) cur[j] = (cur[j] + k * rows_[r][j]) % p_;
      // v = sum c * rows, rows = combos * gens
      for (size_t j = 0; j < ngen_ && j < combos_[r].size(); ++j)
        coeffs[j] = (coeffs[j] + c * combos_[r][j]) % p_;
    }
  }
  if (!fp_is_zero(cur)) return std::nullopt;
  return coeffs;
}

std::vector<FpVec> fp_kernel(const std::vector<FpVec>& rows, size_t dim, unsigned p) {
  std::vector<FpVec> m = rows;
  std::vector<size_t> pivot_of_col(dim, SIZE_MAX);
  size_t rank = 0;
  for (size_t col = 0; col < dim && rank < m.size(); ++col) {
    size_t sel = SIZE_MAX;
    for (size_t r = rank; r < m.size(); ++r)
      if (m[r][col]) {
        sel = r;
        break;
      }
    if (sel == SIZE_MAX) continue;
    std::swap(m[sel], m[rank]);
    unsigned inv = fp_inv(m[rank][col], p);
    for (size_t j = 0; j < dim; ++j) m[rank][j] = m[rank][j] * inv % p;
    for (size_t r = 0; r < m.size(); ++r) {
      if (r == rank || m[r][col] == 0) continue;
      unsigned k = fp_neg(m[r][col], p);
      for (size_t j = 0; j < dim; ++j) m[r][j] = (m[r][j] + k * m[rank][j]) % p;
    }
    pivot_of_col[col] = rank;
    ++rank;
  }
  std::vector<FpVec> basis;
  for (size_t col = 0; col < dim; ++col) {
    if (pivot_of_col[col] != SIZE_MAX) continue;
    FpVec v(dim, 0);
    v[col] = 1;
    for (size_t c2 = 0; c2 < dim; ++c2) {
      if (pivot_of_col[c2] == SIZE_MAX) continue;
      v[c2] = fp_neg(m[pivot_of_col[c2]][col], p);
    }
    basis.push_back(v);
  }
  return basis;
}

// --------------------------------------------------------------------------
// ResidueField
// --------------------------------------------------------------------------

namespace {

// polynomial helpers over F_p, coefficient vectors little-endian
std::vector<unsigned> poly_mod(std::vector<unsigned> a, const std::vector<unsigned>& m, unsigned p) {
  // m monic
  size_t dm = m.size() - 1;
  while (a.size() > dm) {
    unsigned lead = a.back();
    size_t shift = a.size() - 1 - dm;
    if (lead) {
      for (size_t i = 0; i <= dm; ++i) {
        unsigned sub = lead * m[i] % p;
        a[shift + i] = (a[shift + i] + p - sub) % p;
      }
    }
    a.pop_back();
  }
  return a;
}

std::vector<unsigned> poly_mulmod(const std::vector<unsigned>& a, const std::vector<unsigned>& b,
                                  const std::vector<unsigned>& m, unsigned p) {
  std::vector<unsigned> r(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
  return poly_mod(std::move(r), m, p);
}

std::vector<unsigned> poly_powmod(std::vector<unsigned> base, uint64_t e,
                                  const std::vector<unsigned>& m, unsigned p) {
  std::vector<unsigned> r{1};
  base = poly_mod(std::move(base), m, p);
  while (e) {
    if (e & 1) r = poly_mulmod(r, base, m, p);
    base = poly_mulmod(base, base, m, p);
    e >>= 1;
  }
  return r;
}

bool poly_is_x(const std::vector<unsigned>& a) {
  if (a.size() < 2) return false;
  if (a[0] != 0 || a[1] != 1) return false;
  for (size_t i = 2; i < a.size(); ++i)
    if (a[i]) return false;
  return true;
}

void poly_trim(std::vector<unsigned>& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

std::vector<unsigned> poly_gcd(std::vector<unsigned> a, std::vector<unsigned> b, unsigned p) {
  poly_trim(a);
  poly_trim(b);
  while (!b.empty()) {
    // make b monic and reduce a mod b
    unsigned inv = fp_inv(b.back(), p);
    std::vector<unsigned> bm = b;
    for (auto& c : bm) c = c * inv % p;
    a = poly_mod(std::move(a), bm, p);
    poly_trim(a);
    std::swap(a, b);
  }
  return a;
}

bool irreducible(const std::vector<unsigned>& g, unsigned p) {
  // x^(p^f) == x mod g, and gcd(x^(p^(f/l)) - x, g) = 1 for prime l | f
  size_t f = g.size() - 1;
  auto powp = [&](size_t k) {
    std::vector<unsigned> r{0, 1};
    for (size_t i = 0; i < k; ++i) r = poly_powmod(r, p, g, p);
    std::vector<unsigned> full(std::max<size_t>(f, 2), 0);
    for (size_t j = 0; j < r.size() && j < f; ++j) full[j] = r[j];
    return full;
  };
  if (!poly_is_x(powp(f))) return false;
  for (size_t l = 2; l <= f; ++l) {
    if (f % l) continue;
    bool prime = true;
    for (size_t d = 2; d * d <= l; ++d)
      if (l % d == 0) prime = false;
    if (!prime) continue;
    std::vector<unsigned> diff = powp(f / l);
    diff[1] = (diff[1] + p - 1) % p;
    poly_trim(diff);
    auto gc = poly_gcd(g, diff, p);
    if (gc.size() != 1) return false;
  }
  return true;
}

}  // namespace

std::vector<unsigned> least_irreducible(unsigned p, unsigned f) {
  if (f == 1) return {0, 1};  // w itself: residue field is F_p
  uint64_t bound = 1;
  for (unsigned i = 0; i < f; ++i) bound *= p;
  for (uint64_t n = 0; n < bound; ++n) {
    std::vector<unsigned> g(f + 1, 0);
    uint64_t t = n;
    for (unsigned i = 0; i < f; ++i) {
      g[i] = unsigned(t % p);
      t /= p;
    }
    g[f] = 1;
    if (irreducible(g, p)) return g;
  }
  fail(Err::Internal, "no irreducible polynomial found");
}

ResidueField::ResidueField(unsigned p, unsigned f) : p_(p), f_(f) {
  q_ = 1;
  for (unsigned i = 0; i < f; ++i) q_ *= p;
  g_ = least_irreducible(p, f);
}

FqElem ResidueField::one() const {
  FqElem a(f_, 0);
  a[0] = 1;
  return a;
}

FqElem ResidueField::gen() const {
  FqElem a(f_, 0);
  if (f_ > 1) a[1] = 1;
  return a;
}

FqElem ResidueField::from_index(uint64_t idx) const {
  FqElem a(f_, 0);
  for (unsigned i = 0; i < f_; ++i) {
    a[i] = unsigned(idx % p_);
    idx /= p_;
  }
  return a;
}

uint64_t ResidueField::index(const FqElem& a) const {
  uint64_t idx = 0, mult = 1;
  for (unsigned i = 0; i < f_; ++i) {
    idx += a[i] * mult;
    mult *= p_;
  }
  return idx;
}

bool ResidueField::is_zero(const FqElem& a) const { return fp_is_zero(a); }

FqElem ResidueField::add(const FqElem& a, const FqElem& b) const { return fp_add(a, b, p_); }

FqElem ResidueField::sub(const FqElem& a, const FqElem& b) const {
  FqElem r(f_);
  for (unsigned i = 0; i < f_; ++i) r[i] = (a[i] + p_ - b[i]) % p_;
  return r;
}

FqElem ResidueField::neg(const FqElem& a) const {
  FqElem r(f_);
  for (unsigned i = 0; i < f_; ++i) r[i] = fp_neg(a[i], p_);
  return r;
}

FqElem ResidueField::reduce(std::vector<unsigned> raw) const {
  raw = poly_mod(std::move(raw), g_, p_);
  raw.resize(f_, 0);
  return raw;
}

FqElem ResidueField::mul(const FqElem& a, const FqElem& b) const {
  std::vector<unsigned> r(2 * f_ - 1, 0);
  for (unsigned i = 0; i < f_; ++i)
    for (unsigned j = 0; j < f_; ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p_;
  return reduce(std::move(r));
}

FqElem ResidueField::pow(const FqElem& a, uint64_t n) const {
  FqElem r = one(), b = a;
  while (n) {
    if (n & 1) r = mul(r, b);
    b = mul(b, b);
    n >>= 1;
  }
  return r;
}

FqElem ResidueField::inv(const FqElem& a) const {
  if (is_zero(a)) fail(Err::Internal, "inverse of zero residue");
  return pow(a, q_ - 2);
}

FqElem ResidueField::frobenius_inverse(const FqElem& a) const {
  // x -> x^p is bijective; inverse is x -> x^(p^(f-1)).
  FqElem r = a;
  for (unsigned i = 0; i + 1 < f_; ++i) r = frobenius(r);
  return r;
}

int ResidueField::chi(const FqElem& a) const {
  if (is_zero(a)) return 0;
  FqElem t = pow(a, (q_ - 1) / 2);
  return t == one() ? 1 : -1;
}

std::vector<FpVec> ResidueField::artin_schreier_matrix(const FqElem& a) const {
  // rows are images in the w-power basis: column i holds sigma(w^i).
  std::vector<FpVec> cols;
  for (unsigned i = 0; i < f_; ++i) {
    FqElem wi(f_, 0);
    wi[i] = 1;
    FqElem img = add(pow(wi, p_), mul(a, wi));
    cols.push_back(img);
  }
  // transpose to rows
  std::vector<FpVec> rows(f_, FpVec(f_, 0));
  for (unsigned i = 0; i < f_; ++i)
    for (unsigned j = 0; j < f_; ++j) rows[j][i] = cols[i][j];
  return rows;
}

// ----- polynomial root finding over F_q --------------------------------------

namespace {

using FqPoly = std::vector<FqElem>;  // constant term first

void fqp_trim(const ResidueField& fq, FqPoly& a) {
  while (!a.empty() && fq.is_zero(a.back())) a.pop_back();
}

FqPoly fqp_monic(const ResidueField& fq, FqPoly a) {
  fqp_trim(fq, a);
  if (a.empty()) return a;
  FqElem inv = fq.inv(a.back());
  for (auto& c : a) c = fq.mul(c, inv);
  return a;
}

// remainder of a modulo m (m monic, nonzero)
FqPoly fqp_mod(const ResidueField& fq, FqPoly a, const FqPoly& m) {
  fqp_trim(fq, a);
  size_t dm = m.size() - 1;
  while (a.size() > dm) {
    FqElem lead = a.back();
    size_t shift = a.size() - 1 - dm;
    if (!fq.is_zero(lead))
      for (size_t i = 0; i <= dm; ++i)
        a[shift + i] = fq.sub(a[shift + i], fq.mul(lead, m[i]));
    a.pop_back();
    fqp_trim(fq, a);
    if (a.size() <= dm) break;
  }
  return a;
}

FqPoly fqp_mulmod(const ResidueField& fq, const FqPoly& a, const FqPoly& b, const FqPoly& m) {
  if (a.empty() || b.empty()) return {};
  FqPoly r(a.size() + b.size() - 1, fq.zero());
  for (size_t i = 0; i < a.size(); ++i) {
    if (fq.is_zero(a[i])) continue;
    for (size_t j = 0; j < b.size(); ++j) r[i + j] = fq.add(r[i + j], fq.mul(a[i], b[j]));
  }
  return fqp_mod(fq, std::move(r), m);
}

FqPoly fqp_powmod(const ResidueField& fq, FqPoly base, uint64_t e, const FqPoly& m) {
  FqPoly r = {fq.one()};
  base = fqp_mod(fq, std::move(base), m);
  while (e) {
    if (e & 1) r = fqp_mulmod(fq, r, base, m);
    base = fqp_mulmod(fq, base, base, m);
    e >>= 1;
  }
  return r;
}

FqPoly fqp_gcd(const ResidueField& fq, FqPoly a, FqPoly b) {
  fqp_trim(fq, a);
  fqp_trim(fq, b);
  while (!b.empty()) {
    FqPoly r = fqp_mod(fq, a, fqp_monic(fq, b));
    a = std::move(b);
    b = std::move(r);
    fqp_trim(fq, b);
  }
  return fqp_monic(fq, a);
}

// exact quotient a / d for monic d dividing a
FqPoly fqp_divexact(const ResidueField& fq, FqPoly a, const FqPoly& dmon) {
  fqp_trim(fq, a);
  if (a.size() < dmon.size()) return {};
  FqPoly q(a.size() - dmon.size() + 1, fq.zero());
  for (size_t shift = a.size() - dmon.size() + 1; shift-- > 0;) {
    FqElem c = a[shift + dmon.size() - 1];
    q[shift] = c;
    if (!fq.is_zero(c))
      for (size_t i = 0; i < dmon.size(); ++i)
        a[shift + i] = fq.sub(a[shift + i], fq.mul(c, dmon[i]));
  }
  return q;
}

// all roots of a squarefree product of linear factors, by deterministic
// splitting with (X + c)^((q-1)/2)
void fqp_split_linear(const ResidueField& fq, const FqPoly& ell, std::vector<FqElem>& out) {
  FqPoly g = fqp_monic(fq, ell);
  if (g.empty() || g.size() == 1) return;
  if (g.size() == 2) {
    out.push_back(fq.neg(g[0]));
    return;
  }
  for (uint64_t ci = 0;; ++ci) {
    if (ci >= fq.q()) fail(Err::Internal, "linear-factor splitting failed");
    FqPoly xc = {fq.from_index(ci), fq.one()};
    FqPoly s = fqp_powmod(fq, xc, (fq.q() - 1) / 2, g);
    if (s.empty())
      s = {fq.neg(fq.one())};
    else
      s[0] = fq.sub(s[0], fq.one());
    fqp_trim(fq, s);
    if (s.empty()) continue;  // all roots on the same side
    FqPoly d = fqp_gcd(fq, s, g);
    if (d.size() <= 1 || d.size() >= g.size()) continue;
    FqPoly rest = fqp_divexact(fq, g, d);
    fqp_split_linear(fq, d, out);
    fqp_split_linear(fq, rest, out);
    return;
  }
}

}  // namespace

std::vector<FqElem> fq_poly_roots(const ResidueField& fq, std::vector<FqElem> g) {
  fqp_trim(fq, g);
  std::vector<FqElem> roots;
  if (g.empty() || g.size() == 1) return roots;
  if (fq.q() <= 2048) {
    for (uint64_t ix = 0; ix < fq.q(); ++ix) {
      FqElem x = fq.from_index(ix);
      FqElem v = fq.zero();
      for (size_t d = g.size(); d-- > 0;) v = fq.add(fq.mul(v, x), g[d]);
      if (fq.is_zero(v)) roots.push_back(x);
    }
    return roots;
  }
  FqPoly gm = fqp_monic(fq, g);
  // X^q mod g, then the linear-factor part gcd(X^q - X, g)
  FqPoly xq = fqp_powmod(fq, {fq.zero(), fq.one()}, fq.q(), gm);
  FqPoly diff = xq;
  if (diff.size() < 2) diff.resize(2, fq.zero());
  diff[1] = fq.sub(diff[1], fq.one());
  FqPoly ell = fqp_gcd(fq, diff, gm);
  if (ell.size() >= 2) fqp_split_linear(fq, ell, roots);
  std::sort(roots.begin(), roots.end(),
            [&](const FqElem& a, const FqElem& b) { return fq.index(a) < fq.index(b); });
  return roots;
}

std::string ResidueField::str(const FqElem& a) const {
  std::string s;
  bool first = true;
  for (unsigned i = 0; i < f_; ++i) {
    if (!a[i]) continue;
    if (!first) s += "+";
    first = false;
    if (i == 0 || a[i] != 1) s += std::to_string(a[i]);
    if (i >= 1) {
      if (a[i] != 1) s += "*";
      s += "w";
      if (i > 1) s += "^" + std::to_string(i);
    }
  }
  if (first) s = "0";
  return s;
}

}  // namespace psl
