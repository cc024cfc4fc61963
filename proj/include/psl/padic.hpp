#pragma once

#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "psl/common.hpp"
#include "psl/residue.hpp"

namespace psl {

class PadicField;
class PadicElement;

using FieldPtr = std::shared_ptr<const PadicField>;

// Flat coordinates of an integral element: index i*f + j holds the
// coefficient of pi^i * w^j, an integer mod p^M. {pi^i w^j} is an integral
// basis for the two-stage tower (unramified stage Z_p[w]/(g), then the
// Eisenstein stage), so valuations read off exactly:
//   v(sum a_ij pi^i w^j) = min_ij (i + e * v_p(a_ij)).
using Flat = std::vector<uint64_t>;

// A finite extension of Q_p presented as an unramified stage of degree f
// (defined by the lexicographically least irreducible polynomial, lifted with
// coefficients in [0,p)) followed by an Eisenstein stage of degree e with
// integer coefficients. Immutable after construction; safe to share across
// threads.
class PadicField : public std::enable_shared_from_this<PadicField> {
 public:
  unsigned p() const { return p_; }
  unsigned f() const { return f_; }
  unsigned e() const { return e_; }  // ramification index over Q_p
  unsigned degree() const { return e_ * f_; }
  long precision() const { return N_; }  // absolute pi-adic precision
  Rational e0() const { return Rational(e_, p_ - 1); }
  long pe0() const;  // p * e0, requires e0 integral
  bool e0_integral() const { return e_ % (p_ - 1) == 0; }
  const std::vector<long long>& eisenstein() const { return eis_; }
  const ResidueField& residue_field() const { return fq_; }

  // storage internals (used by the element implementation and extensions)
  unsigned store_digits() const { return M_; }
  uint64_t modulus() const { return mod_; }
  size_t dim() const { return dim_; }

  bool same_field(const PadicField& o) const;
  std::string key() const { return key_; }
  std::string to_json() const;

  // elements
  PadicElement zero() const;
  PadicElement one() const;
  PadicElement from_int(long long n) const;
  PadicElement uniformizer() const;
  PadicElement from_residue(const FqElem& r) const;  // naive lift, valuation 0 input
  // sum_k digits[k] * pi^k with integer digits
  PadicElement from_pi_poly(const std::vector<long long>& digits) const;
  // Teichmuller lift: the unique lift of r with omega^(q-1) = 1 (r != 0).
  PadicElement teichmuller(const FqElem& r) const;

  // flat-coordinate kernel (exact arithmetic mod p^M)
  Flat fzero() const { return Flat(dim_, 0); }
  Flat fone() const;
  Flat fint(long long n) const;
  Flat flift(const FqElem& r) const;
  Flat fadd(const Flat& a, const Flat& b) const;
  Flat fsub(const Flat& a, const Flat& b) const;
  Flat fneg(const Flat& a) const;
  Flat fmul(const Flat& a, const Flat& b) const;
  Flat fscale(const Flat& a, long long k) const;
  Flat fshift_pi(const Flat& a, unsigned r) const;  // multiply by pi^r
  Flat fpow(Flat a, uint64_t n) const;
  long fval(const Flat& a) const;  // LONG_MAX/2 when all coords vanish
  Flat ftrunc(const Flat& a, long r) const;  // canonical representative mod pi^r
  FqElem fresidue(const Flat& a) const;
  Flat funit_inv(const Flat& a) const;  // a must be a unit (nonzero residue)
  // divide by pi^d (caller guarantees fval >= d); consumed = p-digits spent
  Flat fdiv_pi(const Flat& a, long d, unsigned& consumed) const;

  uint64_t mod_reduce(long long v) const;

  static FieldPtr make(unsigned p, unsigned f, std::vector<long long> eisenstein,
                       long precision = -1);

 private:
  PadicField(unsigned p, unsigned f, std::vector<long long> eis, long precision);

  unsigned p_, f_, e_;
  long N_;
  unsigned M_;
  uint64_t mod_;
  size_t dim_;
  std::vector<long long> eis_;
  std::vector<uint64_t> eis_mod_;  // eis coefficients reduced mod p^M
  ResidueField fq_;
  Flat b_;     // B = -pi^e / p, a unit with constant term c0/p
  Flat binv_;  // inverse of B
  std::string key_;

  mutable std::mutex teich_mu_;
  mutable std::vector<Flat> teich_cache_;

  friend class PadicElement;
};

// Truncated pi-adic number. Internally x = pi^(val-off) * u where u is an
// integral flat value with fval(u) = off < e; the logical unit part is
// u/pi^off, known mod pi^rel. Keeping the small offset instead of dividing
// eagerly means shallow cancellations do not each burn a whole p-digit of
// coefficient storage; divisions by pi happen only in exact multiples of e.
// Values indistinguishable from zero carry only the absolute precision bound.
// Immutable value type.
class PadicElement {
 public:
  PadicElement() = default;

  const FieldPtr& field() const { return F_; }
  bool is_zero() const { return zero_; }  // zero at the carried precision
  long valuation() const;                 // throws ZeroValuation when is_zero
  long abs_precision() const { return zero_ ? val_ : val_ + rel_; }
  long rel_precision() const { return zero_ ? 0 : rel_; }

  // raw access: value = pi^raw_exp * raw_flat, fval(raw_flat) = offset
  const Flat& raw_flat() const { return u_; }
  long raw_exp() const { return val_ - long(off_); }
  unsigned offset() const { return off_; }
  unsigned store() const { return store_; }

  bool is_unit() const { return !zero_ && val_ == 0; }
  FqElem unit_residue() const;  // residue of the logical unit part
  FqElem residue() const;       // requires valuation 0

  PadicElement operator+(const PadicElement& o) const;
  PadicElement operator-(const PadicElement& o) const;
  PadicElement operator-() const;
  PadicElement operator*(const PadicElement& o) const;
  PadicElement inv() const;
  PadicElement pow(long long n) const;
  PadicElement operator/(const PadicElement& o) const { return *this * o.inv(); }
  PadicElement mul_int(long long k) const;
  PadicElement shift(long k) const;  // multiply by pi^k (exact)
  PadicElement clamp_rel(long r) const;

  bool operator==(const PadicElement& o) const;
  bool operator!=(const PadicElement& o) const { return !(*this == o); }
  bool equal_mod(const PadicElement& o, long prec) const;

  // first n digits of the pi-adic expansion of the unit part (naive-lift
  // digits; canonical given the valuation)
  std::vector<FqElem> digits(size_t n) const;
  std::string str(size_t ndigits = 6) const;

  static PadicElement make_zero(const FieldPtr& F, long absprec);
  // value = pi^base * raw, raw known mod pi^claimed
  static PadicElement make(const FieldPtr& F, Flat raw, long base, long claimed, unsigned store);

 private:
  FieldPtr F_;
  bool zero_ = true;
  long val_ = 0;
  unsigned off_ = 0;
  long rel_ = 0;
  unsigned store_ = 0;  // valid p-digits in u_
  Flat u_;

  void check_same(const PadicElement& o) const;
  friend class PadicField;
};

// convenience
PadicElement operator*(long long k, const PadicElement& x);

}  // namespace psl
