#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace psl {

// Error codes shared across the library. Every throwing path raises Error
// with one of these tags so callers (and tests) can match on the condition
// rather than on message text.
enum class Err {
  EvenPrime,
  NotPrime,
  NotEisenstein,
  PrecisionTooLow,
  FieldMismatch,
  DivisionByPrecisionZero,
  ZeroValuation,
  RootOfZero,
  NoPthRoots,
  PrecisionLoss,
  PrecisionInsufficient,
  NoMuP,
  DegenerateBasis,
  NotAUnit,
  TrivialKummer,
  DegeneratePairing,
  SingularCurve,
  NotMinimal,
  TruncationTooSmall,
  NotGoodReduction,
  NonIntegralTorsionValuation,
  NotSupersingular,
  AdditiveRefused,
  NonsplitUnsupported,
  NodeMismatch,
  EdgeMismatch,
  NotANorm,
  PatternUnsupported,
  RuleChainNotFound,
  SupersingularFirstArgument,
  UnsupportedReduction,
  HypothesisNotAsserted,
  ConfigParse,
  Unclassified,
  Internal,
};

const char* err_name(Err e);

struct Error : std::runtime_error {
  Err code;
  Error(Err c, const std::string& msg)
      : std::runtime_error(std::string(err_name(c)) + ": " + msg), code(c) {}
};

[[noreturn]] inline void fail(Err c, const std::string& msg) { throw Error(c, msg); }

// Exact rational with small numerator/denominator, used for e0 and polygon
// slopes. Always kept in lowest terms with positive denominator.
struct Rational {
  long long num = 0;
  long long den = 1;

  Rational() = default;
  Rational(long long n, long long d = 1);
  bool is_integer() const { return den == 1; }
  bool operator==(const Rational& o) const { return num == o.num && den == o.den; }
  bool operator<(const Rational& o) const { return num * o.den < o.num * den; }
  Rational operator+(const Rational& o) const { return {num * o.den + o.num * den, den * o.den}; }
  Rational operator*(long long k) const { return {num * k, den}; }
  std::string str() const;
};

// ---------------------------------------------------------------------------
// Dense linear algebra over F_p (p a small odd prime). Vectors hold values in
// [0, p). Dimensions here are tiny ([K:Q_p]+2 <= ~20), so everything is plain
// Gaussian elimination.
// ---------------------------------------------------------------------------

using FpVec = std::vector<unsigned>;

inline unsigned fp_neg(unsigned a, unsigned p) { return a == 0 ? 0 : p - a; }
unsigned fp_inv(unsigned a, unsigned p);
FpVec fp_add(const FpVec& a, const FpVec& b, unsigned p);
FpVec fp_scale(const FpVec& a, unsigned c, unsigned p);
bool fp_is_zero(const FpVec& a);

// Incremental row space with expression tracking: each reduced row remembers
// the combination of the original generators that produced it, so contained
// vectors can be rewritten in terms of the generators.
class FpSpan {
 public:
  FpSpan(unsigned p, size_t dim) : p_(p), dim_(dim) {}

  // Returns true if the vector enlarged the span.
  bool add(const FpVec& v);
  size_t rank() const { return rows_.size(); }
  size_t dim() const { return dim_; }
  size_t generators() const { return ngen_; }
  bool contains(const FpVec& v) const;
  // Coefficients c (over the generators, in insertion order) with
  // sum c_i * gen_i == v. Empty optional if v is outside the span.
  std::optional<FpVec> express(const FpVec& v) const;
  const std::vector<FpVec>& reduced_rows() const { return rows_; }

 private:
  unsigned p_;
  size_t dim_;
  size_t ngen_ = 0;
  std::vector<FpVec> rows_;    // reduced, each with a distinct pivot
  std::vector<FpVec> combos_;  // combo of generators giving rows_[i]
  std::vector<size_t> pivots_;
};

// Kernel basis of the linear map given by rows acting on column vectors
// (rows.size() x dim matrix). Returned vectors are a basis of {x : Mx = 0}.
std::vector<FpVec> fp_kernel(const std::vector<FpVec>& rows, size_t dim, unsigned p);

// ---------------------------------------------------------------------------
// Deterministic splittable PRNG (splitmix64 streams). Sampling loops index
// into independent streams so parallel certification batches reproduce the
// serial results bit for bit.
// ---------------------------------------------------------------------------

struct SplitMix {
  uint64_t state;
  explicit SplitMix(uint64_t seed) : state(seed) {}
  uint64_t next() {
    uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  // uniform in [0, n)
  uint64_t below(uint64_t n) { return n ? next() % n : 0; }
};

// Independent stream derived from (seed, lane): used by parallel sample loops.
inline SplitMix stream(uint64_t seed, uint64_t lane) {
  SplitMix mix(seed ^ (0x51e03db2a9ce1a4dULL * (lane + 1)));
  mix.next();
  return mix;
}

}  // namespace psl
