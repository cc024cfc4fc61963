#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "psl/common.hpp"

namespace psl {

// Element of F_{p^f} as a polynomial in the generator `w`, degree < f,
// coefficients in [0, p).
using FqElem = std::vector<unsigned>;

// The residue field F_{p^f} = F_p[w]/(g(w)) with g the lexicographically
// least monic irreducible polynomial of degree f (coefficient vector compared
// as the base-p integer c_0 + c_1 p + ...). The same g, lifted with
// coefficients in [0, p), defines the unramified stage of every PadicField,
// which keeps reports byte-reproducible.
class ResidueField {
 public:
  ResidueField(unsigned p, unsigned f);

  unsigned p() const { return p_; }
  unsigned f() const { return f_; }
  uint64_t q() const { return q_; }
  const std::vector<unsigned>& modulus() const { return g_; }  // length f+1, monic

  FqElem zero() const { return FqElem(f_, 0); }
  FqElem one() const;
  FqElem gen() const;  // class of w; for f == 1 the modulus is w itself, so 0
  FqElem from_index(uint64_t idx) const;  // base-p digits of idx
  uint64_t index(const FqElem& a) const;

  bool is_zero(const FqElem& a) const;
  FqElem add(const FqElem& a, const FqElem& b) const;
  FqElem sub(const FqElem& a, const FqElem& b) const;
  FqElem neg(const FqElem& a) const;
  FqElem mul(const FqElem& a, const FqElem& b) const;
  FqElem pow(const FqElem& a, uint64_t n) const;
  FqElem inv(const FqElem& a) const;
  FqElem frobenius(const FqElem& a) const { return pow(a, p_); }
  FqElem frobenius_inverse(const FqElem& a) const;  // p-th root (bijective)

  // Quadratic character: +1 square, -1 non-square, 0 zero. p odd.
  int chi(const FqElem& a) const;

  // F_p-linear map matrix (f x f, column i = image of w^i) for x -> x^p + a*x.
  std::vector<FpVec> artin_schreier_matrix(const FqElem& a) const;

  std::string str(const FqElem& a) const;

 private:
  unsigned p_, f_;
  uint64_t q_;
  std::vector<unsigned> g_;
  FqElem reduce(std::vector<unsigned> raw) const;  // raw degree < 2f-1
};

// Lexicographically least monic irreducible of degree f over F_p,
// returned as coefficient vector c_0..c_f with c_f = 1.
std::vector<unsigned> least_irreducible(unsigned p, unsigned f);

// Distinct roots in F_q of a nonzero polynomial with FqElem coefficients
// (constant term first), in deterministic order (by element index). Uses the
// Frobenius-gcd linear-factor extraction with a deterministic splitting scan,
// so large residue fields need no exhaustive sweep.
std::vector<FqElem> fq_poly_roots(const ResidueField& fq, std::vector<FqElem> g);

}  // namespace psl
