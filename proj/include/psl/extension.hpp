#pragma once

#include <memory>
#include <vector>

#include "psl/units.hpp"

namespace psl {

enum class ExtClass { Trivial, Unramified, TotallyRamified };

class ExtensionHandle;
using ExtPtr = std::shared_ptr<const ExtensionHandle>;

// Element of the quotient presentation K[X]/(X^d - b): coordinates in the
// power basis of the root. Carries its handle so ring operations compose.
struct ExtElem {
  const ExtensionHandle* E = nullptr;
  std::vector<PadicElement> c;

  ExtElem operator+(const ExtElem& o) const;
  ExtElem operator-(const ExtElem& o) const;
  ExtElem operator*(const ExtElem& o) const;
  ExtElem operator-() const;
  ExtElem pow(long long n) const;
  bool is_zero() const;
  std::string str() const;
};

// A degree-p Kummer adjunction L = K(b^(1/p)) kept in the quotient
// presentation (never renormalized to tower form). Classification follows the
// filtration level of b, with the different exponent matching the single
// ramification break.
class ExtensionHandle : public std::enable_shared_from_this<ExtensionHandle> {
 public:
  static ExtPtr adjoin_pth_root(const FieldPtr& K, const PadicElement& b);

  const FieldPtr& base() const { return K_; }
  const PadicElement& kummer_element() const { return b_; }
  unsigned degree() const { return deg_; }
  ExtClass cls() const { return cls_; }
  unsigned residue_degree() const { return fLK_; }
  unsigned ram_index() const { return eLK_; }
  long different_exponent() const { return diff_; }
  long ramification_break() const { return break_; }
  const ExtElem& uniformizer() const { return unif_; }
  // for trivial handles: the p-th root inside K
  const PadicElement& root_in_base() const { return trivial_root_; }

  ExtElem zero() const;
  ExtElem one() const;
  ExtElem embed(const PadicElement& x) const;
  ExtElem root() const;  // beta with beta^p = b

  // N_{L/K} as the resultant of X^p - b with the representative (equivalently
  // the determinant of the multiplication matrix; division-free)
  PadicElement norm(const ExtElem& y) const;
  // N(1 + z) through the elementary symmetric functions of the multiplication
  // matrix of z. For z of positive valuation this avoids the cancellation of
  // expanding det(1 + M_z) term by term.
  PadicElement norm_one_plus(const ExtElem& z) const;
  long val(const ExtElem& y) const;  // v_L via the norm valuation

  std::string describe() const;

 private:
  ExtensionHandle(const FieldPtr& K, PadicElement b);
  FieldPtr K_;
  PadicElement b_;
  unsigned deg_;
  ExtClass cls_;
  unsigned fLK_ = 1, eLK_ = 1;
  long diff_ = 0, break_ = -1;
  ExtElem unif_;
  PadicElement trivial_root_;
};

// public wrappers
ExtPtr adjoin_pth_root(const FieldPtr& K, const PadicElement& b);
PadicElement relative_norm(const ExtPtr& L, const ExtElem& y);

// Division-free determinant (Bird's iteration); works over any commutative
// ring element type with +, -, * and a supplied zero.
template <class R>
R bird_det(std::vector<std::vector<R>> a, const R& zero_elem) {
  size_t n = a.size();
  if (n == 0) fail(Err::Internal, "empty determinant");
  if (n == 1) return a[0][0];
  auto mul_mu = [&](const std::vector<std::vector<R>>& x) {
    // mu(x): strict upper triangle kept, diagonal entry i replaced by
    // -(x[i+1][i+1] + ... + x[n-1][n-1]), lower triangle zeroed; then * a
    std::vector<std::vector<R>> m(n, std::vector<R>(n, zero_elem));
    R tail = zero_elem;
    std::vector<R> diag(n, zero_elem);
    for (size_t i = n; i-- > 0;) {
      diag[i] = -tail;
      tail = tail + x[i][i];
    }
    for (size_t i = 0; i < n; ++i) {
      for (size_t j = 0; j < n; ++j) {
        R acc = zero_elem;
        for (size_t k = i; k < n; ++k) {
          const R& xv = (k == i) ? diag[i] : x[i][k];
          if (k > i) {
            acc = acc + x[i][k] * a[k][j];
          } else {
            acc = acc + xv * a[k][j];
          }
        }
        m[i][j] = acc;
      }
    }
    return m;
  };
  std::vector<std::vector<R>> x = a;
  for (size_t it = 0; it + 1 < n; ++it) x = mul_mu(x);
  R det = x[0][0];
  if (n % 2 == 0) det = -det;
  return det;
}

// Unramified extension of K of relative degree d, presented as a tower field
// (f multiplied by d, same Eisenstein stage) together with the embedding,
// the arithmetic Frobenius generating Gal(L/K), and the norm back to K.
class UnramifiedTower {
 public:
  UnramifiedTower(const FieldPtr& K, unsigned d);

  const FieldPtr& base() const { return K_; }
  const FieldPtr& top() const { return L_; }
  unsigned rel_degree() const { return d_; }

  PadicElement embed(const PadicElement& x) const;
  // inverse of embed on elements lying in the image; Internal error otherwise
  PadicElement project(const PadicElement& y) const;
  PadicElement frobenius(const PadicElement& y) const;
  PadicElement norm(const PadicElement& y) const;  // product of conjugates, in K

 private:
  FieldPtr K_, L_;
  unsigned d_;
  std::vector<Flat> emb_cols_;   // flat_L image of each K basis monomial
  std::vector<Flat> frob_cols_;  // flat_L image of each L basis monomial
  Flat apply_cols(const std::vector<Flat>& cols, const Flat& coords, const PadicField& src) const;
};

}  // namespace psl
