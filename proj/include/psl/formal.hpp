#pragma once

#include <array>
#include <memory>
#include <mutex>
#include <vector>

#include "psl/hensel.hpp"
#include "psl/hilbert.hpp"

namespace psl {

enum class ReductionClass {
  GoodOrdinary,
  GoodSupersingular,
  SplitMultiplicative,
  NonsplitMultiplicative,
  Additive,
};
const char* reduction_name(ReductionClass c);

// Weierstrass curve over a p-adic field. Construction runs the minimal-model
// pass and the reduction classification; the formal group data is computed
// lazily and cached. Immutable afterwards.
class CurveModel {
 public:
  // coefficient specs are pi-adic digit lists: sum_k spec[k] * pi^k
  using CoeffSpec = std::vector<long long>;
  static std::shared_ptr<const CurveModel> make(const FieldPtr& K,
                                                const std::array<CoeffSpec, 5>& a);

  const FieldPtr& field() const { return K_; }
  const std::array<CoeffSpec, 5>& input_coeffs() const { return input_; }
  const std::array<PadicElement, 5>& a() const { return a_; }  // a1,a2,a3,a4,a6
  ReductionClass reduction() const { return cls_; }
  long disc_valuation() const { return v_disc_; }
  long j_valuation() const { return v_j_; }  // v(j) of the minimal model
  long frobenius_trace_mod_p() const { return aq_mod_p_; }

  // reduced simplified model y^2 = x^3 + Ax^2 + Bx + C after the pass
  const std::array<PadicElement, 3>& simplified() const { return simp_; }

  std::shared_ptr<const CurveModel> base_change(const FieldPtr& L) const;

 private:
  CurveModel(const FieldPtr& K, const std::array<CoeffSpec, 5>& a);
  void classify();

  FieldPtr K_;
  std::array<CoeffSpec, 5> input_;
  std::array<PadicElement, 5> a_;
  std::array<PadicElement, 3> simp_;
  ReductionClass cls_;
  long v_disc_ = 0;
  long v_j_ = 0;
  long aq_mod_p_ = 0;

  mutable std::mutex fg_mu_;
  mutable std::shared_ptr<const struct FormalGroupData> fg_;
  friend std::shared_ptr<const struct FormalGroupData> formal_group_law(
      const std::shared_ptr<const CurveModel>&, long);
};

using CurvePtr = std::shared_ptr<const CurveModel>;

// Truncated power series over K: c[k] is the coefficient of T^k: fixed
// truncation length (series are considered mod T^size).
using USeries = std::vector<PadicElement>;
// Dense bivariate series truncated at total degree < ord: index i*(ord) + j.
struct BSeries {
  size_t ord = 0;
  std::vector<PadicElement> c;
  const PadicElement& at(size_t i, size_t j) const { return c[i * ord + j]; }
  PadicElement& at(size_t i, size_t j) { return c[i * ord + j]; }
};

struct FormalGroupData {
  long order;     // truncation: series mod T^order (and total degree for F)
  BSeries law;    // F(X, Y)
  USeries mulp;   // [p](T)
  USeries wexp;   // w(z) = z^3(1 + ...)
};

// The formal group law of E to the given truncation order (default p^2+2).
std::shared_ptr<const FormalGroupData> formal_group_law(const CurvePtr& E, long order = -1);

// Newton polygon of [p](T)/T restricted to the degrees below the height
// vertex: a single segment of slope -v(p)/(p^h - 1).
std::vector<PolygonSegment> p_series_newton(const CurvePtr& E);

// common valuation of the nonzero p-torsion points of the formal group,
// read off the polygon; defined for good supersingular curves when integral
long t0_invariant(const CurvePtr& E);

struct KummerImageDescriptor {
  ReductionClass cls;
  BlockSpec first, second;
  long total_dim;
  std::string torsion_note;  // whether E[p] in E(K) was verified or asserted
};

KummerImageDescriptor kummer_image(const CurvePtr& E);

// Division-polynomial check that E[p] is rational over K (p = 3 only; other
// primes report unknown). 1 = verified, 0 = fails, -1 = not decided.
int torsion_rational_check(const CurvePtr& E);

// evaluate the formal group law / [p] at points of positive valuation
PadicElement fg_eval(const BSeries& s, const PadicElement& x, const PadicElement& y);
PadicElement series_eval(const USeries& s, const PadicElement& x);

}  // namespace psl
