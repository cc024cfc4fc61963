#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <variant>
#include <vector>

#include "psl/extension.hpp"
#include "psl/units.hpp"

namespace psl {

// Selector for a sub-vector-space of K^x/(K^x)^p: all of it, the image of a
// higher-unit level, or the zero space.
struct BlockSpec {
  enum Kind { Full, Level, TrivialBlock } kind = Full;
  long level = 0;
  static BlockSpec full() { return {Full, 0}; }
  static BlockSpec lvl(long m) { return {Level, m}; }
  static BlockSpec trivial() { return {TrivialBlock, 0}; }
  bool operator==(const BlockSpec& o) const { return kind == o.kind && level == o.level; }
  std::string str() const;
};

// Norm subgroup N_{L/K}(L^x) mod p-th powers for L = K(b^(1/p)), together
// with the preimage data used by the witness machinery. Unramified L is
// handled through its tower presentation (the unramified degree-p extension
// is unique, so the subgroup is the same); ramified L stays in the quotient
// presentation with a rank-certified spanning set.
struct NormSubgroup {
  FieldPtr K;
  FpVec line;  // canonical coordinates of the Kummer line (first nonzero = 1)
  PadicElement b_rep;
  ExtPtr handle;
  std::shared_ptr<const UnramifiedTower> tower;  // set iff unramified
  // candidate generators over L (one representation or the other)
  std::vector<ExtElem> hand_cands;
  std::vector<PadicElement> tower_cands;
  std::vector<long> cand_levels;  // filtration level of the candidate over L
                                  // (-1: carries a uniformizer component)
  std::vector<PadicElement> norm_values;
  std::vector<FpVec> norm_coords;
  FpSpan image{1, 0};  // span of norm_coords, rank dim-1

  bool contains(const FpVec& cls) const { return image.contains(cls); }
  // Solve N(x) == target modulo p-th powers, optionally restricted to
  // candidates of level >= min_level over L. Returns the exponent vector over
  // the candidate list, or nullopt.
  std::optional<FpVec> solve_preimage(const FpVec& target, long min_level = -2) const;
};

struct PairingMatrix {
  FieldPtr K;
  std::vector<FpVec> m;  // (dim x dim) skew matrix over F_p
  size_t ref_i = 0, ref_j = 0;  // normalization certificate: M[ref_i][ref_j] = 1
};

// Per-field pairing machinery, cached and immutable once built.
class HilbertContext {
 public:
  static std::shared_ptr<const HilbertContext> get(const FieldPtr& K);

  const FieldPtr& field() const { return K_; }
  const PairingMatrix& matrix() const { return mat_; }
  const UnitsContext& units() const { return *units_; }

  unsigned exponent(const FpVec& a, const FpVec& b) const;
  unsigned exponent(const PadicElement& a, const PadicElement& b) const;
  // triviality via norm-subgroup membership (independent of the matrix route)
  bool trivial_by_norms(const PadicElement& a, const PadicElement& b) const;

  // cached per Kummer line; b must have a nontrivial class
  std::shared_ptr<const NormSubgroup> norm_subgroup(const PadicElement& b) const;
  std::shared_ptr<const NormSubgroup> norm_subgroup_line(const FpVec& coords) const;

 private:
  explicit HilbertContext(const FieldPtr& K);
  FieldPtr K_;
  std::shared_ptr<const UnitsContext> units_;
  PairingMatrix mat_;
  mutable std::mutex line_mu_;
  mutable std::map<std::string, std::shared_ptr<const NormSubgroup>> lines_;

  std::shared_ptr<const NormSubgroup> build_line(const FpVec& line) const;
  FpVec functional_of_line(const FpVec& line) const;
};

// public surface ----------------------------------------------------------

// The F_p-subspace N_{L/K}(L^x)*(K^x)^p/(K^x)^p for L = K(b^(1/p)).
std::shared_ptr<const NormSubgroup> norm_subgroup(const FieldPtr& K, const PadicElement& b);
// True iff the pairing of a and b vanishes; decided by norm membership.
bool symbol_trivial(const PadicElement& a, const PadicElement& b);
bool symbol_trivial(const UnitClass& a, const PadicElement& b);
PairingMatrix pairing_matrix(const FieldPtr& K);
// #(span(mspec), span(nspec))_p in {1, p}
long image_order(const FieldPtr& K, const BlockSpec& mspec, const BlockSpec& nspec);
// the three-case prediction from local class field theory
long predicted_image_order(const FieldPtr& K, long m, long n);

// spanning slots of a block within the canonical basis
std::vector<size_t> block_slots(const UnitsContext& ctx, const BlockSpec& s);

}  // namespace psl
