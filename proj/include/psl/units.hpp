#pragma once

#include <memory>
#include <vector>

#include "psl/hensel.hpp"
#include "psl/padic.hpp"

namespace psl {

// Filtration position of a class in K^x/(K^x)^p.
struct LevelTag {
  enum Kind { Trivial, UnitLevel, HasUniformizer } kind = Trivial;
  long level = 0;  // meaningful for UnitLevel only
  bool operator==(const LevelTag& o) const { return kind == o.kind && level == o.level; }
  std::string str() const;
};

// An element of K^x/(K^x)^p in canonical coordinates. coords[0] is the
// uniformizer coordinate; unit blocks follow by ascending level, one slot per
// residue-basis vector, with the single top-level slot last.
struct UnitClass {
  FieldPtr K;
  FpVec coords;
  PadicElement rep;
  LevelTag level() const;
  bool is_trivial() const { return fp_is_zero(coords); }
};

// Per-field machinery for K^x/(K^x)^p: canonical basis adapted to the
// higher-unit filtration, constructive coordinates (peeling digit by digit),
// and the graded dimension counts. Built once per field and cached; immutable
// afterwards, safe for concurrent readers.
class UnitsContext {
 public:
  static std::shared_ptr<const UnitsContext> get(const FieldPtr& K);

  const FieldPtr& field() const { return K_; }
  size_t dim() const { return basis_.size(); }  // [K:Qp] + 2
  long pe0() const { return pe0_; }
  const std::vector<UnitClass>& basis() const { return basis_; }
  // level of basis slot i; -1 encodes the uniformizer slot
  long slot_level(size_t i) const { return slot_level_[i]; }

  FpVec coords_of(const PadicElement& x) const;
  UnitClass class_of(const PadicElement& x) const;
  UnitClass class_from_coords(const FpVec& c) const;
  UnitClass class_mul(const UnitClass& a, const UnitClass& b) const;
  LevelTag level_of(const FpVec& coords) const;

  long subgroup_dim(long m) const;  // dim of the image of U^m, m >= 0
  long full_dim() const { return long(basis_.size()); }

  // residue class of p * pi^{-v(p)} (the additive-map parameter at the top
  // graded level) and the induced F_p-linear map x -> x^p + a x on the residue
  // field, as a matrix in the w-power basis
  const FqElem& sigma_a() const { return sigma_a_; }
  const std::vector<FpVec>& sigma_matrix() const { return sigma_rows_; }

 private:
  explicit UnitsContext(const FieldPtr& K);
  FieldPtr K_;
  long pe0_;
  std::vector<UnitClass> basis_;
  std::vector<long> slot_level_;
  std::vector<size_t> level_first_slot_;  // index into basis per level list
  std::vector<long> levels_;              // ascending unit levels (p∤m, then pe0)
  FqElem sigma_a_;
  std::vector<FpVec> sigma_rows_;
  FpSpan top_solver_;  // spans {c_top} + im(sigma) for the top-level peel
};

// public surface ----------------------------------------------------------

std::vector<UnitClass> kstar_basis(const FieldPtr& K);
LevelTag filtration_level(const PadicElement& x);
LevelTag filtration_level(const UnitClass& c);
// m >= 0 integer level; use subgroup_dim_full for all of K^x/(K^x)^p
long subgroup_dim(const FieldPtr& K, long m);
long subgroup_dim_full(const FieldPtr& K);

std::string units_basis_csv(const FieldPtr& K);

}  // namespace psl
