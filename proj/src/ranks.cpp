#include "psl/ranks.hpp"

#include <sstream>

namespace psl {

RankReport chow_rank(const CurvePtr& E1, const CurvePtr& E2, long n, bool torsion_asserted) {
  if (n < 1) fail(Err::ConfigParse, "n must be a positive integer");
  if (!torsion_asserted)
    fail(Err::HypothesisNotAsserted,
         "the rationality of the p^n-torsion must be asserted by the caller");
  RankReport r;
  r.n = n;
  r.evidence = curve_pair_blocks(E1, E2);
  const FieldPtr& K = E1->field();
  long dK = long(K->degree());
  r.degree_part = 1;
  r.e1_part = dK + 2;
  r.e2_part = dK + 2;
  r.kgroup_part = r.evidence.total_dim;
  r.total = r.degree_part + r.e1_part + r.e2_part + r.kgroup_part;
  long expect = r.evidence.same_reduction_type ? 2 * dK + 6 : 2 * dK + 7;
  r.matches_formula = (r.total == expect);
  std::ostringstream o;
  o << "reduction types " << reduction_name(E1->reduction()) << " / "
    << reduction_name(E2->reduction()) << " read as "
    << (r.evidence.same_reduction_type ? "coinciding" : "distinct")
    << "; the coincidence reading is derived from the block decomposition";
  r.interpretation = o.str();
  return r;
}

long gm_e_rank(const CurvePtr& E, long n, bool torsion_asserted) {
  if (n < 1) fail(Err::ConfigParse, "n must be a positive integer");
  if (!torsion_asserted)
    fail(Err::HypothesisNotAsserted,
         "the rationality of the p^n-torsion must be asserted by the caller");
  auto d = kummer_image(E);
  const FieldPtr& K = E->field();
  long count = 0;
  for (const BlockSpec& s : {d.first, d.second})
    count += product_dimension(K, BlockSpec::full(), s).dim;
  return count;
}

}  // namespace psl
