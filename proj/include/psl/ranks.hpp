#pragma once

#include "psl/mackey.hpp"

namespace psl {

// Rank of the degree-n quotient of the zero-cycle group of E1 x E2, decomposed
// per the standard splitting: a degree line, a copy of each Mordell-Weil
// quotient, and the two-variable symbol part measured by the block evidence.
struct RankReport {
  long n;
  long degree_part;  // 1
  long e1_part, e2_part;
  long kgroup_part;  // 1 or 2 from the block decomposition
  long total;
  bool matches_formula;  // total == 2[K:Qp] + 6 or + 7 per the label comparison
  CurvePairReport evidence;
  std::string interpretation;
};

// Ranks are independent of n (computed at n = 1 and scaled). The rationality
// of the p^n-torsion is the caller's hypothesis and must be asserted.
RankReport chow_rank(const CurvePtr& E1, const CurvePtr& E2, long n, bool torsion_asserted);

// dimension of the mixed multiplicative/elliptic symbol quotient:
// 1 for split multiplicative reduction, 2 for good reduction
long gm_e_rank(const CurvePtr& E, long n, bool torsion_asserted);

}  // namespace psl
