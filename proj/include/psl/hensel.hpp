#pragma once

#include <vector>

#include "psl/padic.hpp"

namespace psl {

// Polynomials over a PadicField, constant term first.
using PadicPoly = std::vector<PadicElement>;

PadicElement poly_eval(const PadicPoly& f, const PadicElement& x);
PadicPoly poly_derivative(const PadicPoly& f);

// One segment of a lower Newton polygon. `slope` is the slope of the hull
// between lattice points, `length` the horizontal extent. Root valuations of
// the polynomial are the negated slopes.
struct PolygonSegment {
  Rational slope;
  long length;
};

// Lower convex hull of the points (d, v(a_d)) for the nonzero coefficients.
// Coefficients that vanish at their carried precision are treated as +infinity
// (they lie above any hull the remaining points support).
std::vector<PolygonSegment> newton_polygon(const std::vector<std::pair<long, long>>& pts);
std::vector<PolygonSegment> newton_polygon(const PadicPoly& f);

// All roots of f in K distinguishable at the working precision, in a
// deterministic order (valuation, then unit-digit order). Multiple roots are
// reported once. Residue-level recursion with the quadratic Newton criterion
// v(f(a)) > 2 v(f'(a)) certifying each lift.
std::vector<PadicElement> hensel_roots(const PadicPoly& f, const FieldPtr& K);

// True iff x is a p-th power in K^x (valuation divisible by p and the unit
// part a p-th power, decided by root-finding on Y^p - u).
bool is_pth_power(const PadicElement& x);

// True iff K contains the p-th roots of unity. e0 integral is necessary; the
// decision is made honestly by root-finding on the p-th cyclotomic polynomial.
bool contains_mu_p(const FieldPtr& K);

}  // namespace psl
