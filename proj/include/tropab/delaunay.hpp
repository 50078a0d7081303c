#pragma once

#include "tropab/paving.hpp"

namespace tropab {

// Q is a symmetric rational r×r matrix; ½Q(x) = ½xᵀQx.
Rational half_form(const RationalMatrix& q, const IntVector& x);

// Delaunay decomposition of shift + ℤ^r for the metric Q, as a paving periodic
// under the lattice spanned by the columns of period_basis. Cells are the
// lower faces of the lifted points (x, ½Q(x)); cospherical cells stay whole.
// Each representative is certified on the window: its empty ellipsoid must fit
// inside the window box, otherwise WindowTooSmall.
PeriodicPaving delaunay_subdivision(const RationalMatrix& q, const IntegerMatrix& period_basis, int window,
                                    const RatVector* shift = nullptr);

// True iff the cell's vertices are Q-equidistant from some centre and every
// other lattice point in the window around the cell is strictly farther.
bool empty_sphere_check(const LatticePolytope& cell, const RationalMatrix& q, int window);

// True iff q lies in the closed cone C(paving): ½q interpolates affinely on every
// cell, the interpolation is convex, and it lies below ½q at every lattice point.
bool voronoi_cone_contains(const PeriodicPaving& paving, const RationalMatrix& q);

}  // namespace tropab
