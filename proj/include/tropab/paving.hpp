#pragma once

#include "tropab/polytope.hpp"

#include <map>
#include <optional>
#include <vector>

namespace tropab {

// Vertices of a lattice polytope, sorted lexicographically.
using LatticePolytope = std::vector<IntVector>;

struct PolytopeLess {
  bool operator()(const LatticePolytope& a, const LatticePolytope& b) const { return lex_less(a, b); }
};

// A paving of ℝ^r invariant under the lattice spanned by the columns of
// period_basis, given by one representative per orbit of maximal cells.
struct PeriodicPaving {
  Eigen::Index rank = 0;
  IntegerMatrix period_basis;
  std::vector<LatticePolytope> cells;
  int window = 4;
  RatVector shift;  // sites are shift + ℤ^r; cells are stored unshifted

  RationalMatrix period_inverse() const { return inverse(period_basis); }
};

// Integer vector k with x − Λk in the half-open fundamental parallelepiped.
IntVector lattice_floor(const RatVector& x, const RationalMatrix& period_inverse);

// Translate of the polytope whose lex-min vertex lies in the fundamental
// parallelepiped, vertices sorted. offset receives the translation applied.
LatticePolytope canonical_translate(const LatticePolytope& cell, const IntegerMatrix& period_basis,
                                    const RationalMatrix& period_inverse, IntVector* offset = nullptr);

// Builds a paving from arbitrary translates of the cells (deduplicated).
PeriodicPaving make_paving(const IntegerMatrix& period_basis, const std::vector<LatticePolytope>& cells,
                           int window = 4);

// Same rank, same translation lattice, same set of cell orbits.
bool same_paving(const PeriodicPaving& a, const PeriodicPaving& b);

// Re-expresses a paving with respect to a sublattice of its translation lattice.
PeriodicPaving restrict_periods(const PeriodicPaving& p, const IntegerMatrix& sub_basis);

struct CellFacet {
  std::vector<int> vertices;  // indices into the cell's vertex list
  IntVector normal;           // primitive outward normal
  Rational offset;
};

// A codimension-one face orbit with its two incident cell translates.
struct Wall {
  LatticePolytope vertices;  // canonical position
  IntVector normal;          // primitive, first nonzero entry positive
  Rational offset;           // normal·x = offset on the wall
  int plus_cell = -1;        // cells[plus_cell] + plus_shift lies where normal·x ≥ offset
  IntVector plus_shift;
  int plus_facet = -1;
  int minus_cell = -1;
  IntVector minus_shift;
  int minus_facet = -1;
};

struct PavingTopology {
  std::vector<std::vector<CellFacet>> cell_facets;
  std::vector<Wall> walls;
};

// Computes facets and walls, validating the paving (face-to-face matching of
// every facet, covolume). Throws InvalidPaving.
PavingTopology paving_topology(const PeriodicPaving& p);

// Locates x: returns (cell index, translation t ∈ Λ) with x ∈ cells[c] + t.
std::pair<int, IntVector> locate(const PeriodicPaving& p, const PavingTopology& topo, const RatVector& x);

// Lattice points x with period coordinates Λ⁻¹x in [−w, w]^r.
std::vector<IntVector> window_points(const IntegerMatrix& period_basis, int w);

bool is_simplicial(const PeriodicPaving& p);

// Simplicial, and no simplex contains a lattice point other than its vertices.
// Only a test: non-minimal triangulations are not refined.
bool is_minimal_triangulation(const PeriodicPaving& p);

// x ↦ linear·x + constant, valued in ℚ^k.
struct AffinePiece {
  RationalMatrix linear;  // k×r
  RatVector constant;     // k

  RatVector operator()(const RatVector& x) const { return linear * x + constant; }
  bool operator==(const AffinePiece& o) const { return linear == o.linear && constant == o.constant; }
};

// Affine map through (pts[i], values[i]); the points must affinely span ℚ^r.
// std::nullopt when the values are not affine on the points.
std::optional<AffinePiece> fit_affine(const std::vector<RatVector>& pts, const std::vector<RatVector>& values);

}  // namespace tropab
