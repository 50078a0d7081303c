#pragma once

#include "tropab/exact_linalg.hpp"

#include <vector>

namespace tropab {

// Brute-force exact polytope helpers for the small ranks (r ≤ 3, a few dozen
// points) that the periodic constructions need. Points are rational; a
// polytope is the convex hull of the given points.

struct Facet {
  std::vector<int> points;  // indices into the input point list lying on the facet
  IntVector normal;         // primitive outward normal
  Rational offset;          // normal·x ≤ offset on the polytope, equality on the facet
};

Eigen::Index affine_rank(const std::vector<RatVector>& pts);

// Facets of a full-dimensional point configuration.
std::vector<Facet> facets(const std::vector<RatVector>& pts);

// Indices of the extreme points (vertices of the hull); works in any affine dimension.
std::vector<int> extreme_points(const std::vector<RatVector>& pts);

// Pulling triangulation of the hull; simplices as index lists of affine-dim + 1 points.
std::vector<std::vector<int>> triangulate(const std::vector<RatVector>& pts);

// Euclidean volume of a full-dimensional hull.
Rational volume(const std::vector<RatVector>& pts);

// Normal n (primitive integral, up to sign) of the hyperplane through r affinely independent points in ℚ^r.
IntVector hyperplane_normal(const std::vector<RatVector>& pts);

std::vector<RatVector> to_rational(const std::vector<IntVector>& pts);

}  // namespace tropab
