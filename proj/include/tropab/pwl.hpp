#pragma once

#include "tropab/delaunay.hpp"

#include <map>

namespace tropab {

// A Λ-quasiperiodic piecewise-affine function ℝ^r → ℚ^k. Pieces are given on
// the representative cells; increments[i] = A_i with
//   f(x + λ_i) − f(x) = A_i(x),  λ_i = period_basis.col(i).
struct PwAffineFunction {
  PeriodicPaving paving;
  Eigen::Index payload_rank = 1;
  std::vector<AffinePiece> pieces;
  std::vector<AffinePiece> increments;
};

// f(y + Λk) − f(y) as an affine function of y.
AffinePiece translation_increment(const PwAffineFunction& f, const IntVector& k);

// The affine piece on cells[cell] + translation (translation ∈ Λ).
AffinePiece piece_at(const PwAffineFunction& f, int cell, const IntVector& translation);

RatVector evaluate(const PwAffineFunction& f, const PavingTopology& topo, const RatVector& x);
RatVector evaluate(const PwAffineFunction& f, const RatVector& x);

PwAffineFunction operator+(const PwAffineFunction& a, const PwAffineFunction& b);  // same paving
PwAffineFunction operator*(const Rational& s, const PwAffineFunction& f);

// Exact equality of pavings, pieces and increments.
bool same_function(const PwAffineFunction& a, const PwAffineFunction& b);

struct WallBending {
  Wall wall;
  RatVector payload;
};

std::vector<WallBending> bending_parameters(const PwAffineFunction& f);

// Rational polyhedral cone {v : dual·v ≥ 0} intersected with the lattice spanned by
// the columns of lattice_basis.
struct ToricMonoid {
  Eigen::Index ambient_rank = 0;
  IntegerMatrix dual;           // rows are functionals
  IntegerMatrix lattice_basis;  // columns; identity by default
};

ToricMonoid orthant_monoid(Eigen::Index k);
bool monoid_contains(const ToricMonoid& p, const RatVector& v);
bool is_unit(const ToricMonoid& p, const RatVector& v);  // v and −v both in P
bool is_sharp(const ToricMonoid& p);
std::vector<IntVector> extreme_rays(const ToricMonoid& p);  // rank ≤ 3, sharp
std::vector<IntVector> hilbert_basis(const ToricMonoid& p);  // rank ≤ 3, sharp

bool is_p_convex(const PwAffineFunction& f, const ToricMonoid& p, bool strict);

// ψ = A + periodic with A(x) = ½xᵀBx + ½L·x.
struct QuasiperiodicDecomposition {
  RationalMatrix bilinear;           // B
  RatVector quadratic_linear;        // L
  std::map<IntVector, Rational, LexLess> periodic;  // on the fundamental parallelepiped
  IntegerMatrix period_basis;

  Rational quadratic_part(const IntVector& x) const;
  Rational reconstruct(const IntVector& x) const;
};

using LatticeSamples = std::map<IntVector, Rational, LexLess>;

QuasiperiodicDecomposition quasiperiodic_decompose(const LatticeSamples& samples, const IntegerMatrix& period_basis);

// Affine interpolation of the values over a simplicial paving, with the
// quasiperiodicity increments read off the sampled values.
PwAffineFunction interpolate_on_triangulation(const LatticeSamples& values, const PeriodicPaving& t);

bool cone_cy_membership(const LatticeSamples& psi, const PeriodicPaving& t, const IntegerMatrix& period_basis);

PwAffineFunction sigma_section(const RationalMatrix& q, const IntegerMatrix& period_basis, int window);

// Merges cells across walls with zero bending. bounded = false when some region
// contains a nonzero translate of itself (an unbounded affine region).
struct AffineRegions {
  bool bounded = true;
  PeriodicPaving paving;
};

AffineRegions affine_region_paving(const PwAffineFunction& f);

// Associated quadratic form B of a scalar quasiperiodic function (f = ½xᵀBx + …).
RationalMatrix associated_form(const PwAffineFunction& f);

using DualSamples = std::map<IntVector, Rational, LexLess>;

DualSamples legendre_transform(const PwAffineFunction& f, int window);

}  // namespace tropab
