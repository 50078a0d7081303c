#pragma once

#include "tropab/exact_linalg.hpp"

#include <complex>

namespace tropab {

using ComplexMatrix = Eigen::MatrixXcd;
using RealMatrix = Eigen::MatrixXd;

constexpr double kDefaultTol = 1e-10;

// Symmetric within tol and Im τ positive definite (Cholesky pivots > tol).
bool in_siegel_space(const ComplexMatrix& tau, double tol = kDefaultTol);

// R(τ) = (aτ + bδ)(cτ + dδ)⁻¹δ for r = [[a, b], [c, d]] with r·E·rᵀ = E,
// E = [[0, δ], [−δ, 0]].
ComplexMatrix gamma_action(const IntegerMatrix& r, const ComplexMatrix& tau, const PolarizationType& delta,
                           double tol = kDefaultTol);

// Z = (τ − iI)(τ + iI)⁻¹.
ComplexMatrix cayley_transform(const ComplexMatrix& tau, double tol = kDefaultTol);

// Im τ₂ − Im τ₃ᵀ (Im τ₁)⁻¹ Im τ₃ for the block split g′ + (g − g′).
RealMatrix tropicalize(const ComplexMatrix& tau, int g_prime, double tol = kDefaultTol);

}  // namespace tropab
