#pragma once

#include "tropab/errors.hpp"
#include "tropab/scalar.hpp"

#include <optional>
#include <vector>

namespace tropab {

// ---------------------------------------------------------------------------
// Generic exact kernels. Scalar must be an exact integral domain (Integer) or
// field (Rational); nothing here tolerates rounding.
// ---------------------------------------------------------------------------

// Fraction-free Bareiss elimination.
template <typename Derived>
typename Derived::Scalar determinant(const Eigen::MatrixBase<Derived>& m_in) {
  using Scalar = typename Derived::Scalar;
  const Eigen::Index n = m_in.rows();
  if (n != m_in.cols()) throw std::invalid_argument("determinant: matrix not square");
  if (n == 0) return Scalar(1);
  Mat<Scalar> m = m_in;
  Scalar prev(1);
  int sign = 1;
  for (Eigen::Index k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      Eigen::Index p = k + 1;
      while (p < n && m(p, k) == 0) ++p;
      if (p == n) return Scalar(0);
      m.row(k).swap(m.row(p));
      sign = -sign;
    }
    for (Eigen::Index i = k + 1; i < n; ++i)
      for (Eigen::Index j = k + 1; j < n; ++j) m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
    prev = m(k, k);
  }
  return sign > 0 ? m(n - 1, n - 1) : Scalar(-m(n - 1, n - 1));
}

// Reduced row echelon form over the rationals; returns the pivot columns.
std::vector<Eigen::Index> rref_in_place(RationalMatrix& m);

template <typename Derived>
Eigen::Index rank(const Eigen::MatrixBase<Derived>& m) {
  RationalMatrix r = cast_matrix<Rational>(m);
  return static_cast<Eigen::Index>(rref_in_place(r).size());
}

// Basis (columns) of the rational null space {x : m·x = 0}.
RationalMatrix rational_kernel(const RationalMatrix& m);

// Exact inverse; std::nullopt when singular.
std::optional<RationalMatrix> try_inverse(const RationalMatrix& m);

template <typename Derived>
RationalMatrix inverse(const Eigen::MatrixBase<Derived>& m) {
  auto inv = try_inverse(cast_matrix<Rational>(m));
  if (!inv) fail(ErrorCode::Degenerate, "matrix is singular");
  return *inv;
}

// Solves a·x = b (a square, nonsingular); std::nullopt when singular.
std::optional<RationalMatrix> try_solve(const RationalMatrix& a, const RationalMatrix& b);

// Exact leading-principal-minor (Sylvester) test.
template <typename Derived>
bool is_positive_definite(const Eigen::MatrixBase<Derived>& q) {
  const Eigen::Index n = q.rows();
  if (n != q.cols()) return false;
  RationalMatrix r = cast_matrix<Rational>(q);
  if (r != r.transpose()) return false;
  for (Eigen::Index k = 1; k <= n; ++k)
    if (determinant(r.topLeftCorner(k, k)) <= 0) return false;
  return true;
}

// Positive semidefinite via all principal minors (exact, exponential in r; r is small).
bool is_positive_semidefinite(const RationalMatrix& q);

template <typename Derived>
bool is_symmetric(const Eigen::MatrixBase<Derived>& m) {
  return m.rows() == m.cols() && m == m.transpose();
}

inline bool is_unimodular(const IntegerMatrix& u) {
  if (u.rows() != u.cols()) return false;
  Integer d = determinant(u);
  return d == 1 || d == -1;
}

Integer gcd_of(const IntVector& v);
IntVector primitive(const IntVector& v);

// Common denominator of all entries.
Integer common_denominator(const RationalMatrix& m);

// ---------------------------------------------------------------------------
// Normal forms
// ---------------------------------------------------------------------------

struct HermiteResult {
  IntegerMatrix h;  // row-style HNF
  IntegerMatrix u;  // unimodular, h = u·m
};

HermiteResult hermite_normal_form(const IntegerMatrix& m);

struct SmithResult {
  std::vector<Integer> d;  // nonnegative, d_i | d_{i+1}, zeros last
  IntegerMatrix u, v;      // u·m·v = diag(d)
};

SmithResult smith_normal_form(const IntegerMatrix& m);

// Lattice basis (rows) of {y : yᵀ·m = 0}.
IntegerMatrix integer_left_kernel(const IntegerMatrix& m);
// Lattice basis (columns) of {x : m·x = 0}.
IntegerMatrix integer_kernel(const IntegerMatrix& m);

// ---------------------------------------------------------------------------
// Polarization types and symplectic reduction
// ---------------------------------------------------------------------------

struct PolarizationType {
  std::vector<Integer> diag;

  std::size_t size() const { return diag.size(); }
  Integer degree() const;
  bool valid() const;  // positive divisor chain
  IntegerMatrix matrix() const;
  bool operator==(const PolarizationType& o) const { return diag == o.diag; }
};

struct SymplecticDecomposition {
  PolarizationType type;
  IntegerMatrix basis_change;  // rows are the new basis; B·e·Bᵀ = [[0,δ],[−δ,0]]
};

IntegerMatrix standard_symplectic_form(const PolarizationType& delta);

SymplecticDecomposition symplectic_normal_form(const IntegerMatrix& e);

PolarizationType polarization_type(const IntegerMatrix& phi);

// Q ↦ (uᵀ)⁻¹·Q·u⁻¹ for u ∈ GL(X) preserving the sublattice spanned by the columns of y_basis.
RationalMatrix glxy_act(const IntegerMatrix& u, const RationalMatrix& q, const IntegerMatrix& y_basis);

}  // namespace tropab
