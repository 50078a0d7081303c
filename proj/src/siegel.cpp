#include "tropab/siegel.hpp"

#include <Eigen/Cholesky>
#include <Eigen/SVD>

namespace tropab {

using Eigen::Index;

namespace {

double to_double(const Integer& x) { return x.convert_to<double>(); }

RealMatrix to_real(const IntegerMatrix& m) {
  RealMatrix out(m.rows(), m.cols());
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j) out(i, j) = to_double(m(i, j));
  return out;
}

template <typename M>
M symmetrized(const M& m) {
  return (m + m.transpose()) / 2.0;
}

// Smallest pivot of the LDLᵀ factorisation of a symmetric matrix.
double min_pivot(const RealMatrix& m) {
  if (m.rows() == 0) return 1.0;
  Eigen::LDLT<RealMatrix> ldlt(m);
  return ldlt.vectorD().minCoeff();
}

ComplexMatrix guarded_inverse(const ComplexMatrix& m, double tol, const char* what) {
  Eigen::JacobiSVD<ComplexMatrix> svd(m);
  const auto& s = svd.singularValues();
  if (s.size() > 0 && (s(s.size() - 1) <= tol * s(0) || s(0) == 0.0))
    fail(ErrorCode::NearSingularDenominator, std::string(what) + " is numerically singular", "tau");
  return m.inverse();
}

}  // namespace

bool in_siegel_space(const ComplexMatrix& tau, double tol) {
  if (tau.rows() != tau.cols()) return false;
  if ((tau - tau.transpose()).cwiseAbs().maxCoeff() > tol) return false;
  return min_pivot(symmetrized(RealMatrix(tau.imag()))) > tol;
}

ComplexMatrix gamma_action(const IntegerMatrix& r, const ComplexMatrix& tau, const PolarizationType& delta,
                           double tol) {
  const Index g = static_cast<Index>(delta.size());
  if (tau.rows() != g || tau.cols() != g || r.rows() != 2 * g || r.cols() != 2 * g)
    throw std::invalid_argument("dimension mismatch between r, τ and δ");
  IntegerMatrix e = standard_symplectic_form(delta);
  if (IntegerMatrix(r * e * r.transpose()) != e) fail(ErrorCode::NotSymplectic, "r·E·rᵀ ≠ E", "r");
  RealMatrix rr = to_real(r);
  ComplexMatrix a = rr.topLeftCorner(g, g).cast<std::complex<double>>();
  ComplexMatrix b = rr.topRightCorner(g, g).cast<std::complex<double>>();
  ComplexMatrix c = rr.bottomLeftCorner(g, g).cast<std::complex<double>>();
  ComplexMatrix d = rr.bottomRightCorner(g, g).cast<std::complex<double>>();
  ComplexMatrix dl = to_real(delta.matrix()).cast<std::complex<double>>();
  ComplexMatrix den = c * tau + d * dl;
  ComplexMatrix out = (a * tau + b * dl) * guarded_inverse(den, tol, "cτ + dδ") * dl;
  return symmetrized(out);
}

ComplexMatrix cayley_transform(const ComplexMatrix& tau, double tol) {
  const Index g = tau.rows();
  const std::complex<double> i(0.0, 1.0);
  ComplexMatrix id = ComplexMatrix::Identity(g, g);
  ComplexMatrix out = (tau - i * id) * guarded_inverse(tau + i * id, tol, "τ + iI");
  return symmetrized(out);
}

RealMatrix tropicalize(const ComplexMatrix& tau, int g_prime, double tol) {
  const Index g = tau.rows();
  if (tau.cols() != g || g_prime < 0 || g_prime >= g) throw std::invalid_argument("need 0 ≤ g′ < g");
  RealMatrix im = symmetrized(RealMatrix(tau.imag()));
  const Index h = g - g_prime;
  RealMatrix t1 = im.topLeftCorner(g_prime, g_prime);
  RealMatrix t3 = im.topRightCorner(g_prime, h);
  RealMatrix t2 = im.bottomRightCorner(h, h);
  if (g_prime == 0) return t2;
  Eigen::LDLT<RealMatrix> ldlt(t1);
  if (ldlt.vectorD().minCoeff() < tol) fail(ErrorCode::IllConditionedBlock, "Im τ₁ is nearly singular", "tau");
  RealMatrix out = t2 - t3.transpose() * ldlt.solve(t3);
  return symmetrized(out);
}

}  // namespace tropab
