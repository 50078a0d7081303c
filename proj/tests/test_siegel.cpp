#include "doctest.h"

#include "tropab/siegel.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <random>

using namespace tropab;
using Eigen::Index;
using cd = std::complex<double>;

namespace {

const cd I(0.0, 1.0);

ComplexMatrix scalar(cd z) {
  ComplexMatrix m(1, 1);
  m(0, 0) = z;
  return m;
}

// Random τ = X + iY with Y = AAᵀ + g·I (well conditioned).
ComplexMatrix random_tau(std::mt19937_64& rng, Index g) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  RealMatrix x(g, g), a(g, g);
  for (Index i = 0; i < g; ++i)
    for (Index j = 0; j < g; ++j) {
      x(i, j) = u(rng);
      a(i, j) = u(rng);
    }
  x = (x + x.transpose()).eval() / 2.0;
  RealMatrix y = a * a.transpose() + static_cast<double>(g) * RealMatrix::Identity(g, g);
  return x.cast<cd>() + I * y.cast<cd>();
}

// Direct oracle: invert Im τ, take the lower-right block, invert back.
RealMatrix trop_oracle(const ComplexMatrix& tau, Index g_prime) {
  RealMatrix y = tau.imag();
  RealMatrix inv = y.inverse();
  Index h = y.rows() - g_prime;
  return RealMatrix(inv.bottomRightCorner(h, h)).inverse();
}

double rel_err(const RealMatrix& a, const RealMatrix& b) { return (a - b).norm() / b.norm(); }

IntegerMatrix block(const IntegerMatrix& a, const IntegerMatrix& b, const IntegerMatrix& c, const IntegerMatrix& d) {
  Index g = a.rows();
  IntegerMatrix r(2 * g, 2 * g);
  r << a, b, c, d;
  return r;
}

}  // namespace

TEST_CASE("gamma action examples") {
  PolarizationType one{{1}};
  CHECK(std::abs(gamma_action(identity<Integer>(2), scalar(I), one)(0, 0) - I) < 1e-12);
  CHECK(std::abs(gamma_action(make_mat<Integer>({{1, 1}, {0, 1}}), scalar(I), one)(0, 0) - (1.0 + I)) < 1e-12);
  CHECK(std::abs(gamma_action(make_mat<Integer>({{0, 1}, {-1, 0}}), scalar(I), one)(0, 0) - I) < 1e-12);
  try {
    gamma_action(make_mat<Integer>({{2, 0}, {0, 1}}), scalar(I), one);
    FAIL("expected NotSymplectic");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotSymplectic);
  }
  // cτ + dδ = 0 at τ = 0: denominator singular.
  try {
    gamma_action(make_mat<Integer>({{0, 1}, {-1, 0}}), scalar(0.0), one);
    FAIL("expected NearSingularDenominator");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NearSingularDenominator);
  }
}

TEST_CASE("gamma action is a group action and preserves the Siegel space") {
  std::mt19937_64 rng(1);
  for (auto dv : {std::vector<Integer>{1, 1}, std::vector<Integer>{1, 2}, std::vector<Integer>{2, 2}}) {
    PolarizationType delta{dv};
    IntegerMatrix dm = delta.matrix(), id = identity<Integer>(2), zero = IntegerMatrix::Zero(2, 2);
    IntegerMatrix s = make_mat<Integer>({{1, -1}, {-1, 2}});
    IntegerMatrix up = block(id, IntegerMatrix(dm * s), zero, id);
    IntegerMatrix low = block(id, zero, IntegerMatrix(dm * s), id);
    for (int trial = 0; trial < 5; ++trial) {
      ComplexMatrix tau = random_tau(rng, 2);
      REQUIRE(in_siegel_space(tau));
      ComplexMatrix once = gamma_action(IntegerMatrix(up * low), tau, delta);
      ComplexMatrix twice = gamma_action(up, gamma_action(low, tau, delta), delta);
      CHECK((once - twice).norm() < 1e-8);
      CHECK(in_siegel_space(once));
    }
  }
}

TEST_CASE("Cayley transform") {
  CHECK(cayley_transform(ComplexMatrix(I * ComplexMatrix::Identity(2, 2))).norm() < 1e-12);
  CHECK(std::abs(cayley_transform(scalar(2.0 * I))(0, 0) - 1.0 / 3.0) < 1e-12);
  CHECK(std::abs(cayley_transform(scalar(1.0 + I))(0, 0) - (1.0 - 2.0 * I) / 5.0) < 1e-12);
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 10; ++trial) {
    ComplexMatrix z = cayley_transform(random_tau(rng, 3));
    CHECK((z - z.transpose()).norm() < 1e-10);
    // I − Z·conj(Z) positive definite.
    ComplexMatrix m = ComplexMatrix::Identity(3, 3) - z * z.conjugate();
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es((m + m.adjoint()) / 2.0);
    CHECK(es.eigenvalues().minCoeff() > 0.0);
  }
}

TEST_CASE("tropicalization examples") {
  ComplexMatrix a2(2, 2);
  a2 << 2.0 * I, 1.0 * I, 1.0 * I, 2.0 * I;
  RealMatrix t0 = tropicalize(a2, 0);
  CHECK((t0 - (RealMatrix(2, 2) << 2, 1, 1, 2).finished()).norm() < 1e-14);
  RealMatrix t1 = tropicalize(a2, 1);
  REQUIRE(t1.rows() == 1);
  CHECK(std::abs(t1(0, 0) - 1.5) < 1e-12);
  ComplexMatrix dec(2, 2);
  dec << 3.0 * I, 0.0, 0.0, 0.5 + 5.0 * I;
  CHECK(std::abs(tropicalize(dec, 1)(0, 0) - 5.0) < 1e-14);

  ComplexMatrix bad(2, 2);
  bad << 1e-13 * I, 0.0, 0.0, I;
  try {
    tropicalize(bad, 1);
    FAIL("expected IllConditionedBlock");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::IllConditionedBlock);
  }
  CHECK_THROWS_AS(tropicalize(a2, 2), std::invalid_argument);
}

TEST_CASE("block formula agrees with the full-inverse oracle") {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 60; ++trial) {
    Index g = 2 + trial % 3;
    ComplexMatrix tau = random_tau(rng, g);
    for (Index gp = 1; gp < g; ++gp) CHECK(rel_err(tropicalize(tau, static_cast<int>(gp)), trop_oracle(tau, gp)) <= 1e-10);
  }
}

TEST_CASE("tropicalization depends only on the imaginary part") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 10; ++trial) {
    ComplexMatrix tau = random_tau(rng, 3);
    ComplexMatrix shifted = tau;
    shifted.real() += (RealMatrix(3, 3) << 1, 2, -1, 2, 0, 3, -1, 3, 5).finished();
    CHECK(tropicalize(tau, 1) == tropicalize(shifted, 1));
  }
}

TEST_CASE("stabilizer equivariance") {
  std::mt19937_64 rng(14);
  // r = diag(I, u⁻ᵀ, I, u) stabilises the cusp and acts by (uᵀ)⁻¹ Tr u⁻¹.
  for (auto u : {make_mat<Integer>({{1, 1}, {0, 1}}), make_mat<Integer>({{2, 1}, {1, 1}}),
                 make_mat<Integer>({{0, -1}, {1, 0}})}) {
    IntegerMatrix uinv_t;
    REQUIRE(to_integer_matrix(RationalMatrix(inverse(u).transpose()), uinv_t));
    IntegerMatrix a = identity<Integer>(3), d = identity<Integer>(3);
    a.bottomRightCorner(2, 2) = uinv_t;
    d.bottomRightCorner(2, 2) = u;
    IntegerMatrix r = block(a, IntegerMatrix::Zero(3, 3), IntegerMatrix::Zero(3, 3), d);
    for (int trial = 0; trial < 5; ++trial) {
      ComplexMatrix tau = random_tau(rng, 3);
      RealMatrix lhs = tropicalize(gamma_action(r, tau, PolarizationType{{1, 1, 1}}), 1);
      RealMatrix ui = RealMatrix(u.cast<double>()).inverse();
      RealMatrix rhs = ui.transpose() * tropicalize(tau, 1) * ui;
      CHECK((lhs - rhs).norm() <= 1e-8 * rhs.norm());
    }
  }
}

TEST_CASE("Siegel space membership") {
  CHECK(in_siegel_space(scalar(I)));
  CHECK_FALSE(in_siegel_space(scalar(-I)));
  ComplexMatrix asym(2, 2);
  asym << I, 1.0, 0.0, I;
  CHECK_FALSE(in_siegel_space(asym));
}
