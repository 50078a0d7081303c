#include "doctest.h"

#include "tropab/pwl.hpp"

#include <random>

using namespace tropab;
using Eigen::Index;

namespace {

IntVector iv(std::initializer_list<Integer> xs) { return make_vec<Integer>(xs); }
RatVector rv(std::initializer_list<Rational> xs) { return make_vec<Rational>(xs); }
RationalMatrix rmat(std::initializer_list<std::initializer_list<Rational>> rows) { return make_mat<Rational>(rows); }

Rational scalar_at(const PwAffineFunction& f, const RatVector& x) { return evaluate(f, x)(0); }

PwAffineFunction half_square() { return sigma_section(rmat({{1}}), identity<Integer>(1), 4); }

// Lower convex envelope of x ↦ ½Q(x) over lattice points, evaluated at x by
// minimising the interpolated value over all lattice triangles containing x.
Rational envelope_2d(const RationalMatrix& q, const RatVector& x, int reach) {
  std::vector<RatVector> pts;
  for (int i = -reach; i <= reach; ++i)
    for (int j = -reach; j <= reach; ++j) pts.push_back(rv({i, j}));
  auto lift = [&](const RatVector& p) { return p.dot(q * p) / 2; };
  std::optional<Rational> best;
  for (std::size_t a = 0; a < pts.size(); ++a)
    for (std::size_t b = a + 1; b < pts.size(); ++b)
      for (std::size_t c = b + 1; c < pts.size(); ++c) {
        RatVector u = pts[b] - pts[a], v = pts[c] - pts[a], w = x - pts[a];
        Rational det = u(0) * v(1) - u(1) * v(0);
        if (det == 0) continue;
        Rational s = (w(0) * v(1) - w(1) * v(0)) / det, t = (u(0) * w(1) - u(1) * w(0)) / det;
        if (s < 0 || t < 0 || s + t > 1) continue;
        Rational val = (1 - s - t) * lift(pts[a]) + s * lift(pts[b]) + t * lift(pts[c]);
        if (!best || val < *best) best = val;
      }
  return *best;
}

}  // namespace

TEST_CASE("sigma examples") {
  PwAffineFunction f = half_square();
  CHECK(scalar_at(f, rv({Rational(1, 2)})) == Rational(1, 4));
  CHECK(scalar_at(f, rv({3})) == Rational(9, 2));
  CHECK(scalar_at(f, rv({Rational(-5, 2)})) == Rational(13, 4));

  PwAffineFunction a2 = sigma_section(rmat({{2, 1}, {1, 2}}), identity<Integer>(2), 4);
  CHECK(scalar_at(a2, rv({Rational(1, 2), Rational(1, 2)})) == 1);

  RationalMatrix q = rmat({{3, 1}, {1, 2}});
  PwAffineFunction s1 = sigma_section(q, identity<Integer>(2), 4);
  PwAffineFunction s4 = sigma_section(RationalMatrix(4 * q), identity<Integer>(2), 4);
  CHECK(same_function(s4, Rational(4) * s1));
}

TEST_CASE("sigma equals the lower convex envelope") {
  std::mt19937_64 rng(8);
  std::uniform_int_distribution<int> num(-7, 7);
  for (auto q : {rmat({{2, 1}, {1, 2}}), rmat({{3, -1}, {-1, 2}}), rmat({{1, 0}, {0, 1}}), rmat({{5, 2}, {2, 3}})}) {
    PwAffineFunction f = sigma_section(q, identity<Integer>(2), 4);
    for (int k = 0; k < 6; ++k) {
      RatVector x = rv({Rational(num(rng), 4), Rational(num(rng), 3)});
      CHECK(scalar_at(f, x) == envelope_2d(q, x, 3));
    }
  }
}

TEST_CASE("quasiperiodicity of evaluation") {
  PwAffineFunction f = sigma_section(rmat({{3, -1}, {-1, 2}}), identity<Integer>(2), 4);
  std::mt19937_64 rng(2);
  std::uniform_int_distribution<int> num(-9, 9);
  for (int k = 0; k < 10; ++k) {
    RatVector x = rv({Rational(num(rng), 5), Rational(num(rng), 7)});
    IntVector lam = iv({num(rng) / 3, num(rng) / 3});
    AffinePiece inc = translation_increment(f, lam);
    CHECK(scalar_at(f, RatVector(x + cast_vector<Rational>(lam))) - scalar_at(f, x) == inc(x)(0));
  }
}

TEST_CASE("bending parameters") {
  for (const auto& b : bending_parameters(half_square())) CHECK(b.payload == rv({1}));

  PwAffineFunction a2 = sigma_section(rmat({{2, 1}, {1, 2}}), identity<Integer>(2), 4);
  auto walls = bending_parameters(a2);
  CHECK(walls.size() == 3);
  for (const auto& b : walls) CHECK(b.payload == rv({1}));

  // Slope-difference oracle for Q = [[3,1],[1,2]]: the jump across the wall with
  // normal n is (L₊ − L₋)·ω for a transversal ω with n·ω = 1.
  RationalMatrix q = rmat({{3, 1}, {1, 2}});
  PwAffineFunction f = sigma_section(q, identity<Integer>(2), 4);
  for (const auto& b : bending_parameters(f)) {
    AffinePiece plus = piece_at(f, b.wall.plus_cell, b.wall.plus_shift);
    AffinePiece minus = piece_at(f, b.wall.minus_cell, b.wall.minus_shift);
    RatVector n = cast_vector<Rational>(b.wall.normal);
    RatVector omega = n(0) != 0 ? RatVector(rv({1 / n(0), 0})) : RatVector(rv({0, 1 / n(1)}));
    if (abs(n(0)) == 1 || abs(n(1)) == 1) CHECK(RatVector((plus.linear - minus.linear) * omega) == b.payload);
    CHECK(b.payload(0) > 0);
  }

  PwAffineFunction affine = half_square();
  affine.pieces[0] = {rmat({{2}}), rv({1})};
  affine.increments[0] = {rmat({{0}}), rv({2})};
  for (const auto& b : bending_parameters(affine)) CHECK(b.payload == rv({0}));

  PwAffineFunction broken = half_square();
  broken.increments[0].constant(0) += 1;
  CHECK_THROWS_AS(bending_parameters(broken), Error);
}

TEST_CASE("bending additivity") {
  PwAffineFunction f = sigma_section(rmat({{2, 1}, {1, 2}}), identity<Integer>(2), 4);
  PwAffineFunction g = sigma_section(rmat({{3, 1}, {1, 3}}), identity<Integer>(2), 4);
  REQUIRE(same_paving(f.paving, g.paving));
  auto bf = bending_parameters(f), bg = bending_parameters(g), bs = bending_parameters(f + g);
  REQUIRE(bf.size() == bs.size());
  for (std::size_t i = 0; i < bs.size(); ++i) CHECK(bs[i].payload == RatVector(bf[i].payload + bg[i].payload));
}

TEST_CASE("P-convexity") {
  PwAffineFunction f = half_square();
  ToricMonoid n = orthant_monoid(1);
  CHECK(is_p_convex(f, n, true));
  CHECK(is_p_convex(f, n, false));
  CHECK_FALSE(is_p_convex(Rational(-1) * f, n, false));

  PwAffineFunction mixed = f;
  mixed.payload_rank = 2;
  mixed.pieces[0] = {rmat({{Rational(1, 2)}, {Rational(-1, 2)}}), rv({0, 0})};
  mixed.increments[0] = {rmat({{1}, {-1}}), rv({Rational(1, 2), Rational(-1, 2)})};
  CHECK_FALSE(is_p_convex(mixed, orthant_monoid(2), false));
  CHECK_THROWS_AS(is_p_convex(mixed, n, false), Error);
}

TEST_CASE("toric monoids") {
  ToricMonoid p;
  p.ambient_rank = 2;
  p.dual = make_mat<Integer>({{1, 0}, {-1, 2}});
  p.lattice_basis = identity<Integer>(2);
  CHECK(is_sharp(p));
  auto rays = extreme_rays(p);
  CHECK(rays == std::vector<IntVector>{iv({0, 1}), iv({2, 1})});
  auto hb = hilbert_basis(p);
  CHECK(hb == std::vector<IntVector>{iv({0, 1}), iv({1, 1}), iv({2, 1})});
  CHECK(monoid_contains(p, rv({1, 1})));
  CHECK_FALSE(monoid_contains(p, rv({1, 0})));
  CHECK_FALSE(monoid_contains(p, rv({Rational(1, 2), 1})));

  ToricMonoid half;
  half.ambient_rank = 2;
  half.dual = make_mat<Integer>({{1, 0}});
  half.lattice_basis = identity<Integer>(2);
  CHECK_FALSE(is_sharp(half));
  CHECK(is_unit(half, rv({0, 1})));
  CHECK_THROWS_AS(extreme_rays(half), Error);

  ToricMonoid even = orthant_monoid(1);
  even.lattice_basis = make_mat<Integer>({{2}});
  CHECK(hilbert_basis(even) == std::vector<IntVector>{iv({2})});
}

TEST_CASE("quasiperiodic decomposition") {
  LatticeSamples s;
  for (int x = -4; x <= 4; ++x) s[iv({x})] = Rational(x * x, 2);
  auto d = quasiperiodic_decompose(s, identity<Integer>(1));
  CHECK(d.bilinear == rmat({{1}}));
  CHECK(d.quadratic_linear == rv({0}));
  for (const auto& [x, v] : d.periodic) CHECK(v == 0);

  LatticeSamples t;
  for (int x = -6; x <= 6; ++x) t[iv({x})] = x * x + ((x % 2) + 2) % 2;
  auto e = quasiperiodic_decompose(t, make_mat<Integer>({{2}}));
  CHECK(e.bilinear == rmat({{2}}));
  for (const auto& [x, v] : t) CHECK(e.reconstruct(x) == v);
  CHECK(e.quadratic_linear == rv({0}));
  CHECK(e.periodic.at(iv({0})) == 0);
  CHECK(e.periodic.at(iv({1})) == 1);

  LatticeSamples cubic;
  for (int x = -5; x <= 5; ++x) cubic[iv({x})] = x * x * x;
  try {
    quasiperiodic_decompose(cubic, identity<Integer>(1));
    FAIL("expected NotQuasiperiodic");
  } catch (const Error& err) {
    CHECK(err.code() == ErrorCode::NotQuasiperiodic);
  }
}

TEST_CASE("quasiperiodic polarization identity") {
  // A(λ+μ) − A(λ) − A(μ) = B(λ, μ) on random rank-2 data.
  std::mt19937_64 rng(4);
  std::uniform_int_distribution<int> c(-3, 3);
  for (int trial = 0; trial < 5; ++trial) {
    int a = c(rng), b = c(rng), e = c(rng), l0 = c(rng), l1 = c(rng);
    LatticeSamples s;
    for (int x = -4; x <= 4; ++x)
      for (int y = -4; y <= 4; ++y)
        s[iv({x, y})] = Rational(a * x * x + 2 * b * x * y + e * y * y + l0 * x + l1 * y, 2) + ((x + 2 * y) % 3 == 0);
    auto d = quasiperiodic_decompose(s, make_mat<Integer>({{3, 0}, {0, 3}}));
    CHECK(is_symmetric(d.bilinear));
    for (int i = 0; i < 4; ++i) {
      IntVector lam = iv({c(rng), c(rng)}), mu = iv({c(rng), c(rng)});
      Rational lhs = d.quadratic_part(lam + mu) - d.quadratic_part(lam) - d.quadratic_part(mu);
      CHECK(lhs == cast_vector<Rational>(lam).dot(d.bilinear * cast_vector<Rational>(mu)));
    }
    for (const auto& [x, v] : s)
      if (abs(x(0)) <= 3 && abs(x(1)) <= 3) CHECK(d.reconstruct(x) == v);
  }
}

TEST_CASE("interpolation on triangulations") {
  PeriodicPaving unit = make_paving(identity<Integer>(1), {{iv({0}), iv({1})}});
  LatticeSamples sq;
  for (int x = -4; x <= 4; ++x) sq[iv({x})] = Rational(x * x, 2);
  PwAffineFunction g = interpolate_on_triangulation(sq, unit);
  CHECK(scalar_at(g, rv({Rational(1, 2)})) == Rational(1, 4));
  CHECK(same_function(g, half_square()));

  LatticeSamples constant;
  for (int x = -4; x <= 4; ++x) constant[iv({x})] = 5;
  for (const auto& b : bending_parameters(interpolate_on_triangulation(constant, unit))) CHECK(b.payload == rv({0}));

  PeriodicPaving coarse = make_paving(make_mat<Integer>({{2}}), {{iv({0}), iv({2})}});
  LatticeSamples psi;
  for (int x = -6; x <= 6; ++x) psi[iv({x})] = x * x;
  PwAffineFunction h = interpolate_on_triangulation(psi, coarse);
  CHECK(scalar_at(h, rv({1})) == (psi[iv({0})] + psi[iv({2})]) / 2);

  PeriodicPaving squares = make_paving(identity<Integer>(2), {{iv({0, 0}), iv({0, 1}), iv({1, 0}), iv({1, 1})}});
  LatticeSamples two;
  for (int x = -3; x <= 3; ++x)
    for (int y = -3; y <= 3; ++y) two[iv({x, y})] = x * x + y * y;
  try {
    interpolate_on_triangulation(two, squares);
    FAIL("expected NotSimplicial");
  } catch (const Error& err) {
    CHECK(err.code() == ErrorCode::NotSimplicial);
  }
  LatticeSamples sparse{{iv({5}), 1}};
  try {
    interpolate_on_triangulation(sparse, unit);
    FAIL("expected MissingVertexValue");
  } catch (const Error& err) {
    CHECK(err.code() == ErrorCode::MissingVertexValue);
  }
}

TEST_CASE("cone C^Y membership") {
  PeriodicPaving unit = make_paving(identity<Integer>(1), {{iv({0}), iv({1})}});
  PeriodicPaving coarse = make_paving(make_mat<Integer>({{2}}), {{iv({0}), iv({2})}});
  LatticeSamples sq, neg;
  for (int x = -6; x <= 6; ++x) {
    sq[iv({x})] = x * x;
    neg[iv({x})] = -x * x;
  }
  CHECK(cone_cy_membership(sq, unit, identity<Integer>(1)));
  CHECK_FALSE(cone_cy_membership(sq, coarse, make_mat<Integer>({{2}})));
  CHECK_FALSE(cone_cy_membership(neg, unit, identity<Integer>(1)));

  // Delaunay-chamber coherence for unimodular triangulations.
  for (auto q : {rmat({{2, 1}, {1, 2}}), rmat({{3, -1}, {-1, 2}}), rmat({{5, 2}, {2, 3}})}) {
    PeriodicPaving t = delaunay_subdivision(q, identity<Integer>(2), 4);
    REQUIRE(is_simplicial(t));
    LatticeSamples psi;
    for (int x = -5; x <= 5; ++x)
      for (int y = -5; y <= 5; ++y) psi[iv({x, y})] = half_form(q, iv({x, y}));
    CHECK(cone_cy_membership(psi, t, identity<Integer>(2)));
  }
}

TEST_CASE("affine regions recover the Delaunay paving") {
  for (auto q : {rmat({{2, 1}, {1, 2}}), identity<Rational>(2), rmat({{5, 2}, {2, 3}})}) {
    PwAffineFunction f = sigma_section(q, identity<Integer>(2), 4);
    AffineRegions r = affine_region_paving(f);
    CHECK(r.bounded);
    CHECK(same_paving(r.paving, delaunay_subdivision(q, identity<Integer>(2), 4)));
    CHECK(associated_form(f) == q);
  }
  PwAffineFunction affine = half_square();
  affine.pieces[0] = {rmat({{2}}), rv({1})};
  affine.increments[0] = {rmat({{0}}), rv({2})};
  CHECK_FALSE(affine_region_paving(affine).bounded);
}

TEST_CASE("Legendre transform") {
  auto t = legendre_transform(half_square(), 4);
  CHECK(t.at(iv({0})) == 0);
  CHECK(t.at(iv({-1})) == Rational(1, 2));
  CHECK(t.at(iv({1})) == t.at(iv({0})) + 0 + Rational(1, 2));
  for (int m = -4; m <= 4; ++m) CHECK(t.at(iv({m})) == Rational(m * m, 2));

  // φ̌(μ + Qλ) = φ̌(μ) + ⟨λ, μ⟩ + ½Q(λ) for integral Q.
  RationalMatrix q = rmat({{2, 1}, {1, 2}});
  IntegerMatrix qi = make_mat<Integer>({{2, 1}, {1, 2}});
  auto u = legendre_transform(sigma_section(q, identity<Integer>(2), 4), 4);
  int checked = 0;
  for (const auto& [mu, v] : u)
    for (int a = -1; a <= 1; ++a)
      for (int b = -1; b <= 1; ++b) {
        IntVector lam = iv({a, b});
        IntVector shifted = mu + qi * lam;
        auto it = u.find(shifted);
        if (it == u.end()) continue;
        CHECK(it->second == v + cast_vector<Rational>(lam).dot(cast_vector<Rational>(mu)) + half_form(q, lam));
        ++checked;
      }
  CHECK(checked > 20);

  try {
    legendre_transform(Rational(-1) * half_square(), 4);
    FAIL("expected NotConvex");
  } catch (const Error& err) {
    CHECK(err.code() == ErrorCode::NotConvex);
  }
}
