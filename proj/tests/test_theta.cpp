#include "doctest.h"

#include "tropab/theta.hpp"

#include <random>
#include <set>

using namespace tropab;
using Eigen::Index;
using V = std::vector<std::int64_t>;

namespace {

IntVector iv(std::initializer_list<Integer> xs) { return make_vec<Integer>(xs); }
RationalMatrix rmat(std::initializer_list<std::initializer_list<Rational>> rows) { return make_mat<Rational>(rows); }

// ζ^k as a coefficient vector, built by hand.
Cyclotomic zeta(int m, std::int64_t k) {
  Cyclotomic c(m, 0);
  c[((k % m) + m) % m] = 1;
  return c;
}

std::map<V, HeisenbergElement> lifts_with_scalars(const HeisenbergGroup& h, const std::vector<std::int64_t>& ts) {
  std::map<V, HeisenbergElement> out;
  for (std::int64_t i = 0; i < h.degree(); ++i) {
    V alpha = h.point(i);
    out[alpha] = h.normalize({ts[i], h.negate(alpha), V(alpha.size(), 0)});
  }
  return out;
}

PwAffineFunction hesse_phi() { return sigma_section(rmat({{1}}), identity<Integer>(1), 4); }

}  // namespace

TEST_CASE("cyclotomic arithmetic") {
  CyclotomicRing r6(6);
  CHECK(r6.degree() == 2);
  CHECK(r6.cyclotomic_polynomial() == std::vector<std::int64_t>{1, -1, 1});
  // ζ² = ζ − 1 in ℤ[ζ₆].
  CHECK(r6.equal(r6.root(2), r6.add(r6.root(1), Cyclotomic{-1, 0, 0, 0, 0, 0})));
  CHECK(r6.equal(r6.mul(r6.root(4), r6.root(5)), r6.root(3)));
  CHECK(r6.equal(r6.root(3), Cyclotomic{-1, 0, 0, 0, 0, 0}));
  Cyclotomic sum = r6.zero();
  for (int k = 0; k < 6; ++k) sum = r6.add(sum, r6.root(k));
  CHECK(r6.is_zero(sum));
  CHECK(r6.is_root_of_unity(r6.rotate(r6.root(1), 4)));
  CHECK_FALSE(r6.is_root_of_unity(r6.add(r6.root(0), r6.root(0))));
  // 1 + ζ² = ζ is a unit root; 1 + ζ³ = 0 is not.
  CHECK(r6.is_root_of_unity(r6.add(r6.root(0), r6.root(2))));
  CHECK_FALSE(r6.is_root_of_unity(r6.add(r6.root(0), r6.root(3))));
  CHECK(r6.exponent_list(Cyclotomic{-1, 0, 0, 0, 0, 0}) == std::vector<int>{3});
  CHECK(r6.exponent_list(r6.add(r6.root(1), r6.root(1))) == std::vector<int>{1, 1});
  CyclotomicRing r4(4);
  CHECK(r4.cyclotomic_polynomial() == std::vector<std::int64_t>{1, 0, 1});
}

TEST_CASE("Heisenberg group law") {
  HeisenbergGroup h({3}, 6);
  CHECK(h.order() == 54);
  CHECK(h.elements().size() == 54);
  HeisenbergElement x{4, {2}, {1}};
  CHECK(h.mul(h.identity(), x) == x);
  CHECK(h.mul(x, h.inverse(x)) == h.identity());
  // Commutator of (0;1;0) and (0;0;1) is ζ₃ = ζ₆².
  HeisenbergElement c = h.commutator({0, {1}, {0}}, {0, {0}, {1}});
  CHECK(c == HeisenbergElement{2, {0}, {0}});

  auto all = h.elements();
  // Associativity, and the centre is exactly the scalars μ_M.
  for (const auto& a : all)
    for (const auto& b : all)
      for (const auto& d : all) CHECK(h.mul(h.mul(a, b), d) == h.mul(a, h.mul(b, d)));
  std::set<HeisenbergElement> centre;
  for (const auto& a : all) {
    bool central = true;
    for (const auto& b : all)
      if (!(h.mul(a, b) == h.mul(b, a))) central = false;
    if (central) centre.insert(a);
  }
  CHECK(centre.size() == 6);
  for (const auto& z : centre) CHECK((z.a == V{0} && z.b == V{0}));
}

TEST_CASE("commutator pairing is bimultiplicative and nondegenerate") {
  HeisenbergGroup h({2, 4}, 8);
  auto pts = [&] {
    std::vector<V> out;
    for (std::int64_t i = 0; i < h.degree(); ++i) out.push_back(h.point(i));
    return out;
  }();
  V zero{0, 0};
  auto pair = [&](const V& a, const V& b) { return h.commutator({0, a, zero}, {0, zero, b}).t; };
  for (const auto& a : pts) {
    bool degenerate = a != zero;
    for (const auto& b : pts) {
      if (pair(a, b) != 0) degenerate = false;
      for (const auto& a2 : pts) CHECK((pair(h.add(a, a2), b) - pair(a, b) - pair(a2, b)) % 8 == 0);
    }
    CHECK_FALSE(degenerate);
  }
}

TEST_CASE("modulus checks") {
  for (auto bad : {std::pair<V, int>{{3}, 3}, {{2, 3}, 12}, {{0}, 2}, {{2}, 6}}) {
    try {
      HeisenbergGroup h(bad.first, bad.second);
      FAIL("expected BadModulus");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::BadModulus);
    }
  }
}

TEST_CASE("power map kernel") {
  for (auto [d, m, order] : {std::tuple<V, int, int>{{1}, 2, 2}, {{3}, 6, 54}, {{2, 2}, 4, 64}}) {
    HeisenbergGroup h(d, m);
    CHECK(h.order() == order);
    CHECK(power_map_kernel_check(h));
  }
}

TEST_CASE("Schroedinger representation") {
  HeisenbergGroup h({3}, 6);
  SchrodingerVector e0 = basis_vector(h, {0});
  CHECK(same_vector(h, schrodinger_action(h, h.identity(), e0), e0));
  CHECK(same_vector(h, schrodinger_action(h, {0, {1}, {0}}, e0), basis_vector(h, {2})));
  for (std::int64_t k = 0; k < 3; ++k) {
    SchrodingerVector ek = basis_vector(h, {k});
    SchrodingerVector expect = ek;
    expect[k] = zeta(6, 2 * k);
    CHECK(same_vector(h, schrodinger_action(h, {0, {0}, {1}}, ek), expect));
  }
  // S_g S_h = S_{gh} on every basis vector.
  auto all = h.elements();
  for (const auto& g : all)
    for (const auto& k : all)
      for (std::int64_t i = 0; i < 3; ++i) {
        SchrodingerVector v = basis_vector(h, {i});
        CHECK(same_vector(h, schrodinger_action(h, g, schrodinger_action(h, k, v)),
                          schrodinger_action(h, h.mul(g, k), v)));
      }
  CHECK(heisenberg_relation_holds(h));
  CHECK(heisenberg_relation_holds(HeisenbergGroup({2, 2}, 4)));
}

TEST_CASE("K2 eigenspaces") {
  HeisenbergGroup h3({3}, 6);
  auto s3 = kw_decompose(h3);
  REQUIRE(s3.size() == 3);
  for (const auto& e : s3) {
    REQUIRE(e.basis.size() == 1);
    CHECK(same_vector(h3, e.basis[0], basis_vector(h3, e.character)));
  }
  HeisenbergGroup h1({1}, 2);
  auto s1 = kw_decompose(h1);
  REQUIRE(s1.size() == 1);
  CHECK(s1[0].basis.size() == 1);

  HeisenbergGroup h22({2, 2}, 4);
  auto s22 = kw_decompose(h22);
  CHECK(s22.size() == 4);
  for (const auto& e : s22) CHECK(e.basis.size() == 1);

  // S_g sends V_α into V_{α + w(g)}.
  for (const auto& g : h22.elements()) {
    for (const auto& e : s22) {
      V target = h22.add(e.character, h22.w(g));
      SchrodingerVector moved = schrodinger_action(h22, g, e.basis[0]);
      for (std::int64_t ib = 0; ib < h22.degree(); ++ib) {
        V b = h22.point(ib);
        SchrodingerVector lhs = schrodinger_action(h22, h22.k2_element(b), moved);
        SchrodingerVector rhs = moved;
        for (auto& c : rhs) c = h22.ring().rotate(c, h22.pairing(b, target));
        CHECK(same_vector(h22, lhs, rhs));
      }
    }
  }
}

TEST_CASE("balanced sections") {
  HeisenbergGroup h1({1}, 2);
  SchrodingerVector t1 = basis_vector(h1, {0});
  CHECK(same_vector(h1, balanced_section(h1, t1, lifts_with_scalars(h1, {0})), t1));

  HeisenbergGroup h({3}, 6);
  SchrodingerVector t0 = basis_vector(h, {0});
  SchrodingerVector trivial = balanced_section(h, t0, lifts_with_scalars(h, {0, 0, 0}));
  for (std::int64_t i = 0; i < 3; ++i) CHECK(h.ring().equal(trivial[i], zeta(6, 0)));

  SchrodingerVector phased = balanced_section(h, t0, lifts_with_scalars(h, {0, 1, 2}));
  CHECK(h.ring().equal(phased[0], zeta(6, 0)));
  CHECK(h.ring().equal(phased[1], zeta(6, 1)));
  CHECK(h.ring().equal(phased[2], zeta(6, 2)));

  auto wrong = lifts_with_scalars(h, {0, 0, 0});
  wrong[{1}].a = {1};
  try {
    balanced_section(h, t0, wrong);
    FAIL("expected BadLift");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::BadLift);
  }
}

TEST_CASE("balanced set enumeration") {
  for (auto [d, m, count] : {std::tuple<V, int, std::size_t>{{1}, 2, 1}, {{3}, 6, 36}, {{2}, 4, 4}, {{2, 2}, 4, 64}}) {
    HeisenbergGroup h(d, m);
    auto all = enumerate_balanced_set(h);
    CHECK(all.size() == count);
    for (const auto& v : all) {
      CHECK(h.ring().equal(v[0], zeta(m, 0)));
      for (const auto& c : v) CHECK_FALSE(h.ring().is_zero(c));
    }
    // Distinct up to global scalar.
    for (std::size_t i = 0; i < all.size(); ++i)
      for (std::size_t j = i + 1; j < all.size(); ++j)
        for (int k = 0; k < m; ++k) {
          SchrodingerVector r = all[j];
          for (auto& c : r) c = h.ring().rotate(c, k);
          CHECK_FALSE(same_vector(h, all[i], r));
        }
  }
  try {
    enumerate_balanced_set(HeisenbergGroup({3, 3}, 6));
    FAIL("expected TooLarge");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::TooLarge);
  }
}

TEST_CASE("degeneration exponents") {
  auto principal = make_degeneration_data(rmat({{Rational(1, 2)}}), PolarizationType{{1}}, IntegerMatrix::Zero(1, 1));
  auto e = degen_exponents(principal, iv({1}), iv({1}));
  CHECK(e.a_exp == Rational(1, 2));
  CHECK(e.b_exp == 1);
  auto z = degen_exponents(principal, iv({0}), iv({1}));
  CHECK(z.a_exp == 0);
  CHECK(z.b_exp == 0);
  // b(λ, φμ) = Q(λ+μ) − Q(λ) − Q(μ) at λ = μ = 1: 1 = 2 − ½ − ½.
  CHECK(degen_exponents(principal, iv({2}), iv({0})).a_exp - 2 * e.a_exp == e.b_exp);

  std::mt19937_64 rng(31);
  std::uniform_int_distribution<int> k(-3, 3);
  for (auto dv : {std::vector<Integer>{1, 2}, std::vector<Integer>{2, 2}, std::vector<Integer>{1, 3}}) {
    PolarizationType d{dv};
    int a = k(rng), b = k(rng), c = k(rng);
    RationalMatrix kk = rmat({{2 + std::abs(a), b}, {b, 2 + std::abs(c)}});
    RationalMatrix dm = cast_matrix<Rational>(d.matrix());
    RationalMatrix q = dm * kk * dm / 2;
    auto data = make_degeneration_data(q, d, IntegerMatrix::Zero(2, 2));
    for (int l0 = -2; l0 <= 2; ++l0)
      for (int l1 = -2; l1 <= 2; ++l1)
        for (int m0 = -2; m0 <= 2; ++m0)
          for (int m1 = -2; m1 <= 2; ++m1) {
            IntVector lam = iv({l0, l1}), mu = iv({m0, m1});
            IntVector dmu = d.matrix() * mu;
            Rational lhs = degen_exponents(data, lam + mu, iv({0, 0})).a_exp;
            Rational rhs = degen_exponents(data, lam, dmu).b_exp + degen_exponents(data, lam, iv({0, 0})).a_exp +
                           degen_exponents(data, mu, iv({0, 0})).a_exp;
            CHECK(lhs == rhs);
          }
  }
  try {
    make_degeneration_data(rmat({{Rational(1, 3)}}), PolarizationType{{1}}, IntegerMatrix::Zero(1, 1));
    FAIL("expected InconsistentData");
  } catch (const Error& err) {
    CHECK(err.code() == ErrorCode::InconsistentData);
  }
}

TEST_CASE("twist data") {
  PolarizationType id2{{1, 1}};
  RationalMatrix q = identity<Rational>(2);
  auto none = make_degeneration_data(q, id2, IntegerMatrix::Zero(2, 2));
  auto t0 = twist_data(none, iv({1, 1}), iv({1, 0}));
  CHECK(t0.a_prime == 0);
  CHECK(t0.b_prime == 0);

  auto data = make_degeneration_data(q, id2, make_mat<Integer>({{0, 1}, {-1, 0}}));
  CHECK(data.s_prime == make_mat<Integer>({{0, 1}, {1, 0}}));
  CHECK(twist_data(data, iv({1, 0}), iv({0, 1})).b_prime == 1);  // −1 mod 2
  CHECK(twist_data(data, iv({1, 1}), iv({0, 0})).a_prime == 1);  // −1 mod 2
  CHECK(twist_data(data, iv({1, 0}), iv({0, 0})).a_prime == 0);

  // a′(λ+μ) − a′(λ) − a′(μ) ≡ b′(λ, 𝔡μ) (mod 2), and the polar form of a′ is S_ξ mod 2.
  for (auto dv : {std::vector<Integer>{1, 2}, std::vector<Integer>{2, 4}}) {
    PolarizationType d{dv};
    RationalMatrix dm = cast_matrix<Rational>(d.matrix());
    auto tw = make_degeneration_data(RationalMatrix(dm * identity<Rational>(2) * dm), d,
                                     make_mat<Integer>({{0, 3}, {-3, 0}}));
    for (int l0 = -2; l0 <= 2; ++l0)
      for (int l1 = -2; l1 <= 2; ++l1)
        for (int m0 = -2; m0 <= 2; ++m0)
          for (int m1 = -2; m1 <= 2; ++m1) {
            IntVector lam = iv({l0, l1}), mu = iv({m0, m1}), zero = iv({0, 0});
            Rational lhs = twist_data(tw, lam + mu, zero).a_prime - twist_data(tw, lam, zero).a_prime -
                           twist_data(tw, mu, zero).a_prime;
            CHECK(mod2(lhs) == twist_data(tw, lam, IntVector(d.matrix() * mu)).b_prime);
          }
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        if (i == j) continue;
        IntVector ei = IntVector::Zero(2), ej = IntVector::Zero(2), z = IntVector::Zero(2);
        ei(i) = 1;
        ej(j) = 1;
        Rational polar = twist_data(tw, ei + ej, z).a_prime - twist_data(tw, ei, z).a_prime - twist_data(tw, ej, z).a_prime;
        CHECK(mod2(polar) == mod2(Rational(tw.s_xi(i, j))));
      }
  }
  try {
    make_degeneration_data(q, id2, make_mat<Integer>({{0, 1}, {1, 0}}));
    FAIL("expected BadTwistPair");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::BadTwistPair);
  }
}

TEST_CASE("valuation profiles") {
  HeisenbergGroup h({3}, 6);
  IntegerMatrix phi = make_mat<Integer>({{3}});
  auto all = enumerate_balanced_set(h);
  auto first = section_valuation_profile(h, all.front(), hesse_phi(), phi, 4);
  REQUIRE(first.size() == 3);
  CHECK(first[0].value == 0);
  CHECK(first[1].value == Rational(1, 2));
  CHECK(first[2].value == Rational(1, 2));
  for (const auto& v : all) {
    auto p = section_valuation_profile(h, v, hesse_phi(), phi, 4);
    REQUIRE(p.size() == 3);
    for (int i = 0; i < 3; ++i) CHECK(p[i].value == first[i].value);
  }

  HeisenbergGroup h1({1}, 2);
  auto principal = section_valuation_profile(h1, basis_vector(h1, {0}), hesse_phi(), identity<Integer>(1), 4);
  REQUIRE(principal.size() == 1);
  CHECK(principal[0].value == 0);

  try {
    section_valuation_profile(h, basis_vector(h, {0}), hesse_phi(), phi, 4);
    FAIL("expected EmptyComponent");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::EmptyComponent);
  }
  try {
    section_valuation_profile(h, all.front(), hesse_phi(), make_mat<Integer>({{2}}), 4);
    FAIL("expected InconsistentData");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InconsistentData);
  }
}
