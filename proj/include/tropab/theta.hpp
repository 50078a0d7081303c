#pragma once

#include "tropab/monoid.hpp"

#include <cstdint>
#include <tuple>

namespace tropab {

// ---------------------------------------------------------------------------
// Cyclotomic integers ℤ[ζ_M]
// ---------------------------------------------------------------------------

// Coefficients of 1, ζ, …, ζ^{M−1}; not reduced. Equality is decided modulo Φ_M.
using Cyclotomic = std::vector<std::int64_t>;

class CyclotomicRing {
 public:
  explicit CyclotomicRing(int m);

  int modulus() const { return m_; }
  int degree() const { return static_cast<int>(phi_.size()) - 1; }  // φ(M)
  const std::vector<std::int64_t>& cyclotomic_polynomial() const { return phi_; }

  Cyclotomic zero() const { return Cyclotomic(m_, 0); }
  Cyclotomic root(std::int64_t k) const;  // ζ^k
  Cyclotomic add(const Cyclotomic& a, const Cyclotomic& b) const;
  Cyclotomic mul(const Cyclotomic& a, const Cyclotomic& b) const;
  Cyclotomic rotate(const Cyclotomic& a, std::int64_t k) const;  // ζ^k·a

  // Remainder modulo Φ_M: φ(M) coefficients.
  std::vector<std::int64_t> reduce(const Cyclotomic& a) const;
  bool equal(const Cyclotomic& a, const Cyclotomic& b) const;
  bool is_zero(const Cyclotomic& a) const;
  bool is_root_of_unity(const Cyclotomic& a) const;

  // Multiset of exponents k with a = Σ ζ^k, using −ζ^k = ζ^{k+M/2} (M even).
  std::vector<int> exponent_list(const Cyclotomic& a) const;

 private:
  int m_;
  std::vector<std::int64_t> phi_;
};

// ---------------------------------------------------------------------------
// Finite Heisenberg group ℋ(δ, M)
// ---------------------------------------------------------------------------

// (t, a, b): ζ_M^t, a ∈ H(δ) = ⊕ ℤ/δᵢ, b ∈ Ĥ(δ) stored as exponents in ⊕ ℤ/δᵢ.
struct HeisenbergElement {
  std::int64_t t = 0;
  std::vector<std::int64_t> a;
  std::vector<std::int64_t> b;

  bool operator==(const HeisenbergElement& o) const { return t == o.t && a == o.a && b == o.b; }
  bool operator<(const HeisenbergElement& o) const {
    return std::tie(t, a, b) < std::tie(o.t, o.a, o.b);
  }
};

class HeisenbergGroup {
 public:
  // BadModulus unless δ is a divisor chain and 2δ_g | M.
  HeisenbergGroup(std::vector<std::int64_t> delta, int m);

  const std::vector<std::int64_t>& delta() const { return delta_; }
  int modulus() const { return m_; }
  std::int64_t degree() const { return d_; }  // ∏ δᵢ
  std::int64_t order() const { return static_cast<std::int64_t>(m_) * d_ * d_; }
  const CyclotomicRing& ring() const { return ring_; }

  // ⟨b, a⟩_M = Σ bᵢ aᵢ M/δᵢ mod M; b(a) = ζ^{⟨b,a⟩_M}.
  std::int64_t pairing(const std::vector<std::int64_t>& b, const std::vector<std::int64_t>& a) const;

  HeisenbergElement identity() const;
  HeisenbergElement normalize(HeisenbergElement x) const;
  HeisenbergElement mul(const HeisenbergElement& x, const HeisenbergElement& y) const;
  HeisenbergElement inverse(const HeisenbergElement& x) const;
  HeisenbergElement power(const HeisenbergElement& x, std::int64_t n) const;
  HeisenbergElement commutator(const HeisenbergElement& x, const HeisenbergElement& y) const;

  std::vector<HeisenbergElement> elements() const;

  // Points of H(δ) in mixed-radix order; index ↔ tuple.
  std::int64_t index_of(const std::vector<std::int64_t>& x) const;
  std::vector<std::int64_t> point(std::int64_t index) const;
  std::vector<std::int64_t> add(const std::vector<std::int64_t>& x, const std::vector<std::int64_t>& y) const;
  std::vector<std::int64_t> negate(const std::vector<std::int64_t>& x) const;

  // K₂ = {(0, 0, b)}; w(g) ∈ K̂₂ ≅ H(δ) with T_b S_g = χ_{w(g)}(b) S_g T_b.
  HeisenbergElement k2_element(const std::vector<std::int64_t>& b) const;
  std::vector<std::int64_t> w(const HeisenbergElement& g) const;

 private:
  std::vector<std::int64_t> delta_;
  int m_;
  std::int64_t d_;
  CyclotomicRing ring_;
};

// Vectors of the d-dimensional Schrödinger representation, indexed by H(δ).
using SchrodingerVector = std::vector<Cyclotomic>;

SchrodingerVector basis_vector(const HeisenbergGroup& h, const std::vector<std::int64_t>& x);

// (S_g f)(x) = ζ^t · b(x) · f(x + a).
SchrodingerVector schrodinger_action(const HeisenbergGroup& h, const HeisenbergElement& g,
                                     const SchrodingerVector& v);

bool same_vector(const HeisenbergGroup& h, const SchrodingerVector& u, const SchrodingerVector& v);

// g^M = 1 for every g, and (gh)^M = g^M h^M on all pairs (sampled deterministically
// when |ℋ|² exceeds 10⁶).
bool power_map_kernel_check(const HeisenbergGroup& h);

// T_b S_g = χ_{w(g)}(b) S_g T_b on every basis vector, for all g ∈ ℋ and b ∈ K₂.
bool heisenberg_relation_holds(const HeisenbergGroup& h);

struct Eigenspace {
  std::vector<std::int64_t> character;  // α ∈ K̂₂ ≅ H(δ)
  std::vector<SchrodingerVector> basis;
};

// Rank over ℚ(ζ_M) of a family of vectors.
int cyclotomic_rank(const HeisenbergGroup& h, const std::vector<SchrodingerVector>& vs);

// Eigenspaces of K₂ = {(0,0,b)} (the maximal-degeneration K₂), from the projectors
// Σ_b conj(χ_α(b)) T_b.
std::vector<Eigenspace> kw_decompose(const HeisenbergGroup& h);

// Σ_α S_{lifts(α)} ϑ₀; BadLift when w(lifts(α)) ≠ α, EmptyComponent if some
// K̂₂-component of the result vanishes.
SchrodingerVector balanced_section(const HeisenbergGroup& h, const SchrodingerVector& theta0,
                                   const std::map<std::vector<std::int64_t>, HeisenbergElement>& lifts);

// All balanced sections over all lifts and all eigenbasis choices for ϑ₀, up to a
// global scalar in μ_M (canonical representative: first nonzero coefficient 1, else the
// lexicographically least rotation).
std::vector<SchrodingerVector> enumerate_balanced_set(const HeisenbergGroup& h, std::int64_t max_degree = 8,
                                                      std::int64_t max_count = 1000000);

SchrodingerVector canonical_rotation(const HeisenbergGroup& h, const SchrodingerVector& v);

// ---------------------------------------------------------------------------
// Degeneration and twist data
// ---------------------------------------------------------------------------

struct DegenerationData {
  RationalMatrix q;           // Q on Y
  IntegerMatrix phi_check;    // 2Q𝔡⁻¹
  PolarizationType d_type;    // 𝔡
  IntegerMatrix s_xi;         // skew
  IntegerMatrix s_prime;      // symmetric, ≡ S_ξ mod 2
};

// S′ is S_ξ mod 2 lifted to {0, 1} with zero diagonal.
DegenerationData make_degeneration_data(const RationalMatrix& q, const PolarizationType& d_type,
                                        const IntegerMatrix& s_xi);

void validate(const DegenerationData& data);

struct DegenExponents {
  Rational a_exp;  // Q(λ) = λᵀQλ
  Rational b_exp;  // λᵀ·2Q𝔡⁻¹·α
};

DegenExponents degen_exponents(const DegenerationData& data, const IntVector& lambda, const IntVector& alpha);

// Exponents of exp(πi·) reduced into [0, 2).
struct TwistExponents {
  Rational a_prime;  // −½λᵀS′λ
  Rational b_prime;  // −λᵀS_ξ𝔡⁻¹α
};

TwistExponents twist_data(const DegenerationData& data, const IntVector& lambda, const IntVector& alpha);

Rational mod2(const Rational& x);

// ---------------------------------------------------------------------------
// Valuation profiles
// ---------------------------------------------------------------------------

struct ProfileEntry {
  IntVector rep;                        // class representative in X
  std::vector<std::int64_t> character;  // matching index in H(δ)
  Rational value;
};

// H(δ)-coordinates of the class of x ∈ X/φ(Y).
std::vector<std::int64_t> fourier_class(const IntegerMatrix& phi_map, const IntVector& x);

// For each class α ∈ X/φ(Y), min of φ over α + φ(λ), λ ∈ [−window, window]^r.
std::vector<ProfileEntry> section_valuation_profile(const HeisenbergGroup& h, const SchrodingerVector& section,
                                                    const PwAffineFunction& phi, const IntegerMatrix& phi_map,
                                                    int window);

}  // namespace tropab
