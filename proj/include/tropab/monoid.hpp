#pragma once

#include "tropab/pwl.hpp"

namespace tropab {

// φ̃(d, x) = d·φ(x/d), the piecewise-linear extension of φ to the cone over ℝ^r.
class HomogenizedFunction {
 public:
  explicit HomogenizedFunction(PwAffineFunction base);

  const PwAffineFunction& base() const { return base_; }
  Eigen::Index rank() const { return base_.paving.rank; }
  Eigen::Index payload_rank() const { return base_.payload_rank; }

  RatVector operator()(const Integer& degree, const IntVector& point) const;

 private:
  PwAffineFunction base_;
  PavingTopology topo_;
};

struct DegreePoint {
  Integer degree;
  IntVector point;
};

struct TwistedMonoidElement {
  Integer degree;
  IntVector point;
  RatVector payload;

  bool operator==(const TwistedMonoidElement& o) const {
    return degree == o.degree && point == o.point && payload == o.payload;
  }
};

// φ̃(a) + φ̃(b) − φ̃(a + b).
RatVector star_cocycle(const DegreePoint& a, const DegreePoint& b, const HomogenizedFunction& phi);

TwistedMonoidElement twisted_add(const TwistedMonoidElement& x, const TwistedMonoidElement& y,
                                 const HomogenizedFunction& phi);

// (q, 0): the basis element ϑ_q, sitting at height φ̃(q) in S(Q_φ).
TwistedMonoidElement minimal_lift(const DegreePoint& q, const HomogenizedFunction& phi);

// For (d, x, h) with h ∈ ℚ^k: the payload p with (d, x, h) = minimal_lift + (0, 0, p),
// or nullopt when p ∉ P (the element is not in S(Q_φ)).
std::optional<RatVector> free_basis_payload(const DegreePoint& q, const RatVector& height,
                                            const HomogenizedFunction& phi, const ToricMonoid& p);

struct FourierIndices {
  std::vector<IntVector> reps;  // coset representatives of X/φ(Y)
  PolarizationType type;
};

// phi_map: columns are the images φ(y_i) in X.
FourierIndices fourier_indices(Eigen::Index x_rank, const IntegerMatrix& phi_map);

// Quadratic datum A(λ) = ½λᵀBλ + ½L·λ on Y together with φ: Y → X and φ̌: Y → X.
struct YActionData {
  RationalMatrix bilinear;
  RatVector linear;
  IntegerMatrix phi;
  IntegerMatrix phi_check;
};

struct YActionResult {
  IntVector new_mu;
  Rational q_exponent;
  Integer char_exponent;
};

YActionResult y_action_on_monomial(const IntVector& lambda, const IntVector& mu, const YActionData& data);

struct Incidence {
  int a;
  int b;
  LatticePolytope face;  // orbit representative
};

struct CentralFiberComplex {
  std::vector<LatticePolytope> components;
  std::vector<Incidence> incidences;
};

CentralFiberComplex central_fiber_complex(const PeriodicPaving& paving, const IntegerMatrix& phi_image_basis);

struct FaceQuotientData {
  ToricMonoid quotient;
  IntegerMatrix projection;  // P^gp → P′^gp
  PwAffineFunction pushed;   // φ′ = projection ∘ φ
  PeriodicPaving paving;     // affine regions of φ′ (cells empty when unbounded)
  bool admissible = false;
};

// The face F = {v ∈ P : ℓ(v) = 0 for every functional ℓ}; each ℓ must be
// nonnegative on P.
FaceQuotientData face_quotient(const ToricMonoid& p, const IntegerMatrix& face_functionals,
                               const PwAffineFunction& phi);

}  // namespace tropab
