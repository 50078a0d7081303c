#include "tropab/monoid.hpp"

#include <algorithm>
#include <set>

namespace tropab {

using Eigen::Index;

HomogenizedFunction::HomogenizedFunction(PwAffineFunction base)
    : base_(std::move(base)), topo_(paving_topology(base_.paving)) {}

RatVector HomogenizedFunction::operator()(const Integer& degree, const IntVector& point) const {
  if (point.size() != rank()) throw std::invalid_argument("point has the wrong rank");
  if (degree < 0) fail(ErrorCode::OutsideSupport, "negative degree", "degree");
  if (degree == 0) {
    if (point != IntVector::Zero(rank()))
      fail(ErrorCode::OutsideSupport, "degree-0 elements must sit at the origin", "point");
    return RatVector::Zero(payload_rank());
  }
  Rational d(degree);
  RatVector x = cast_vector<Rational>(point) / d;
  return d * evaluate(base_, topo_, x);
}

RatVector star_cocycle(const DegreePoint& a, const DegreePoint& b, const HomogenizedFunction& phi) {
  return phi(a.degree, a.point) + phi(b.degree, b.point) -
         phi(Integer(a.degree + b.degree), IntVector(a.point + b.point));
}

TwistedMonoidElement twisted_add(const TwistedMonoidElement& x, const TwistedMonoidElement& y,
                                 const HomogenizedFunction& phi) {
  if (x.payload.size() != phi.payload_rank() || y.payload.size() != phi.payload_rank())
    fail(ErrorCode::RankMismatch, "payload rank does not match φ");
  RatVector s = star_cocycle({x.degree, x.point}, {y.degree, y.point}, phi);
  return {x.degree + y.degree, x.point + y.point, x.payload + y.payload + s};
}

TwistedMonoidElement minimal_lift(const DegreePoint& q, const HomogenizedFunction& phi) {
  phi(q.degree, q.point);  // support check
  return {q.degree, q.point, RatVector::Zero(phi.payload_rank())};
}

std::optional<RatVector> free_basis_payload(const DegreePoint& q, const RatVector& height,
                                            const HomogenizedFunction& phi, const ToricMonoid& p) {
  if (!is_sharp(p)) fail(ErrorCode::NotSharp, "P has nontrivial units; the splitting is not unique");
  RatVector rest = height - phi(q.degree, q.point);
  if (!monoid_contains(p, rest)) return std::nullopt;
  return rest;
}

FourierIndices fourier_indices(Index x_rank, const IntegerMatrix& phi_map) {
  if (phi_map.rows() != x_rank || phi_map.cols() != x_rank)
    throw std::invalid_argument("φ must be a square matrix of size rank X");
  if (determinant(phi_map) == 0) fail(ErrorCode::NotInjective, "φ is not injective", "phi");
  FourierIndices out;
  out.type = polarization_type(phi_map);
  // Rows of the HNF generate φ(Y); its upper-triangular shape gives a box of representatives.
  IntegerMatrix h = hermite_normal_form(IntegerMatrix(phi_map.transpose())).h;
  IntVector x = IntVector::Zero(x_rank);
  for (;;) {
    out.reps.push_back(x);
    Index k = x_rank - 1;
    while (k >= 0 && x(k) == h(k, k) - 1) {
      x(k) = 0;
      --k;
    }
    if (k < 0) break;
    x(k) += 1;
  }
  return out;
}

YActionResult y_action_on_monomial(const IntVector& lambda, const IntVector& mu, const YActionData& data) {
  const Index r = data.bilinear.rows();
  if (lambda.size() != r || data.phi.cols() != r || data.phi_check.cols() != r || mu.size() != data.phi.rows() ||
      data.phi_check.rows() != mu.size() || data.linear.size() != r)
    throw std::invalid_argument("inconsistent dimensions in Y-action data");
  // ⟨φ(λ), φ̌(μ)⟩ = B(λ, μ) for all λ, μ.
  if (cast_matrix<Rational>(IntegerMatrix(data.phi.transpose() * data.phi_check)) != data.bilinear)
    fail(ErrorCode::InconsistentData, "φᵀφ̌ differs from the bilinear form of A", "data");
  YActionResult out;
  out.new_mu = mu + data.phi_check * lambda;
  RatVector l = cast_vector<Rational>(lambda);
  out.q_exponent = l.dot(data.bilinear * l) / 2 + data.linear.dot(l) / 2;
  out.char_exponent = IntVector(data.phi * lambda).dot(mu);
  return out;
}

namespace {

bool in_lattice(const IntVector& v, const IntegerMatrix& basis) {
  auto c = try_solve(cast_matrix<Rational>(basis), RationalMatrix(cast_vector<Rational>(v)));
  if (!c) return false;
  for (Index i = 0; i < c->rows(); ++i)
    if (!is_integral((*c)(i, 0))) return false;
  return true;
}

// Basis (columns) of the lattice generated by the columns of m.
IntegerMatrix lattice_span(const IntegerMatrix& m) {
  IntegerMatrix h = hermite_normal_form(IntegerMatrix(m.transpose())).h;
  Index n = 0;
  while (n < h.rows() && h.row(n) != IntegerMatrix::Zero(1, h.cols())) ++n;
  return h.topRows(n).transpose();
}

}  // namespace

CentralFiberComplex central_fiber_complex(const PeriodicPaving& paving, const IntegerMatrix& phi_image_basis) {
  const Index r = paving.rank;
  if (phi_image_basis.rows() != r || phi_image_basis.cols() != r || determinant(phi_image_basis) == 0)
    fail(ErrorCode::NotInjective, "φ(Y) must be a full-rank sublattice", "phi_image_basis");
  paving_topology(paving);
  RationalMatrix inv = paving.period_inverse();
  std::set<LatticePolytope, PolytopeLess> cells(paving.cells.begin(), paving.cells.end());
  for (Index j = 0; j < r; ++j) {
    IntVector t = phi_image_basis.col(j);
    if (in_lattice(t, paving.period_basis)) continue;
    for (const auto& c : paving.cells) {
      LatticePolytope moved = c;
      for (auto& v : moved) v += t;
      if (!cells.count(canonical_translate(moved, paving.period_basis, inv)))
        fail(ErrorCode::NotInvariant, "paving is not invariant under φ(Y)", "phi_image_basis");
    }
  }
  // Periods of the paving together with φ(Y), then the orbits of φ(Y) alone.
  IntegerMatrix joint(r, 2 * r);
  joint << paving.period_basis, phi_image_basis;
  PeriodicPaving coarse = make_paving(lattice_span(joint), paving.cells, paving.window);
  PeriodicPaving fine = restrict_periods(coarse, phi_image_basis);
  PavingTopology topo = paving_topology(fine);
  CentralFiberComplex out;
  out.components = fine.cells;
  for (const auto& w : topo.walls) out.incidences.push_back({w.minus_cell, w.plus_cell, w.vertices});
  return out;
}

namespace {

// Inequality description (rows) of the cone generated by gens in ℚ^k.
IntegerMatrix cone_dual(const std::vector<IntVector>& gens, Index k) {
  std::set<IntVector, LexLess> rows;
  if (k == 0) return IntegerMatrix(0, 0);
  auto consider = [&](IntVector n) {
    bool pos = true, neg = true;
    for (const auto& g : gens) {
      Integer s = n.dot(g);
      if (s < 0) pos = false;
      if (s > 0) neg = false;
    }
    if (pos && !neg) rows.insert(n);
    if (neg && !pos) rows.insert(IntVector(-n));
  };
  if (k == 1) {
    consider(make_vec<Integer>({1}));
  } else {
    const Index m = static_cast<Index>(gens.size());
    std::vector<Index> comb(k - 1);
    for (Index i = 0; i < k - 1; ++i) comb[i] = i;
    if (k - 1 <= m) {
      for (;;) {
        IntegerMatrix sub(k - 1, k);
        for (Index i = 0; i < k - 1; ++i) sub.row(i) = gens[comb[i]].transpose();
        IntegerMatrix ker = integer_kernel(sub);
        if (ker.cols() == 1) consider(primitive(IntVector(ker.col(0))));
        Index i = k - 2;
        while (i >= 0 && comb[i] == m - (k - 1) + i) --i;
        if (i < 0) break;
        ++comb[i];
        for (Index j = i + 1; j < k - 1; ++j) comb[j] = comb[j - 1] + 1;
      }
    }
  }
  IntegerMatrix out(rows.size(), k);
  Index i = 0;
  for (const auto& n : rows) out.row(i++) = n.transpose();
  return out;
}

}  // namespace

FaceQuotientData face_quotient(const ToricMonoid& p, const IntegerMatrix& face_functionals,
                               const PwAffineFunction& phi) {
  const Index k = p.ambient_rank;
  if (phi.payload_rank != k) fail(ErrorCode::RankMismatch, "payload rank does not match P");
  if (face_functionals.rows() > 0 && face_functionals.cols() != k)
    throw std::invalid_argument("face functionals have the wrong length");
  std::vector<IntVector> rays = extreme_rays(p);  // NotSharp
  std::vector<IntVector> face_rays;
  for (const auto& ray : rays) {
    bool on_face = true;
    for (Index i = 0; i < face_functionals.rows(); ++i) {
      Integer s = IntVector(face_functionals.row(i).transpose()).dot(ray);
      if (s < 0) fail(ErrorCode::NotAFace, "functional " + std::to_string(i) + " is negative on P", "face");
      if (s != 0) on_face = false;
    }
    if (on_face) face_rays.push_back(ray);
  }

  FaceQuotientData out;
  if (face_rays.empty()) {
    out.projection = identity<Integer>(k);
  } else {
    IntegerMatrix span(k, face_rays.size());
    for (std::size_t j = 0; j < face_rays.size(); ++j) span.col(j) = face_rays[j];
    out.projection = integer_left_kernel(span);
  }
  const IntegerMatrix& pi = out.projection;
  const Index kq = pi.rows();

  std::vector<IntVector> images;
  for (const auto& ray : rays) {
    IntVector v = pi * ray;
    if (v != IntVector::Zero(kq)) images.push_back(v);
  }
  out.quotient.ambient_rank = kq;
  out.quotient.dual = cone_dual(images, kq);
  out.quotient.lattice_basis = kq == 0 ? IntegerMatrix(0, 0) : lattice_span(IntegerMatrix(pi * p.lattice_basis));

  RationalMatrix pr = cast_matrix<Rational>(pi);
  out.pushed = phi;
  out.pushed.payload_rank = kq;
  for (auto* list : {&out.pushed.pieces, &out.pushed.increments})
    for (auto& a : *list) {
      a.linear = pr * a.linear;
      a.constant = pr * a.constant;
    }
  AffineRegions regions = affine_region_paving(out.pushed);
  out.paving = regions.paving;
  out.admissible = regions.bounded;
  return out;
}

}  // namespace tropab
