#include "tropab/delaunay.hpp"

#include <algorithm>
#include <deque>
#include <set>

namespace tropab {

using Eigen::Index;

Rational half_form(const RationalMatrix& q, const IntVector& x) {
  Rational s = 0;
  for (Index i = 0; i < q.rows(); ++i) {
    if (x(i) == 0) continue;
    for (Index j = 0; j < q.cols(); ++j)
      if (x(j) != 0) s += q(i, j) * Rational(x(i) * x(j));
  }
  return s / 2;
}

namespace {

struct Plane {
  RatVector a;
  Rational b;
  Rational operator()(const IntVector& x) const {
    Rational s = b;
    for (Index i = 0; i < a.size(); ++i)
      if (x(i) != 0) s += a(i) * Rational(x(i));
    return s;
  }
};

Rational dot(const IntVector& n, const IntVector& x) { return Rational(n.dot(x)); }

// Lifted lattice points of the window.
struct Lift {
  std::vector<IntVector> pts;
  std::vector<Rational> h;
};

std::optional<Plane> plane_through(const LatticePolytope& cell, const RationalMatrix& q) {
  std::vector<RatVector> pts = to_rational(cell);
  std::vector<RatVector> vals;
  for (const auto& v : cell) vals.push_back(make_vec<Rational>({half_form(q, v)}));
  auto fit = fit_affine(pts, vals);
  if (!fit) return std::nullopt;
  return Plane{RatVector(fit->linear.row(0).transpose()), fit->constant(0)};
}

LatticePolytope touching(const Lift& lift, const Plane& f) {
  LatticePolytope out;
  for (std::size_t i = 0; i < lift.pts.size(); ++i)
    if (lift.h[i] == f(lift.pts[i])) out.push_back(lift.pts[i]);
  std::sort(out.begin(), out.end(), LexLess{});
  return out;
}

// Tilts the tangent plane at the origin about the current lower face until it
// supports a full-dimensional cell.
LatticePolytope initial_cell(const Lift& lift, Index r) {
  Plane f{RatVector::Zero(r), Rational(0)};  // tangent to ½Q at 0
  LatticePolytope face = touching(lift, f);
  while (affine_rank(to_rational(face)) < r) {
    IntegerMatrix dirs(face.size(), r);
    for (std::size_t i = 0; i < face.size(); ++i) dirs.row(i) = (face[i] - face[0]).transpose();
    IntVector n = integer_kernel(dirs).col(0);
    bool any_positive = false;
    for (const auto& p : lift.pts)
      if (dot(n, p - face[0]) > 0) any_positive = true;
    if (!any_positive) n = -n;
    std::optional<Rational> best;
    for (std::size_t i = 0; i < lift.pts.size(); ++i) {
      Rational m = dot(n, lift.pts[i] - face[0]);
      if (m <= 0) continue;
      Rational t = (lift.h[i] - f(lift.pts[i])) / m;
      if (!best || t < *best) best = t;
    }
    if (!best) fail(ErrorCode::WindowTooSmall, "window contains no point beyond the current face", "window");
    RatVector nr = cast_vector<Rational>(n);
    f.a += *best * nr;
    f.b -= *best * nr.dot(cast_vector<Rational>(face[0]));
    face = touching(lift, f);
  }
  return face;
}

// Neighbouring lower cell across the facet {normal·x = offset} of a cell with lifted plane f.
LatticePolytope wrap_across(const Lift& lift, const Plane& f, const IntVector& normal, const Rational& offset) {
  std::optional<Rational> best;
  for (std::size_t i = 0; i < lift.pts.size(); ++i) {
    Rational m = dot(normal, lift.pts[i]) - offset;
    if (m <= 0) continue;
    Rational t = (lift.h[i] - f(lift.pts[i])) / m;
    if (!best || t < *best) best = t;
  }
  if (!best) fail(ErrorCode::WindowTooSmall, "window contains no point beyond a facet", "window");
  Plane g = f;
  RatVector nr = cast_vector<Rational>(normal);
  g.a += *best * nr;
  g.b -= *best * offset;
  return touching(lift, g);
}

// The lifted plane of a cell supports all window points and touches exactly the
// cell, and its empty ellipsoid {½Q(x) ≤ f(x)} lies inside the window box.
void certify(const LatticePolytope& cell, const RationalMatrix& q, const RationalMatrix& qinv,
             const RationalMatrix& period_inverse, const Lift& lift, int window) {
  auto f = plane_through(cell, q);
  if (!f) fail(ErrorCode::WindowTooSmall, "cell vertices are not cospherical", "window");
  if (touching(lift, *f) != cell)
    fail(ErrorCode::WindowTooSmall, "cell is not a lower face on the window", "window");
  for (std::size_t i = 0; i < lift.pts.size(); ++i)
    if (lift.h[i] < (*f)(lift.pts[i])) fail(ErrorCode::WindowTooSmall, "cell is not a lower face", "window");
  // Centre z = Q⁻¹a, squared radius 2ρ with ρ = ½aᵀQ⁻¹a + b.
  RatVector z = qinv * f->a;
  Rational rho = f->a.dot(z) / 2 + f->b;
  Rational w(window);
  for (Index i = 0; i < period_inverse.rows(); ++i) {
    RatVector l = period_inverse.row(i).transpose();
    Rational c = l.dot(z);
    Rational s2 = 2 * rho * l.dot(qinv * l);
    Rational up = w - c, down = w + c;
    if (up < 0 || down < 0 || up * up < s2 || down * down < s2)
      fail(ErrorCode::WindowTooSmall, "a Delaunay cell's empty ellipsoid leaves the window", "window");
  }
}

}  // namespace

PeriodicPaving delaunay_subdivision(const RationalMatrix& q, const IntegerMatrix& period_basis, int window,
                                    const RatVector* shift) {
  const Index r = q.rows();
  if (!is_positive_definite(q)) fail(ErrorCode::NotPositiveDefinite, "form is not positive definite", "q");
  if (period_basis.rows() != r || period_basis.cols() != r || determinant(period_basis) == 0)
    throw std::invalid_argument("period basis must be a nonsingular r×r integer matrix");
  if (window < 2) fail(ErrorCode::WindowTooSmall, "window must be at least 2", "window");
  // ½Q(shift + x) differs from ½Q(x) by an affine function of x: same lower faces.
  RationalMatrix pinv = inverse(period_basis);
  RationalMatrix qinv = inverse(q);

  Lift lift;
  lift.pts = window_points(period_basis, window);
  for (const auto& p : lift.pts) lift.h.push_back(half_form(q, p));

  std::set<LatticePolytope, PolytopeLess> found;
  std::deque<LatticePolytope> queue;
  auto visit = [&](const LatticePolytope& c) {
    LatticePolytope canon = canonical_translate(c, period_basis, pinv);
    if (found.insert(canon).second) queue.push_back(canon);
  };
  visit(initial_cell(lift, r));

  while (!queue.empty()) {
    LatticePolytope cell = queue.front();
    queue.pop_front();
    certify(cell, q, qinv, pinv, lift, window);
    Plane f = *plane_through(cell, q);
    for (const auto& facet : facets(to_rational(cell))) visit(wrap_across(lift, f, facet.normal, facet.offset));
  }

  PeriodicPaving out;
  out.rank = r;
  out.period_basis = period_basis;
  out.cells.assign(found.begin(), found.end());
  out.window = window;
  out.shift = shift ? *shift : RatVector(RatVector::Zero(r));

  Rational total = 0;
  for (const auto& c : out.cells) total += volume(to_rational(c));
  if (total != Rational(abs(determinant(period_basis))))
    fail(ErrorCode::WindowTooSmall, "cell orbits do not tile a fundamental domain", "window");
  return out;
}

bool empty_sphere_check(const LatticePolytope& cell, const RationalMatrix& q, int window) {
  if (!is_positive_definite(q)) fail(ErrorCode::NotPositiveDefinite, "form is not positive definite", "q");
  const Index r = q.rows();
  if (affine_rank(to_rational(cell)) != r) throw std::invalid_argument("cell must be full-dimensional");
  auto f = plane_through(cell, q);
  if (!f) return false;
  IntVector lo = cell.front(), hi = cell.front();
  for (const auto& v : cell)
    for (Index i = 0; i < r; ++i) {
      lo(i) = std::min(lo(i), v(i));
      hi(i) = std::max(hi(i), v(i));
    }
  std::set<IntVector, LexLess> verts(cell.begin(), cell.end());
  IntVector x = lo;
  for (Index i = 0; i < r; ++i) x(i) -= window;
  for (;;) {
    if (!verts.count(x) && half_form(q, x) <= (*f)(x)) return false;
    Index k = r - 1;
    while (k >= 0 && x(k) == hi(k) + window) {
      x(k) = lo(k) - window;
      --k;
    }
    if (k < 0) break;
    x(k) += 1;
  }
  return true;
}

bool voronoi_cone_contains(const PeriodicPaving& paving, const RationalMatrix& q) {
  PavingTopology topo = paving_topology(paving);
  if (q.rows() != paving.rank || !is_positive_semidefinite(q)) return false;
  auto piece_on = [&](int c, const IntVector& t) -> std::optional<Plane> {
    LatticePolytope moved = paving.cells[c];
    for (auto& v : moved) v += t;
    return plane_through(moved, q);
  };
  std::vector<Plane> pieces;
  for (int c = 0; c < static_cast<int>(paving.cells.size()); ++c) {
    auto f = piece_on(c, IntVector::Zero(paving.rank));
    if (!f) return false;
    pieces.push_back(*f);
  }
  // Convexity across every wall: the plus piece lies below on the minus side.
  for (const auto& w : topo.walls) {
    Plane plus = *piece_on(w.plus_cell, w.plus_shift);
    Plane minus = *piece_on(w.minus_cell, w.minus_shift);
    RatVector diff = plus.a - minus.a;
    // diff = p·normal; p ≥ 0 is the bending.
    Index i = 0;
    while (w.normal(i) == 0) ++i;
    if (diff(i) / Rational(w.normal(i)) < 0) return false;
  }
  // ½q stays above the interpolation at every lattice point (one period suffices).
  RationalMatrix pinv = inverse(paving.period_basis);
  for (const auto& x : window_points(paving.period_basis, 1)) {
    RatVector pc = pinv * cast_vector<Rational>(x);
    bool fundamental = true;
    for (Index i = 0; i < pc.size(); ++i)
      if (pc(i) < 0 || pc(i) >= 1) fundamental = false;
    if (!fundamental) continue;
    auto [c, t] = locate(paving, topo, cast_vector<Rational>(x));
    Plane f = *piece_on(c, t);
    if (half_form(q, x) < f(x)) return false;
  }
  return true;
}

}  // namespace tropab
