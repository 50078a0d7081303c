#include "tropab/pwl.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>

namespace tropab {

using Eigen::Index;

namespace {

AffinePiece zero_piece(Index k, Index r) { return {RationalMatrix::Zero(k, r), RatVector::Zero(k)}; }

bool is_zero(const RatVector& v) {
  for (Index i = 0; i < v.size(); ++i)
    if (v(i) != 0) return false;
  return true;
}

IntVector period_coordinates(const PeriodicPaving& p, const IntVector& t) {
  RatVector k = inverse(p.period_basis) * cast_vector<Rational>(t);
  IntVector out(k.size());
  for (Index i = 0; i < k.size(); ++i) {
    if (!is_integral(k(i))) throw std::invalid_argument("translation is not a period");
    out(i) = to_integer(k(i));
  }
  return out;
}

// ω with n·ω = 1 for primitive n.
IntVector transversal(const IntVector& n) {
  IntegerMatrix col = n;
  HermiteResult h = hermite_normal_form(col);
  return h.u.row(0).transpose();
}

IntVector reduce_mod(const IntVector& x, const IntegerMatrix& basis, const RationalMatrix& inv) {
  IntVector k = lattice_floor(cast_vector<Rational>(x), inv);
  return x - basis * k;
}

std::vector<IntVector> fundamental_points(const IntegerMatrix& basis) {
  RationalMatrix inv = inverse(basis);
  std::vector<IntVector> out;
  for (const auto& x : window_points(basis, 1)) {
    RatVector c = inv * cast_vector<Rational>(x);
    bool ok = true;
    for (Index i = 0; i < c.size(); ++i)
      if (c(i) < 0 || c(i) >= 1) ok = false;
    if (ok) out.push_back(x);
  }
  return out;
}

// Affine fit of the increments ψ(x + λ_i) − ψ(x) over all sampled pairs.
std::vector<AffinePiece> sampled_increments(const LatticeSamples& samples, const IntegerMatrix& basis,
                                            ErrorCode sparse_error) {
  std::vector<AffinePiece> out;
  for (Index i = 0; i < basis.cols(); ++i) {
    IntVector lam = basis.col(i);
    std::vector<RatVector> xs, ds;
    for (const auto& [x, v] : samples) {
      auto it = samples.find(IntVector(x + lam));
      if (it == samples.end()) continue;
      xs.push_back(cast_vector<Rational>(x));
      ds.push_back(make_vec<Rational>({it->second - v}));
    }
    if (xs.empty() || affine_rank(xs) != basis.rows())
      fail(sparse_error, "samples do not determine the increment along period " + std::to_string(i), "samples");
    auto fit = fit_affine(xs, ds);
    if (!fit) fail(ErrorCode::NotQuasiperiodic, "increment along period " + std::to_string(i) + " is not affine",
                   "samples");
    out.push_back(*fit);
  }
  return out;
}

}  // namespace

AffinePiece translation_increment(const PwAffineFunction& f, const IntVector& k) {
  const Index r = f.paving.rank;
  AffinePiece acc = zero_piece(f.payload_rank, r);
  RatVector p = RatVector::Zero(r);  // translation walked so far
  for (Index i = 0; i < k.size(); ++i) {
    RatVector lam = cast_vector<Rational>(IntVector(f.paving.period_basis.col(i)));
    const AffinePiece& a = f.increments[i];
    for (Integer s = 0; s < abs(k(i)); ++s) {
      if (k(i) > 0) {
        acc.linear += a.linear;
        acc.constant += a.linear * p + a.constant;
        p += lam;
      } else {
        p -= lam;
        acc.linear -= a.linear;
        acc.constant -= a.linear * p + a.constant;
      }
    }
  }
  return acc;
}

AffinePiece piece_at(const PwAffineFunction& f, int cell, const IntVector& translation) {
  IntVector k = period_coordinates(f.paving, translation);
  AffinePiece inc = translation_increment(f, k);
  const AffinePiece& base = f.pieces[cell];
  RatVector t = cast_vector<Rational>(translation);
  AffinePiece out;
  out.linear = base.linear + inc.linear;
  out.constant = base.constant + inc.constant - out.linear * t;
  return out;
}

RatVector evaluate(const PwAffineFunction& f, const PavingTopology& topo, const RatVector& x) {
  auto [c, t] = locate(f.paving, topo, x);
  return piece_at(f, c, t)(x);
}

RatVector evaluate(const PwAffineFunction& f, const RatVector& x) {
  return evaluate(f, paving_topology(f.paving), x);
}

namespace {

void require_same_paving(const PwAffineFunction& a, const PwAffineFunction& b) {
  if (a.paving.cells != b.paving.cells || a.paving.period_basis != b.paving.period_basis ||
      a.payload_rank != b.payload_rank)
    throw std::invalid_argument("functions are defined on different pavings");
}

}  // namespace

PwAffineFunction operator+(const PwAffineFunction& a, const PwAffineFunction& b) {
  require_same_paving(a, b);
  PwAffineFunction out = a;
  for (std::size_t i = 0; i < out.pieces.size(); ++i) {
    out.pieces[i].linear += b.pieces[i].linear;
    out.pieces[i].constant += b.pieces[i].constant;
  }
  for (std::size_t i = 0; i < out.increments.size(); ++i) {
    out.increments[i].linear += b.increments[i].linear;
    out.increments[i].constant += b.increments[i].constant;
  }
  return out;
}

PwAffineFunction operator*(const Rational& s, const PwAffineFunction& f) {
  PwAffineFunction out = f;
  for (auto* list : {&out.pieces, &out.increments})
    for (auto& p : *list) {
      p.linear *= s;
      p.constant *= s;
    }
  return out;
}

bool same_function(const PwAffineFunction& a, const PwAffineFunction& b) {
  return a.paving.cells == b.paving.cells && a.paving.period_basis == b.paving.period_basis &&
         a.payload_rank == b.payload_rank && a.pieces == b.pieces && a.increments == b.increments;
}

std::vector<WallBending> bending_parameters(const PwAffineFunction& f) {
  PavingTopology topo = paving_topology(f.paving);
  std::vector<WallBending> out;
  for (const auto& w : topo.walls) {
    AffinePiece plus = piece_at(f, w.plus_cell, w.plus_shift);
    AffinePiece minus = piece_at(f, w.minus_cell, w.minus_shift);
    for (const auto& v : w.vertices) {
      RatVector x = cast_vector<Rational>(v);
      if (plus(x) != minus(x)) fail(ErrorCode::NonMatchingFaces, "pieces disagree on a wall", "pieces");
    }
    RationalMatrix diff = plus.linear - minus.linear;
    RatVector omega = cast_vector<Rational>(transversal(w.normal));
    RatVector p = diff * omega;
    RationalMatrix expect = p * cast_vector<Rational>(w.normal).transpose();
    if (diff != expect) fail(ErrorCode::NonMatchingFaces, "slope jump is not normal to the wall", "pieces");
    out.push_back({w, p});
  }
  return out;
}

// ---------------------------------------------------------------------------

ToricMonoid orthant_monoid(Index k) {
  ToricMonoid p;
  p.ambient_rank = k;
  p.dual = identity<Integer>(k);
  p.lattice_basis = identity<Integer>(k);
  return p;
}

bool monoid_contains(const ToricMonoid& p, const RatVector& v) {
  if (v.size() != p.ambient_rank) fail(ErrorCode::RankMismatch, "payload rank does not match the monoid");
  RatVector s = cast_matrix<Rational>(p.dual) * v;
  for (Index i = 0; i < s.size(); ++i)
    if (s(i) < 0) return false;
  auto c = try_solve(cast_matrix<Rational>(p.lattice_basis), RationalMatrix(v));
  if (!c) return false;
  for (Index i = 0; i < c->rows(); ++i)
    if (!is_integral((*c)(i, 0))) return false;
  return true;
}

bool is_unit(const ToricMonoid& p, const RatVector& v) {
  return monoid_contains(p, v) && monoid_contains(p, RatVector(-v));
}

bool is_sharp(const ToricMonoid& p) { return rank(p.dual) == p.ambient_rank; }

namespace {

IntVector primitive_in_lattice(const RatVector& v, const ToricMonoid& p) {
  RatVector c = *try_solve(cast_matrix<Rational>(p.lattice_basis), RationalMatrix(v));
  Integer den = common_denominator(RationalMatrix(c));
  IntVector ci(c.size());
  for (Index i = 0; i < c.size(); ++i) ci(i) = to_integer(c(i) * Rational(den));
  return p.lattice_basis * primitive(ci);
}

}  // namespace

std::vector<IntVector> extreme_rays(const ToricMonoid& p) {
  if (!is_sharp(p)) fail(ErrorCode::NotSharp, "monoid has nontrivial units");
  const Index r = p.ambient_rank;
  const Index m = p.dual.rows();
  std::set<IntVector, LexLess> rays;
  std::vector<Index> comb(r - 1);
  std::iota(comb.begin(), comb.end(), 0);
  if (r - 1 > m) return {};
  for (;;) {
    RationalMatrix sub(r - 1, r);
    for (Index i = 0; i < r - 1; ++i) sub.row(i) = cast_matrix<Rational>(p.dual).row(comb[i]);
    RationalMatrix k = rational_kernel(sub);
    if (k.cols() == 1) {
      for (int sign : {1, -1}) {
        RatVector v = k.col(0) * Rational(sign);
        RatVector s = cast_matrix<Rational>(p.dual) * v;
        bool ok = true;
        for (Index i = 0; i < m; ++i)
          if (s(i) < 0) ok = false;
        if (ok) rays.insert(primitive_in_lattice(v, p));
      }
    }
    Index i = r - 2;
    while (i >= 0 && comb[i] == m - (r - 1) + i) --i;
    if (i < 0) break;
    ++comb[i];
    for (Index j = i + 1; j < r - 1; ++j) comb[j] = comb[j - 1] + 1;
  }
  return {rays.begin(), rays.end()};
}

std::vector<IntVector> hilbert_basis(const ToricMonoid& p) {
  auto rays = extreme_rays(p);
  const Index r = p.ambient_rank;
  RationalMatrix binv = inverse(p.lattice_basis);
  // Lattice coordinates of the zonotope spanned by the rays bound all irreducibles.
  IntVector lo = IntVector::Zero(r), hi = IntVector::Zero(r);
  for (const auto& ray : rays) {
    RatVector c = binv * cast_vector<Rational>(ray);
    for (Index i = 0; i < r; ++i) {
      Integer ci = to_integer(c(i));
      if (ci > 0) hi(i) += ci;
      else lo(i) += ci;
    }
  }
  std::vector<IntVector> cand;
  IntVector c = lo;
  for (;;) {
    IntVector v = p.lattice_basis * c;
    if (v != IntVector::Zero(r) && monoid_contains(p, cast_vector<Rational>(v))) cand.push_back(v);
    Index k = r - 1;
    while (k >= 0 && c(k) == hi(k)) {
      c(k) = lo(k);
      --k;
    }
    if (k < 0) break;
    c(k) += 1;
  }
  std::vector<IntVector> out;
  for (const auto& x : cand) {
    bool reducible = false;
    for (const auto& y : cand) {
      if (y == x) continue;
      IntVector d = x - y;
      if (d != IntVector::Zero(r) && monoid_contains(p, cast_vector<Rational>(d))) {
        reducible = true;
        break;
      }
    }
    if (!reducible) out.push_back(x);
  }
  std::sort(out.begin(), out.end(), LexLess{});
  return out;
}

bool is_p_convex(const PwAffineFunction& f, const ToricMonoid& p, bool strict) {
  if (f.payload_rank != p.ambient_rank) fail(ErrorCode::RankMismatch, "payload rank does not match the monoid");
  for (const auto& b : bending_parameters(f)) {
    if (!monoid_contains(p, b.payload)) return false;
    if (strict && is_unit(p, b.payload)) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------

Rational QuasiperiodicDecomposition::quadratic_part(const IntVector& x) const {
  RatVector xr = cast_vector<Rational>(x);
  return xr.dot(bilinear * xr) / 2 + quadratic_linear.dot(xr) / 2;
}

Rational QuasiperiodicDecomposition::reconstruct(const IntVector& x) const {
  IntVector red = reduce_mod(x, period_basis, inverse(period_basis));
  return quadratic_part(x) + periodic.at(red);
}

QuasiperiodicDecomposition quasiperiodic_decompose(const LatticeSamples& samples, const IntegerMatrix& period_basis) {
  const Index r = period_basis.rows();
  if (samples.empty()) fail(ErrorCode::NotQuasiperiodic, "no samples", "samples");
  auto inc = sampled_increments(samples, period_basis, ErrorCode::NotQuasiperiodic);
  // f(x + λ_i) − f(x) = λ_iᵀBx + ½λ_iᵀBλ_i + ½L·λ_i.
  RationalMatrix g(r, r);
  RatVector c(r);
  for (Index i = 0; i < r; ++i) {
    g.row(i) = inc[i].linear.row(0);
    c(i) = inc[i].constant(0);
  }
  RationalMatrix lam = cast_matrix<Rational>(period_basis);
  RationalMatrix lt_inv = inverse(lam).transpose();
  QuasiperiodicDecomposition d;
  d.period_basis = period_basis;
  d.bilinear = lt_inv * g;
  if (!is_symmetric(d.bilinear)) fail(ErrorCode::NotQuasiperiodic, "second differences are not symmetric", "samples");
  RatVector rhs(r);
  for (Index i = 0; i < r; ++i) {
    RatVector li = lam.col(i);
    rhs(i) = 2 * c(i) - li.dot(d.bilinear * li);
  }
  d.quadratic_linear = lt_inv * rhs;
  for (const auto& x : fundamental_points(period_basis)) {
    auto it = samples.find(x);
    if (it == samples.end()) fail(ErrorCode::NotQuasiperiodic, "samples miss a fundamental-domain point", "samples");
    d.periodic[x] = it->second - d.quadratic_part(x);
  }
  for (const auto& [x, v] : samples)
    if (d.reconstruct(x) != v) fail(ErrorCode::NotQuasiperiodic, "ψ − A is not periodic", "samples");
  return d;
}

PwAffineFunction interpolate_on_triangulation(const LatticeSamples& values, const PeriodicPaving& t) {
  if (!is_simplicial(t)) fail(ErrorCode::NotSimplicial, "paving is not a triangulation", "t");
  PwAffineFunction f;
  f.paving = t;
  f.payload_rank = 1;
  for (const auto& cell : t.cells) {
    std::vector<RatVector> vals;
    for (const auto& v : cell) {
      auto it = values.find(v);
      if (it == values.end()) fail(ErrorCode::MissingVertexValue, "no value at a cell vertex", "values");
      vals.push_back(make_vec<Rational>({it->second}));
    }
    f.pieces.push_back(*fit_affine(to_rational(cell), vals));
  }
  f.increments = sampled_increments(values, t.period_basis, ErrorCode::MissingVertexValue);
  return f;
}

bool cone_cy_membership(const LatticeSamples& psi, const PeriodicPaving& t, const IntegerMatrix& period_basis) {
  quasiperiodic_decompose(psi, period_basis);
  PeriodicPaving tt = same_paving(t, make_paving(period_basis, t.cells, t.window)) ? t : restrict_periods(t, period_basis);
  PwAffineFunction g = interpolate_on_triangulation(psi, tt);
  for (const auto& b : bending_parameters(g))
    if (b.payload(0) < 0) return false;
  RationalMatrix inv = inverse(tt.period_basis);
  std::set<IntVector, LexLess> vertex_classes;
  for (const auto& c : tt.cells)
    for (const auto& v : c) vertex_classes.insert(reduce_mod(v, tt.period_basis, inv));
  PavingTopology topo = paving_topology(tt);
  for (const auto& [x, v] : psi) {
    if (vertex_classes.count(reduce_mod(x, tt.period_basis, inv))) continue;
    if (evaluate(g, topo, cast_vector<Rational>(x))(0) > v) return false;
  }
  return true;
}

PwAffineFunction sigma_section(const RationalMatrix& q, const IntegerMatrix& period_basis, int window) {
  PwAffineFunction f;
  f.paving = delaunay_subdivision(q, period_basis, window);
  f.payload_rank = 1;
  for (const auto& cell : f.paving.cells) {
    std::vector<RatVector> vals;
    for (const auto& v : cell) vals.push_back(make_vec<Rational>({half_form(q, v)}));
    f.pieces.push_back(*fit_affine(to_rational(cell), vals));
  }
  // ½Q(x + λ) − ½Q(x) = λᵀQx + ½Q(λ).
  for (Index i = 0; i < period_basis.cols(); ++i) {
    IntVector lam = period_basis.col(i);
    RatVector lr = cast_vector<Rational>(lam);
    AffinePiece a;
    a.linear = RationalMatrix(lr.transpose() * q);
    a.constant = make_vec<Rational>({half_form(q, lam)});
    f.increments.push_back(a);
  }
  return f;
}

AffineRegions affine_region_paving(const PwAffineFunction& f) {
  PavingTopology topo = paving_topology(f.paving);
  auto bends = bending_parameters(f);
  const int n = static_cast<int>(f.paving.cells.size());
  const Index r = f.paving.rank;
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  std::vector<IntVector> off(n, IntVector::Zero(r));  // cells[c] + off[c] lies in the region of parent[c]
  std::function<int(int)> find = [&](int c) {
    if (parent[c] == c) return c;
    int root = find(parent[c]);
    off[c] += off[parent[c]];
    parent[c] = root;
    return root;
  };
  // Path compression above composes offsets: off is relative to the parent's frame.
  AffineRegions out;
  for (const auto& b : bends) {
    if (!is_zero(b.payload)) continue;
    const Wall& w = b.wall;
    int a = w.plus_cell, c = w.minus_cell;
    int ra = find(a), rc = find(c);
    // Instance of the region of ra containing a + plus_shift is shifted by plus_shift − off[a].
    IntVector sa = w.plus_shift - off[a];
    IntVector sc = w.minus_shift - off[c];
    if (ra == rc) {
      if (sa != sc) out.bounded = false;
      continue;
    }
    parent[rc] = ra;
    off[rc] = sc - sa;
  }
  std::map<int, LatticePolytope> regions;
  for (int c = 0; c < n; ++c) {
    int root = find(c);
    for (const auto& v : f.paving.cells[c]) regions[root].push_back(v + off[c]);
  }
  std::vector<LatticePolytope> cells;
  for (auto& [root, pts] : regions) {
    std::sort(pts.begin(), pts.end(), LexLess{});
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    LatticePolytope ext;
    for (int i : extreme_points(to_rational(pts))) ext.push_back(pts[i]);
    cells.push_back(ext);
  }
  out.paving = make_paving(f.paving.period_basis, cells, f.paving.window);
  out.paving.shift = f.paving.shift;
  if (!out.bounded) out.paving.cells.clear();
  return out;
}

RationalMatrix associated_form(const PwAffineFunction& f) {
  if (f.payload_rank != 1) fail(ErrorCode::RankMismatch, "function must be scalar valued");
  const Index r = f.paving.rank;
  RationalMatrix g(r, r);
  for (Index i = 0; i < r; ++i) g.row(i) = f.increments[i].linear.row(0);
  return inverse(f.paving.period_basis).transpose() * g;
}

DualSamples legendre_transform(const PwAffineFunction& f, int window) {
  if (f.payload_rank != 1) fail(ErrorCode::RankMismatch, "function must be scalar valued");
  for (const auto& b : bending_parameters(f))
    if (b.payload(0) < 0) fail(ErrorCode::NotConvex, "function is not convex", "f");
  RationalMatrix bform = associated_form(f);
  if (!is_positive_definite(bform))
    fail(ErrorCode::Unbounded, "associated quadratic form is not positive definite", "f");
  const Index r = f.paving.rank;

  std::vector<IntVector> reps;
  {
    std::set<IntVector, LexLess> s;
    for (const auto& c : f.paving.cells)
      for (const auto& v : c) s.insert(v);
    reps.assign(s.begin(), s.end());
  }
  struct Cand {
    IntVector y;
    IntVector k;
    Rational value;
  };
  auto build = [&](int radius) {
    std::vector<Cand> out;
    IntVector k = IntVector::Constant(r, Integer(-radius));
    for (;;) {
      AffinePiece inc = translation_increment(f, k);
      IntVector t = f.paving.period_basis * k;
      for (const auto& v : reps) {
        RatVector vr = cast_vector<Rational>(v);
        // v is a vertex of some representative cell: f(v) from that piece.
        Rational fv = 0;
        for (std::size_t c = 0; c < f.paving.cells.size(); ++c)
          if (std::find(f.paving.cells[c].begin(), f.paving.cells[c].end(), v) != f.paving.cells[c].end()) {
            fv = f.pieces[c](vr)(0);
            break;
          }
        out.push_back({IntVector(v + t), k, fv + inc(vr)(0)});
      }
      Index i = r - 1;
      while (i >= 0 && k(i) == radius) {
        k(i) = -radius;
        --i;
      }
      if (i < 0) break;
      k(i) += 1;
    }
    return out;
  };

  int radius = std::max(2, window);
  std::vector<Cand> cands = build(radius);
  DualSamples out;
  IntVector mu = IntVector::Constant(r, Integer(-window));
  for (;;) {
    for (;;) {
      const Cand* best = nullptr;
      Rational bv;
      for (const auto& c : cands) {
        Rational v = c.value + Rational(c.y.dot(mu));
        if (!best || v < bv) best = &c, bv = v;
      }
      bool interior = true;
      for (Index i = 0; i < r; ++i)
        if (abs(best->k(i)) > radius - 2) interior = false;
      if (interior) {
        out[mu] = -bv;
        break;
      }
      if (radius > 256) fail(ErrorCode::WindowTooSmall, "minimiser escapes every search box", "window");
      radius *= 2;
      cands = build(radius);
    }
    Index i = r - 1;
    while (i >= 0 && mu(i) == window) {
      mu(i) = -window;
      --i;
    }
    if (i < 0) break;
    mu(i) += 1;
  }
  return out;
}

}  // namespace tropab
