#include "tropab/paving.hpp"

#include <algorithm>
#include <set>

namespace tropab {

using Eigen::Index;

namespace {

Integer ceil_rat(const Rational& x) { return -rfloor(-x); }

// Calls fn(v) for every integer vector v with lo ≤ v ≤ hi, in lex order.
template <typename Fn>
void for_each_in_box(const IntVector& lo, const IntVector& hi, Fn&& fn) {
  const Index r = lo.size();
  for (Index i = 0; i < r; ++i)
    if (lo(i) > hi(i)) return;
  IntVector v = lo;
  for (;;) {
    fn(v);
    Index k = r - 1;
    while (k >= 0 && v(k) == hi(k)) {
      v(k) = lo(k);
      --k;
    }
    if (k < 0) return;
    v(k) += 1;
  }
}

}  // namespace

IntVector lattice_floor(const RatVector& x, const RationalMatrix& period_inverse) {
  RatVector c = period_inverse * x;
  IntVector k(c.size());
  for (Index i = 0; i < c.size(); ++i) k(i) = rfloor(c(i));
  return k;
}

LatticePolytope canonical_translate(const LatticePolytope& cell, const IntegerMatrix& period_basis,
                                    const RationalMatrix& period_inverse, IntVector* offset) {
  LatticePolytope v = cell;
  std::sort(v.begin(), v.end(), LexLess{});
  IntVector k = lattice_floor(cast_vector<Rational>(v.front()), period_inverse);
  IntVector t = -(period_basis * k);
  for (auto& x : v) x += t;
  if (offset) *offset = t;
  return v;
}

PeriodicPaving make_paving(const IntegerMatrix& period_basis, const std::vector<LatticePolytope>& cells,
                           int window) {
  PeriodicPaving p;
  p.rank = period_basis.rows();
  p.period_basis = period_basis;
  p.window = window;
  p.shift = RatVector::Zero(p.rank);
  RationalMatrix inv = inverse(period_basis);
  std::set<LatticePolytope, PolytopeLess> seen;
  for (const auto& c : cells) seen.insert(canonical_translate(c, period_basis, inv));
  p.cells.assign(seen.begin(), seen.end());
  return p;
}

bool same_paving(const PeriodicPaving& a, const PeriodicPaving& b) {
  if (a.rank != b.rank) return false;
  if (hermite_normal_form(IntegerMatrix(a.period_basis.transpose())).h !=
      hermite_normal_form(IntegerMatrix(b.period_basis.transpose())).h)
    return false;
  if (a.shift.size() == b.shift.size() && a.shift != b.shift) return false;
  PeriodicPaving bb = make_paving(a.period_basis, b.cells, b.window);
  PeriodicPaving aa = make_paving(a.period_basis, a.cells, a.window);
  return aa.cells == bb.cells;
}

PeriodicPaving restrict_periods(const PeriodicPaving& p, const IntegerMatrix& sub_basis) {
  // sub_basis = Λ·m with m integral; coset representatives of ℤ^r / mℤ^r from the HNF box.
  RationalMatrix mr = inverse(p.period_basis) * cast_matrix<Rational>(sub_basis);
  IntegerMatrix m;
  if (!to_integer_matrix(mr, m) || determinant(m) == 0)
    fail(ErrorCode::InvalidPaving, "not a full-rank sublattice of the translation lattice", "period_basis");
  IntegerMatrix h = hermite_normal_form(IntegerMatrix(m.transpose())).h;  // rows generate the same lattice
  IntVector lo = IntVector::Zero(p.rank), hi(p.rank);
  for (Index i = 0; i < p.rank; ++i) hi(i) = h(i, i) - 1;
  std::vector<LatticePolytope> cells;
  for_each_in_box(lo, hi, [&](const IntVector& k) {
    IntVector t = p.period_basis * k;
    for (const auto& c : p.cells) {
      LatticePolytope moved = c;
      for (auto& x : moved) x += t;
      cells.push_back(moved);
    }
  });
  PeriodicPaving out = make_paving(sub_basis, cells, p.window);
  out.shift = p.shift;
  return out;
}

std::vector<IntVector> window_points(const IntegerMatrix& period_basis, int w) {
  const Index r = period_basis.rows();
  RationalMatrix inv = inverse(period_basis);
  IntVector lo(r), hi(r);
  for (Index i = 0; i < r; ++i) {
    Integer s = 0;
    for (Index j = 0; j < r; ++j) s += abs(period_basis(i, j));
    hi(i) = s * w;
    lo(i) = -hi(i);
  }
  std::vector<IntVector> out;
  for_each_in_box(lo, hi, [&](const IntVector& x) {
    RatVector c = inv * cast_vector<Rational>(x);
    for (Index i = 0; i < r; ++i)
      if (c(i) > w || c(i) < -w) return;
    out.push_back(x);
  });
  return out;
}

bool is_simplicial(const PeriodicPaving& p) {
  for (const auto& c : p.cells)
    if (static_cast<Index>(c.size()) != p.rank + 1) return false;
  return true;
}

bool is_minimal_triangulation(const PeriodicPaving& p) {
  if (!is_simplicial(p)) return false;
  const Index r = p.rank;
  for (const auto& cell : p.cells) {
    auto fs = facets(to_rational(cell));
    IntVector lo = cell.front(), hi = cell.front();
    for (const auto& v : cell) {
      lo = lo.cwiseMin(v);
      hi = hi.cwiseMax(v);
    }
    std::set<IntVector, LexLess> verts(cell.begin(), cell.end());
    IntVector x = lo;
    for (;;) {
      bool inside = true;
      for (const auto& f : fs)
        if (cast_vector<Rational>(f.normal).dot(cast_vector<Rational>(x)) > f.offset) inside = false;
      if (inside && !verts.count(x)) return false;
      Index k = r - 1;
      while (k >= 0 && x(k) == hi(k)) {
        x(k) = lo(k);
        --k;
      }
      if (k < 0) break;
      x(k) += 1;
    }
  }
  return true;
}

PavingTopology paving_topology(const PeriodicPaving& p) {
  const Index r = p.rank;
  if (p.period_basis.rows() != r || p.period_basis.cols() != r || determinant(p.period_basis) == 0)
    fail(ErrorCode::InvalidPaving, "period basis is not a full-rank lattice", "period_basis");
  RationalMatrix inv = inverse(p.period_basis);
  PavingTopology topo;
  Rational total = 0;
  std::map<LatticePolytope, int, PolytopeLess> index;
  for (int c = 0; c < static_cast<int>(p.cells.size()); ++c) {
    const auto& cell = p.cells[c];
    std::vector<RatVector> pts = to_rational(cell);
    if (cell.empty() || affine_rank(pts) != r)
      fail(ErrorCode::InvalidPaving, "cell " + std::to_string(c) + " is not full-dimensional", "cells");
    total += volume(pts);
    std::vector<CellFacet> cf;
    for (const auto& f : facets(pts)) {
      cf.push_back({f.points, f.normal, f.offset});
      LatticePolytope verts;
      for (int i : f.points) verts.push_back(cell[i]);
      IntVector t;
      LatticePolytope canon = canonical_translate(verts, p.period_basis, inv, &t);
      IntVector n = f.normal;
      bool outward_positive = false;
      for (Index i = 0; i < r; ++i)
        if (n(i) != 0) {
          outward_positive = n(i) > 0;
          break;
        }
      if (!outward_positive) n = -n;
      auto [it, inserted] = index.emplace(canon, static_cast<int>(topo.walls.size()));
      if (inserted) {
        Wall w;
        w.vertices = canon;
        w.normal = n;
        w.offset = Rational(n.dot(canon.front()));
        topo.walls.push_back(w);
      }
      Wall& w = topo.walls[it->second];
      // The cell lies on the side opposite to its outward normal.
      bool plus = !outward_positive;
      int& slot = plus ? w.plus_cell : w.minus_cell;
      if (slot >= 0)
        fail(ErrorCode::InvalidPaving, "a facet orbit is shared by more than two cells on one side", "cells");
      slot = c;
      (plus ? w.plus_shift : w.minus_shift) = t;
      (plus ? w.plus_facet : w.minus_facet) = static_cast<int>(cf.size()) - 1;
    }
    topo.cell_facets.push_back(cf);
  }
  for (const auto& w : topo.walls)
    if (w.plus_cell < 0 || w.minus_cell < 0)
      fail(ErrorCode::InvalidPaving, "a facet is not matched face-to-face by a neighbouring cell", "cells");
  Rational covol = Rational(abs(determinant(p.period_basis)));
  if (total != covol)
    fail(ErrorCode::InvalidPaving,
         "cell volumes sum to " + total.str() + " but the covolume is " + covol.str(), "cells");
  return topo;
}

std::pair<int, IntVector> locate(const PeriodicPaving& p, const PavingTopology& topo, const RatVector& x) {
  const Index r = p.rank;
  RationalMatrix inv = inverse(p.period_basis);
  RatVector px = inv * x;
  for (int c = 0; c < static_cast<int>(p.cells.size()); ++c) {
    RatVector lo(r), hi(r);
    for (std::size_t v = 0; v < p.cells[c].size(); ++v) {
      RatVector pv = inv * cast_vector<Rational>(p.cells[c][v]);
      for (Index i = 0; i < r; ++i) {
        if (v == 0 || pv(i) < lo(i)) lo(i) = pv(i);
        if (v == 0 || pv(i) > hi(i)) hi(i) = pv(i);
      }
    }
    IntVector mlo(r), mhi(r);
    for (Index i = 0; i < r; ++i) {
      mlo(i) = ceil_rat(px(i) - hi(i));
      mhi(i) = rfloor(px(i) - lo(i));
    }
    std::optional<IntVector> found;
    for_each_in_box(mlo, mhi, [&](const IntVector& m) {
      if (found) return;
      RatVector y = x - cast_vector<Rational>(IntVector(p.period_basis * m));
      for (const auto& f : topo.cell_facets[c]) {
        Rational s = 0;
        for (Index i = 0; i < r; ++i) s += Rational(f.normal(i)) * y(i);
        if (s > f.offset) return;
      }
      found = IntVector(p.period_basis * m);
    });
    if (found) return {c, *found};
  }
  fail(ErrorCode::InvalidPaving, "point is not covered by any cell");
}

std::optional<AffinePiece> fit_affine(const std::vector<RatVector>& pts, const std::vector<RatVector>& values) {
  const Index r = pts.front().size();
  const Index k = values.front().size();
  // Affinely independent subset: pivot columns of the difference matrix.
  RationalMatrix diffs(r, pts.size() - 1);
  for (std::size_t i = 1; i < pts.size(); ++i) diffs.col(i - 1) = pts[i] - pts[0];
  RationalMatrix work = diffs;
  auto piv = rref_in_place(work);
  if (static_cast<Index>(piv.size()) != r) throw std::invalid_argument("fit_affine: points do not span");
  std::vector<std::size_t> chosen{0};
  for (Index c : piv) chosen.push_back(static_cast<std::size_t>(c) + 1);
  RationalMatrix a(r + 1, r + 1), b(r + 1, k);
  for (Index i = 0; i <= r; ++i) {
    a.row(i).head(r) = pts[chosen[i]].transpose();
    a(i, r) = 1;
    b.row(i) = values[chosen[i]].transpose();
  }
  RationalMatrix sol = *try_solve(a, b);  // (r+1)×k
  AffinePiece piece{RationalMatrix(sol.topRows(r).transpose()), RatVector(sol.row(r).transpose())};
  for (std::size_t i = 0; i < pts.size(); ++i)
    if (piece(pts[i]) != values[i]) return std::nullopt;
  return piece;
}

}  // namespace tropab
