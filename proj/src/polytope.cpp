#include "tropab/polytope.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace tropab {

using Eigen::Index;

std::vector<RatVector> to_rational(const std::vector<IntVector>& pts) {
  std::vector<RatVector> out;
  out.reserve(pts.size());
  for (const auto& p : pts) out.push_back(cast_vector<Rational>(p));
  return out;
}

namespace {

RationalMatrix difference_rows(const std::vector<RatVector>& pts) {
  const Index r = pts.empty() ? 0 : pts[0].size();
  RationalMatrix d(pts.empty() ? 0 : pts.size() - 1, r);
  for (std::size_t i = 1; i < pts.size(); ++i) d.row(i - 1) = (pts[i] - pts[0]).transpose();
  return d;
}

// Coordinates of the points in an affine basis of their hull (dimension = affine rank).
std::vector<RatVector> local_coordinates(const std::vector<RatVector>& pts) {
  RationalMatrix d = difference_rows(pts);
  RationalMatrix t = d.transpose();  // columns are differences
  RationalMatrix work = t;
  auto piv = rref_in_place(work);  // pivot columns = independent differences
  const Index m = static_cast<Index>(piv.size());
  RationalMatrix basis(t.rows(), m);
  for (Index i = 0; i < m; ++i) basis.col(i) = t.col(piv[i]);
  // Pick m coordinate rows where the basis is invertible.
  RationalMatrix bt = basis.transpose();
  auto rows = rref_in_place(bt);
  RationalMatrix sq(m, m);
  for (Index i = 0; i < m; ++i) sq.row(i) = basis.row(rows[i]);
  RationalMatrix sq_inv = *try_inverse(sq);
  std::vector<RatVector> out;
  for (const auto& p : pts) {
    RatVector diff = p - pts[0];
    RatVector sel(m);
    for (Index i = 0; i < m; ++i) sel(i) = diff(rows[i]);
    out.push_back(sq_inv * sel);
  }
  return out;
}

Rational dot(const IntVector& n, const RatVector& x) {
  Rational s = 0;
  for (Index i = 0; i < n.size(); ++i)
    if (n(i) != 0) s += Rational(n(i)) * x(i);
  return s;
}

}  // namespace

Index affine_rank(const std::vector<RatVector>& pts) {
  if (pts.size() <= 1) return 0;
  return rank(difference_rows(pts));
}

IntVector hyperplane_normal(const std::vector<RatVector>& pts) {
  RationalMatrix k = rational_kernel(difference_rows(pts));
  if (k.cols() != 1) throw std::invalid_argument("hyperplane_normal: points do not span a hyperplane");
  Integer den = common_denominator(k);
  IntVector n(k.rows());
  for (Index i = 0; i < k.rows(); ++i) n(i) = to_integer(k(i, 0) * Rational(den));
  return primitive(n);
}

std::vector<Facet> facets(const std::vector<RatVector>& pts) {
  std::vector<Facet> out;
  if (pts.empty()) return out;
  const Index r = pts[0].size();
  if (affine_rank(pts) != r) throw std::invalid_argument("facets: configuration is not full-dimensional");
  if (r == 0) return out;
  const int n = static_cast<int>(pts.size());
  std::set<std::vector<int>> seen;
  std::vector<int> comb(r);
  for (Index i = 0; i < r; ++i) comb[i] = static_cast<int>(i);
  auto covered = [&](const std::vector<int>& c) {
    for (const auto& f : out)
      if (std::includes(f.points.begin(), f.points.end(), c.begin(), c.end())) return true;
    return false;
  };
  for (;;) {
    if (!covered(comb)) {
      std::vector<RatVector> sub;
      for (int i : comb) sub.push_back(pts[i]);
      if (affine_rank(sub) == r - 1) {
        IntVector nrm = hyperplane_normal(sub);
        Rational c = dot(nrm, sub[0]);
        bool above = false, below = false;
        std::vector<int> on;
        for (int i = 0; i < n; ++i) {
          Rational v = dot(nrm, pts[i]);
          if (v > c) above = true;
          else if (v < c) below = true;
          else on.push_back(i);
        }
        if (!(above && below) && !seen.count(on)) {
          seen.insert(on);
          if (above) {
            nrm = -nrm;
            c = -c;
          }
          out.push_back({on, nrm, c});
        }
      }
    }
    // Next combination.
    Index k = r - 1;
    while (k >= 0 && comb[k] == n - r + k) --k;
    if (k < 0) break;
    ++comb[k];
    for (Index j = k + 1; j < r; ++j) comb[j] = comb[j - 1] + 1;
  }
  return out;
}

std::vector<int> extreme_points(const std::vector<RatVector>& pts) {
  if (pts.empty()) return {};
  const Index m = affine_rank(pts);
  if (m == 0) return {0};
  std::vector<RatVector> loc = local_coordinates(pts);
  std::vector<Facet> fs = facets(loc);
  std::vector<int> out;
  for (int i = 0; i < static_cast<int>(pts.size()); ++i) {
    std::vector<IntVector> normals;
    for (const auto& f : fs)
      if (std::binary_search(f.points.begin(), f.points.end(), i)) normals.push_back(f.normal);
    if (static_cast<Index>(normals.size()) < m) continue;
    IntegerMatrix nm(normals.size(), m);
    for (std::size_t j = 0; j < normals.size(); ++j) nm.row(j) = normals[j].transpose();
    if (rank(nm) == m) out.push_back(i);
  }
  return out;
}

std::vector<std::vector<int>> triangulate(const std::vector<RatVector>& pts) {
  const Index m = affine_rank(pts);
  if (static_cast<Index>(pts.size()) == m + 1) {
    std::vector<int> all(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) all[i] = static_cast<int>(i);
    return {all};
  }
  std::vector<RatVector> loc = local_coordinates(pts);
  const int apex = extreme_points(pts).front();
  std::vector<std::vector<int>> out;
  for (const auto& f : facets(loc)) {
    if (std::binary_search(f.points.begin(), f.points.end(), apex)) continue;
    std::vector<RatVector> sub;
    for (int i : f.points) sub.push_back(pts[i]);
    for (auto simplex : triangulate(sub)) {
      for (int& i : simplex) i = f.points[i];
      simplex.push_back(apex);
      std::sort(simplex.begin(), simplex.end());
      out.push_back(simplex);
    }
  }
  return out;
}

Rational volume(const std::vector<RatVector>& pts) {
  if (pts.empty()) return 0;
  const Index r = pts[0].size();
  if (affine_rank(pts) != r) return 0;
  Rational total = 0;
  Integer fact = 1;
  for (Index i = 2; i <= r; ++i) fact *= i;
  for (const auto& s : triangulate(pts)) {
    RationalMatrix e(r, r);
    for (Index i = 0; i < r; ++i) e.col(i) = pts[s[i + 1]] - pts[s[0]];
    Rational d = determinant(e);
    total += d < 0 ? Rational(-d) : d;
  }
  return total / Rational(fact);
}

}  // namespace tropab
