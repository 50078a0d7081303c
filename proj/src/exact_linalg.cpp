#include "tropab/exact_linalg.hpp"

#include <boost/multiprecision/integer.hpp>

#include <numeric>

namespace tropab {

using Eigen::Index;

std::vector<Index> rref_in_place(RationalMatrix& m) {
  std::vector<Index> pivots;
  Index row = 0;
  for (Index col = 0; col < m.cols() && row < m.rows(); ++col) {
    Index p = row;
    while (p < m.rows() && m(p, col) == 0) ++p;
    if (p == m.rows()) continue;
    if (p != row) m.row(p).swap(m.row(row));
    Rational inv = Rational(1) / m(row, col);
    for (Index j = col; j < m.cols(); ++j) m(row, j) *= inv;
    for (Index i = 0; i < m.rows(); ++i) {
      if (i == row || m(i, col) == 0) continue;
      Rational f = m(i, col);
      for (Index j = col; j < m.cols(); ++j) m(i, j) -= f * m(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

RationalMatrix rational_kernel(const RationalMatrix& m) {
  RationalMatrix r = m;
  auto piv = rref_in_place(r);
  std::vector<bool> is_piv(m.cols(), false);
  for (Index c : piv) is_piv[c] = true;
  std::vector<Index> free_cols;
  for (Index c = 0; c < m.cols(); ++c)
    if (!is_piv[c]) free_cols.push_back(c);
  RationalMatrix k = RationalMatrix::Zero(m.cols(), free_cols.size());
  for (std::size_t f = 0; f < free_cols.size(); ++f) {
    k(free_cols[f], f) = 1;
    for (std::size_t i = 0; i < piv.size(); ++i) k(piv[i], f) = -r(i, free_cols[f]);
  }
  return k;
}

std::optional<RationalMatrix> try_solve(const RationalMatrix& a, const RationalMatrix& b) {
  const Index n = a.rows();
  if (a.cols() != n || b.rows() != n) throw std::invalid_argument("try_solve: shape mismatch");
  RationalMatrix aug(n, n + b.cols());
  aug << a, b;
  auto piv = rref_in_place(aug);
  if (static_cast<Index>(piv.size()) != n || (n > 0 && piv.back() != n - 1)) return std::nullopt;
  return RationalMatrix(aug.rightCols(b.cols()));
}

std::optional<RationalMatrix> try_inverse(const RationalMatrix& m) {
  return try_solve(m, identity<Rational>(m.rows()));
}

bool is_positive_semidefinite(const RationalMatrix& q) {
  const Index n = q.rows();
  if (n != q.cols() || !is_symmetric(q)) return false;
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    std::vector<Index> idx;
    for (Index i = 0; i < n; ++i)
      if (mask & (1u << i)) idx.push_back(i);
    RationalMatrix sub(idx.size(), idx.size());
    for (std::size_t i = 0; i < idx.size(); ++i)
      for (std::size_t j = 0; j < idx.size(); ++j) sub(i, j) = q(idx[i], idx[j]);
    if (determinant(sub) < 0) return false;
  }
  return true;
}

Integer gcd_of(const IntVector& v) {
  Integer g = 0;
  for (Index i = 0; i < v.size(); ++i) g = boost::multiprecision::gcd(g, Integer(abs(v(i))));
  return g;
}

IntVector primitive(const IntVector& v) {
  Integer g = gcd_of(v);
  if (g == 0) return v;
  IntVector out = v;
  for (Index i = 0; i < v.size(); ++i) out(i) /= g;
  return out;
}

Integer common_denominator(const RationalMatrix& m) {
  Integer l = 1;
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j) {
      Integer d = boost::multiprecision::denominator(m(i, j));
      l = boost::multiprecision::lcm(l, d);
    }
  return l;
}

// ---------------------------------------------------------------------------

namespace {

void row_axpy(IntegerMatrix& m, Index dst, Index src, const Integer& f) {
  if (f == 0) return;
  for (Index j = 0; j < m.cols(); ++j) m(dst, j) += f * m(src, j);
}

void col_axpy(IntegerMatrix& m, Index dst, Index src, const Integer& f) {
  if (f == 0) return;
  for (Index i = 0; i < m.rows(); ++i) m(i, dst) += f * m(i, src);
}

}  // namespace

HermiteResult hermite_normal_form(const IntegerMatrix& m) {
  IntegerMatrix h = m;
  IntegerMatrix u = identity<Integer>(m.rows());
  Index k = 0;
  for (Index col = 0; col < h.cols() && k < h.rows(); ++col) {
    // Euclid on column col among rows k.. until a single nonzero remains at row k.
    for (;;) {
      Index best = -1;
      for (Index i = k; i < h.rows(); ++i)
        if (h(i, col) != 0 && (best < 0 || abs(h(i, col)) < abs(h(best, col)))) best = i;
      if (best < 0) break;
      if (best != k) {
        h.row(best).swap(h.row(k));
        u.row(best).swap(u.row(k));
      }
      bool clean = true;
      for (Index i = k + 1; i < h.rows(); ++i) {
        if (h(i, col) == 0) continue;
        Integer q = floor_div(h(i, col), h(k, col));
        row_axpy(h, i, k, Integer(-q));
        row_axpy(u, i, k, Integer(-q));
        if (h(i, col) != 0) clean = false;
      }
      if (clean) break;
    }
    if (h(k, col) == 0) continue;
    if (h(k, col) < 0) {
      h.row(k) = -h.row(k);
      u.row(k) = -u.row(k);
    }
    for (Index i = 0; i < k; ++i) {
      Integer q = floor_div(h(i, col), h(k, col));
      row_axpy(h, i, k, Integer(-q));
      row_axpy(u, i, k, Integer(-q));
    }
    ++k;
  }
  return {h, u};
}

SmithResult smith_normal_form(const IntegerMatrix& m) {
  IntegerMatrix a = m;
  IntegerMatrix u = identity<Integer>(m.rows());
  IntegerMatrix v = identity<Integer>(m.cols());
  const Index n = std::min(a.rows(), a.cols());
  for (Index t = 0; t < n; ++t) {
    for (;;) {
      // Smallest nonzero entry of the trailing block becomes the pivot.
      Index pi = -1, pj = -1;
      for (Index i = t; i < a.rows(); ++i)
        for (Index j = t; j < a.cols(); ++j)
          if (a(i, j) != 0 && (pi < 0 || abs(a(i, j)) < abs(a(pi, pj)))) pi = i, pj = j;
      if (pi < 0) break;
      if (pi != t) {
        a.row(pi).swap(a.row(t));
        u.row(pi).swap(u.row(t));
      }
      if (pj != t) {
        a.col(pj).swap(a.col(t));
        v.col(pj).swap(v.col(t));
      }
      bool dirty = false;
      for (Index i = t + 1; i < a.rows(); ++i) {
        Integer q = floor_div(a(i, t), a(t, t));
        row_axpy(a, i, t, Integer(-q));
        row_axpy(u, i, t, Integer(-q));
        if (a(i, t) != 0) dirty = true;
      }
      for (Index j = t + 1; j < a.cols(); ++j) {
        Integer q = floor_div(a(t, j), a(t, t));
        col_axpy(a, j, t, Integer(-q));
        col_axpy(v, j, t, Integer(-q));
        if (a(t, j) != 0) dirty = true;
      }
      if (dirty) continue;
      // Divisibility: fold an offending row into the pivot row and retry.
      Index bad = -1;
      for (Index i = t + 1; i < a.rows() && bad < 0; ++i)
        for (Index j = t + 1; j < a.cols(); ++j)
          if (a(i, j) % a(t, t) != 0) {
            bad = i;
            break;
          }
      if (bad < 0) break;
      row_axpy(a, t, bad, Integer(1));
      row_axpy(u, t, bad, Integer(1));
    }
    if (a(t, t) < 0) {
      a.row(t) = -a.row(t);
      u.row(t) = -u.row(t);
    }
  }
  SmithResult r;
  for (Index i = 0; i < n; ++i) r.d.push_back(a(i, i));
  r.u = u;
  r.v = v;
  return r;
}

IntegerMatrix integer_left_kernel(const IntegerMatrix& m) {
  HermiteResult hr = hermite_normal_form(m);
  std::vector<Index> zero_rows;
  for (Index i = 0; i < hr.h.rows(); ++i) {
    bool z = true;
    for (Index j = 0; j < hr.h.cols(); ++j)
      if (hr.h(i, j) != 0) z = false;
    if (z) zero_rows.push_back(i);
  }
  IntegerMatrix k(zero_rows.size(), m.rows());
  for (std::size_t i = 0; i < zero_rows.size(); ++i) k.row(i) = hr.u.row(zero_rows[i]);
  return k;
}

IntegerMatrix integer_kernel(const IntegerMatrix& m) {
  IntegerMatrix mt = m.transpose();
  return integer_left_kernel(mt).transpose();
}

// ---------------------------------------------------------------------------

Integer PolarizationType::degree() const {
  Integer d = 1;
  for (const auto& x : diag) d *= x;
  return d;
}

bool PolarizationType::valid() const {
  for (std::size_t i = 0; i < diag.size(); ++i) {
    if (diag[i] <= 0) return false;
    if (i + 1 < diag.size() && diag[i + 1] % diag[i] != 0) return false;
  }
  return true;
}

IntegerMatrix PolarizationType::matrix() const {
  IntegerMatrix m = IntegerMatrix::Zero(diag.size(), diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
  return m;
}

IntegerMatrix standard_symplectic_form(const PolarizationType& delta) {
  const Index g = static_cast<Index>(delta.size());
  IntegerMatrix e = IntegerMatrix::Zero(2 * g, 2 * g);
  for (Index i = 0; i < g; ++i) {
    e(i, g + i) = delta.diag[i];
    e(g + i, i) = -delta.diag[i];
  }
  return e;
}

namespace {

Integer pairing(const IntegerMatrix& e, const IntVector& x, const IntVector& y) {
  Integer s = 0;
  for (Index i = 0; i < e.rows(); ++i) {
    if (x(i) == 0) continue;
    for (Index j = 0; j < e.cols(); ++j)
      if (e(i, j) != 0) s += x(i) * e(i, j) * y(j);
  }
  return s;
}

}  // namespace

SymplecticDecomposition symplectic_normal_form(const IntegerMatrix& e) {
  const Index n = e.rows();
  if (n != e.cols()) fail(ErrorCode::NotSkew, "form is not square", "e");
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j)
      if (e(i, j) != -e(j, i)) fail(ErrorCode::NotSkew, "form is not skew-symmetric", "e");
  if (n % 2 != 0 || determinant(e) == 0) fail(ErrorCode::Degenerate, "form is degenerate", "e");

  std::vector<IntVector> work;
  for (Index i = 0; i < n; ++i) {
    IntVector b = IntVector::Zero(n);
    b(i) = 1;
    work.push_back(b);
  }
  std::vector<IntVector> xs, ys;
  std::vector<Integer> ds;

  while (!work.empty()) {
    for (;;) {
      // Minimal nonzero pairing; lowest index pair on ties.
      std::size_t bi = 0, bj = 0;
      Integer best = 0;
      for (std::size_t i = 0; i < work.size(); ++i)
        for (std::size_t j = i + 1; j < work.size(); ++j) {
          Integer p = abs(pairing(e, work[i], work[j]));
          if (p != 0 && (best == 0 || p < best)) best = p, bi = i, bj = j;
        }
      IntVector& x = work[bi];
      IntVector& y = work[bj];
      Integer d = pairing(e, x, y);

      bool restart = false;
      for (std::size_t k = 0; k < work.size() && !restart; ++k) {
        if (k == bi || k == bj) continue;
        Integer exz = pairing(e, x, work[k]);
        Integer eyz = pairing(e, y, work[k]);
        if (exz % d != 0) {
          work[k] -= floor_div(exz, d) * y;  // E(x, z') becomes the remainder
          restart = true;
        } else if (eyz % d != 0) {
          work[k] += floor_div(eyz, d) * x;
          restart = true;
        }
      }
      if (restart) continue;

      for (std::size_t k = 0; k < work.size(); ++k) {
        if (k == bi || k == bj) continue;
        Integer exz = pairing(e, x, work[k]);
        Integer eyz = pairing(e, y, work[k]);
        work[k] += (eyz / d) * x - (exz / d) * y;
      }

      // The pivot must divide every pairing left in the complement.
      std::size_t offender = work.size();
      for (std::size_t k = 0; k < work.size() && offender == work.size(); ++k)
        for (std::size_t l = k + 1; l < work.size(); ++l) {
          if (k == bi || k == bj || l == bi || l == bj) continue;
          if (pairing(e, work[k], work[l]) % d != 0) {
            offender = k;
            break;
          }
        }
      if (offender != work.size()) {
        x += work[offender];
        continue;
      }

      IntVector xv = x, yv = y;
      if (d < 0) {
        yv = -yv;
        d = -d;
      }
      xs.push_back(xv);
      ys.push_back(yv);
      ds.push_back(d);
      work.erase(work.begin() + static_cast<std::ptrdiff_t>(bj));
      work.erase(work.begin() + static_cast<std::ptrdiff_t>(bi));
      break;
    }
  }

  const Index g = n / 2;
  SymplecticDecomposition out;
  out.basis_change.resize(n, n);
  for (Index i = 0; i < g; ++i) {
    out.basis_change.row(i) = xs[i].transpose();
    out.basis_change.row(g + i) = ys[i].transpose();
    out.type.diag.push_back(ds[i]);
  }
  return out;
}

PolarizationType polarization_type(const IntegerMatrix& phi) {
  if (phi.rows() != phi.cols() || determinant(phi) == 0)
    fail(ErrorCode::NotInjective, "map is not injective", "phi");
  PolarizationType t;
  t.diag = smith_normal_form(phi).d;
  return t;
}

RationalMatrix glxy_act(const IntegerMatrix& u, const RationalMatrix& q, const IntegerMatrix& y_basis) {
  if (!is_unimodular(u)) fail(ErrorCode::NotUnimodular, "u is not unimodular", "u");
  if (q.rows() != u.rows() || q.cols() != u.cols())
    throw std::invalid_argument("glxy_act: q and u have different sizes");
  if (y_basis.rows() != u.rows()) throw std::invalid_argument("glxy_act: y_basis has wrong row count");
  RationalMatrix yb = cast_matrix<Rational>(y_basis);
  if (rank(yb) != yb.cols() || yb.cols() != yb.rows())
    throw std::invalid_argument("glxy_act: y_basis must be a square nonsingular basis");
  RationalMatrix img = cast_matrix<Rational>(IntegerMatrix(u * y_basis));
  auto coords = try_solve(yb, img);
  IntegerMatrix dummy;
  if (!coords || !to_integer_matrix(*coords, dummy))
    fail(ErrorCode::NotInGLXY, "u does not preserve the sublattice", "u");
  RationalMatrix uinv = inverse(u);
  return uinv.transpose() * q * uinv;
}

}  // namespace tropab
