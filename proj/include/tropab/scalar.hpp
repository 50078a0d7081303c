#pragma once

#include <Eigen/Dense>
#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/eigen.hpp>

#include <functional>
#include <string>
#include <vector>

namespace tropab {

using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                              boost::multiprecision::et_off>;
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;

template <typename Scalar>
using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using IntegerMatrix = Mat<Integer>;
using RationalMatrix = Mat<Rational>;
using IntVector = Vec<Integer>;
using RatVector = Vec<Rational>;

inline Integer floor_div(const Integer& a, const Integer& b) {
  Integer q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) q -= 1;
  return q;
}

inline Integer mod_floor(const Integer& a, const Integer& b) { return a - b * floor_div(a, b); }

inline Integer rfloor(const Rational& x) {
  return floor_div(boost::multiprecision::numerator(x), boost::multiprecision::denominator(x));
}

inline bool is_integral(const Rational& x) { return boost::multiprecision::denominator(x) == 1; }

inline Integer to_integer(const Rational& x) { return boost::multiprecision::numerator(x); }

inline std::string to_string(const Integer& x) { return x.str(); }
inline std::string to_string(const Rational& x) { return x.str(); }

// Accepts "p", "p/q", and plain integers with optional sign.
Rational parse_rational(const std::string& s);
Integer parse_integer(const std::string& s);

template <typename To, typename Derived>
Mat<To> cast_matrix(const Eigen::MatrixBase<Derived>& m) {
  Mat<To> out(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) out(i, j) = To(m(i, j));
  return out;
}

template <typename To, typename Derived>
Vec<To> cast_vector(const Eigen::MatrixBase<Derived>& v) {
  Vec<To> out(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) out(i) = To(v(i));
  return out;
}

// Rational matrix -> integer matrix; returns false if some entry is not integral.
bool to_integer_matrix(const RationalMatrix& m, IntegerMatrix& out);

template <typename Scalar>
Mat<Scalar> identity(Eigen::Index n) {
  Mat<Scalar> m = Mat<Scalar>::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) m(i, i) = Scalar(1);
  return m;
}

template <typename Scalar>
Vec<Scalar> make_vec(std::initializer_list<Scalar> xs) {
  Vec<Scalar> v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (const auto& x : xs) v(i++) = x;
  return v;
}

template <typename Scalar>
Mat<Scalar> make_mat(std::initializer_list<std::initializer_list<Scalar>> rows) {
  Eigen::Index r = static_cast<Eigen::Index>(rows.size());
  Eigen::Index c = r ? static_cast<Eigen::Index>(rows.begin()->size()) : 0;
  Mat<Scalar> m(r, c);
  Eigen::Index i = 0;
  for (const auto& row : rows) {
    Eigen::Index j = 0;
    for (const auto& x : row) m(i, j++) = x;
    ++i;
  }
  return m;
}

// Lexicographic comparison of equal-length integer vectors.
template <typename Scalar>
bool lex_less(const Vec<Scalar>& a, const Vec<Scalar>& b) {
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (a(i) < b(i)) return true;
    if (b(i) < a(i)) return false;
  }
  return false;
}

struct LexLess {
  template <typename Scalar>
  bool operator()(const Vec<Scalar>& a, const Vec<Scalar>& b) const {
    return lex_less(a, b);
  }
};

template <typename Scalar>
bool lex_less(const std::vector<Vec<Scalar>>& a, const std::vector<Vec<Scalar>>& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(), LexLess{});
}

std::size_t hash_vector(const IntVector& v);

struct IntVectorHash {
  std::size_t operator()(const IntVector& v) const { return hash_vector(v); }
};

struct IntVectorEq {
  bool operator()(const IntVector& a, const IntVector& b) const {
    return a.size() == b.size() && a == b;
  }
};

}  // namespace tropab
