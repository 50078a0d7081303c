#include "tropab/scalar.hpp"
#include "tropab/errors.hpp"

#include <cctype>

namespace tropab {

namespace {

bool valid_integer_text(const std::string& s) {
  std::size_t i = 0;
  if (i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}

}  // namespace

Integer parse_integer(const std::string& s) {
  if (!valid_integer_text(s)) throw std::invalid_argument("not an integer: '" + s + "'");
  return Integer(s[0] == '+' ? s.substr(1) : s);
}

Rational parse_rational(const std::string& s) {
  auto slash = s.find('/');
  if (slash == std::string::npos) return Rational(parse_integer(s));
  Integer p = parse_integer(s.substr(0, slash));
  std::string qs = s.substr(slash + 1);
  if (!qs.empty() && (qs[0] == '-' || qs[0] == '+')) throw std::invalid_argument("bad denominator: '" + s + "'");
  Integer q = parse_integer(qs);
  if (q == 0) throw std::invalid_argument("zero denominator: '" + s + "'");
  return Rational(p, q);
}

bool to_integer_matrix(const RationalMatrix& m, IntegerMatrix& out) {
  out.resize(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (!is_integral(m(i, j))) return false;
      out(i, j) = to_integer(m(i, j));
    }
  return true;
}

std::size_t hash_vector(const IntVector& v) {
  std::size_t h = 0x9e3779b97f4a7c15ULL ^ static_cast<std::size_t>(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    long x = v(i).convert_to<long>();
    h ^= std::hash<long>{}(x) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

const char* error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotSkew: return "NotSkew";
    case ErrorCode::Degenerate: return "Degenerate";
    case ErrorCode::NotInjective: return "NotInjective";
    case ErrorCode::NotInGLXY: return "NotInGLXY";
    case ErrorCode::NotUnimodular: return "NotUnimodular";
    case ErrorCode::NotPositiveDefinite: return "NotPositiveDefinite";
    case ErrorCode::WindowTooSmall: return "WindowTooSmall";
    case ErrorCode::InvalidPaving: return "InvalidPaving";
    case ErrorCode::NonMatchingFaces: return "NonMatchingFaces";
    case ErrorCode::RankMismatch: return "RankMismatch";
    case ErrorCode::NotQuasiperiodic: return "NotQuasiperiodic";
    case ErrorCode::NotSimplicial: return "NotSimplicial";
    case ErrorCode::MissingVertexValue: return "MissingVertexValue";
    case ErrorCode::NotConvex: return "NotConvex";
    case ErrorCode::Unbounded: return "Unbounded";
    case ErrorCode::OutsideSupport: return "OutsideSupport";
    case ErrorCode::InconsistentData: return "InconsistentData";
    case ErrorCode::NotInvariant: return "NotInvariant";
    case ErrorCode::NotAFace: return "NotAFace";
    case ErrorCode::NotSymplectic: return "NotSymplectic";
    case ErrorCode::NearSingularDenominator: return "NearSingularDenominator";
    case ErrorCode::IllConditionedBlock: return "IllConditionedBlock";
    case ErrorCode::BadModulus: return "BadModulus";
    case ErrorCode::BadLift: return "BadLift";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::BadTwistPair: return "BadTwistPair";
    case ErrorCode::EmptyComponent: return "EmptyComponent";
    case ErrorCode::NotSharp: return "NotSharp";
  }
  return "Unknown";
}

}  // namespace tropab
