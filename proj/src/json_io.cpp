#include "tropab/json_io.hpp"

namespace tropab::io {

using Eigen::Index;

namespace {

[[noreturn]] void bad(const std::string& field, const std::string& what) {
  throw SchemaError(field.empty() ? what : field + ": " + what, field);
}

const Json& array_at(const Json& j, const std::string& field) {
  if (!j.is_array()) bad(field, "expected an array");
  return j;
}

std::string sub(const std::string& field, std::size_t i) { return field + "[" + std::to_string(i) + "]"; }

template <typename S, typename F>
Mat<S> matrix_from(const Json& j, const std::string& field, F&& scalar) {
  array_at(j, field);
  const Index rows = static_cast<Index>(j.size());
  Index cols = 0;
  if (rows > 0) cols = static_cast<Index>(array_at(j[0], sub(field, 0)).size());
  Mat<S> m(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    const Json& row = array_at(j[i], sub(field, i));
    if (static_cast<Index>(row.size()) != cols) bad(field, "ragged matrix");
    for (Index c = 0; c < cols; ++c) m(i, c) = scalar(row[c], sub(sub(field, i), c));
  }
  return m;
}

template <typename S, typename F>
Vec<S> vector_from(const Json& j, const std::string& field, F&& scalar) {
  array_at(j, field);
  Vec<S> v(static_cast<Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(i) = scalar(j[i], sub(field, i));
  return v;
}

}  // namespace

const Json& require(const Json& obj, const std::string& key) {
  if (!obj.is_object()) bad(key, "expected an object containing this key");
  auto it = obj.find(key);
  if (it == obj.end()) bad(key, "missing required key");
  return *it;
}

void reject_unknown_keys(const Json& obj, std::initializer_list<const char*> allowed, const std::string& where) {
  if (!obj.is_object()) bad(where, "expected an object");
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool ok = false;
    for (const char* a : allowed)
      if (it.key() == a) ok = true;
    if (!ok) bad(where.empty() ? it.key() : where + "." + it.key(), "unknown key");
  }
}

Rational rational_from(const Json& j, const std::string& field) {
  try {
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_number_integer()) return Rational(Integer(j.dump()));
  } catch (const std::invalid_argument& e) {
    bad(field, e.what());
  }
  bad(field, "expected a rational as \"p/q\" or an integer");
}

Integer integer_from(const Json& j, const std::string& field) {
  try {
    if (j.is_string()) return parse_integer(j.get<std::string>());
    if (j.is_number_integer()) return Integer(j.dump());
  } catch (const std::invalid_argument& e) {
    bad(field, e.what());
  }
  bad(field, "expected an integer");
}

RationalMatrix rational_matrix_from(const Json& j, const std::string& field) {
  return matrix_from<Rational>(j, field, rational_from);
}

IntegerMatrix integer_matrix_from(const Json& j, const std::string& field) {
  return matrix_from<Integer>(j, field, integer_from);
}

RatVector rational_vector_from(const Json& j, const std::string& field) {
  return vector_from<Rational>(j, field, rational_from);
}

IntVector integer_vector_from(const Json& j, const std::string& field) {
  return vector_from<Integer>(j, field, integer_from);
}

std::vector<std::int64_t> small_ints_from(const Json& j, const std::string& field) {
  IntVector v = integer_vector_from(j, field);
  std::vector<std::int64_t> out;
  for (Index i = 0; i < v.size(); ++i) {
    if (abs(v(i)) > Integer(1) << 40) bad(field, "entry out of range");
    out.push_back(v(i).convert_to<std::int64_t>());
  }
  return out;
}

PolarizationType type_from(const Json& j, const std::string& field) {
  IntVector v = integer_vector_from(j, field);
  PolarizationType t;
  for (Index i = 0; i < v.size(); ++i) t.diag.push_back(v(i));
  return t;
}

Json to_json(const Rational& x) { return x.str(); }
Json to_json(const Integer& x) { return x.str(); }

Json to_json(const RationalMatrix& m) {
  Json out = Json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Index c = 0; c < m.cols(); ++c) row.push_back(m(i, c).str());
    out.push_back(row);
  }
  return out;
}

Json to_json(const IntegerMatrix& m) {
  Json out = Json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Index c = 0; c < m.cols(); ++c) row.push_back(m(i, c).str());
    out.push_back(row);
  }
  return out;
}

Json to_json(const RatVector& v) {
  Json out = Json::array();
  for (Index i = 0; i < v.size(); ++i) out.push_back(v(i).str());
  return out;
}

Json points_json(const IntVector& v) {
  Json out = Json::array();
  for (Index i = 0; i < v.size(); ++i) out.push_back(Json::parse(v(i).str()));
  return out;
}

Json type_json(const PolarizationType& t) {
  Json out = Json::array();
  for (const auto& x : t.diag) out.push_back(Json::parse(x.str()));
  return out;
}

Json to_json(const RealMatrix& m) {
  Json out = Json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Index c = 0; c < m.cols(); ++c) row.push_back(m(i, c));
    out.push_back(row);
  }
  return out;
}

Json to_json(const ComplexMatrix& m) {
  Json out = Json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Index c = 0; c < m.cols(); ++c) row.push_back({m(i, c).real(), m(i, c).imag()});
    out.push_back(row);
  }
  return out;
}

ComplexMatrix complex_matrix_from(const Json& j, const std::string& field) {
  auto entry = [](const Json& x, const std::string& f) -> std::complex<double> {
    if (x.is_number()) return {x.get<double>(), 0.0};
    if (!x.is_array() || x.size() != 2 || !x[0].is_number() || !x[1].is_number())
      bad(f, "expected a [re, im] pair");
    return {x[0].get<double>(), x[1].get<double>()};
  };
  return matrix_from<std::complex<double>>(j, field, entry);
}

// ---------------------------------------------------------------------------

Json to_json(const PeriodicPaving& p) {
  Json cells = Json::array();
  for (const auto& c : p.cells) {
    Json cell = Json::array();
    for (const auto& v : c) cell.push_back(points_json(v));
    cells.push_back(cell);
  }
  Json out = {{"kind", "paving"},
              {"rank", p.rank},
              {"period_basis", to_json(p.period_basis)},
              {"window", p.window},
              {"cells", cells}};
  if (p.shift.size() == p.rank && p.shift != RatVector::Zero(p.rank)) out["shift"] = to_json(p.shift);
  return out;
}

PeriodicPaving paving_from(const Json& j, const std::string& field) {
  reject_unknown_keys(j, {"kind", "rank", "period_basis", "window", "cells", "shift"}, field);
  const Json& cells_j = array_at(require(j, "cells"), field + ".cells");
  std::vector<LatticePolytope> cells;
  Index r = -1;
  for (std::size_t i = 0; i < cells_j.size(); ++i) {
    LatticePolytope cell;
    for (std::size_t k = 0; k < array_at(cells_j[i], sub(field + ".cells", i)).size(); ++k) {
      IntVector v = integer_vector_from(cells_j[i][k], sub(sub(field + ".cells", i), k));
      if (r < 0) r = v.size();
      if (v.size() != r) bad(field + ".cells", "vertices of different ranks");
      cell.push_back(v);
    }
    if (cell.empty()) bad(sub(field + ".cells", i), "empty cell");
    cells.push_back(cell);
  }
  if (j.contains("rank")) {
    Index rr = j["rank"].get<Index>();
    if (r >= 0 && rr != r) bad(field + ".rank", "rank disagrees with the cells");
    r = rr;
  }
  if (r < 1) bad(field, "cannot determine the rank");
  IntegerMatrix basis = j.contains("period_basis") ? integer_matrix_from(j["period_basis"], field + ".period_basis")
                                                    : identity<Integer>(r);
  if (basis.rows() != r || basis.cols() != r) bad(field + ".period_basis", "must be r×r");
  if (determinant(basis) == 0) bad(field + ".period_basis", "must be nonsingular");
  int window = j.contains("window") ? j["window"].get<int>() : 4;
  PeriodicPaving p = make_paving(basis, cells, window);
  if (j.contains("shift")) {
    p.shift = rational_vector_from(j["shift"], field + ".shift");
    if (p.shift.size() != r) bad(field + ".shift", "wrong length");
  }
  return p;
}

namespace {

Json piece_json(const AffinePiece& a) { return {{"linear", to_json(a.linear)}, {"constant", to_json(a.constant)}}; }

AffinePiece piece_from(const Json& j, const std::string& field, Index k, Index r) {
  reject_unknown_keys(j, {"linear", "constant"}, field);
  AffinePiece a{rational_matrix_from(require(j, "linear"), field + ".linear"),
                rational_vector_from(require(j, "constant"), field + ".constant")};
  if (a.linear.rows() != k || a.linear.cols() != r || a.constant.size() != k) bad(field, "wrong shape");
  return a;
}

}  // namespace

Json to_json(const PwAffineFunction& f) {
  Json pieces = Json::array(), incs = Json::array();
  for (const auto& p : f.pieces) pieces.push_back(piece_json(p));
  for (const auto& p : f.increments) incs.push_back(piece_json(p));
  return {{"kind", "function"},
          {"paving", to_json(f.paving)},
          {"payload_rank", f.payload_rank},
          {"pieces", pieces},
          {"increments", incs}};
}

PwAffineFunction function_from(const Json& j, const std::string& field, int window) {
  if (!j.is_object()) bad(field, "expected an object");
  if (j.contains("sigma")) {
    reject_unknown_keys(j, {"sigma"}, field);
    const Json& s = j["sigma"];
    reject_unknown_keys(s, {"q", "period_basis"}, field + ".sigma");
    RationalMatrix q = rational_matrix_from(require(s, "q"), field + ".sigma.q");
    IntegerMatrix basis = s.contains("period_basis")
                              ? integer_matrix_from(s["period_basis"], field + ".sigma.period_basis")
                              : identity<Integer>(q.rows());
    if (q.rows() != q.cols() || basis.rows() != q.rows() || basis.cols() != q.rows())
      bad(field + ".sigma", "shape mismatch");
    return sigma_section(q, basis, window);
  }
  if (j.contains("interpolate")) {
    reject_unknown_keys(j, {"interpolate"}, field);
    const Json& s = j["interpolate"];
    reject_unknown_keys(s, {"values", "paving"}, field + ".interpolate");
    return interpolate_on_triangulation(samples_from(require(s, "values"), field + ".interpolate.values"),
                                        paving_from(require(s, "paving"), field + ".interpolate.paving"));
  }
  if (j.contains("scale")) {
    reject_unknown_keys(j, {"scale", "function"}, field);
    return rational_from(j["scale"], field + ".scale") * function_from(require(j, "function"), field + ".function", window);
  }
  reject_unknown_keys(j, {"kind", "paving", "payload_rank", "pieces", "increments"}, field);
  PwAffineFunction f;
  f.paving = paving_from(require(j, "paving"), field + ".paving");
  f.payload_rank = require(j, "payload_rank").get<Index>();
  const Index r = f.paving.rank;
  const Json& pieces = array_at(require(j, "pieces"), field + ".pieces");
  const Json& incs = array_at(require(j, "increments"), field + ".increments");
  // Pieces are listed in the order of the cells as given, which may differ from canonical order.
  PeriodicPaving raw;
  {
    const Json& cells_j = require(require(j, "paving"), "cells");
    if (pieces.size() != cells_j.size()) bad(field + ".pieces", "one piece per cell required");
  }
  std::map<LatticePolytope, AffinePiece, PolytopeLess> by_cell;
  RationalMatrix inv = f.paving.period_inverse();
  const Json& cells_j = j["paving"]["cells"];
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    LatticePolytope cell;
    for (const auto& v : cells_j[i]) cell.push_back(integer_vector_from(v, field + ".paving.cells"));
    IntVector t;
    LatticePolytope canon = canonical_translate(cell, f.paving.period_basis, inv, &t);
    AffinePiece a = piece_from(pieces[i], sub(field + ".pieces", i), f.payload_rank, r);
    // Moving the cell by t moves its piece: x ↦ a(x − t).
    a.constant -= a.linear * cast_vector<Rational>(t);
    by_cell.emplace(canon, a);
  }
  for (const auto& c : f.paving.cells) f.pieces.push_back(by_cell.at(c));
  if (static_cast<Index>(incs.size()) != r) bad(field + ".increments", "one increment per period generator required");
  for (std::size_t i = 0; i < incs.size(); ++i)
    f.increments.push_back(piece_from(incs[i], sub(field + ".increments", i), f.payload_rank, r));
  return f;
}

LatticeSamples samples_from(const Json& j, const std::string& field) {
  array_at(j, field);
  LatticeSamples out;
  Index r = -1;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const Json& e = j[i];
    if (!e.is_array() || e.size() != 2) bad(sub(field, i), "expected [point, value]");
    IntVector x = integer_vector_from(e[0], sub(field, i));
    if (r < 0) r = x.size();
    if (x.size() != r) bad(sub(field, i), "points of different ranks");
    out[x] = rational_from(e[1], sub(field, i));
  }
  return out;
}

Json samples_json(const LatticeSamples& s) {
  Json out = Json::array();
  for (const auto& [x, v] : s) out.push_back({points_json(x), v.str()});
  return out;
}

ToricMonoid monoid_from(const Json& j, const std::string& field) {
  reject_unknown_keys(j, {"kind", "ambient_rank", "dual", "lattice_basis"}, field);
  ToricMonoid p;
  p.dual = integer_matrix_from(require(j, "dual"), field + ".dual");
  p.ambient_rank = p.dual.cols();
  if (j.contains("ambient_rank")) {
    const Index k = require(j, "ambient_rank").get<Index>();
    if (p.dual.rows() == 0)
      p.dual = IntegerMatrix(0, k);
    else if (k != p.ambient_rank)
      bad(field + ".ambient_rank", "disagrees with the functionals");
    p.ambient_rank = k;
  }
  if (p.ambient_rank < 1) bad(field, "cannot determine the rank");
  p.lattice_basis = j.contains("lattice_basis") ? integer_matrix_from(j["lattice_basis"], field + ".lattice_basis")
                                                : identity<Integer>(p.ambient_rank);
  if (p.lattice_basis.rows() != p.ambient_rank || p.lattice_basis.cols() != p.ambient_rank ||
      determinant(p.lattice_basis) == 0)
    bad(field + ".lattice_basis", "must be a nonsingular square matrix");
  return p;
}

Json to_json(const ToricMonoid& p) {
  return {{"kind", "monoid"},
          {"ambient_rank", p.ambient_rank},
          {"dual", to_json(p.dual)},
          {"lattice_basis", to_json(p.lattice_basis)}};
}

TwistedMonoidElement monoid_element_from(const Json& j, const std::string& field) {
  reject_unknown_keys(j, {"degree", "point", "payload"}, field);
  return {integer_from(require(j, "degree"), field + ".degree"),
          integer_vector_from(require(j, "point"), field + ".point"),
          rational_vector_from(require(j, "payload"), field + ".payload")};
}

Json to_json(const TwistedMonoidElement& x) {
  return {{"degree", Json::parse(x.degree.str())}, {"point", points_json(x.point)}, {"payload", to_json(x.payload)}};
}

HeisenbergElement heisenberg_from(const Json& j, const std::string& field) {
  reject_unknown_keys(j, {"t", "a", "b"}, field);
  HeisenbergElement x;
  x.t = require(j, "t").get<std::int64_t>();
  x.a = small_ints_from(require(j, "a"), field + ".a");
  x.b = small_ints_from(require(j, "b"), field + ".b");
  return x;
}

Json to_json(const HeisenbergElement& x) { return {{"t", x.t}, {"a", x.a}, {"b", x.b}}; }

Json section_json(const HeisenbergGroup& h, const SchrodingerVector& v) {
  Json coeffs = Json::array();
  for (std::int64_t i = 0; i < h.degree(); ++i) {
    if (h.ring().is_zero(v[i])) continue;
    coeffs.push_back({{"x", h.point(i)}, {"exponents", h.ring().exponent_list(v[i])}});
  }
  return {{"kind", "section"}, {"delta", h.delta()}, {"M", h.modulus()}, {"coefficients", coeffs}};
}

SchrodingerVector section_from(const HeisenbergGroup& h, const Json& j, const std::string& field) {
  reject_unknown_keys(j, {"kind", "delta", "M", "coefficients"}, field);
  if (j.contains("delta") && small_ints_from(j["delta"], field + ".delta") != h.delta())
    bad(field + ".delta", "does not match the group");
  if (j.contains("M") && j["M"].get<int>() != h.modulus()) bad(field + ".M", "does not match the group");
  SchrodingerVector v(h.degree(), h.ring().zero());
  const Json& cs = array_at(require(j, "coefficients"), field + ".coefficients");
  for (std::size_t i = 0; i < cs.size(); ++i) {
    reject_unknown_keys(cs[i], {"x", "exponents"}, sub(field + ".coefficients", i));
    auto x = small_ints_from(require(cs[i], "x"), sub(field + ".coefficients", i) + ".x");
    if (x.size() != h.delta().size()) bad(sub(field + ".coefficients", i), "x has the wrong rank");
    for (auto e : small_ints_from(require(cs[i], "exponents"), sub(field + ".coefficients", i) + ".exponents"))
      v[h.index_of(x)] = h.ring().add(v[h.index_of(x)], h.ring().root(e));
  }
  return v;
}

}  // namespace tropab::io
