#include "commands.hpp"

#include <functional>
#include <map>
#include <sstream>

namespace tropab::cli {

using Eigen::Index;
using io::Json;
using io::require;

namespace {

using Handler = std::function<Json(const Json&, const Options&)>;

Json cell_json(const LatticePolytope& c) {
  Json out = Json::array();
  for (const auto& v : c) out.push_back(io::points_json(v));
  return out;
}

Json result(const std::string& kind) { return {{"kind", kind + ".result"}}; }

void keys(const Json& in, const std::string& name, std::initializer_list<const char*> allowed) {
  if (!in.is_object()) throw io::SchemaError("input must be a JSON object", "");
  std::vector<const char*> all(allowed);
  for (auto it = in.begin(); it != in.end(); ++it) {
    if (it.key() == "kind") {
      if (!it->is_string() || it->get<std::string>() != name)
        throw io::SchemaError("kind must be \"" + name + "\"", "kind");
      continue;
    }
    bool ok = false;
    for (const char* a : all)
      if (it.key() == a) ok = true;
    if (!ok) throw io::SchemaError(it.key() + ": unknown key", it.key());
  }
}

IntegerMatrix square_or_default(const Json& in, const char* key, Index r) {
  if (!in.contains(key)) return identity<Integer>(r);
  IntegerMatrix m = io::integer_matrix_from(in[key], key);
  if (m.rows() != r || m.cols() != r) throw io::SchemaError(std::string(key) + ": must be r×r", key);
  return m;
}

int modulus_of(const Json& in, const std::vector<std::int64_t>& delta) {
  if (in.contains("M")) {
    if (!in["M"].is_number_integer()) throw io::SchemaError("M: expected an integer", "M");
    return in["M"].get<int>();
  }
  if (delta.empty()) throw io::SchemaError("delta: must be nonempty", "delta");
  return static_cast<int>(2 * delta.back());
}

Json matrix_rows(const IntegerMatrix& m) {
  Json out = Json::array();
  for (Index i = 0; i < m.rows(); ++i) out.push_back(io::points_json(IntVector(m.row(i).transpose())));
  return out;
}

// Functionals given as rows; an empty list means the whole monoid.
IntegerMatrix functionals_from(const Json& j, Index k) {
  if (j.is_array() && j.empty()) return IntegerMatrix(0, k);
  IntegerMatrix m = io::integer_matrix_from(j, "face");
  if (m.cols() != k) throw io::SchemaError("face: functionals have the wrong length", "face");
  return m;
}

// ---------------------------------------------------------------------------

Json cmd_hnf(const Json& in, const Options&) {
  keys(in, "hnf", {"m"});
  HermiteResult h = hermite_normal_form(io::integer_matrix_from(require(in, "m"), "m"));
  Json out = result("hnf");
  out["h"] = io::to_json(h.h);
  out["u"] = io::to_json(h.u);
  return out;
}

Json cmd_snf(const Json& in, const Options&) {
  keys(in, "snf", {"m"});
  SmithResult s = smith_normal_form(io::integer_matrix_from(require(in, "m"), "m"));
  Json out = result("snf");
  Json d = Json::array();
  for (const auto& x : s.d) d.push_back(Json::parse(x.str()));
  out["d"] = d;
  out["u"] = io::to_json(s.u);
  out["v"] = io::to_json(s.v);
  return out;
}

Json cmd_symplectic(const Json& in, const Options&) {
  keys(in, "symplectic", {"e"});
  SymplecticDecomposition s = symplectic_normal_form(io::integer_matrix_from(require(in, "e"), "e"));
  Json out = result("symplectic");
  out["type"] = io::type_json(s.type);
  out["basis_change"] = io::to_json(s.basis_change);
  return out;
}

Json cmd_poltype(const Json& in, const Options&) {
  keys(in, "poltype", {"phi"});
  Json out = result("poltype");
  out["type"] = io::type_json(polarization_type(io::integer_matrix_from(require(in, "phi"), "phi")));
  return out;
}

Json cmd_glxy(const Json& in, const Options&) {
  keys(in, "glxy", {"u", "q", "y_basis"});
  IntegerMatrix u = io::integer_matrix_from(require(in, "u"), "u");
  RationalMatrix q = io::rational_matrix_from(require(in, "q"), "q");
  IntegerMatrix y = square_or_default(in, "y_basis", q.rows());
  Json out = result("glxy");
  out["q"] = io::to_json(glxy_act(u, q, y));
  return out;
}

Json cmd_delaunay(const Json& in, const Options& opt) {
  keys(in, "delaunay", {"q", "period_basis", "shift"});
  RationalMatrix q = io::rational_matrix_from(require(in, "q"), "q");
  if (q.rows() != q.cols() || q.rows() == 0) throw io::SchemaError("q: must be square", "q");
  IntegerMatrix basis = square_or_default(in, "period_basis", q.rows());
  std::optional<RatVector> shift;
  if (in.contains("shift")) {
    shift = io::rational_vector_from(in["shift"], "shift");
    if (shift->size() != q.rows()) throw io::SchemaError("shift: wrong length", "shift");
  }
  PeriodicPaving p = delaunay_subdivision(q, basis, opt.window, shift ? &*shift : nullptr);
  Json out = result("delaunay");
  out["paving"] = io::to_json(p);
  out["cell_count"] = p.cells.size();
  return out;
}

Json cmd_voronoi_cone(const Json& in, const Options&) {
  keys(in, "voronoi-cone", {"paving", "q"});
  PeriodicPaving p = io::paving_from(require(in, "paving"), "paving");
  RationalMatrix q = io::rational_matrix_from(require(in, "q"), "q");
  if (q.rows() != p.rank || q.cols() != p.rank) throw io::SchemaError("q: must be r×r", "q");
  Json out = result("voronoi-cone");
  out["contains"] = voronoi_cone_contains(p, q);
  return out;
}

Json cmd_bend(const Json& in, const Options& opt) {
  keys(in, "bend", {"function"});
  PwAffineFunction f = io::function_from(require(in, "function"), "function", opt.window);
  Json walls = Json::array();
  for (const auto& b : bending_parameters(f))
    walls.push_back({{"vertices", cell_json(b.wall.vertices)},
                     {"normal", io::points_json(b.wall.normal)},
                     {"offset", io::to_json(b.wall.offset)},
                     {"payload", io::to_json(b.payload)}});
  Json out = result("bend");
  out["walls"] = walls;
  return out;
}

Json cmd_qp_decompose(const Json& in, const Options&) {
  keys(in, "qp-decompose", {"samples", "period_basis"});
  LatticeSamples s = io::samples_from(require(in, "samples"), "samples");
  if (s.empty()) throw io::SchemaError("samples: must be nonempty", "samples");
  IntegerMatrix basis = square_or_default(in, "period_basis", s.begin()->first.size());
  QuasiperiodicDecomposition d = quasiperiodic_decompose(s, basis);
  Json out = result("qp-decompose");
  out["bilinear"] = io::to_json(d.bilinear);
  out["quadratic_linear"] = io::to_json(d.quadratic_linear);
  out["periodic"] = io::samples_json(d.periodic);
  return out;
}

Json cmd_cy_cone(const Json& in, const Options&) {
  keys(in, "cy-cone", {"psi", "paving", "period_basis"});
  LatticeSamples psi = io::samples_from(require(in, "psi"), "psi");
  PeriodicPaving t = io::paving_from(require(in, "paving"), "paving");
  IntegerMatrix basis = in.contains("period_basis") ? square_or_default(in, "period_basis", t.rank) : t.period_basis;
  Json out = result("cy-cone");
  out["member"] = cone_cy_membership(psi, t, basis);
  return out;
}

Json cmd_sigma(const Json& in, const Options& opt) {
  keys(in, "sigma", {"q", "period_basis", "evaluate"});
  RationalMatrix q = io::rational_matrix_from(require(in, "q"), "q");
  if (q.rows() != q.cols() || q.rows() == 0) throw io::SchemaError("q: must be square", "q");
  IntegerMatrix basis = square_or_default(in, "period_basis", q.rows());
  PwAffineFunction f = sigma_section(q, basis, opt.window);
  Json out = result("sigma");
  out["function"] = io::to_json(f);
  if (in.contains("evaluate")) {
    const Json& pts = in["evaluate"];
    if (!pts.is_array()) throw io::SchemaError("evaluate: expected a list of points", "evaluate");
    PavingTopology topo = paving_topology(f.paving);
    Json vals = Json::array();
    for (std::size_t i = 0; i < pts.size(); ++i) {
      RatVector x = io::rational_vector_from(pts[i], "evaluate");
      if (x.size() != q.rows()) throw io::SchemaError("evaluate: point of wrong rank", "evaluate");
      vals.push_back({io::to_json(x), io::to_json(evaluate(f, topo, x))});
    }
    out["values"] = vals;
  }
  return out;
}

Json cmd_legendre(const Json& in, const Options& opt) {
  keys(in, "legendre", {"function"});
  PwAffineFunction f = io::function_from(require(in, "function"), "function", opt.window);
  Json out = result("legendre");
  out["values"] = io::samples_json(legendre_transform(f, opt.window));
  return out;
}

std::vector<TwistedMonoidElement> small_elements(const HomogenizedFunction& phi, int degree_bound) {
  std::vector<TwistedMonoidElement> out;
  const Index r = phi.rank();
  for (int d = 0; d <= degree_bound; ++d) {
    IntVector x = IntVector::Constant(r, Integer(-d));
    for (;;) {
      out.push_back({Integer(d), x, RatVector::Zero(phi.payload_rank())});
      Index k = r - 1;
      while (k >= 0 && x(k) == d) x(k--) = -d;
      if (k < 0) break;
      x(k) += 1;
    }
  }
  return out;
}

Json cmd_monoid_add(const Json& in, const Options& opt) {
  keys(in, "monoid-add", {"function", "x", "y", "check"});
  HomogenizedFunction phi(io::function_from(require(in, "function"), "function", opt.window));
  Json out = result("monoid-add");
  if (in.contains("x") || in.contains("y")) {
    TwistedMonoidElement x = io::monoid_element_from(require(in, "x"), "x");
    TwistedMonoidElement y = io::monoid_element_from(require(in, "y"), "y");
    if (x.point.size() != phi.rank()) throw io::SchemaError("x.point: wrong rank", "x.point");
    if (y.point.size() != phi.rank()) throw io::SchemaError("y.point: wrong rank", "y.point");
    out["sum"] = io::to_json(twisted_add(x, y, phi));
    out["star"] = io::to_json(star_cocycle({x.degree, x.point}, {y.degree, y.point}, phi));
  }
  if (in.value("check", false)) {
    auto elems = small_elements(phi, opt.degree_bound);
    bool assoc = true, comm = true;
    for (const auto& a : elems)
      for (const auto& b : elems) {
        TwistedMonoidElement ab = twisted_add(a, b, phi);
        if (!(ab == twisted_add(b, a, phi))) comm = false;
        for (const auto& c : elems)
          if (!(twisted_add(ab, c, phi) == twisted_add(a, twisted_add(b, c, phi), phi))) assoc = false;
      }
    out["associative"] = assoc;
    out["commutative"] = comm;
    out["checked_elements"] = elems.size();
  }
  return out;
}

Json cmd_fourier(const Json& in, const Options&) {
  keys(in, "fourier", {"phi"});
  IntegerMatrix phi = io::integer_matrix_from(require(in, "phi"), "phi");
  FourierIndices f = fourier_indices(phi.rows(), phi);
  Json reps = Json::array();
  for (const auto& x : f.reps) reps.push_back(io::points_json(x));
  Json out = result("fourier");
  out["reps"] = reps;
  out["type"] = io::type_json(f.type);
  return out;
}

Json cmd_fiber(const Json& in, const Options&) {
  keys(in, "fiber", {"paving", "phi_image_basis"});
  PeriodicPaving p = io::paving_from(require(in, "paving"), "paving");
  IntegerMatrix basis = io::integer_matrix_from(require(in, "phi_image_basis"), "phi_image_basis");
  CentralFiberComplex c = central_fiber_complex(p, basis);
  Json comps = Json::array(), inc = Json::array();
  for (const auto& cell : c.components) comps.push_back(cell_json(cell));
  for (const auto& i : c.incidences) inc.push_back({{"a", i.a}, {"b", i.b}, {"face", cell_json(i.face)}});
  Json out = result("fiber");
  out["components"] = comps;
  out["incidences"] = inc;
  return out;
}

Json cmd_face(const Json& in, const Options& opt) {
  keys(in, "face", {"monoid", "face", "function"});
  ToricMonoid p = io::monoid_from(require(in, "monoid"), "monoid");
  IntegerMatrix face = functionals_from(require(in, "face"), p.ambient_rank);
  PwAffineFunction f = io::function_from(require(in, "function"), "function", opt.window);
  FaceQuotientData d = face_quotient(p, face, f);
  Json out = result("face");
  out["projection"] = matrix_rows(d.projection);
  out["quotient"] = io::to_json(d.quotient);
  out["admissible"] = d.admissible;
  out["paving"] = d.admissible ? io::to_json(d.paving) : Json(nullptr);
  return out;
}

Json cmd_gamma(const Json& in, const Options& opt) {
  keys(in, "gamma", {"r", "tau", "delta"});
  IntegerMatrix r = io::integer_matrix_from(require(in, "r"), "r");
  ComplexMatrix tau = io::complex_matrix_from(require(in, "tau"), "tau");
  PolarizationType delta = io::type_from(require(in, "delta"), "delta");
  Json out = result("gamma");
  out["tau"] = io::to_json(gamma_action(r, tau, delta, opt.tol));
  return out;
}

Json cmd_cayley(const Json& in, const Options& opt) {
  keys(in, "cayley", {"tau"});
  Json out = result("cayley");
  out["z"] = io::to_json(cayley_transform(io::complex_matrix_from(require(in, "tau"), "tau"), opt.tol));
  return out;
}

Json cmd_trop(const Json& in, const Options& opt) {
  keys(in, "trop", {"tau", "g_prime"});
  ComplexMatrix tau = io::complex_matrix_from(require(in, "tau"), "tau");
  const Json& g = require(in, "g_prime");
  if (!g.is_number_integer()) throw io::SchemaError("g_prime: expected an integer", "g_prime");
  Json out = result("trop");
  out["tr"] = io::to_json(tropicalize(tau, g.get<int>(), opt.tol));
  return out;
}

Json cmd_heis(const Json& in, const Options&) {
  keys(in, "heis", {"delta", "M", "x", "y"});
  auto delta = io::small_ints_from(require(in, "delta"), "delta");
  HeisenbergGroup h(delta, modulus_of(in, delta));
  Json out = result("heis");
  out["order"] = h.order();
  out["enumerated_order"] = h.elements().size();
  out["power_map"] = power_map_kernel_check(h);
  out["relation"] = heisenberg_relation_holds(h);
  if (in.contains("x") || in.contains("y")) {
    HeisenbergElement x = h.normalize(io::heisenberg_from(require(in, "x"), "x"));
    HeisenbergElement y = h.normalize(io::heisenberg_from(require(in, "y"), "y"));
    out["product"] = io::to_json(h.mul(x, y));
    out["commutator"] = io::to_json(h.commutator(x, y));
  }
  return out;
}

Json cmd_kw(const Json& in, const Options&) {
  keys(in, "kw", {"delta", "M"});
  auto delta = io::small_ints_from(require(in, "delta"), "delta");
  HeisenbergGroup h(delta, modulus_of(in, delta));
  Json spaces = Json::array();
  for (const auto& e : kw_decompose(h)) {
    Json basis = Json::array();
    for (const auto& v : e.basis) basis.push_back(io::section_json(h, v));
    spaces.push_back({{"character", e.character}, {"dimension", e.basis.size()}, {"basis", basis}});
  }
  Json out = result("kw");
  out["spaces"] = spaces;
  return out;
}

Json cmd_balanced(const Json& in, const Options&) {
  keys(in, "balanced", {"delta", "M", "theta0", "lifts"});
  auto delta = io::small_ints_from(require(in, "delta"), "delta");
  HeisenbergGroup h(delta, modulus_of(in, delta));
  Json out = result("balanced");
  if (in.contains("lifts") || in.contains("theta0")) {
    SchrodingerVector theta0 = io::section_from(h, require(in, "theta0"), "theta0");
    const Json& lj = require(in, "lifts");
    if (!lj.is_array()) throw io::SchemaError("lifts: expected a list", "lifts");
    std::map<std::vector<std::int64_t>, HeisenbergElement> lifts;
    for (std::size_t i = 0; i < lj.size(); ++i) {
      io::reject_unknown_keys(lj[i], {"alpha", "element"}, "lifts");
      lifts[io::small_ints_from(require(lj[i], "alpha"), "lifts.alpha")] =
          h.normalize(io::heisenberg_from(require(lj[i], "element"), "lifts.element"));
    }
    out["section"] = io::section_json(h, balanced_section(h, theta0, lifts));
    return out;
  }
  Json sections = Json::array();
  for (const auto& v : enumerate_balanced_set(h)) sections.push_back(io::section_json(h, v));
  out["count"] = sections.size();
  out["sections"] = sections;
  return out;
}

DegenerationData degeneration_from(const Json& in, bool q_optional) {
  PolarizationType d = io::type_from(require(in, "d_type"), "d_type");
  const Index r = static_cast<Index>(d.size());
  RationalMatrix q = (q_optional && !in.contains("q")) ? cast_matrix<Rational>(d.matrix())
                                                       : io::rational_matrix_from(require(in, "q"), "q");
  IntegerMatrix s = in.contains("s_xi") ? io::integer_matrix_from(in["s_xi"], "s_xi") : IntegerMatrix::Zero(r, r);
  return make_degeneration_data(q, d, s);
}

std::pair<IntVector, IntVector> lambda_alpha(const Json& in, Index r) {
  IntVector l = io::integer_vector_from(require(in, "lambda"), "lambda");
  IntVector a = io::integer_vector_from(require(in, "alpha"), "alpha");
  if (l.size() != r) throw io::SchemaError("lambda: wrong length", "lambda");
  if (a.size() != r) throw io::SchemaError("alpha: wrong length", "alpha");
  return {l, a};
}

Json cmd_degen(const Json& in, const Options&) {
  keys(in, "degen", {"q", "d_type", "s_xi", "lambda", "alpha"});
  DegenerationData data = degeneration_from(in, false);
  auto [l, a] = lambda_alpha(in, data.q.rows());
  DegenExponents e = degen_exponents(data, l, a);
  Json out = result("degen");
  out["a_exp"] = io::to_json(e.a_exp);
  out["b_exp"] = io::to_json(e.b_exp);
  out["phi_check"] = io::to_json(data.phi_check);
  return out;
}

Json cmd_twist(const Json& in, const Options&) {
  keys(in, "twist", {"q", "d_type", "s_xi", "lambda", "alpha"});
  DegenerationData data = degeneration_from(in, true);
  auto [l, a] = lambda_alpha(in, data.q.rows());
  TwistExponents t = twist_data(data, l, a);
  Json out = result("twist");
  out["a_prime"] = io::to_json(t.a_prime);
  out["b_prime"] = io::to_json(t.b_prime);
  out["s_prime"] = io::to_json(data.s_prime);
  return out;
}

Json cmd_profile(const Json& in, const Options& opt) {
  keys(in, "profile", {"delta", "M", "section", "function", "phi_map"});
  auto delta = io::small_ints_from(require(in, "delta"), "delta");
  HeisenbergGroup h(delta, modulus_of(in, delta));
  SchrodingerVector v = io::section_from(h, require(in, "section"), "section");
  PwAffineFunction f = io::function_from(require(in, "function"), "function", opt.window);
  IntegerMatrix phi = io::integer_matrix_from(require(in, "phi_map"), "phi_map");
  Json prof = Json::array();
  for (const auto& e : section_valuation_profile(h, v, f, phi, opt.window))
    prof.push_back({{"rep", io::points_json(e.rep)}, {"character", e.character}, {"value", io::to_json(e.value)}});
  Json out = result("profile");
  out["profile"] = prof;
  return out;
}

const std::map<std::string, Handler>& handlers() {
  static const std::map<std::string, Handler> table = {
      {"hnf", cmd_hnf},           {"snf", cmd_snf},
      {"symplectic", cmd_symplectic}, {"poltype", cmd_poltype},
      {"glxy", cmd_glxy},         {"delaunay", cmd_delaunay},
      {"voronoi-cone", cmd_voronoi_cone}, {"bend", cmd_bend},
      {"qp-decompose", cmd_qp_decompose}, {"cy-cone", cmd_cy_cone},
      {"sigma", cmd_sigma},       {"legendre", cmd_legendre},
      {"monoid-add", cmd_monoid_add}, {"fourier", cmd_fourier},
      {"fiber", cmd_fiber},       {"face", cmd_face},
      {"gamma", cmd_gamma},       {"cayley", cmd_cayley},
      {"trop", cmd_trop},         {"heis", cmd_heis},
      {"kw", cmd_kw},             {"balanced", cmd_balanced},
      {"degen", cmd_degen},       {"twist", cmd_twist},
      {"profile", cmd_profile},
  };
  return table;
}

}  // namespace

const std::vector<std::pair<std::string, std::string>>& command_table() {
  static const std::vector<std::pair<std::string, std::string>> table = {
      {"hnf", "Row Hermite normal form {m}"},
      {"snf", "Smith normal form {m}"},
      {"symplectic", "Symplectic basis of a skew form {e}"},
      {"poltype", "Polarization type of an injection {phi}"},
      {"glxy", "Act by u on a form {u, q, y_basis?}"},
      {"delaunay", "Delaunay paving of a form {q, period_basis?, shift?}"},
      {"voronoi-cone", "Second Voronoi cone membership {paving, q}"},
      {"bend", "Bending walls of a function {function}"},
      {"qp-decompose", "Quadratic + linear + periodic split {samples, period_basis?}"},
      {"cy-cone", "Cone C^Y membership {psi, paving, period_basis?}"},
      {"sigma", "Canonical section of a form {q, period_basis?, evaluate?}"},
      {"legendre", "Discrete Legendre transform {function}"},
      {"monoid-add", "Twisted monoid addition {function, x?, y?, check?}"},
      {"fourier", "Fourier index representatives {phi}"},
      {"fiber", "Central fibre components {paving, phi_image_basis}"},
      {"face", "Face quotient of a monoid {monoid, face, function}"},
      {"gamma", "Symplectic action on Siegel space {r, tau, delta}"},
      {"cayley", "Cayley transform {tau}"},
      {"trop", "Tropical limit of a period matrix {tau, g_prime}"},
      {"heis", "Finite Heisenberg group checks {delta, M?, x?, y?}"},
      {"kw", "K2 eigenspace decomposition {delta, M?}"},
      {"balanced", "Balanced sections {delta, M?, theta0?, lifts?}"},
      {"degen", "Degeneration exponents {q, d_type, s_xi?, lambda, alpha}"},
      {"twist", "Twist exponents mod 2 {q?, d_type, s_xi?, lambda, alpha}"},
      {"profile", "Valuation profile of a section {delta, M?, section, function, phi_map}"}};
  return table;
}

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [n, d] : command_table()) out.push_back(n);
    return out;
  }();
  return names;
}

Json run_command(const std::string& name, const Json& input, const Options& opt) {
  auto it = handlers().find(name);
  if (it == handlers().end()) throw std::invalid_argument("unknown subcommand " + name);
  return it->second(input, opt);
}

std::string as_text(const Json& doc) {
  std::ostringstream out;
  for (auto it = doc.begin(); it != doc.end(); ++it) {
    out << it.key() << ": ";
    if (it->is_string())
      out << it->get<std::string>();
    else
      out << it->dump();
    out << '\n';
  }
  return out.str();
}

}  // namespace tropab::cli
