#include "tropab/theta.hpp"

#include <algorithm>
#include <random>
#include <set>

namespace tropab {

using Eigen::Index;
using i64 = std::int64_t;

namespace {

i64 mod(i64 a, i64 m) {
  i64 r = a % m;
  return r < 0 ? r + m : r;
}

using Poly = std::vector<i64>;  // low degree first

// Exact quotient of a by a monic b.
Poly divide_exact(Poly a, const Poly& b) {
  const std::size_t db = b.size() - 1;
  Poly q(a.size() - db, 0);
  for (std::size_t i = a.size(); i-- > db;) {
    i64 c = a[i];
    q[i - db] = c;
    for (std::size_t j = 0; j <= db; ++j) a[i - db + j] -= c * b[j];
  }
  return q;
}

Poly cyclotomic_poly(int n) {
  Poly p(n + 1, 0);
  p[0] = -1;
  p[n] = 1;
  for (int d = 1; d < n; ++d)
    if (n % d == 0) p = divide_exact(p, cyclotomic_poly(d));
  return p;
}

}  // namespace

CyclotomicRing::CyclotomicRing(int m) : m_(m) {
  if (m < 1) fail(ErrorCode::BadModulus, "modulus must be positive", "M");
  phi_ = cyclotomic_poly(m);
}

Cyclotomic CyclotomicRing::root(i64 k) const {
  Cyclotomic c = zero();
  c[mod(k, m_)] = 1;
  return c;
}

Cyclotomic CyclotomicRing::add(const Cyclotomic& a, const Cyclotomic& b) const {
  Cyclotomic c = a;
  for (int i = 0; i < m_; ++i) c[i] += b[i];
  return c;
}

Cyclotomic CyclotomicRing::mul(const Cyclotomic& a, const Cyclotomic& b) const {
  Cyclotomic c = zero();
  for (int i = 0; i < m_; ++i) {
    if (a[i] == 0) continue;
    for (int j = 0; j < m_; ++j) c[(i + j) % m_] += a[i] * b[j];
  }
  return c;
}

Cyclotomic CyclotomicRing::rotate(const Cyclotomic& a, i64 k) const {
  Cyclotomic c = zero();
  for (int i = 0; i < m_; ++i) c[mod(i + k, m_)] = a[i];
  return c;
}

std::vector<i64> CyclotomicRing::reduce(const Cyclotomic& a) const {
  Poly r = a;
  const std::size_t deg = phi_.size() - 1;
  for (std::size_t i = r.size(); i-- > deg;) {
    i64 c = r[i];
    if (c == 0) continue;
    for (std::size_t j = 0; j <= deg; ++j) r[i - deg + j] -= c * phi_[j];
  }
  r.resize(deg);
  return r;
}

bool CyclotomicRing::equal(const Cyclotomic& a, const Cyclotomic& b) const { return reduce(a) == reduce(b); }

bool CyclotomicRing::is_zero(const Cyclotomic& a) const {
  for (i64 c : reduce(a))
    if (c != 0) return false;
  return true;
}

bool CyclotomicRing::is_root_of_unity(const Cyclotomic& a) const {
  auto ra = reduce(a);
  for (int k = 0; k < m_; ++k)
    if (reduce(root(k)) == ra) return true;
  return false;
}

std::vector<int> CyclotomicRing::exponent_list(const Cyclotomic& a) const {
  Cyclotomic c = a;
  for (int j = 0; j < m_; ++j) {
    if (c[j] >= 0) continue;
    if (m_ % 2 != 0) throw std::invalid_argument("negative coefficient with odd modulus");
    c[(j + m_ / 2) % m_] -= c[j];
    c[j] = 0;
  }
  if (m_ % 2 == 0)
    for (int j = 0; j < m_ / 2; ++j) {
      i64 t = std::min(c[j], c[j + m_ / 2]);
      c[j] -= t;
      c[j + m_ / 2] -= t;
    }
  std::vector<int> out;
  for (int j = 0; j < m_; ++j)
    for (i64 k = 0; k < c[j]; ++k) out.push_back(j);
  return out;
}

// ---------------------------------------------------------------------------

HeisenbergGroup::HeisenbergGroup(std::vector<i64> delta, int m) : delta_(std::move(delta)), m_(m), d_(1), ring_(m) {
  if (delta_.empty()) fail(ErrorCode::BadModulus, "δ must be nonempty", "delta");
  for (std::size_t i = 0; i < delta_.size(); ++i) {
    if (delta_[i] <= 0) fail(ErrorCode::BadModulus, "δ must be positive", "delta");
    if (i + 1 < delta_.size() && delta_[i + 1] % delta_[i] != 0)
      fail(ErrorCode::BadModulus, "δ must be a divisor chain", "delta");
    d_ *= delta_[i];
  }
  if (m_ % (2 * delta_.back()) != 0) fail(ErrorCode::BadModulus, "M must be divisible by 2δ_g", "M");
}

i64 HeisenbergGroup::pairing(const std::vector<i64>& b, const std::vector<i64>& a) const {
  i64 s = 0;
  for (std::size_t i = 0; i < delta_.size(); ++i) s = mod(s + mod(b[i] * a[i], delta_[i]) * (m_ / delta_[i]), m_);
  return s;
}

HeisenbergElement HeisenbergGroup::identity() const {
  return {0, std::vector<i64>(delta_.size(), 0), std::vector<i64>(delta_.size(), 0)};
}

HeisenbergElement HeisenbergGroup::normalize(HeisenbergElement x) const {
  if (x.a.size() != delta_.size() || x.b.size() != delta_.size())
    throw std::invalid_argument("Heisenberg element has the wrong rank");
  x.t = mod(x.t, m_);
  for (std::size_t i = 0; i < delta_.size(); ++i) {
    x.a[i] = mod(x.a[i], delta_[i]);
    x.b[i] = mod(x.b[i], delta_[i]);
  }
  return x;
}

HeisenbergElement HeisenbergGroup::mul(const HeisenbergElement& x, const HeisenbergElement& y) const {
  HeisenbergElement z;
  z.t = x.t + y.t + pairing(y.b, x.a);
  z.a = add(x.a, y.a);
  z.b = add(x.b, y.b);
  return normalize(z);
}

HeisenbergElement HeisenbergGroup::inverse(const HeisenbergElement& x) const {
  HeisenbergElement z;
  z.t = -x.t + pairing(x.b, x.a);
  z.a = negate(x.a);
  z.b = negate(x.b);
  return normalize(z);
}

HeisenbergElement HeisenbergGroup::power(const HeisenbergElement& x, i64 n) const {
  HeisenbergElement base = n < 0 ? inverse(x) : normalize(x);
  HeisenbergElement out = identity();
  for (i64 k = std::abs(n); k > 0; k >>= 1) {
    if (k & 1) out = mul(out, base);
    base = mul(base, base);
  }
  return out;
}

HeisenbergElement HeisenbergGroup::commutator(const HeisenbergElement& x, const HeisenbergElement& y) const {
  return mul(mul(x, y), inverse(mul(y, x)));
}

std::vector<HeisenbergElement> HeisenbergGroup::elements() const {
  std::vector<HeisenbergElement> out;
  out.reserve(order());
  for (i64 t = 0; t < m_; ++t)
    for (i64 ia = 0; ia < d_; ++ia)
      for (i64 ib = 0; ib < d_; ++ib) out.push_back({t, point(ia), point(ib)});
  return out;
}

i64 HeisenbergGroup::index_of(const std::vector<i64>& x) const {
  i64 idx = 0;
  for (std::size_t i = 0; i < delta_.size(); ++i) idx = idx * delta_[i] + mod(x[i], delta_[i]);
  return idx;
}

std::vector<i64> HeisenbergGroup::point(i64 index) const {
  std::vector<i64> x(delta_.size());
  for (std::size_t i = delta_.size(); i-- > 0;) {
    x[i] = index % delta_[i];
    index /= delta_[i];
  }
  return x;
}

std::vector<i64> HeisenbergGroup::add(const std::vector<i64>& x, const std::vector<i64>& y) const {
  std::vector<i64> z(delta_.size());
  for (std::size_t i = 0; i < delta_.size(); ++i) z[i] = mod(x[i] + y[i], delta_[i]);
  return z;
}

std::vector<i64> HeisenbergGroup::negate(const std::vector<i64>& x) const {
  std::vector<i64> z(delta_.size());
  for (std::size_t i = 0; i < delta_.size(); ++i) z[i] = mod(-x[i], delta_[i]);
  return z;
}

HeisenbergElement HeisenbergGroup::k2_element(const std::vector<i64>& b) const {
  return normalize({0, std::vector<i64>(delta_.size(), 0), b});
}

std::vector<i64> HeisenbergGroup::w(const HeisenbergElement& g) const { return negate(g.a); }

// ---------------------------------------------------------------------------

SchrodingerVector basis_vector(const HeisenbergGroup& h, const std::vector<i64>& x) {
  SchrodingerVector v(h.degree(), h.ring().zero());
  v[h.index_of(x)] = h.ring().root(0);
  return v;
}

SchrodingerVector schrodinger_action(const HeisenbergGroup& h, const HeisenbergElement& g,
                                     const SchrodingerVector& v) {
  if (static_cast<i64>(v.size()) != h.degree()) throw std::invalid_argument("vector has the wrong dimension");
  HeisenbergElement gn = h.normalize(g);
  SchrodingerVector out(v.size());
  for (i64 ix = 0; ix < h.degree(); ++ix) {
    auto x = h.point(ix);
    out[ix] = h.ring().rotate(v[h.index_of(h.add(x, gn.a))], gn.t + h.pairing(gn.b, x));
  }
  return out;
}

bool same_vector(const HeisenbergGroup& h, const SchrodingerVector& u, const SchrodingerVector& v) {
  if (u.size() != v.size()) return false;
  for (std::size_t i = 0; i < u.size(); ++i)
    if (!h.ring().equal(u[i], v[i])) return false;
  return true;
}

bool power_map_kernel_check(const HeisenbergGroup& h) {
  const auto all = h.elements();
  const HeisenbergElement e = h.identity();
  for (const auto& g : all)
    if (!(h.power(g, h.modulus()) == e)) return false;
  auto pair_ok = [&](const HeisenbergElement& g, const HeisenbergElement& k) {
    return h.power(h.mul(g, k), h.modulus()) == h.mul(h.power(g, h.modulus()), h.power(k, h.modulus()));
  };
  const i64 n = static_cast<i64>(all.size());
  if (n * n <= 1000000) {
    for (const auto& g : all)
      for (const auto& k : all)
        if (!pair_ok(g, k)) return false;
    return true;
  }
  std::mt19937_64 rng(20240917);
  std::uniform_int_distribution<i64> pick(0, n - 1);
  for (int s = 0; s < 100000; ++s)
    if (!pair_ok(all[pick(rng)], all[pick(rng)])) return false;
  return true;
}

bool heisenberg_relation_holds(const HeisenbergGroup& h) {
  for (const auto& g : h.elements()) {
    auto wg = h.w(g);
    for (i64 ib = 0; ib < h.degree(); ++ib) {
      auto tb = h.k2_element(h.point(ib));
      i64 chi = h.pairing(tb.b, wg);
      for (i64 ix = 0; ix < h.degree(); ++ix) {
        auto e = basis_vector(h, h.point(ix));
        auto lhs = schrodinger_action(h, tb, schrodinger_action(h, g, e));
        auto rhs = schrodinger_action(h, g, schrodinger_action(h, tb, e));
        for (auto& c : rhs) c = h.ring().rotate(c, chi);
        if (!same_vector(h, lhs, rhs)) return false;
      }
    }
  }
  return true;
}

int cyclotomic_rank(const HeisenbergGroup& h, const std::vector<SchrodingerVector>& vs) {
  const int phi = h.ring().degree();
  const i64 d = h.degree();
  if (vs.empty()) return 0;
  RationalMatrix m(static_cast<Index>(vs.size()) * phi, d * phi);
  Index row = 0;
  for (const auto& v : vs)
    for (int j = 0; j < phi; ++j, ++row)
      for (i64 x = 0; x < d; ++x) {
        auto red = h.ring().reduce(h.ring().rotate(v[x], j));
        for (int k = 0; k < phi; ++k) m(row, x * phi + k) = Rational(red[k]);
      }
  return static_cast<int>(rank(m) / phi);
}

namespace {

// Divides by the gcd of all coefficients.
SchrodingerVector primitive_part(SchrodingerVector v) {
  i64 g = 0;
  for (const auto& c : v)
    for (i64 x : c) g = std::gcd(g, std::abs(x));
  if (g > 1)
    for (auto& c : v)
      for (auto& x : c) x /= g;
  return v;
}

}  // namespace

std::vector<Eigenspace> kw_decompose(const HeisenbergGroup& h) {
  std::vector<Eigenspace> out;
  const i64 d = h.degree();
  for (i64 ia = 0; ia < d; ++ia) {
    Eigenspace es;
    es.character = h.point(ia);
    for (i64 ix = 0; ix < d; ++ix) {
      auto e = basis_vector(h, h.point(ix));
      SchrodingerVector p(d, h.ring().zero());
      for (i64 ib = 0; ib < d; ++ib) {
        auto tb = h.k2_element(h.point(ib));
        auto img = schrodinger_action(h, tb, e);
        i64 conj = -h.pairing(tb.b, es.character);
        for (i64 k = 0; k < d; ++k) p[k] = h.ring().add(p[k], h.ring().rotate(img[k], conj));
      }
      auto cand = es.basis;
      cand.push_back(p);
      if (cyclotomic_rank(h, cand) > static_cast<int>(es.basis.size())) es.basis.push_back(primitive_part(p));
    }
    out.push_back(es);
  }
  return out;
}

SchrodingerVector balanced_section(const HeisenbergGroup& h, const SchrodingerVector& theta0,
                                   const std::map<std::vector<i64>, HeisenbergElement>& lifts) {
  const i64 d = h.degree();
  SchrodingerVector sum(d, h.ring().zero());
  for (i64 ia = 0; ia < d; ++ia) {
    auto alpha = h.point(ia);
    auto it = lifts.find(alpha);
    if (it == lifts.end()) fail(ErrorCode::BadLift, "no lift given for a character", "lifts");
    if (h.w(h.normalize(it->second)) != alpha)
      fail(ErrorCode::BadLift, "lift does not map to its character under w", "lifts");
    auto img = schrodinger_action(h, it->second, theta0);
    for (i64 k = 0; k < d; ++k) sum[k] = h.ring().add(sum[k], img[k]);
  }
  for (const auto& c : sum)
    if (h.ring().is_zero(c)) fail(ErrorCode::EmptyComponent, "a Fourier component of the section vanishes", "theta0");
  return sum;
}

namespace {

using Key = std::vector<std::vector<i64>>;

Key key_of(const HeisenbergGroup& h, const SchrodingerVector& v) {
  Key k;
  for (const auto& c : v) k.push_back(h.ring().reduce(c));
  return k;
}

}  // namespace

SchrodingerVector canonical_rotation(const HeisenbergGroup& h, const SchrodingerVector& v) {
  // First nonzero coefficient made equal to 1 when it is a root of unity.
  for (const auto& c : v) {
    if (h.ring().is_zero(c)) continue;
    for (int k = 0; k < h.modulus(); ++k)
      if (h.ring().equal(c, h.ring().root(k))) {
        SchrodingerVector r = v;
        for (auto& x : r) x = h.ring().rotate(x, h.modulus() - k);
        return r;
      }
    break;
  }
  SchrodingerVector best;
  Key best_key;
  for (int k = 0; k < h.modulus(); ++k) {
    SchrodingerVector r = v;
    for (auto& c : r) c = h.ring().rotate(c, k);
    Key key = key_of(h, r);
    if (best.empty() || key < best_key) {
      best = r;
      best_key = key;
    }
  }
  return best;
}

std::vector<SchrodingerVector> enumerate_balanced_set(const HeisenbergGroup& h, i64 max_degree, i64 max_count) {
  const i64 d = h.degree();
  if (d > max_degree) fail(ErrorCode::TooLarge, "degree exceeds the enumeration bound", "delta");
  std::map<Key, SchrodingerVector> found;
  for (const auto& space : kw_decompose(h)) {
    for (const auto& theta0 : space.basis) {
      // All lifts (t, −α, b) of each α; distinct images only.
      std::vector<std::vector<SchrodingerVector>> choices(d);
      for (i64 ia = 0; ia < d; ++ia) {
        auto alpha = h.point(ia);
        std::map<Key, SchrodingerVector> imgs;
        for (i64 t = 0; t < h.modulus(); ++t)
          for (i64 ib = 0; ib < d; ++ib) {
            HeisenbergElement g{t, h.negate(alpha), h.point(ib)};
            auto img = schrodinger_action(h, g, theta0);
            imgs.emplace(key_of(h, img), img);
          }
        for (auto& [k, v] : imgs) choices[ia].push_back(v);
      }
      double count = 1;
      for (const auto& c : choices) count *= static_cast<double>(c.size());
      if (count > static_cast<double>(max_count))
        fail(ErrorCode::TooLarge, "too many lift combinations to enumerate", "delta");
      std::vector<std::size_t> pick(d, 0);
      for (;;) {
        SchrodingerVector sum(d, h.ring().zero());
        for (i64 ia = 0; ia < d; ++ia)
          for (i64 k = 0; k < d; ++k) sum[k] = h.ring().add(sum[k], choices[ia][pick[ia]][k]);
        bool balanced = true;
        for (const auto& c : sum)
          if (h.ring().is_zero(c)) balanced = false;
        if (balanced) {
          auto canon = canonical_rotation(h, sum);
          found.emplace(key_of(h, canon), canon);
        }
        i64 i = d - 1;
        while (i >= 0 && pick[i] + 1 == choices[i].size()) {
          pick[i] = 0;
          --i;
        }
        if (i < 0) break;
        ++pick[i];
      }
    }
  }
  std::vector<SchrodingerVector> out;
  for (auto& [k, v] : found) out.push_back(v);
  return out;
}

// ---------------------------------------------------------------------------

Rational mod2(const Rational& x) { return x - Rational(2 * rfloor(x / 2)); }

void validate(const DegenerationData& data) {
  const Index r = data.q.rows();
  if (data.q.cols() != r || !is_symmetric(data.q)) fail(ErrorCode::InconsistentData, "Q must be symmetric", "q");
  if (static_cast<Index>(data.d_type.size()) != r || !data.d_type.valid())
    fail(ErrorCode::InconsistentData, "𝔡 must be a divisor chain of rank r", "d_type");
  RationalMatrix expect = 2 * data.q * inverse(data.d_type.matrix());
  if (cast_matrix<Rational>(data.phi_check) != expect)
    fail(ErrorCode::InconsistentData, "φ̌ differs from 2Q𝔡⁻¹", "phi_check");
  if (data.s_xi.rows() != r || data.s_xi.cols() != r || IntegerMatrix(data.s_xi.transpose()) != IntegerMatrix(-data.s_xi))
    fail(ErrorCode::BadTwistPair, "S_ξ must be skew-symmetric", "s_xi");
  if (data.s_prime.rows() != r || data.s_prime.cols() != r || !is_symmetric(data.s_prime))
    fail(ErrorCode::BadTwistPair, "S′ must be symmetric", "s_prime");
  for (Index i = 0; i < r; ++i)
    for (Index j = 0; j < r; ++j)
      if (mod_floor(Integer(data.s_prime(i, j) - data.s_xi(i, j)), Integer(2)) != 0)
        fail(ErrorCode::BadTwistPair, "S′ is not congruent to S_ξ mod 2", "s_prime");
}

DegenerationData make_degeneration_data(const RationalMatrix& q, const PolarizationType& d_type,
                                        const IntegerMatrix& s_xi) {
  const Index r = q.rows();
  if (static_cast<Index>(d_type.size()) != r || !d_type.valid())
    fail(ErrorCode::InconsistentData, "𝔡 must be a divisor chain of rank r", "d_type");
  DegenerationData data;
  data.q = q;
  data.d_type = d_type;
  data.s_xi = s_xi;
  if (!to_integer_matrix(RationalMatrix(2 * q * inverse(d_type.matrix())), data.phi_check))
    fail(ErrorCode::InconsistentData, "2Q𝔡⁻¹ is not integral", "q");
  data.s_prime = IntegerMatrix::Zero(r, r);
  if (s_xi.rows() == r && s_xi.cols() == r)
    for (Index i = 0; i < r; ++i)
      for (Index j = 0; j < r; ++j)
        if (i != j) data.s_prime(i, j) = mod_floor(s_xi(i, j), Integer(2));
  validate(data);
  return data;
}

DegenExponents degen_exponents(const DegenerationData& data, const IntVector& lambda, const IntVector& alpha) {
  validate(data);
  RatVector l = cast_vector<Rational>(lambda), a = cast_vector<Rational>(alpha);
  return {l.dot(data.q * l), l.dot(cast_matrix<Rational>(data.phi_check) * a)};
}

TwistExponents twist_data(const DegenerationData& data, const IntVector& lambda, const IntVector& alpha) {
  validate(data);
  RatVector l = cast_vector<Rational>(lambda), a = cast_vector<Rational>(alpha);
  Rational bp = -l.dot(cast_matrix<Rational>(data.s_xi) * inverse(data.d_type.matrix()) * a);
  Rational ap = -l.dot(cast_matrix<Rational>(data.s_prime) * l) / 2;
  return {mod2(ap), mod2(bp)};
}

// ---------------------------------------------------------------------------

std::vector<i64> fourier_class(const IntegerMatrix& phi_map, const IntVector& x) {
  SmithResult s = smith_normal_form(phi_map);
  IntVector ux = s.u * x;
  std::vector<i64> out;
  for (Index i = 0; i < ux.size(); ++i) out.push_back(mod_floor(ux(i), s.d[i]).convert_to<i64>());
  return out;
}

std::vector<ProfileEntry> section_valuation_profile(const HeisenbergGroup& h, const SchrodingerVector& section,
                                                    const PwAffineFunction& phi, const IntegerMatrix& phi_map,
                                                    int window) {
  const Index r = phi.paving.rank;
  if (phi.payload_rank != 1) fail(ErrorCode::RankMismatch, "φ must be scalar valued", "phi");
  FourierIndices fi = fourier_indices(r, phi_map);
  std::vector<i64> type;
  for (const auto& x : fi.type.diag) type.push_back(x.convert_to<i64>());
  if (type != h.delta()) fail(ErrorCode::InconsistentData, "type of φ differs from δ", "phi_map");
  if (static_cast<i64>(section.size()) != h.degree()) throw std::invalid_argument("section has the wrong dimension");
  PavingTopology topo = paving_topology(phi.paving);
  std::vector<ProfileEntry> out;
  for (const auto& rep : fi.reps) {
    ProfileEntry e;
    e.rep = rep;
    e.character = fourier_class(phi_map, rep);
    if (h.ring().is_zero(section[h.index_of(e.character)]))
      fail(ErrorCode::EmptyComponent, "section has a vanishing Fourier component", "section");
    std::optional<Rational> best;
    IntVector best_lambda;
    IntVector lam = IntVector::Constant(r, Integer(-window));
    for (;;) {
      IntVector x = rep + phi_map * lam;
      Rational v = evaluate(phi, topo, cast_vector<Rational>(x))(0);
      if (!best || v < *best) {
        best = v;
        best_lambda = lam;
      }
      Index k = r - 1;
      while (k >= 0 && lam(k) == window) {
        lam(k) = -window;
        --k;
      }
      if (k < 0) break;
      lam(k) += 1;
    }
    for (Index i = 0; i < r; ++i)
      if (abs(best_lambda(i)) == window)
        fail(ErrorCode::WindowTooSmall, "minimum sits on the window boundary", "window");
    e.value = *best;
    out.push_back(e);
  }
  return out;
}

}  // namespace tropab
