#include "glab/opers.hpp"

#include <Eigen/Dense>
#include <boost/numeric/odeint.hpp>

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace glab {

namespace {

template <class S>
using RF = RationalFunction<S>;
template <class S>
using FnMatrix = std::vector<std::vector<RF<S>>>;

// Matrices of the basis and of the dual basis (trace form) in the defining representation.
struct Realization {
  std::size_t n = 0;
  std::vector<RatMatrix> basis, dual;
};

const Realization& realization(const SimpleLieAlgebra& g) {
  static std::map<std::string, Realization> cache;
  auto it = cache.find(g.label());
  if (it != cache.end()) return it->second;
  if (!g.has_defining_representation())
    throw std::invalid_argument("opers: type " + g.label() + " has no matrix realization here");
  Realization r;
  r.n = g.defining_dim();
  auto duals = dual_bases(g, standard_form(g));
  for (std::size_t a = 0; a < g.dim(); ++a) {
    r.basis.push_back(g.to_defining(g.basis_vector(a)));
    r.dual.push_back(g.to_defining(duals.dual[a]));
  }
  return cache.emplace(g.label(), std::move(r)).first->second;
}

template <class S>
RF<S> scaled_rf(const RF<S>& f, const Rational& q) {
  return f.scaled(from_rational<S>(q));
}

template <class S>
FnMatrix<S> matrix_of(const SimpleLieAlgebra& g, const BorelPart<S>& coords) {
  const auto& r = realization(g);
  FnMatrix<S> m(r.n, std::vector<RF<S>>(r.n));
  for (std::size_t a = 0; a < coords.size(); ++a) {
    if (coords[a].is_zero()) continue;
    for (std::size_t i = 0; i < r.n; ++i)
      for (std::size_t j = 0; j < r.n; ++j)
        if (!is_zero(r.basis[a](i, j))) m[i][j] += scaled_rf(coords[a], r.basis[a](i, j));
  }
  return m;
}

template <class S>
BorelPart<S> coords_of(const SimpleLieAlgebra& g, const FnMatrix<S>& m) {
  const auto& r = realization(g);
  BorelPart<S> out(g.dim());
  for (std::size_t a = 0; a < g.dim(); ++a)
    for (std::size_t i = 0; i < r.n; ++i)
      for (std::size_t j = 0; j < r.n; ++j)
        if (!is_zero(r.dual[a](j, i)) && !m[i][j].is_zero()) out[a] += scaled_rf(m[i][j], r.dual[a](j, i));
  return out;
}

template <class S>
FnMatrix<S> mul(const FnMatrix<S>& a, const FnMatrix<S>& b) {
  const std::size_t n = a.size();
  FnMatrix<S> out(n, std::vector<RF<S>>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      if (a[i][k].is_zero()) continue;
      for (std::size_t j = 0; j < n; ++j)
        if (!b[k][j].is_zero()) out[i][j] += a[i][k] * b[k][j];
    }
  return out;
}

template <class S>
FnMatrix<S> identity_fn(std::size_t n) {
  FnMatrix<S> m(n, std::vector<RF<S>>(n));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = RF<S>::constant(S(1));
  return m;
}

// exp of a nilpotent matrix
template <class S>
FnMatrix<S> exp_nilpotent(const FnMatrix<S>& x) {
  const std::size_t n = x.size();
  FnMatrix<S> out = identity_fn<S>(n), term = identity_fn<S>(n);
  for (std::size_t k = 1; k < n; ++k) {
    term = mul(term, x);
    for (auto& row : term)
      for (auto& e : row) e = e.scaled(S(1) / S(static_cast<long>(k)));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) out[i][j] += term[i][j];
  }
  return out;
}

template <class S>
BorelPart<S> constant_part(const Vec& x) {
  BorelPart<S> b(x.size());
  for (std::size_t a = 0; a < x.size(); ++a)
    if (!is_zero(x[a])) b[a] = RF<S>::constant(from_rational<S>(x[a]));
  return b;
}

// Decomposition g_d = [p_{-1}, g_{d+1}] + (V_can)_d, one inverse matrix per degree.
struct DegreeSplit {
  std::vector<std::size_t> here, above, canon;
  RatMatrix inverse;
};

const std::vector<DegreeSplit>& degree_splits(const SimpleLieAlgebra& g) {
  static std::map<std::string, std::vector<DegreeSplit>> cache;
  auto it = cache.find(g.label());
  if (it != cache.end()) return it->second;
  const auto& pd = principal_data(g);
  std::vector<DegreeSplit> out;
  for (int d = 0; d < pd.coxeter_number; ++d) {
    DegreeSplit s;
    for (std::size_t a = 0; a < g.dim(); ++a) {
      if (g.principal_degree(a) == d) s.here.push_back(a);
      if (g.principal_degree(a) == d + 1) s.above.push_back(a);
    }
    for (std::size_t j = 0; j < pd.canonical.size(); ++j)
      if (pd.canonical_degrees[j] == d) s.canon.push_back(j);
    const std::size_t k = s.here.size();
    if (s.above.size() + s.canon.size() != k) throw std::logic_error("degree_splits: dimension mismatch");
    RatMatrix m(k, k);
    for (std::size_t c = 0; c < s.above.size(); ++c) {
      Vec col = g.bracket(pd.p_minus1, g.basis_vector(s.above[c]));
      for (std::size_t r = 0; r < k; ++r) m(r, c) = col[s.here[r]];
    }
    for (std::size_t c = 0; c < s.canon.size(); ++c)
      for (std::size_t r = 0; r < k; ++r) m(r, s.above.size() + c) = pd.canonical[s.canon[c]][s.here[r]];
    auto inv = inverse(m);
    if (!inv) throw std::logic_error("degree_splits: singular decomposition");
    s.inverse = *inv;
    out.push_back(std::move(s));
  }
  return cache.emplace(g.label(), std::move(out)).first->second;
}

int ceil_div(int a, int b) { return (a + b - 1) / b; }

template <class S>
nlohmann::json scalar_json(const S& x);
template <>
nlohmann::json scalar_json<Rational>(const Rational& x) {
  return to_string(x);
}
template <>
nlohmann::json scalar_json<Complex>(const Complex& x) {
  return {x.real(), x.imag()};
}

template <class S>
nlohmann::json rf_json(const RF<S>& f) {
  nlohmann::json j;
  j["polynomial"] = nlohmann::json::array();
  for (const auto& c : f.polynomial()) j["polynomial"].push_back(scalar_json<S>(c));
  j["poles"] = nlohmann::json::array();
  for (const auto& [p, pr] : f.poles()) {
    nlohmann::json coeffs = nlohmann::json::array();
    for (const auto& c : pr) coeffs.push_back(scalar_json<S>(c));
    j["poles"].push_back({{"point", scalar_json<S>(p)}, {"order", pr.size()}, {"coefficients", coeffs}});
  }
  return j;
}

}  // namespace

template <class S>
int CanonicalOper<S>::singularity_order(const S& point) const {
  const auto& ex = g->exponents();
  int m = 0;
  for (std::size_t j = 0; j < v.size(); ++j) m = std::max(m, ceil_div(v[j].pole_order(point), ex[j] + 1));
  return m;
}

template <class S>
nlohmann::json CanonicalOper<S>::to_json() const {
  nlohmann::json j;
  j["algebra"] = g->label();
  j["v"] = nlohmann::json::array();
  for (const auto& f : v) j["v"].push_back(rf_json<S>(f));
  j["points"] = nlohmann::json::array();
  for (const auto& p : points) j["points"].push_back({{"name", p.name}, {"position", scalar_json<S>(p.position)}});
  return j;
}

template <class S>
BorelPart<S> gauge_transform(const SimpleLieAlgebra& g, const BorelPart<S>& b, const BorelPart<S>& n) {
  for (std::size_t a = 0; a < n.size(); ++a)
    if (!n[a].is_zero() && g.principal_degree(a) <= 0)
      throw std::invalid_argument("gauge_transform: gauge parameter must lie in the positive nilpotent part");
  const auto& pd = principal_data(g);
  BorelPart<S> full = b;
  auto pm = constant_part<S>(pd.p_minus1);
  for (std::size_t a = 0; a < full.size(); ++a) full[a] += pm[a];
  auto amat = matrix_of(g, full);
  auto nmat = matrix_of(g, n);
  FnMatrix<S> neg = nmat;
  for (auto& row : neg)
    for (auto& e : row) e = -e;
  auto gm = exp_nilpotent(nmat), gi = exp_nilpotent(neg);
  auto dg = gm;
  for (auto& row : dg)
    for (auto& e : row) e = e.derivative();
  auto res = mul(mul(gm, amat), gi);
  auto corr = mul(dg, gi);
  for (std::size_t i = 0; i < res.size(); ++i)
    for (std::size_t j = 0; j < res.size(); ++j) res[i][j] -= corr[i][j];
  auto out = coords_of(g, res);
  for (std::size_t a = 0; a < out.size(); ++a) out[a] -= pm[a];
  return out;
}

template <class S>
CanonicalOper<S> canonicalize(const SimpleLieAlgebra& g, const BorelPart<S>& b) {
  if (b.size() != g.dim()) throw std::invalid_argument("canonicalize: expected dim(g) coordinates");
  for (std::size_t a = 0; a < b.size(); ++a)
    if (!b[a].is_zero() && g.principal_degree(a) < 0)
      throw std::invalid_argument("canonicalize: b(t) must take values in the Borel subalgebra");
  const auto& splits = degree_splits(g);
  const auto& pd = principal_data(g);
  CanonicalOper<S> out;
  out.v.assign(pd.canonical.size(), RF<S>{});
  BorelPart<S> cur = b;
  for (const auto& s : splits) {
    const std::size_t k = s.here.size();
    std::vector<RF<S>> sol(k);
    for (std::size_t r = 0; r < k; ++r)
      for (std::size_t c = 0; c < k; ++c)
        if (!is_zero(s.inverse(r, c)) && !cur[s.here[c]].is_zero()) sol[r] += scaled_rf(cur[s.here[c]], s.inverse(r, c));
    for (std::size_t c = 0; c < s.canon.size(); ++c) out.v[s.canon[c]] = sol[s.above.size() + c];
    BorelPart<S> n(g.dim());
    bool any = false;
    for (std::size_t c = 0; c < s.above.size(); ++c)
      if (!sol[c].is_zero()) {
        n[s.above[c]] = sol[c];
        any = true;
      }
    if (any) cur = gauge_transform(g, cur, n);
  }
  return out;
}

template <class S>
BorelPart<S> borel_part(const CanonicalOper<S>& o) {
  const auto& pd = principal_data(*o.g);
  BorelPart<S> b(o.g->dim());
  for (std::size_t j = 0; j < o.v.size(); ++j)
    for (std::size_t a = 0; a < b.size(); ++a)
      if (!is_zero(pd.canonical[j][a]) && !o.v[j].is_zero()) b[a] += scaled_rf(o.v[j], pd.canonical[j][a]);
  return b;
}

template <class S>
CanonicalOper<S> miura(const CartanConnection<S>& c, const InvariantForm& form) {
  const auto& g = *c.g;
  if (c.labels.size() != g.rank()) throw std::invalid_argument("miura: expected one function per simple coroot");
  BorelPart<S> b(g.dim());
  for (std::size_t i = 0; i < g.rank(); ++i) {
    if (c.labels[i].is_zero()) continue;
    Weight unit(g.rank(), Rational(0));
    unit[i] = 1;
    Vec h = cartan_element(g, form, unit);
    for (std::size_t a = 0; a < g.dim(); ++a)
      if (!is_zero(h[a])) b[a] += scaled_rf(c.labels[i], h[a]);
  }
  auto o = canonicalize(g, b);
  o.g = c.g;
  o.points = c.points;
  return o;
}

template <class S>
std::vector<S> residue_m(const CanonicalOper<S>& o, const S& point, int m) {
  if (m < 1) throw std::invalid_argument("residue_m: m must be positive");
  const auto& ex = o.g->exponents();
  std::vector<S> out;
  for (std::size_t j = 0; j < o.v.size(); ++j) {
    const int order = m * (ex[j] + 1);
    if (o.v[j].pole_order(point) > order)
      throw std::invalid_argument("residue_m: singularity order exceeds " + std::to_string(m) + " for v_" +
                                  std::to_string(j + 1));
    out.push_back(o.v[j].principal_coefficient(point, order));
  }
  if (m == 1) out[0] = out[0] + from_rational<S>(Rational(1, 4));
  return out;
}

template <class S>
CanonicalOper<S> oper_at_infinity(const CanonicalOper<S>& o) {
  const auto& g = *o.g;
  const auto& pd = principal_data(g);
  const auto& ex = g.exponents();
  BorelPart<S> b(g.dim());
  for (std::size_t a = 0; a < g.dim(); ++a)
    if (!is_zero(pd.two_rho_check[a])) b[a] = RF<S>::pole(S(0), 1, from_rational<S>(pd.two_rho_check[a]));
  for (std::size_t j = 0; j < o.v.size(); ++j) {
    if (o.v[j].is_zero()) continue;
    const int k = 2 * (ex[j] + 1);
    RF<S> term = o.v[j].invert_variable() * RF<S>::pole(S(0), k, S((ex[j] + 1) % 2 ? -1 : 1));
    for (std::size_t a = 0; a < g.dim(); ++a)
      if (!is_zero(pd.canonical[j][a])) b[a] += scaled_rf(term, pd.canonical[j][a]);
  }
  auto out = canonicalize(g, b);
  out.g = o.g;
  for (const auto& p : o.points)
    if (!is_zero(p.position)) out.points.push_back({p.name, S(1) / p.position});
  out.points.push_back({"inf", S(0)});
  return out;
}

template <class S>
CartanConnection<S> infinity_expansion(const CartanConnection<S>& c) {
  CartanConnection<S> out;
  out.g = c.g;
  for (const auto& f : c.labels) {
    RF<S> l = -(f.invert_variable() * RF<S>::pole(S(0), 2, S(1)));
    l -= RF<S>::pole(S(0), 1, S(2));  // 2 rho has all Dynkin labels 2
    out.labels.push_back(l);
  }
  for (const auto& p : c.points)
    if (!is_zero(p.position)) out.points.push_back({p.name, S(1) / p.position});
  out.points.push_back({"inf", S(0)});
  return out;
}

template <class S>
double principal_magnitude(const RF<S>& f, const S& point) {
  double m = 0.0;
  for (int k = 1; k <= f.pole_order(point); ++k) m = std::max(m, magnitude(f.principal_coefficient(point, k)));
  return m;
}

std::vector<Rational> slice_coordinates(const SimpleLieAlgebra& g, const InvariantForm& form, const Weight& x) {
  auto o = canonicalize<Rational>(g, constant_part<Rational>(cartan_element(g, form, x)));
  std::vector<Rational> out;
  for (const auto& f : o.v) out.push_back(f.polynomial().empty() ? Rational(0) : f.polynomial()[0]);
  return out;
}

std::vector<Rational> expected_residue(const SimpleLieAlgebra& g, const InvariantForm& form, const Weight& lambda) {
  Weight x = lambda;
  for (auto& l : x) l = -l - 1;  // -lambda - rho
  return slice_coordinates(g, form, x);
}

CartanConnection<Complex> bethe_connection(const BetheProblem& p, const std::vector<Complex>& w) {
  const auto& g = *p.g;
  CartanConnection<Complex> c;
  c.g = p.g;
  c.labels.assign(g.rank(), RF<Complex>{});
  for (std::size_t k = 0; k < g.rank(); ++k) {
    for (std::size_t i = 0; i < p.z.size(); ++i)
      if (!is_zero(p.lambda[i][k])) c.labels[k] += RF<Complex>::pole(p.z[i], 1, Complex(p.lambda[i][k].get_d()));
    for (std::size_t j = 0; j < w.size(); ++j)
      if (g.cartan(k, p.colors[j]) != 0)
        c.labels[k] -= RF<Complex>::pole(w[j], 1, Complex(static_cast<double>(g.cartan(k, p.colors[j]))));
    c.labels[k] -= RF<Complex>::constant(Complex(p.chi[k].get_d()));
  }
  for (std::size_t i = 0; i < p.z.size(); ++i) c.points.push_back({"z" + std::to_string(i + 1), p.z[i]});
  for (std::size_t j = 0; j < w.size(); ++j) c.points.push_back({"w" + std::to_string(j + 1), w[j]});
  return c;
}

CartanConnection<Rational> bethe_connection(const SimpleLieAlgebra& g, const std::vector<Rational>& z,
                                            const std::vector<Weight>& lambda, const Weight& chi,
                                            const std::vector<std::size_t>& colors, const std::vector<Rational>& w) {
  CartanConnection<Rational> c;
  c.g = SimpleLieAlgebra::from_type(g.label());
  c.labels.assign(g.rank(), RF<Rational>{});
  for (std::size_t k = 0; k < g.rank(); ++k) {
    for (std::size_t i = 0; i < z.size(); ++i)
      if (!is_zero(lambda[i][k])) c.labels[k] += RF<Rational>::pole(z[i], 1, lambda[i][k]);
    for (std::size_t j = 0; j < w.size(); ++j)
      if (g.cartan(k, colors[j]) != 0) c.labels[k] -= RF<Rational>::pole(w[j], 1, Rational(g.cartan(k, colors[j])));
    c.labels[k] -= RF<Rational>::constant(chi[k]);
  }
  for (std::size_t i = 0; i < z.size(); ++i) c.points.push_back({"z" + std::to_string(i + 1), z[i]});
  for (std::size_t j = 0; j < w.size(); ++j) c.points.push_back({"w" + std::to_string(j + 1), w[j]});
  return c;
}

CanonicalOper<Complex> oper_from_bethe(const BetheProblem& p, const BetheSolution& s, double tol) {
  auto r = residual(p, s.w);
  for (double x : r)
    if (x > tol) throw std::invalid_argument("oper_from_bethe: Bethe residual above tolerance");
  auto c = bethe_connection(p, s.w);
  for (auto& f : c.labels) f = -f;
  return miura(c, standard_form(*p.g));
}

RationalFunction<Complex> quadratic_eigenvalue_function(const BetheProblem& p, const std::vector<Complex>& e,
                                                        const InvariantForm& form) {
  const auto& g = *p.g;
  Weight two_rho(g.rank(), Rational(2));
  RF<Complex> f = RF<Complex>::constant(Complex(Rational(weight_pairing(g, form, p.chi, p.chi) / 2).get_d()));
  for (std::size_t i = 0; i < p.z.size(); ++i) {
    Weight shifted = p.lambda[i];
    for (std::size_t k = 0; k < shifted.size(); ++k) shifted[k] += two_rho[k];
    Rational delta = weight_pairing(g, form, p.lambda[i], shifted) / 2;
    f += RF<Complex>::pole(p.z[i], 2, Complex(delta.get_d()));
    if (i < e.size()) f += RF<Complex>::pole(p.z[i], 1, e[i]);
  }
  return f;
}

// ---------------------------------------------------------------- monodromy

namespace {

using State = std::vector<Complex>;

Complex value(const RF<Complex>& f, Complex x) {
  Complex v = 0.0;
  const auto& poly = f.polynomial();
  for (std::size_t k = poly.size(); k-- > 0;) v = v * x + poly[k];
  for (const auto& [p, pr] : f.poles()) {
    Complex inv = 1.0 / (x - p), ip = inv;
    for (const auto& c : pr) {
      v += c * ip;
      ip *= inv;
    }
  }
  return v;
}

struct OperMatrix {
  std::size_t n = 0;
  std::vector<std::vector<Complex>> p_minus1;
  std::vector<std::vector<std::vector<Complex>>> canon;
  const CanonicalOper<Complex>* oper = nullptr;

  explicit OperMatrix(const CanonicalOper<Complex>& o) : oper(&o) {
    const auto& g = *o.g;
    const auto& pd = principal_data(g);
    n = g.defining_dim();
    auto cm = [&](const Vec& x) {
      RatMatrix m = g.to_defining(x);
      std::vector<std::vector<Complex>> out(n, std::vector<Complex>(n));
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) out[i][j] = m(i, j).get_d();
      return out;
    };
    p_minus1 = cm(pd.p_minus1);
    for (const auto& p : pd.canonical) canon.push_back(cm(p));
  }

  std::vector<std::vector<Complex>> at(Complex t) const {
    auto a = p_minus1;
    for (std::size_t j = 0; j < canon.size(); ++j) {
      if (oper->v[j].is_zero()) continue;
      Complex vj = value(oper->v[j], t);
      for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) a[r][c] += vj * canon[j][r][c];
    }
    return a;
  }
};

Complex point_on(const PathSegment& s, double tau) {
  if (s.kind == PathSegment::Kind::Line) return s.from + tau * (s.to - s.from);
  double th = s.theta0 + tau * (s.theta1 - s.theta0);
  return s.center + s.radius * Complex(std::cos(th), std::sin(th));
}

Complex velocity(const PathSegment& s, double tau) {
  if (s.kind == PathSegment::Kind::Line) return s.to - s.from;
  double th = s.theta0 + tau * (s.theta1 - s.theta0);
  return s.radius * (s.theta1 - s.theta0) * Complex(-std::sin(th), std::cos(th));
}

double distance_to(const PathSegment& s, Complex p) {
  if (s.kind == PathSegment::Kind::Arc) {
    if (std::abs(s.theta1 - s.theta0) >= 2 * std::numbers::pi - 1e-12) return std::abs(std::abs(p - s.center) - s.radius);
    double best = std::numeric_limits<double>::infinity();
    for (int k = 0; k <= 256; ++k) best = std::min(best, std::abs(point_on(s, k / 256.0) - p));
    return best;
  }
  Complex d = s.to - s.from;
  double len2 = std::norm(d);
  double tau = len2 == 0.0 ? 0.0 : std::clamp(((p - s.from) * std::conj(d)).real() / len2, 0.0, 1.0);
  return std::abs(s.from + tau * d - p);
}

using CMat = std::vector<std::vector<Complex>>;

CMat cmul(const CMat& a, const CMat& b) {
  const std::size_t n = a.size();
  CMat out(n, std::vector<Complex>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t j = 0; j < n; ++j) out[i][j] += a[i][k] * b[k][j];
  return out;
}

CMat cinverse(const CMat& a) {
  const auto n = static_cast<Eigen::Index>(a.size());
  Eigen::MatrixXcd m(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) m(i, j) = a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  Eigen::MatrixXcd inv = m.inverse();
  CMat out(a.size(), std::vector<Complex>(a.size()));
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) out[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = inv(i, j);
  return out;
}

Complex cdet(const CMat& a) {
  const auto n = static_cast<Eigen::Index>(a.size());
  Eigen::MatrixXcd m(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) m(i, j) = a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  return m.determinant();
}

nlohmann::json cmat_json(const CMat& m) {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& row : m) {
    nlohmann::json r = nlohmann::json::array();
    for (const auto& x : row) r.push_back({x.real(), x.imag()});
    j.push_back(r);
  }
  return j;
}

}  // namespace

double projective_distance(const std::vector<std::vector<Complex>>& m) {
  const std::size_t n = m.size();
  Complex tr = 0.0;
  for (std::size_t i = 0; i < n; ++i) tr += m[i][i];
  Complex c = tr / static_cast<double>(n);
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      num += std::norm(m[i][j] - (i == j ? c : Complex(0.0)));
      den += std::norm(m[i][j]);
    }
  return den == 0.0 ? 0.0 : std::sqrt(num / den);
}

nlohmann::json MonodromyResult::to_json() const {
  return {{"loop", loop},
          {"base", {base.real(), base.imag()}},
          {"center", {center.real(), center.imag()}},
          {"matrix", cmat_json(matrix)},
          {"projective_distance", projective_distance},
          {"det_error", det_error},
          {"closest_approach", closest_approach},
          {"steps", steps},
          {"ok", ok},
          {"note", note}};
}

MonodromyResult transport(const CanonicalOper<Complex>& o, const std::vector<PathSegment>& path,
                          const std::vector<Complex>& singular, const MonodromyOptions& opt) {
  namespace ode = boost::numeric::odeint;
  OperMatrix am(o);
  const std::size_t n = am.n;
  MonodromyResult r;
  r.base = path.empty() ? Complex(0.0) : point_on(path.front(), 0.0);
  r.closest_approach = std::numeric_limits<double>::infinity();
  for (const auto& s : path)
    for (const auto& p : singular) r.closest_approach = std::min(r.closest_approach, distance_to(s, p));

  // state: Y (n x n, row major) followed by the integral of tr A
  State y(n * n + 1, 0.0);
  for (std::size_t i = 0; i < n; ++i) y[i * n + i] = 1.0;
  auto stepper = ode::make_controlled(opt.atol, opt.rtol, ode::runge_kutta_dopri5<State>());
  try {
    for (const auto& seg : path) {
      auto rhs = [&](const State& x, State& dx, double tau) {
        Complex t = point_on(seg, tau), dt = velocity(seg, tau);
        auto a = am.at(t);
        for (std::size_t i = 0; i < n; ++i)
          for (std::size_t j = 0; j < n; ++j) {
            Complex acc = 0.0;
            for (std::size_t k = 0; k < n; ++k) acc += a[i][k] * x[k * n + j];
            dx[i * n + j] = -acc * dt;
          }
        Complex tr = 0.0;
        for (std::size_t i = 0; i < n; ++i) tr += a[i][i];
        dx[n * n] = tr * dt;
      };
      r.steps += ode::integrate_adaptive(stepper, rhs, y, 0.0, 1.0, 1e-3);
    }
  } catch (const std::exception& e) {
    r.ok = false;
    r.note = std::string("integration failed: ") + e.what();
  }
  r.matrix.assign(n, std::vector<Complex>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) r.matrix[i][j] = y[i * n + j];
  r.projective_distance = projective_distance(r.matrix);
  r.det_error = std::abs(cdet(r.matrix) - std::exp(-y[n * n]));
  bool finite = std::all_of(y.begin(), y.end(), [](Complex x) { return std::isfinite(std::abs(x)); });
  if (!finite) {
    r.ok = false;
    r.note = "non-finite transport";
  }
  return r;
}

MonodromyResult monodromy_around(const CanonicalOper<Complex>& o, Complex center, double radius,
                                 const std::vector<Complex>& singular, const MonodromyOptions& opt) {
  PathSegment arc;
  arc.kind = PathSegment::Kind::Arc;
  arc.center = center;
  arc.radius = radius;
  arc.theta0 = 0.0;
  arc.theta1 = 2 * std::numbers::pi;
  auto r = transport(o, {arc}, singular, opt);
  r.loop = "circle";
  r.center = center;
  return r;
}

MonodromyResult based_loop(const CanonicalOper<Complex>& o, Complex base, Complex center, double radius,
                           const std::vector<Complex>& singular, const MonodromyOptions& opt) {
  Complex u = base - center;
  double th = std::arg(u);
  Complex entry = center + radius * std::polar(1.0, th);
  PathSegment in{PathSegment::Kind::Line, base, entry, {}, 0.0, 0.0, 0.0};
  PathSegment arc{PathSegment::Kind::Arc, {}, {}, center, radius, th, th + 2 * std::numbers::pi};
  PathSegment out{PathSegment::Kind::Line, entry, base, {}, 0.0, 0.0, 0.0};
  auto r = transport(o, {in, arc, out}, singular, opt);
  r.loop = "based";
  r.center = center;
  return r;
}

nlohmann::json GlobalMonodromy::to_json() const {
  nlohmann::json j;
  j["local"] = nlohmann::json::array();
  for (const auto& l : local) j["local"].push_back(l.to_json());
  j["outer"] = outer.to_json();
  j["composite_distance"] = composite_distance;
  return j;
}

GlobalMonodromy global_monodromy(const CanonicalOper<Complex>& o, const std::vector<Complex>& singular,
                                 const MonodromyOptions& opt) {
  GlobalMonodromy gm;
  if (singular.empty()) throw std::invalid_argument("global_monodromy: no singular points");
  Complex center = 0.0;
  for (auto p : singular) center += p / static_cast<double>(singular.size());
  double gap = std::numeric_limits<double>::infinity(), reach = 0.0;
  for (std::size_t i = 0; i < singular.size(); ++i) {
    reach = std::max(reach, std::abs(singular[i] - center));
    for (std::size_t k = i + 1; k < singular.size(); ++k) gap = std::min(gap, std::abs(singular[i] - singular[k]));
  }
  if (!std::isfinite(gap)) gap = std::max(1.0, reach);
  const double radius = gap / 4;
  const double big = reach + gap;
  // base point on the outer circle, direction chosen away from symmetric configurations
  const double th = -std::numbers::pi / 2 + 0.1234;
  Complex base = center + big * std::polar(1.0, th);
  gm.outer = transport(o, {{PathSegment::Kind::Arc, {}, {}, center, big, th, th + 2 * std::numbers::pi}}, singular, opt);
  gm.outer.loop = "outer";

  // counter-clockwise outer loop = product of based loops, the first one traversed being the
  // point seen furthest clockwise from the base (largest angle last)
  std::vector<std::size_t> order(singular.size());
  std::iota(order.begin(), order.end(), 0);
  Complex inward = center - base;
  auto rel = [&](Complex p) { return std::arg((p - base) / inward); };
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return rel(singular[a]) < rel(singular[b]); });
  CMat prod;
  for (auto k : order) {
    auto r = based_loop(o, base, singular[k], radius, singular, opt);
    prod = prod.empty() ? r.matrix : cmul(r.matrix, prod);
    gm.local.push_back(std::move(r));
  }
  gm.composite_distance = projective_distance(cmul(prod, cinverse(gm.outer.matrix)));
  return gm;
}

CanonicalOper<Complex> a1_control_oper(double kappa) {
  CanonicalOper<Complex> o;
  o.g = SimpleLieAlgebra::from_type("A1");
  o.v = {RF<Complex>::pole(Complex(0.0), 2, Complex(kappa * kappa - 0.25))};
  o.points = {{"z1", Complex(0.0)}};
  return o;
}

#define GLAB_OPERS_INSTANTIATE(S)                                                                     \
  template struct CanonicalOper<S>;                                                                   \
  template BorelPart<S> gauge_transform<S>(const SimpleLieAlgebra&, const BorelPart<S>&, const BorelPart<S>&); \
  template CanonicalOper<S> canonicalize<S>(const SimpleLieAlgebra&, const BorelPart<S>&);            \
  template BorelPart<S> borel_part<S>(const CanonicalOper<S>&);                                        \
  template CanonicalOper<S> miura<S>(const CartanConnection<S>&, const InvariantForm&);               \
  template std::vector<S> residue_m<S>(const CanonicalOper<S>&, const S&, int);                       \
  template CanonicalOper<S> oper_at_infinity<S>(const CanonicalOper<S>&);                              \
  template CartanConnection<S> infinity_expansion<S>(const CartanConnection<S>&);                      \
  template double principal_magnitude<S>(const RF<S>&, const S&);

GLAB_OPERS_INSTANTIATE(Rational)
GLAB_OPERS_INSTANTIATE(Complex)

}  // namespace glab
