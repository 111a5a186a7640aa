#include "glab/classical.hpp"

#include <set>
#include <stdexcept>

#include "glab/hamiltonians.hpp"

namespace glab {

namespace {

using PolyPF = PartialFractions<Polynomial, Rational>;

Rational factorial(int n) {
  Rational f = 1;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

template <class T>
std::vector<std::vector<T>> mat_mul(const std::vector<std::vector<T>>& a, const std::vector<std::vector<T>>& b) {
  const std::size_t n = a.size();
  std::vector<std::vector<T>> out(n, std::vector<T>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      if (is_zero(a[i][k])) continue;
      for (std::size_t j = 0; j < n; ++j)
        if (!is_zero(b[k][j])) out[i][j] += a[i][k] * b[k][j];
    }
  return out;
}

template <class T>
T trace(const std::vector<std::vector<T>>& a) {
  T t{};
  for (std::size_t i = 0; i < a.size(); ++i) t += a[i][i];
  return t;
}

void require_type_a(const SimpleLieAlgebra& g) {
  if (!g.has_defining_representation())
    throw std::invalid_argument("classical: invariant polynomials need a matrix realization (type A), got " +
                                g.label());
}

}  // namespace

Polynomial poisson_bracket(const SimpleLieAlgebra& g, std::size_t sites, const Polynomial& f, const Polynomial& h) {
  const std::size_t dim = g.dim(), n = dim * sites;
  if ((!f.is_zero() && f.nvars() != n) || (!h.is_zero() && h.nvars() != n))
    throw std::invalid_argument("poisson_bracket: arity mismatch (expected " + std::to_string(n) + " variables)");
  Polynomial out(n);
  if (f.is_zero() || h.is_zero()) return out;

  std::vector<Polynomial> df(n), dh(n);
  for (std::size_t v = 0; v < n; ++v) {
    df[v] = f.derivative(v);
    dh[v] = h.derivative(v);
  }
  for (std::size_t s = 0; s < sites; ++s) {
    const std::size_t off = s * dim;
    for (std::size_t b = 0; b < dim; ++b) {
      if (dh[off + b].is_zero()) continue;
      Polynomial acc(n);
      for (std::size_t a = 0; a < dim; ++a) {
        if (df[off + a].is_zero()) continue;
        Polynomial lin(n);
        for (const auto& [c, coeff] : g.bracket_basis(a, b)) lin.add_term(Polynomial::unit(off + c), coeff);
        if (!lin.is_zero()) acc += df[off + a] * lin;
      }
      if (!acc.is_zero()) out += acc * dh[off + b];
    }
  }
  return out;
}

Vec dual_coordinates(const InvariantForm& form, const Vec& x) { return form.gram * x; }

Vec weight_coordinates(const SimpleLieAlgebra& g, const Weight& chi) {
  if (chi.size() != g.rank()) throw std::invalid_argument("weight_coordinates: wrong number of labels");
  Vec c(g.dim(), Rational(0));
  for (std::size_t i = 0; i < g.rank(); ++i) c[g.h_index(i)] = chi[i];
  return c;
}

Vec from_dual_coordinates(const InvariantForm& form, const Vec& coords) {
  auto inv = inverse(form.gram);
  if (!inv) throw std::invalid_argument("from_dual_coordinates: singular form");
  return (*inv) * coords;
}

PolyMatrix coordinate_matrix(const SimpleLieAlgebra& g, std::size_t sites, std::size_t site) {
  require_type_a(g);
  const std::size_t n = g.defining_dim(), nv = g.dim() * sites;
  auto duals = dual_bases(g, standard_form(g));
  PolyMatrix m(n, std::vector<Polynomial>(n, Polynomial(nv)));
  for (std::size_t a = 0; a < g.dim(); ++a) {
    RatMatrix d = g.to_defining(duals.dual[a]);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c)
        if (!is_zero(d(r, c))) m[r][c].add_term(Polynomial::unit(site * g.dim() + a), d(r, c));
  }
  return m;
}

std::vector<Polynomial> invariant_polynomials(const SimpleLieAlgebra& g) {
  auto m = coordinate_matrix(g, 1, 0);
  std::vector<Polynomial> out;
  auto power = m;
  for (std::size_t i = 1; i <= g.rank(); ++i) {
    power = mat_mul(power, m);
    out.push_back(trace(power) * Rational(1, static_cast<long>(i + 1)));
  }
  return out;
}

std::size_t regularity_defect(const SimpleLieAlgebra& g, const Vec& chi_coords) {
  Vec hat = from_dual_coordinates(standard_form(g), chi_coords);
  return g.dim() - rank(g.ad(hat)) - g.rank();
}

std::vector<ShiftGenerator> shift_arg_generators(const SimpleLieAlgebra& g, const Vec& chi, bool require_regular) {
  if (chi.size() != g.dim()) throw std::invalid_argument("shift_arg_generators: chi must have dim(g) coordinates");
  if (require_regular) {
    std::size_t defect = regularity_defect(g, chi);
    if (defect != 0)
      throw std::invalid_argument("shift_arg_generators: chi is not regular: centralizer dimension " +
                                  std::to_string(g.rank() + defect) + " exceeds rank " + std::to_string(g.rank()) +
                                  " by " + std::to_string(defect));
  }
  std::vector<ShiftGenerator> out;
  auto inv = invariant_polynomials(g);
  for (std::size_t i = 0; i < inv.size(); ++i) {
    Polynomial p = inv[i];
    const int d = g.exponents()[i];
    for (int n = 0; n <= d; ++n) {
      out.push_back({i, n, p});
      p = p.directional_derivative(chi);
    }
  }
  return out;
}

std::vector<Polynomial> polynomials_of(const std::vector<ShiftGenerator>& gens) {
  std::vector<Polynomial> out;
  for (const auto& s : gens) out.push_back(s.poly);
  return out;
}

std::size_t independence_rank(const std::vector<Polynomial>& gens, const Vec& point) {
  if (gens.empty()) return 0;
  RatMatrix jac(gens.size(), point.size());
  for (std::size_t r = 0; r < gens.size(); ++r) {
    if (gens[r].is_zero()) continue;
    auto grad = gens[r].gradient(point);
    for (std::size_t c = 0; c < point.size(); ++c) jac(r, c) = grad[c];
  }
  return rank(jac);
}

bool pairwise_poisson_commute(const SimpleLieAlgebra& g, std::size_t sites, const std::vector<Polynomial>& gens) {
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = i + 1; j < gens.size(); ++j)
      if (!poisson_bracket(g, sites, gens[i], gens[j]).is_zero()) return false;
  return true;
}

std::map<GaudinKey, Polynomial> classical_gaudin_generators(const LOperatorP1& l) {
  const auto& g = *l.g;
  require_type_a(g);
  const std::size_t sites = l.z.size(), n = g.defining_dim(), nv = g.dim() * sites;
  if (std::set<Rational>(l.z.begin(), l.z.end()).size() != sites)
    throw std::invalid_argument("classical_gaudin_generators: coincident points");
  if (l.chi.size() != g.dim()) throw std::invalid_argument("classical_gaudin_generators: chi must have dim(g) coordinates");

  RatMatrix chi_mat = g.to_defining(from_dual_coordinates(standard_form(g), l.chi));
  std::vector<std::vector<PolyPF>> m(n, std::vector<PolyPF>(n));
  for (std::size_t s = 0; s < sites; ++s) {
    auto ms = coordinate_matrix(g, sites, s);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c)
        if (!ms[r][c].is_zero()) m[r][c] += PolyPF::pole(l.z[s], 1, ms[r][c]);
  }
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c)
      if (!is_zero(chi_mat(r, c))) m[r][c] -= PolyPF::constant(Polynomial::constant(nv, chi_mat(r, c)));

  std::map<GaudinKey, Polynomial> out;
  auto power = m;
  for (std::size_t k = 1; k <= g.rank(); ++k) {
    power = mat_mul(power, m);
    PolyPF p = trace(power).scaled(Rational(1, static_cast<long>(k + 1)));
    for (std::size_t s = 0; s < sites; ++s)
      for (int r = 1; r <= p.pole_order(l.z[s]); ++r) {
        auto c = p.principal_coefficient(l.z[s], r);
        if (!c.is_zero()) out[{s, k - 1, r}] = c;
      }
    for (std::size_t e = 0; e < p.polynomial().size(); ++e)
      if (!p.polynomial()[e].is_zero()) out[{sites, k - 1, static_cast<int>(e)}] = p.polynomial()[e];
  }
  return out;
}

int gaudin_sign_convention() {
  static const int sign = [] {
    auto a1 = SimpleLieAlgebra::from_type("A1");
    auto form = standard_form(*a1);
    Enveloping u(a1, 2);
    std::vector<Rational> z{Rational(0), Rational(1)};
    Weight chi{Rational(1)};
    auto xi = gaudin_shifted_element(u, z, chi, 0, form);
    for (int s : {1, -1}) {
      Vec coords = weight_coordinates(*a1, chi);
      for (auto& c : coords) c *= s;
      auto gens = classical_gaudin_generators({a1, z, coords});
      if (symbol_check(u, xi, gens[{0, 0, 1}], SymbolMode::Graded).equal) return s;
    }
    throw std::logic_error("gaudin_sign_convention: no sign matches");
  }();
  return sign;
}

Polynomial vinberg_quadratic(const SimpleLieAlgebra& g, const InvariantForm& form, const Weight& gamma,
                             const Weight& chi) {
  if (auto bad = singular_root(g, form, chi)) {
    std::string coeffs;
    for (int c : g.positive_roots()[*bad].coeffs) coeffs += (coeffs.empty() ? "" : ",") + std::to_string(c);
    throw std::invalid_argument("vinberg_quadratic: chi is singular, alpha(chi) = 0 for root (" + coeffs + ")");
  }
  Polynomial out(g.dim());
  for (std::size_t r = 0; r < g.num_positive_roots(); ++r) {
    Weight alpha = g.root_weight(g.positive_roots()[r].coeffs);
    Rational c = weight_pairing(g, form, alpha, gamma) * weight_pairing(g, form, alpha, alpha) /
                 weight_pairing(g, form, alpha, chi);
    if (is_zero(c)) continue;
    out.add_term(Polynomial::unit(g.e_index(r)) + Polynomial::unit(g.f_index(r)), c);
  }
  return out;
}

Polynomial shifted_component(const Polynomial& p, const Vec& direction, int k) {
  const int d = p.degree();
  if (p.is_zero() || k > d) return Polynomial(p.nvars());
  if (p.homogeneous_part(d) != p) throw std::invalid_argument("shifted_component: polynomial is not homogeneous");
  Polynomial q = p;
  for (int m = 0; m < d - k; ++m) q = q.directional_derivative(direction);
  return q * (1 / factorial(d - k));
}

GenerationTerms generation_terms(const SimpleLieAlgebra& g, const InvariantForm& form, const Polynomial& p,
                                 const Weight& chi) {
  GenerationTerms t;
  Vec dir = weight_coordinates(g, chi);
  t.p2 = shifted_component(p, dir, 2);
  t.q2 = Polynomial(p.nvars());
  Monomial cartan_mask = 0;
  for (std::size_t i = 0; i < g.rank(); ++i) cartan_mask |= Monomial(15) << (4 * g.h_index(i));
  for (const auto& [m, c] : t.p2.terms())
    if ((m & ~cartan_mask) == 0) t.q2.add_term(m, c);
  for (std::size_t i = 0; i < g.rank(); ++i) {
    Polynomial d = p.directional_derivative(dual_coordinates(form, g.basis_vector(g.h_index(i))));
    t.gamma_q.push_back(d.evaluate(dir));
  }
  t.tbar = vinberg_quadratic(g, form, t.gamma_q, chi);
  return t;
}

nlohmann::json SymbolVerdict::to_json() const {
  return {{"equal", equal}, {"quantum_degree", quantum_degree}, {"classical_degree", classical_degree}, {"note", note}};
}

SymbolVerdict symbol_check(const Enveloping& u, const UElement& quantum, const Polynomial& classical, SymbolMode mode) {
  SymbolVerdict v;
  UElement x = u.normal_order(quantum);
  v.quantum_degree = Enveloping::degree(x);
  v.classical_degree = classical.degree();
  if (!classical.is_zero() && classical.nvars() != u.num_generators()) {
    v.note = "arity mismatch";
    return v;
  }
  if (mode == SymbolMode::Top) {
    if (v.quantum_degree != v.classical_degree) {
      v.note = "degree mismatch";
      return v;
    }
    v.equal = u.symbol(x) == classical.homogeneous_part(v.classical_degree);
  } else {
    Polynomial s = u.unsymmetrize(x);
    v.equal = s == classical;
    if (!v.equal && v.quantum_degree != v.classical_degree) v.note = "degree mismatch";
  }
  if (!v.equal && v.note.empty()) v.note = "symbols differ";
  return v;
}

}  // namespace glab
