#pragma once

#include <map>
#include <string>
#include <tuple>
#include <vector>

#include <json.hpp>

#include "glab/liealg.hpp"
#include "glab/partial_fractions.hpp"
#include "glab/polynomial.hpp"
#include "glab/uea.hpp"

namespace glab {

/// Polynomial functions on (g*)^N; variable site * dim + a is the coordinate J̄_a at that site.
using PolyMatrix = std::vector<std::vector<Polynomial>>;

/// Lie–Poisson (Kirillov–Kostant) bracket {J̄_a, J̄_b} = [J_a, J_b]‾, site by site.
Polynomial poisson_bracket(const SimpleLieAlgebra& g, std::size_t sites, const Polynomial& f, const Polynomial& h);

/// Coordinates J̄_a(X) of the covector kappa(X, .) for X in g.
Vec dual_coordinates(const InvariantForm& form, const Vec& x);
/// Coordinates of a weight, extended by zero on the root spaces.
Vec weight_coordinates(const SimpleLieAlgebra& g, const Weight& chi);
/// Inverse of dual_coordinates.
Vec from_dual_coordinates(const InvariantForm& form, const Vec& coords);

/// Matrix sum_a J̄_a^{(site)} M(J^a) in the defining representation (trace-form duals).
PolyMatrix coordinate_matrix(const SimpleLieAlgebra& g, std::size_t sites, std::size_t site);

/// P̄_i = tr(M^{i+1}) / (i+1), i = 1..rank; type A only.
std::vector<Polynomial> invariant_polynomials(const SimpleLieAlgebra& g);

struct ShiftGenerator {
  std::size_t invariant = 0;  // i (0-based)
  int order = 0;              // n in D_chi^n P̄_i
  Polynomial poly;
};

/// D_chi^n P̄_i for n = 0..d_i. chi is given by its coordinates in g*.
/// Throws std::invalid_argument naming the centralizer defect when chi is not regular,
/// unless require_regular is false.
std::vector<ShiftGenerator> shift_arg_generators(const SimpleLieAlgebra& g, const Vec& chi,
                                                 bool require_regular = true);
std::vector<Polynomial> polynomials_of(const std::vector<ShiftGenerator>& gens);

/// dim ker(ad chi_hat) - rank(g); zero iff chi is regular.
std::size_t regularity_defect(const SimpleLieAlgebra& g, const Vec& chi_coords);

/// Exact rank of the Jacobian of the generators at a rational point.
std::size_t independence_rank(const std::vector<Polynomial>& gens, const Vec& point);

/// Largest |{f, g}| test: true when every pair Poisson-commutes exactly.
bool pairwise_poisson_commute(const SimpleLieAlgebra& g, std::size_t sites, const std::vector<Polynomial>& gens);

/// eta(u) = sum_i A_i / (u - z_i) - chi, A_i the coordinate covector of site i.
struct LOperatorP1 {
  AlgebraPtr g;
  std::vector<Rational> z;
  Vec chi;  // coordinates in g*
};

/// Key (point, invariant, power): point < N is a pole z_point with (u - z)^{-power};
/// point == N is the polynomial part with u^{power}.
using GaudinKey = std::tuple<std::size_t, std::size_t, int>;

std::map<GaudinKey, Polynomial> classical_gaudin_generators(const LOperatorP1& l);

/// Sign s such that Xi_{i,chi} quantizes the 1/(u - z_i) coefficient of P̄_1(eta) built
/// with s * chi in place of chi. Fixed once on an A1 instance.
int gaudin_sign_convention();

/// T̄_gamma(chi) = sum_alpha (alpha, gamma)(alpha, alpha)/(alpha, chi) ē_alpha f̄_alpha.
Polynomial vinberg_quadratic(const SimpleLieAlgebra& g, const InvariantForm& form, const Weight& gamma,
                             const Weight& chi);

/// Homogeneous degree-k part in x of p(x + u chi), i.e. D_chi^{d-k} p / (d-k)!.
Polynomial shifted_component(const Polynomial& p, const Vec& direction, int k);

/// Pieces of the quadratic-part decomposition of an invariant p at chi in h.
struct GenerationTerms {
  Polynomial p2;     // p_chi^{(2)}
  Polynomial q2;     // the same for the restriction of p to h*
  Polynomial tbar;   // T̄_{gamma_q}(chi)
  Weight gamma_q;    // the differential of q at chi
};
GenerationTerms generation_terms(const SimpleLieAlgebra& g, const InvariantForm& form, const Polynomial& p,
                                 const Weight& chi);

enum class SymbolMode {
  Top,     // top-degree components only
  Graded,  // full preimage under symmetrization
};

struct SymbolVerdict {
  bool equal = false;
  int quantum_degree = -1;
  int classical_degree = -1;
  std::string note;
  nlohmann::json to_json() const;
};

SymbolVerdict symbol_check(const Enveloping& u, const UElement& quantum, const Polynomial& classical,
                           SymbolMode mode = SymbolMode::Top);

}  // namespace glab
