#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "glab/bethe.hpp"
#include "glab/liealg.hpp"
#include "glab/partial_fractions.hpp"

namespace glab {

template <class S>
using RationalFunction = PartialFractions<S, S>;

template <class S>
struct MarkedPoint {
  std::string name;  // "z1", "w2", ...
  S position{};
};

/// h*-valued rational function nu(t), stored by its Dynkin labels nu(t)(h_i).
template <class S>
struct CartanConnection {
  AlgebraPtr g;
  std::vector<RationalFunction<S>> labels;
  std::vector<MarkedPoint<S>> points;
};

/// d/dt + p_{-1} + sum_j v_j(t) p_j with p_j the canonical generators (ordered by exponent).
template <class S>
struct CanonicalOper {
  AlgebraPtr g;
  std::vector<RationalFunction<S>> v;
  std::vector<MarkedPoint<S>> points;

  /// Largest pole order of v_j at a point, and the singularity order m it implies:
  /// the least m with order(v_j) <= m (d_j + 1) for all j.
  int singularity_order(const S& point) const;
  nlohmann::json to_json() const;
};

/// A connection d/dt + p_{-1} + b(t) with b given by its Chevalley coordinates.
template <class S>
using BorelPart = std::vector<RationalFunction<S>>;

/// Gauge action of exp(n(t)) for n(t) with values in the positive nilpotent subalgebra:
/// A -> g A g^{-1} - g' g^{-1}, returned as the new Borel part.
template <class S>
BorelPart<S> gauge_transform(const SimpleLieAlgebra& g, const BorelPart<S>& b, const BorelPart<S>& n);

/// Unique representative of the gauge class of d/dt + p_{-1} + b(t). Type A only.
/// Throws std::invalid_argument if b has components of negative principal degree.
template <class S>
CanonicalOper<S> canonicalize(const SimpleLieAlgebra& g, const BorelPart<S>& b);

/// Borel part sum_j v_j p_j of a canonical oper (input form for canonicalize).
template <class S>
BorelPart<S> borel_part(const CanonicalOper<S>& o);

/// Miura transformation: the oper class of d/dt + p_{-1} + nu(t), nu moved to h by the form.
template <class S>
CanonicalOper<S> miura(const CartanConnection<S>& c, const InvariantForm& form);

/// (u_1(0) + delta_{m,1}/4, u_2(0), ...) with v_j = (t - point)^{-m(d_j+1)} u_j(t).
/// Throws std::invalid_argument if the singularity order exceeds m.
template <class S>
std::vector<S> residue_m(const CanonicalOper<S>& o, const S& point, int m);

/// The same oper in the coordinate s = 1/t (the point at infinity is s = 0).
template <class S>
CanonicalOper<S> oper_at_infinity(const CanonicalOper<S>& o);

/// nu_infinity(s) = -s^{-2} nu(1/s) - 2 rho / s.
template <class S>
CartanConnection<S> infinity_expansion(const CartanConnection<S>& c);

/// Slice coordinates of the class of p_{-1} + x for x in h (given as a weight through the form).
std::vector<Rational> slice_coordinates(const SimpleLieAlgebra& g, const InvariantForm& form, const Weight& x);

/// Residue expected at a point carrying lambda: slice coordinates of -lambda - rho.
std::vector<Rational> expected_residue(const SimpleLieAlgebra& g, const InvariantForm& form, const Weight& lambda);

/// lambda(t) = sum_i lambda_i/(t - z_i) - sum_j alpha_{c_j}/(t - w_j) - chi.
CartanConnection<Complex> bethe_connection(const BetheProblem& p, const std::vector<Complex>& w);
CartanConnection<Rational> bethe_connection(const SimpleLieAlgebra& g, const std::vector<Rational>& z,
                                            const std::vector<Weight>& lambda, const Weight& chi,
                                            const std::vector<std::size_t>& colors, const std::vector<Rational>& w);

/// Miura oper of -lambda(t). Throws std::invalid_argument if the Bethe residual exceeds tol.
CanonicalOper<Complex> oper_from_bethe(const BetheProblem& p, const BetheSolution& s, double tol = 1e-8);

/// sum_i Delta_i/(u - z_i)^2 + sum_i E_i/(u - z_i) + (chi, chi)/2 with Delta_i = (lambda_i, lambda_i + 2 rho)/2.
RationalFunction<Complex> quadratic_eigenvalue_function(const BetheProblem& p, const std::vector<Complex>& e,
                                                        const InvariantForm& form);

/// Max |coefficient| of the pole parts of f at the given point.
template <class S>
double principal_magnitude(const RationalFunction<S>& f, const S& point);

// ---------------------------------------------------------------- monodromy

struct PathSegment {
  enum class Kind { Line, Arc } kind = Kind::Line;
  Complex from, to;       // Line
  Complex center;         // Arc
  double radius = 0.0;
  double theta0 = 0.0, theta1 = 0.0;
};

struct MonodromyResult {
  std::string loop;
  Complex base;
  Complex center;  // loops around a point
  std::vector<std::vector<Complex>> matrix;
  double projective_distance = 0.0;  // min_c ||M - c I|| / ||M||
  double det_error = 0.0;            // |det M - exp(-integral tr A)|
  double closest_approach = 0.0;     // to any singular point along the path
  std::size_t steps = 0;
  bool ok = true;
  std::string note;
  nlohmann::json to_json() const;
};

struct MonodromyOptions {
  double rtol = 1e-10;
  double atol = 1e-12;
};

/// Transport of flat sections of d/dt + A(t) along a path, A = p_{-1} + sum v_j p_j in the
/// defining representation.
MonodromyResult transport(const CanonicalOper<Complex>& o, const std::vector<PathSegment>& path,
                          const std::vector<Complex>& singular, const MonodromyOptions& opt = {});

/// Circle of the given radius around center, starting and ending at center + radius.
MonodromyResult monodromy_around(const CanonicalOper<Complex>& o, Complex center, double radius,
                                 const std::vector<Complex>& singular, const MonodromyOptions& opt = {});

/// Loops based at `base`: line to the circle, circle, line back.
MonodromyResult based_loop(const CanonicalOper<Complex>& o, Complex base, Complex center, double radius,
                           const std::vector<Complex>& singular, const MonodromyOptions& opt = {});

struct GlobalMonodromy {
  std::vector<MonodromyResult> local;  // one based loop per finite singular point
  MonodromyResult outer;               // circle enclosing every finite singular point
  double composite_distance = 0.0;     // projective distance of (prod local) * outer^{-1}
  nlohmann::json to_json() const;
};

GlobalMonodromy global_monodromy(const CanonicalOper<Complex>& o, const std::vector<Complex>& singular,
                                 const MonodromyOptions& opt = {});

double projective_distance(const std::vector<std::vector<Complex>>& m);

/// A1 oper d/dt + f + (kappa^2 - 1/4)/t^2 e: local exponents 1/2 +- kappa at 0.
CanonicalOper<Complex> a1_control_oper(double kappa);

}  // namespace glab
