#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "glab/scalar.hpp"

namespace glab {

/// Packed exponent vector: 4 bits per variable, at most 32 variables.
using Monomial = unsigned __int128;

struct MonomialHash {
  std::size_t operator()(Monomial m) const {
    auto lo = static_cast<std::uint64_t>(m);
    auto hi = static_cast<std::uint64_t>(m >> 64);
    return std::hash<std::uint64_t>{}(lo ^ (hi * 0x9e3779b97f4a7c15ULL));
  }
};

/// Sparse multivariate polynomial with exact rational coefficients.
/// Variables of a multi-site phase space (g*)^N are numbered site * dim(g) + a.
class Polynomial {
 public:
  static constexpr std::size_t kMaxVars = 32;
  static constexpr unsigned kMaxExponent = 15;

  Polynomial() = default;
  explicit Polynomial(std::size_t nvars);
  static Polynomial constant(std::size_t nvars, const Rational& c);
  static Polynomial variable(std::size_t nvars, std::size_t var, const Rational& coeff = 1);

  std::size_t nvars() const { return nvars_; }
  const std::unordered_map<Monomial, Rational, MonomialHash>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  int degree() const;
  Polynomial homogeneous_part(int d) const;

  static unsigned exponent(Monomial m, std::size_t var) { return static_cast<unsigned>((m >> (4 * var)) & 15); }
  static unsigned total_degree(Monomial m);
  static Monomial unit(std::size_t var) { return Monomial(1) << (4 * var); }
  std::vector<unsigned> exponents(Monomial m) const;

  void add_term(Monomial m, const Rational& c);

  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(const Rational& s);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, const Rational& s) { return a *= s; }
  friend Polynomial operator*(const Rational& s, Polynomial a) { return a *= s; }
  Polynomial operator*(const Polynomial& o) const;
  Polynomial operator-() const { return (*this) * Rational(-1); }

  bool operator==(const Polynomial& o) const;
  bool operator!=(const Polynomial& o) const { return !(*this == o); }

  Polynomial derivative(std::size_t var) const;
  /// D_v P(x) = d/du P(x + u v) at u = 0.
  Polynomial directional_derivative(const std::vector<Rational>& direction) const;
  Rational evaluate(const std::vector<Rational>& point) const;
  std::vector<Rational> gradient(const std::vector<Rational>& point) const;

  /// Coefficients of the variables in a homogeneous linear polynomial.
  std::vector<Rational> linear_coefficients() const;

  /// Deterministic [(exponents, "p/q")] listing sorted by monomial.
  nlohmann::json to_json() const;
  std::string to_string(const std::vector<std::string>& names) const;

 private:
  void unify(const Polynomial& o);

  std::size_t nvars_ = 0;
  std::unordered_map<Monomial, Rational, MonomialHash> terms_;
};

inline bool is_zero(const Polynomial& p) { return p.is_zero(); }
inline double magnitude(const Polynomial& p) {
  double m = 0.0;
  for (const auto& [mono, c] : p.terms()) m = std::max(m, magnitude(c));
  return m;
}

/// Relabels variables of a single-site polynomial onto one site of (g*)^N.
Polynomial embed_site(const Polynomial& p, std::size_t site, std::size_t sites);

}  // namespace glab
