#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "glab/liealg.hpp"
#include "glab/matrix.hpp"
#include "glab/polynomial.hpp"

namespace glab {

/// Generator id = site * dim(g) + basis index.
using Word = std::vector<std::uint16_t>;
using UElement = std::map<Word, Rational>;

/// U(g)^{(x)N} with a PBW normal ordering: sites ascending, and inside a site
/// f's, then h's, then e's (each in basis order). Putting the lowering operators on
/// the left makes the ordered form directly readable on highest-weight vectors.
class Enveloping {
 public:
  explicit Enveloping(AlgebraPtr g, std::size_t sites = 1);

  const SimpleLieAlgebra& algebra() const { return *g_; }
  AlgebraPtr algebra_ptr() const { return g_; }
  std::size_t sites() const { return sites_; }
  std::size_t num_generators() const { return sites_ * g_->dim(); }
  std::size_t generator(std::size_t site, std::size_t a) const { return site * g_->dim() + a; }
  int order_key(std::uint16_t gen) const { return key_[gen]; }

  static UElement scalar(const Rational& c);
  /// Linear element sum_a x_a J_a^{(site)}.
  UElement linear(std::size_t site, const Vec& x) const;

  UElement normal_order(const UElement& x) const;
  UElement multiply(const UElement& x, const UElement& y) const;
  UElement add(const UElement& x, const UElement& y, const Rational& s = 1) const;
  UElement commutator(const UElement& x, const UElement& y) const;

  /// Highest PBW degree present (-1 for zero).
  static int degree(const UElement& x);

  /// Top-degree component of a normal-ordered element, as a polynomial on (g*)^N.
  Polynomial symbol(const UElement& x) const;
  /// Symmetrization map S(g) -> U(g), normal ordered.
  UElement symmetrize(const Polynomial& p) const;
  /// Polynomial P with symmetrize(P) = x (exists and is unique for every x).
  Polynomial unsymmetrize(const UElement& x) const;

  /// Operator of x given the matrix of every generator id.
  template <class T>
  SparseMatrix<T> represent(const UElement& x, const std::vector<SparseMatrix<T>>& gens, std::size_t dim) const {
    SparseMatrix<T> out(dim, dim);
    for (const auto& [w, c] : x) {
      SparseMatrix<T> term = SparseMatrix<T>::identity(dim);
      for (auto it = w.rbegin(); it != w.rend(); ++it) term = gens[*it] * term;
      out.add_scaled(term, from_rational<T>(c));
    }
    return out;
  }

 private:
  void bracket_into(std::uint16_t a, std::uint16_t b, std::vector<std::pair<std::uint16_t, Rational>>& out) const;
  Polynomial commutative_image(const UElement& x, int only_degree) const;

  AlgebraPtr g_;
  std::size_t sites_;
  std::vector<int> key_;
};

}  // namespace glab
