#pragma once

#include <map>
#include <memory>
#include <vector>

#include <json.hpp>

#include "glab/liealg.hpp"
#include "glab/matrix.hpp"
#include "glab/uea.hpp"

namespace glab {

/// Finite-dimensional module in a weight basis with exact generator matrices.
struct Module {
  AlgebraPtr algebra;
  Weight highest_weight;
  /// Dynkin labels of each basis vector; the highest-weight vector is basis vector 0.
  std::vector<Weight> weights;
  /// One matrix per Chevalley basis element (column j = image of basis vector j).
  std::vector<SparseRat> generators;

  std::size_t dim() const { return weights.size(); }
  SparseRat action(const Vec& x) const;
  std::map<Weight, std::vector<std::size_t>> weight_spaces() const;
  nlohmann::json to_json() const;
};

using ModulePtr = std::shared_ptr<const Module>;

/// Irreducible module V_lambda for integral dominant Dynkin labels. Built level by
/// level from the top as a quotient of the Verma module by the Shapovalov radical.
/// Throws std::invalid_argument for non-integral or non-dominant labels.
ModulePtr build_irrep(AlgebraPtr g, const Weight& lambda);
ModulePtr build_irrep(AlgebraPtr g, const std::vector<int>& labels);

/// Verma module M_lambda cut off at a maximal depth (height of lambda - mu).
class VermaTruncation {
 public:
  VermaTruncation(AlgebraPtr g, Weight lambda, int depth);

  const Weight& highest_weight() const { return lambda_; }
  int depth() const { return depth_; }
  /// PBW monomials f_{a_1} ... f_{a_k} v (generator ids, PBW order) per depth coordinate vector.
  const std::map<std::vector<int>, std::vector<Word>>& basis() const { return basis_; }
  std::size_t weight_space_dim(const std::vector<int>& coords) const;
  Weight weight_of(const std::vector<int>& coords) const;

  /// Image of a PBW monomial under an element of U(n_-) + U(g) in PBW form, read on v_lambda.
  /// Monomials beyond the cutoff are dropped and reported through `truncated`.
  std::map<Word, Rational> act(const UElement& x, const Word& monomial, bool* truncated = nullptr) const;
  /// Shapovalov Gram matrix <f_I v, f_J v> on one weight space (Chevalley anti-involution).
  RatMatrix shapovalov(const std::vector<int>& coords) const;

 private:
  std::map<Word, Rational> read_on_highest(const UElement& normal) const;

  AlgebraPtr g_;
  Weight lambda_;
  int depth_;
  Enveloping u_;
  std::map<std::vector<int>, std::vector<Word>> basis_;
};

/// Kostant partition function: number of ways to write sum k_i alpha_i as a sum of positive roots.
std::size_t kostant_partition(const SimpleLieAlgebra& g, const std::vector<int>& coords);

/// Tensor product of modules, factor 0 most significant in the basis order.
class TensorSpace {
 public:
  explicit TensorSpace(std::vector<ModulePtr> factors);

  AlgebraPtr algebra() const { return factors_.front()->algebra; }
  std::size_t sites() const { return factors_.size(); }
  std::size_t dim() const { return dim_; }
  const Module& factor(std::size_t i) const { return *factors_.at(i); }

  /// J_a acting on one site.
  const SparseRat& site_generator(std::size_t site, std::size_t a) const;
  SparseRat site_action(std::size_t site, const Vec& x) const;
  SparseRat diagonal_action(const Vec& x) const;
  /// Matrices of all generator ids site * dim(g) + a, for Enveloping::represent.
  const std::vector<SparseRat>& generator_table() const { return table_; }

  const std::vector<Weight>& basis_weights() const { return weights_; }
  /// Total-weight blocks, keyed by Dynkin labels.
  const std::map<Weight, std::vector<std::size_t>>& weight_blocks() const { return blocks_; }
  /// Basis index of the tensor product of factor basis vectors.
  std::size_t index(const std::vector<std::size_t>& local) const;
  std::vector<std::size_t> local_indices(std::size_t index) const;

  template <class T>
  std::vector<T> act_site(std::size_t site, const Vec& x, const std::vector<T>& v) const {
    return site_action(site, x).template cast<T>().apply(v);
  }
  template <class T>
  std::vector<T> act_diagonal(const Vec& x, const std::vector<T>& v) const {
    return diagonal_action(x).template cast<T>().apply(v);
  }

 private:
  std::vector<ModulePtr> factors_;
  std::size_t dim_ = 1;
  std::vector<SparseRat> table_;
  std::vector<Weight> weights_;
  std::map<Weight, std::vector<std::size_t>> blocks_;
};

nlohmann::json sparse_to_json(const SparseRat& m);

}  // namespace glab
