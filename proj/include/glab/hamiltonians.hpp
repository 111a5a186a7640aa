#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "glab/liealg.hpp"
#include "glab/matrix.hpp"
#include "glab/repr.hpp"
#include "glab/uea.hpp"

namespace glab {

/// An operator restricted to one total-weight block of a tensor space.
template <class T>
struct WeightOperator {
  Weight block;
  std::vector<std::size_t> indices;
  DenseMatrix<T> matrix;
  std::string formula;
  nlohmann::json parameters;

  std::size_t dim() const { return indices.size(); }
};

using ExactOperator = WeightOperator<Rational>;
using FloatOperator = WeightOperator<Complex>;

/// Whether m maps every weight block into itself.
template <class T>
bool preserves_blocks(const SparseMatrix<T>& m, const std::vector<Weight>& basis_weights) {
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (const auto& [c, v] : m.row(r))
      if (basis_weights[r] != basis_weights[c]) return false;
  return true;
}

/// Splits an operator on a tensor space into its weight blocks.
/// Throws std::logic_error if the operator mixes blocks.
template <class T>
std::vector<WeightOperator<T>> to_blocks(const SparseMatrix<T>& m, const TensorSpace& space,
                                         const std::string& formula, const nlohmann::json& parameters = {}) {
  if (!preserves_blocks(m, space.basis_weights())) throw std::logic_error(formula + ": operator mixes weight blocks");
  std::vector<WeightOperator<T>> out;
  for (const auto& [w, idx] : space.weight_blocks())
    out.push_back({w, idx, m.restrict(idx, idx), formula, parameters});
  return out;
}

template <class T>
WeightOperator<T> block_of(const SparseMatrix<T>& m, const TensorSpace& space, const Weight& w,
                           const std::string& formula, const nlohmann::json& parameters = {}) {
  const auto& idx = space.weight_blocks().at(w);
  return {w, idx, m.restrict(idx, idx), formula, parameters};
}

/// Omega_{ij} = sum_a J_a^{(i)} J^{a(j)}.
SparseRat split_casimir(const TensorSpace& space, std::size_t i, std::size_t j, const DualBasisPair& duals);

/// Xi_i = sum_{j != i} Omega_{ij} / (z_i - z_j). Throws on coincident points.
template <class T>
SparseMatrix<T> gaudin(const TensorSpace& space, const std::vector<T>& z, std::size_t i, const InvariantForm& form);

/// Xi_{i,chi} = Xi_i + chi^{(i)}, chi in h* moved to h through the form.
template <class T>
SparseMatrix<T> gaudin_shifted(const TensorSpace& space, const std::vector<T>& z, const Weight& chi, std::size_t i,
                               const InvariantForm& form);

/// C_alpha = ((alpha, alpha) / 2) (e_alpha f_alpha + f_alpha e_alpha) from generator matrices.
SparseRat truncated_casimir(const SimpleLieAlgebra& g, const std::vector<SparseRat>& generators, std::size_t root,
                            const InvariantForm& form);

/// Positive root index with alpha(chi) = 0, if any.
std::optional<std::size_t> singular_root(const SimpleLieAlgebra& g, const InvariantForm& form, const Weight& chi);

/// T_gamma(chi) = sum_alpha (alpha,gamma)(alpha,alpha)/(alpha,chi) (e_alpha f_alpha + f_alpha e_alpha)/2.
/// gamma, chi in h* ~ h. Throws std::invalid_argument naming the root when chi is not regular.
SparseRat dmt(const SimpleLieAlgebra& g, const std::vector<SparseRat>& generators, const Weight& gamma,
              const Weight& chi, const InvariantForm& form);
SparseRat dmt(const Module& v, const Weight& gamma, const Weight& chi, const InvariantForm& form);
/// DMT operator of the diagonal action on a tensor product.
SparseRat dmt_diagonal(const TensorSpace& space, const Weight& gamma, const Weight& chi, const InvariantForm& form);

/// The same Hamiltonians as elements of U(g)^{(x)N}, for symbol and quantization checks.
UElement gaudin_shifted_element(const Enveloping& u, const std::vector<Rational>& z, const Weight& chi, std::size_t i,
                                const InvariantForm& form);
UElement dmt_element(const Enveloping& u, const Weight& gamma, const Weight& chi, const InvariantForm& form);

struct CommutatorResidual {
  bool exact = false;
  bool zero = false;
  double norm = 0.0;  // max |entry| of AB - BA
  nlohmann::json to_json() const;
};

/// Throws std::invalid_argument when the operators live on different blocks.
template <class T>
CommutatorResidual commutator_residual(const WeightOperator<T>& a, const WeightOperator<T>& b) {
  if (a.block != b.block || a.indices != b.indices) throw std::invalid_argument("commutator_residual: block mismatch");
  auto c = commutator(a.matrix, b.matrix);
  CommutatorResidual r;
  r.exact = std::is_same_v<T, Rational>;
  r.norm = c.max_abs();
  r.zero = c.is_zero_matrix();
  return r;
}

template <class T>
CommutatorResidual commutator_residual(const SparseMatrix<T>& a, const SparseMatrix<T>& b) {
  auto c = commutator(a, b);
  CommutatorResidual r;
  r.exact = std::is_same_v<T, Rational>;
  r.norm = c.max_abs();
  r.zero = c.is_zero_matrix();
  return r;
}

/// Symmetrization quantization of a polynomial on (g*)^N.
UElement symmetrize_quantize(const Enveloping& u, const Polynomial& p);

struct SpectralData {
  std::vector<Complex> eigenvalues;
  std::vector<std::size_t> multiplicities;
  double residual = 0.0;  // max_k ||A v_k - lambda_k v_k||
  nlohmann::json to_json() const;
};

/// Dense eigensolver on a block; eigenvalues within `cluster_tol` (relative) are merged.
/// Blocks above 512 are rejected.
template <class T>
SpectralData spectrum(const WeightOperator<T>& op, double cluster_tol = 1e-8);
SpectralData spectrum(const DenseMatrix<Complex>& m, double cluster_tol = 1e-8);

template <class T>
DenseMatrix<Complex> to_complex_matrix(const DenseMatrix<T>& m) {
  DenseMatrix<Complex> out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = to_complex(m(i, j));
  return out;
}

template <class T>
nlohmann::json block_report(const WeightOperator<T>& op, const std::vector<CommutatorResidual>& residuals,
                            bool with_spectrum);

}  // namespace glab
