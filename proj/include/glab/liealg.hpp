#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "glab/matrix.hpp"
#include "glab/scalar.hpp"

namespace glab {

/// Element of g (or of h*, g*) written in a fixed basis.
using Vec = std::vector<Rational>;
using SparseVec = std::vector<std::pair<std::size_t, Rational>>;

/// A weight or root recorded by its pairings <., alpha_i^vee> with the simple coroots.
using Weight = std::vector<Rational>;

struct Root {
  std::vector<int> coeffs;  // coordinates in the simple roots
  int height = 0;
};

/// Simple Lie algebra with a Chevalley basis ordered as
///   h_1..h_l, e_alpha (height, then lex with larger coordinates first), f_alpha (same order).
/// Immutable after construction.
class SimpleLieAlgebra {
 public:
  /// Builds the algebra from a Cartan-type label such as "A2".
  /// Throws std::invalid_argument for unsupported labels.
  static std::shared_ptr<const SimpleLieAlgebra> from_type(const std::string& label);

  const std::string& label() const { return label_; }
  char series() const { return series_; }
  std::size_t rank() const { return rank_; }
  std::size_t dim() const { return labels_.size(); }
  std::size_t num_positive_roots() const { return positive_roots_.size(); }

  /// cartan(i, j) = <alpha_i^vee, alpha_j>.
  int cartan(std::size_t i, std::size_t j) const { return cartan_[i][j]; }
  const std::vector<std::vector<int>>& cartan_matrix() const { return cartan_; }
  const std::vector<Root>& positive_roots() const { return positive_roots_; }
  const std::vector<int>& exponents() const { return exponents_; }
  const std::vector<std::string>& basis_labels() const { return labels_; }

  std::size_t h_index(std::size_t i) const { return i; }
  std::size_t e_index(std::size_t root) const { return rank_ + root; }
  std::size_t f_index(std::size_t root) const { return rank_ + positive_roots_.size() + root; }
  /// Index of the positive root for simple root i.
  std::size_t simple_root_index(std::size_t i) const { return simple_root_index_[i]; }
  std::optional<std::size_t> find_positive_root(const std::vector<int>& coeffs) const;

  /// Root-lattice degree of each basis element (zero vector for the Cartan part).
  const std::vector<int>& basis_root_coeffs(std::size_t a) const { return basis_roots_[a]; }
  /// Principal degree (height) of each basis element.
  int principal_degree(std::size_t a) const;

  /// Dynkin labels <alpha_i^vee, alpha> of a root given in simple-root coordinates.
  Weight root_weight(const std::vector<int>& coeffs) const;

  /// Structure constants: [J_a, J_b] as a sparse combination of basis elements.
  const SparseVec& bracket_basis(std::size_t a, std::size_t b) const { return brackets_[a][b]; }
  Vec bracket(const Vec& x, const Vec& y) const;
  /// Matrix of ad x in the Chevalley basis (column = image of basis element).
  RatMatrix ad(const Vec& x) const;

  Vec basis_vector(std::size_t a) const;

  /// Defining representation matrices for type A (empty otherwise).
  const std::vector<RatMatrix>& defining_matrices() const { return defining_; }
  bool has_defining_representation() const { return !defining_.empty(); }
  std::size_t defining_dim() const { return defining_.empty() ? 0 : defining_[0].rows(); }
  /// Element of g from a matrix in the defining representation (type A only).
  Vec from_defining(const RatMatrix& m) const;
  RatMatrix to_defining(const Vec& x) const;

  /// Weyl dimension formula for the irreducible module with the given dominant labels.
  Rational weyl_dimension(const std::vector<int>& labels) const;

  nlohmann::json to_json() const;

 private:
  SimpleLieAlgebra() = default;
  void build_type_a(std::size_t rank);

  std::string label_;
  char series_ = 'A';
  std::size_t rank_ = 0;
  std::vector<std::vector<int>> cartan_;
  std::vector<Root> positive_roots_;
  std::vector<std::size_t> simple_root_index_;
  std::vector<int> exponents_;
  std::vector<std::string> labels_;
  std::vector<std::vector<int>> basis_roots_;
  std::vector<std::vector<SparseVec>> brackets_;
  std::vector<RatMatrix> defining_;
};

using AlgebraPtr = std::shared_ptr<const SimpleLieAlgebra>;

enum class FormNormalization { Standard, Critical };

/// Nondegenerate invariant symmetric form on g. The standard normalization gives
/// long roots squared length 2 (the trace form of the defining representation in type A).
struct InvariantForm {
  RatMatrix gram;
  FormNormalization normalization = FormNormalization::Standard;

  Rational operator()(const Vec& x, const Vec& y) const;
};

InvariantForm standard_form(const SimpleLieAlgebra& g);
/// kappa_c(A, B) = -1/2 Tr(ad A ad B) = -h^vee * standard form.
InvariantForm critical_form(const SimpleLieAlgebra& g);
RatMatrix killing_form(const SimpleLieAlgebra& g);
Rational dual_coxeter_number(const SimpleLieAlgebra& g);

struct DualBasisPair {
  std::size_t dim = 0;
  /// dual[a] is J^a written in the basis J_b, with kappa(J_a, J^b) = delta_ab.
  std::vector<Vec> dual;
};

/// Throws std::invalid_argument if the form is singular.
DualBasisPair dual_bases(const SimpleLieAlgebra& g, const InvariantForm& form);

/// Identification h* -> h through the form: returns H with kappa(H, h_i) = lambda(h_i).
Vec cartan_element(const SimpleLieAlgebra& g, const InvariantForm& form, const Weight& lambda);
/// Induced inner product on h* for weights given by Dynkin labels.
Rational weight_pairing(const SimpleLieAlgebra& g, const InvariantForm& form, const Weight& a, const Weight& b);
/// lambda(x) for lambda in h* extended by zero on the root spaces.
Rational evaluate_weight(const SimpleLieAlgebra& g, const Weight& lambda, const Vec& x);

Weight rho(const SimpleLieAlgebra& g);

struct PrincipalData {
  Vec p_minus1;
  Vec two_rho_check;
  Vec p_1;
  /// Generators p_j of the ad p_1-invariants in n, one per exponent, ordered as exponents().
  std::vector<Vec> canonical;
  std::vector<int> canonical_degrees;
  /// dim g_d for d = -(h-1) .. (h-1), stored with offset h-1.
  std::vector<std::size_t> gradation_dims;
  int coxeter_number = 0;
};

PrincipalData principal_data(const SimpleLieAlgebra& g);

struct Sl2Triple {
  Vec e, f, h;
};

/// Chevalley sl2-triple for a positive root; throws if the coordinates are not a positive root.
Sl2Triple sl2_triple_for_root(const SimpleLieAlgebra& g, const std::vector<int>& root_coeffs);

bool is_regular(const SimpleLieAlgebra& g, const Vec& x);

}  // namespace glab
