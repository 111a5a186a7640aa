#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "glab/hamiltonians.hpp"
#include "glab/repr.hpp"

namespace glab {

struct BetheProblem {
  AlgebraPtr g;
  std::vector<Complex> z;
  std::vector<Weight> lambda;  // dominant integral highest weights, one per point
  Weight chi;                  // regular, in h*
  std::vector<std::size_t> colors;  // simple-root index of each Bethe root

  std::size_t m() const { return colors.size(); }
  /// sum lambda_i - sum alpha_{colors_j}, as Dynkin labels.
  Weight target_weight() const;
  nlohmann::json to_json() const;
};

/// Throws std::invalid_argument on malformed data (coincident points, bad labels, singular chi).
void validate(const BetheProblem& p, const InvariantForm& form);

/// The coloring whose Bethe vectors land in the given weight block; nullopt if the
/// difference to the top weight is not a non-negative root-lattice combination.
std::optional<std::vector<std::size_t>> coloring_for_weight(const SimpleLieAlgebra& g,
                                                            const std::vector<Weight>& lambda, const Weight& target);

struct BetheSolution {
  std::vector<Complex> w;  // w[j] carries colors[j]
  std::vector<double> residual;
  double min_root_separation = 0.0;   // min |w_j - w_s|
  double min_point_separation = 0.0;  // min |w_j - z_i|
  bool degenerate = false;            // singular Jacobian at the solution
  std::size_t class_id = 0;
  nlohmann::json to_json() const;
};

/// Complex left-hand sides F_j(w) of the Bethe equations.
std::vector<Complex> bethe_equations(const BetheProblem& p, const std::vector<Complex>& w);
/// |F_j(w)|. Throws std::invalid_argument if two roots, or a root and a point, are closer than `floor`.
std::vector<double> residual(const BetheProblem& p, const std::vector<Complex>& w, double floor = 1e-8);

struct SolveStrategy {
  std::size_t random_seeds = 48;
  bool homotopy = true;
  std::size_t max_iterations = 200;
  double tol = 1e-10;
  double dedup_radius = 1e-6;
  double separation_floor = 1e-8;
  double collision_radius = 1e-6;  // converged points closer than this (relative) are spurious
  std::size_t expected = 0;        // known number of classes, 0 if unknown
  std::size_t max_random_seeds = 1024;
  std::uint64_t seed = 1;
};

struct SolveReport {
  std::vector<BetheSolution> solutions;
  std::size_t attempts = 0;
  std::size_t converged = 0;
  std::size_t duplicates = 0;
  std::size_t rejected = 0;  // converged onto a collision
  nlohmann::json to_json() const;
};

SolveReport solve(const BetheProblem& p, const SolveStrategy& strategy = {});

/// Sorts w inside each colour group so that equal classes compare equal.
std::vector<Complex> canonical_roots(const BetheProblem& p, const std::vector<Complex>& w);

struct BetheVector {
  Weight weight;
  std::vector<Complex> full;   // coordinates on the whole tensor space
  std::vector<Complex> block;  // coordinates on the target weight block
  std::vector<std::size_t> block_indices;
  double norm = 0.0;
  bool zero = false;
  std::size_t summands = 0;
};

/// Sum over ordered partitions of the roots, one chain per point ending at z_k.
BetheVector bethe_vector(const BetheProblem& p, const TensorSpace& space, const BetheSolution& s);

/// Xi_{i,-chi} restricted to the block of the coloring: the operators whose eigenvectors
/// are the Bethe vectors of the equations above.
std::vector<FloatOperator> hamiltonian_family(const BetheProblem& p, const TensorSpace& space,
                                              const InvariantForm& form);

struct EigenCheck {
  std::vector<Complex> eigenvalues;  // Rayleigh quotient for each operator
  std::vector<double> residuals;     // ||H phi - mu phi|| / ||phi||
  double max_residual = 0.0;
  bool zero_vector = false;
  bool pass = false;
  std::string note;
  nlohmann::json to_json() const;
};

EigenCheck eigen_check(const BetheVector& v, const std::vector<FloatOperator>& ops, double tol = 1e-8);

struct CensusEntry {
  Weight block;
  std::vector<std::size_t> colors;
  std::size_t solution_classes = 0;
  std::size_t block_dimension = 0;
  std::size_t matched_eigenvectors = 0;
  std::size_t zero_vectors = 0;
  bool solver_incomplete = false;
  SolveReport report;
  std::vector<EigenCheck> checks;
  nlohmann::json to_json() const;
};

/// Solves the equations for the coloring of one weight block and checks every Bethe vector
/// against the Hamiltonian family and the exact block spectrum.
CensusEntry census(const BetheProblem& base, const TensorSpace& space, const Weight& block,
                   const InvariantForm& form, const SolveStrategy& strategy = {});

/// "color,w_re,w_im,residual" rows, one per root.
std::string solutions_csv(const BetheProblem& p, const std::vector<BetheSolution>& sols);

}  // namespace glab
