#include "glab/hamiltonians.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <stdexcept>

namespace glab {

SparseRat split_casimir(const TensorSpace& space, std::size_t i, std::size_t j, const DualBasisPair& duals) {
  const std::size_t d = space.algebra()->dim();
  SparseRat out(space.dim(), space.dim());
  for (std::size_t a = 0; a < d; ++a) out = out + space.site_generator(i, a) * space.site_action(j, duals.dual[a]);
  return out;
}

namespace {

template <class T>
void check_points(const std::vector<T>& z, std::size_t sites) {
  if (z.size() != sites) throw std::invalid_argument("gaudin: need one point per site");
  for (std::size_t a = 0; a < z.size(); ++a)
    for (std::size_t b = a + 1; b < z.size(); ++b)
      if (is_zero(T(z[a] - z[b]))) throw std::invalid_argument("gaudin: coincident points");
}

}  // namespace

template <class T>
SparseMatrix<T> gaudin(const TensorSpace& space, const std::vector<T>& z, std::size_t i, const InvariantForm& form) {
  check_points(z, space.sites());
  if (i >= space.sites()) throw std::out_of_range("gaudin: site out of range");
  auto duals = dual_bases(*space.algebra(), form);
  SparseMatrix<T> out(space.dim(), space.dim());
  for (std::size_t j = 0; j < space.sites(); ++j) {
    if (j == i) continue;
    out.add_scaled(split_casimir(space, i, j, duals).template cast<T>(), T(1) / T(z[i] - z[j]));
  }
  return out;
}

template <class T>
SparseMatrix<T> gaudin_shifted(const TensorSpace& space, const std::vector<T>& z, const Weight& chi, std::size_t i,
                               const InvariantForm& form) {
  auto out = gaudin(space, z, i, form);
  Vec h = cartan_element(*space.algebra(), form, chi);
  out.add_scaled(space.site_action(i, h).template cast<T>(), T(1));
  return out;
}

template SparseMatrix<Rational> gaudin(const TensorSpace&, const std::vector<Rational>&, std::size_t,
                                       const InvariantForm&);
template SparseMatrix<Complex> gaudin(const TensorSpace&, const std::vector<Complex>&, std::size_t,
                                      const InvariantForm&);
template SparseMatrix<Rational> gaudin_shifted(const TensorSpace&, const std::vector<Rational>&, const Weight&,
                                               std::size_t, const InvariantForm&);
template SparseMatrix<Complex> gaudin_shifted(const TensorSpace&, const std::vector<Complex>&, const Weight&,
                                              std::size_t, const InvariantForm&);

SparseRat truncated_casimir(const SimpleLieAlgebra& g, const std::vector<SparseRat>& generators, std::size_t root,
                            const InvariantForm& form) {
  Weight a = g.root_weight(g.positive_roots().at(root).coeffs);
  const auto& e = generators[g.e_index(root)];
  const auto& f = generators[g.f_index(root)];
  return (e * f + f * e).scaled(weight_pairing(g, form, a, a) / 2);
}

std::optional<std::size_t> singular_root(const SimpleLieAlgebra& g, const InvariantForm& form, const Weight& chi) {
  for (std::size_t r = 0; r < g.num_positive_roots(); ++r)
    if (is_zero(weight_pairing(g, form, g.root_weight(g.positive_roots()[r].coeffs), chi))) return r;
  return std::nullopt;
}

namespace {

void require_regular(const SimpleLieAlgebra& g, const InvariantForm& form, const Weight& chi) {
  if (auto r = singular_root(g, form, chi)) {
    std::string coeffs;
    for (int c : g.positive_roots()[*r].coeffs) coeffs += (coeffs.empty() ? "" : ",") + std::to_string(c);
    throw std::invalid_argument("chi is not regular: alpha(chi) = 0 for the root (" + coeffs + ")");
  }
}

Rational dmt_coefficient(const SimpleLieAlgebra& g, const InvariantForm& form, std::size_t r, const Weight& gamma,
                         const Weight& chi) {
  Weight a = g.root_weight(g.positive_roots()[r].coeffs);
  return weight_pairing(g, form, a, gamma) * weight_pairing(g, form, a, a) / weight_pairing(g, form, a, chi);
}

}  // namespace

SparseRat dmt(const SimpleLieAlgebra& g, const std::vector<SparseRat>& generators, const Weight& gamma,
              const Weight& chi, const InvariantForm& form) {
  require_regular(g, form, chi);
  const std::size_t n = generators.front().rows();
  SparseRat out(n, n);
  for (std::size_t r = 0; r < g.num_positive_roots(); ++r) {
    Rational c = dmt_coefficient(g, form, r, gamma, chi);
    if (is_zero(c)) continue;
    const auto& e = generators[g.e_index(r)];
    const auto& f = generators[g.f_index(r)];
    out.add_scaled(e * f + f * e, c / 2);
  }
  return out;
}

SparseRat dmt(const Module& v, const Weight& gamma, const Weight& chi, const InvariantForm& form) {
  return dmt(*v.algebra, v.generators, gamma, chi, form);
}

SparseRat dmt_diagonal(const TensorSpace& space, const Weight& gamma, const Weight& chi, const InvariantForm& form) {
  const auto& g = *space.algebra();
  std::vector<SparseRat> diag;
  for (std::size_t a = 0; a < g.dim(); ++a) diag.push_back(space.diagonal_action(g.basis_vector(a)));
  return dmt(g, diag, gamma, chi, form);
}

UElement gaudin_shifted_element(const Enveloping& u, const std::vector<Rational>& z, const Weight& chi, std::size_t i,
                                const InvariantForm& form) {
  check_points(z, u.sites());
  const auto& g = u.algebra();
  auto duals = dual_bases(g, form);
  UElement raw;
  for (std::size_t j = 0; j < u.sites(); ++j) {
    if (j == i) continue;
    Rational w = Rational(1) / (z[i] - z[j]);
    for (std::size_t a = 0; a < g.dim(); ++a)
      for (std::size_t b = 0; b < g.dim(); ++b) {
        if (is_zero(duals.dual[a][b])) continue;
        Word word{static_cast<std::uint16_t>(u.generator(i, a)), static_cast<std::uint16_t>(u.generator(j, b))};
        raw[word] += w * duals.dual[a][b];
      }
  }
  raw = u.add(raw, u.linear(i, cartan_element(g, form, chi)));
  return u.normal_order(raw);
}

UElement dmt_element(const Enveloping& u, const Weight& gamma, const Weight& chi, const InvariantForm& form) {
  const auto& g = u.algebra();
  require_regular(g, form, chi);
  UElement raw;
  for (std::size_t r = 0; r < g.num_positive_roots(); ++r) {
    Rational c = dmt_coefficient(g, form, r, gamma, chi) / 2;
    if (is_zero(c)) continue;
    auto e = static_cast<std::uint16_t>(g.e_index(r)), f = static_cast<std::uint16_t>(g.f_index(r));
    raw[Word{e, f}] += c;
    raw[Word{f, e}] += c;
  }
  return u.normal_order(raw);
}

nlohmann::json CommutatorResidual::to_json() const {
  return {{"exact", exact}, {"zero", zero}, {"max_abs", norm}};
}

UElement symmetrize_quantize(const Enveloping& u, const Polynomial& p) { return u.symmetrize(p); }

SpectralData spectrum(const DenseMatrix<Complex>& m, double cluster_tol) {
  const auto n = static_cast<Eigen::Index>(m.rows());
  if (m.rows() > 512) throw std::invalid_argument("spectrum: block larger than 512");
  SpectralData out;
  if (n == 0) return out;
  Eigen::MatrixXcd a(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) a(i, j) = m(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(a);
  if (es.info() != Eigen::Success) throw std::runtime_error("spectrum: eigensolver failed");
  std::vector<Complex> ev(es.eigenvalues().data(), es.eigenvalues().data() + n);
  for (Eigen::Index k = 0; k < n; ++k) {
    Eigen::VectorXcd v = es.eigenvectors().col(k);
    out.residual = std::max(out.residual, (a * v - es.eigenvalues()[k] * v).norm() / std::max(v.norm(), 1e-300));
  }
  std::sort(ev.begin(), ev.end(), ScalarLess{});
  std::vector<bool> used(ev.size(), false);
  for (std::size_t k = 0; k < ev.size(); ++k) {
    if (used[k]) continue;
    std::size_t mult = 0;
    Complex sum = 0;
    for (std::size_t l = k; l < ev.size(); ++l)
      if (!used[l] && std::abs(ev[l] - ev[k]) <= cluster_tol * std::max(1.0, std::abs(ev[k]))) {
        used[l] = true;
        sum += ev[l];
        ++mult;
      }
    out.eigenvalues.push_back(sum / static_cast<double>(mult));
    out.multiplicities.push_back(mult);
  }
  return out;
}

template <class T>
SpectralData spectrum(const WeightOperator<T>& op, double cluster_tol) {
  return spectrum(to_complex_matrix(op.matrix), cluster_tol);
}

template SpectralData spectrum(const WeightOperator<Rational>&, double);
template SpectralData spectrum(const WeightOperator<Complex>&, double);

nlohmann::json SpectralData::to_json() const {
  nlohmann::json ev = nlohmann::json::array();
  for (std::size_t k = 0; k < eigenvalues.size(); ++k)
    ev.push_back({{"re", eigenvalues[k].real()}, {"im", eigenvalues[k].imag()}, {"multiplicity", multiplicities[k]}});
  return {{"eigenvalues", ev}, {"residual", residual}};
}

template <class T>
nlohmann::json block_report(const WeightOperator<T>& op, const std::vector<CommutatorResidual>& residuals,
                            bool with_spectrum) {
  nlohmann::json j;
  j["formula"] = op.formula;
  j["parameters"] = op.parameters;
  std::vector<std::string> w;
  for (const auto& q : op.block) w.push_back(to_string(q));
  j["block_weight"] = w;
  j["dim"] = op.dim();
  nlohmann::json res = nlohmann::json::array();
  for (const auto& r : residuals) res.push_back(r.to_json());
  j["commutator_residuals"] = res;
  j["spectrum"] = with_spectrum ? spectrum(op).to_json() : nlohmann::json();
  return j;
}

template nlohmann::json block_report(const WeightOperator<Rational>&, const std::vector<CommutatorResidual>&, bool);
template nlohmann::json block_report(const WeightOperator<Complex>&, const std::vector<CommutatorResidual>&, bool);

}  // namespace glab
