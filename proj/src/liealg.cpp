#include "glab/liealg.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace glab {

namespace {

SparseVec to_sparse(const Vec& v) {
  SparseVec out;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (!is_zero(v[i])) out.push_back({i, v[i]});
  return out;
}

}  // namespace

std::shared_ptr<const SimpleLieAlgebra> SimpleLieAlgebra::from_type(const std::string& label) {
  if (label.size() < 2) throw std::invalid_argument("unsupported algebra label: " + label);
  char series = label[0];
  std::size_t rank = 0;
  try {
    std::size_t used = 0;
    int r = std::stoi(label.substr(1), &used);
    if (used != label.size() - 1 || r < 1) throw std::invalid_argument("rank");
    rank = static_cast<std::size_t>(r);
  } catch (const std::exception&) {
    throw std::invalid_argument("unsupported algebra label: " + label);
  }
  if (series != 'A' || rank > 8)
    throw std::invalid_argument("unsupported algebra label: " + label + " (type A_l, l <= 8, is available)");
  auto g = std::shared_ptr<SimpleLieAlgebra>(new SimpleLieAlgebra());
  g->label_ = label;
  g->series_ = series;
  g->build_type_a(rank);
  return g;
}

void SimpleLieAlgebra::build_type_a(std::size_t rank) {
  rank_ = rank;
  const std::size_t n = rank + 1;
  cartan_.assign(rank, std::vector<int>(rank, 0));
  for (std::size_t i = 0; i < rank; ++i) {
    cartan_[i][i] = 2;
    if (i + 1 < rank) cartan_[i][i + 1] = cartan_[i + 1][i] = -1;
  }
  exponents_.resize(rank);
  std::iota(exponents_.begin(), exponents_.end(), 1);

  // Positive roots eps_i - eps_j, i < j, i.e. alpha_i + ... + alpha_{j-1}.
  struct Pair {
    std::size_t i, j;
    Root root;
  };
  std::vector<Pair> pairs;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      Root r;
      r.coeffs.assign(rank, 0);
      for (std::size_t k = i; k < j; ++k) r.coeffs[k] = 1;
      r.height = static_cast<int>(j - i);
      pairs.push_back({i, j, r});
    }
  std::sort(pairs.begin(), pairs.end(), [](const Pair& a, const Pair& b) {
    if (a.root.height != b.root.height) return a.root.height < b.root.height;
    return a.root.coeffs > b.root.coeffs;
  });
  for (const auto& p : pairs) positive_roots_.push_back(p.root);
  simple_root_index_.resize(rank);
  for (std::size_t k = 0; k < positive_roots_.size(); ++k)
    if (positive_roots_[k].height == 1) {
      auto it = std::find(positive_roots_[k].coeffs.begin(), positive_roots_[k].coeffs.end(), 1);
      simple_root_index_[static_cast<std::size_t>(it - positive_roots_[k].coeffs.begin())] = k;
    }

  const std::size_t npos = positive_roots_.size();
  const std::size_t dimension = rank + 2 * npos;
  labels_.resize(dimension);
  basis_roots_.assign(dimension, std::vector<int>(rank, 0));
  defining_.assign(dimension, RatMatrix(n, n));
  for (std::size_t i = 0; i < rank; ++i) {
    labels_[i] = "h" + std::to_string(i + 1);
    defining_[i](i, i) = 1;
    defining_[i](i + 1, i + 1) = -1;
  }
  for (std::size_t k = 0; k < npos; ++k) {
    const auto& p = pairs[k];
    std::string tag = std::to_string(p.i + 1) + std::to_string(p.j + 1);
    labels_[e_index(k)] = "e" + tag;
    labels_[f_index(k)] = "f" + tag;
    basis_roots_[e_index(k)] = p.root.coeffs;
    basis_roots_[f_index(k)] = p.root.coeffs;
    for (auto& c : basis_roots_[f_index(k)]) c = -c;
    defining_[e_index(k)](p.i, p.j) = 1;
    defining_[f_index(k)](p.j, p.i) = 1;
  }

  brackets_.assign(dimension, std::vector<SparseVec>(dimension));
  for (std::size_t a = 0; a < dimension; ++a)
    for (std::size_t b = 0; b < dimension; ++b)
      brackets_[a][b] = to_sparse(from_defining(commutator(defining_[a], defining_[b])));
}

Vec SimpleLieAlgebra::from_defining(const RatMatrix& m) const {
  const std::size_t n = rank_ + 1;
  if (m.rows() != n || m.cols() != n) throw std::invalid_argument("from_defining: wrong matrix size");
  Vec x(dim(), Rational(0));
  Rational trace = 0;
  for (std::size_t i = 0; i < n; ++i) trace += m(i, i);
  if (!is_zero(trace)) throw std::invalid_argument("from_defining: matrix is not traceless");
  // diag(d) = sum c_i (E_ii - E_{i+1,i+1}) gives c_i = d_1 + ... + d_i.
  Rational partial = 0;
  for (std::size_t i = 0; i < rank_; ++i) {
    partial += m(i, i);
    x[i] = partial;
  }
  for (std::size_t k = 0; k < positive_roots_.size(); ++k) {
    // Locate the matrix unit through the defining matrices.
    const auto& e = defining_[e_index(k)];
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (!is_zero(e(i, j))) {
          x[e_index(k)] = m(i, j);
          x[f_index(k)] = m(j, i);
        }
  }
  return x;
}

RatMatrix SimpleLieAlgebra::to_defining(const Vec& x) const {
  const std::size_t n = defining_dim();
  RatMatrix out(n, n);
  for (std::size_t a = 0; a < dim(); ++a)
    if (!is_zero(x[a])) out += x[a] * defining_[a];
  return out;
}

std::optional<std::size_t> SimpleLieAlgebra::find_positive_root(const std::vector<int>& coeffs) const {
  for (std::size_t k = 0; k < positive_roots_.size(); ++k)
    if (positive_roots_[k].coeffs == coeffs) return k;
  return std::nullopt;
}

int SimpleLieAlgebra::principal_degree(std::size_t a) const {
  const auto& c = basis_roots_[a];
  return std::accumulate(c.begin(), c.end(), 0);
}

Weight SimpleLieAlgebra::root_weight(const std::vector<int>& coeffs) const {
  Weight w(rank_, Rational(0));
  for (std::size_t i = 0; i < rank_; ++i)
    for (std::size_t j = 0; j < rank_; ++j) w[i] += cartan_[i][j] * coeffs[j];
  return w;
}

Vec SimpleLieAlgebra::bracket(const Vec& x, const Vec& y) const {
  Vec out(dim(), Rational(0));
  for (std::size_t a = 0; a < dim(); ++a) {
    if (is_zero(x[a])) continue;
    for (std::size_t b = 0; b < dim(); ++b) {
      if (is_zero(y[b])) continue;
      Rational s = x[a] * y[b];
      for (const auto& [c, v] : brackets_[a][b]) out[c] += s * v;
    }
  }
  return out;
}

RatMatrix SimpleLieAlgebra::ad(const Vec& x) const {
  RatMatrix m(dim(), dim());
  for (std::size_t b = 0; b < dim(); ++b) {
    Vec col = bracket(x, basis_vector(b));
    for (std::size_t c = 0; c < dim(); ++c) m(c, b) = col[c];
  }
  return m;
}

Vec SimpleLieAlgebra::basis_vector(std::size_t a) const {
  Vec v(dim(), Rational(0));
  v[a] = 1;
  return v;
}

Rational SimpleLieAlgebra::weyl_dimension(const std::vector<int>& labels) const {
  // Simply laced: <lambda + rho, alpha^vee> = sum_i k_i (n_i + 1) for alpha = sum k_i alpha_i.
  Rational num = 1, den = 1;
  for (const auto& r : positive_roots_) {
    long a = 0, b = 0;
    for (std::size_t i = 0; i < rank_; ++i) {
      a += r.coeffs[i] * (labels[i] + 1);
      b += r.coeffs[i];
    }
    num *= a;
    den *= b;
  }
  return num / den;
}

nlohmann::json SimpleLieAlgebra::to_json() const {
  nlohmann::json j;
  j["schema"] = "glab.algebra/1";
  j["label"] = label_;
  j["rank"] = rank_;
  j["dim"] = dim();
  j["cartan_matrix"] = cartan_;
  j["exponents"] = exponents_;
  j["basis"] = labels_;
  nlohmann::json roots = nlohmann::json::array();
  for (const auto& r : positive_roots_) roots.push_back(r.coeffs);
  j["positive_roots"] = roots;
  nlohmann::json consts = nlohmann::json::array();
  for (std::size_t a = 0; a < dim(); ++a)
    for (std::size_t b = a + 1; b < dim(); ++b)
      for (const auto& [c, v] : brackets_[a][b]) consts.push_back({a, b, c, to_string(v)});
  j["structure_constants"] = consts;
  return j;
}

Rational InvariantForm::operator()(const Vec& x, const Vec& y) const {
  Rational s = 0;
  for (std::size_t a = 0; a < gram.rows(); ++a) {
    if (is_zero(x[a])) continue;
    for (std::size_t b = 0; b < gram.cols(); ++b)
      if (!is_zero(y[b]) && !is_zero(gram(a, b))) s += x[a] * gram(a, b) * y[b];
  }
  return s;
}

RatMatrix killing_form(const SimpleLieAlgebra& g) {
  const std::size_t d = g.dim();
  // K_ab = sum_{c,e} c_{ac}^e c_{be}^c
  RatMatrix k(d, d);
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = a; b < d; ++b) {
      Rational s = 0;
      for (std::size_t c = 0; c < d; ++c)
        for (const auto& [e, v] : g.bracket_basis(a, c))
          for (const auto& [c2, w] : g.bracket_basis(b, e))
            if (c2 == c) s += v * w;
      k(a, b) = s;
      k(b, a) = s;
    }
  return k;
}

namespace {

Rational highest_coroot_norm(const SimpleLieAlgebra& g, const RatMatrix& gram) {
  std::size_t theta = g.num_positive_roots() - 1;
  Vec h_theta = g.bracket(g.basis_vector(g.e_index(theta)), g.basis_vector(g.f_index(theta)));
  InvariantForm f{gram, FormNormalization::Standard};
  return f(h_theta, h_theta);
}

}  // namespace

Rational dual_coxeter_number(const SimpleLieAlgebra& g) {
  // Killing = 2 h^vee kappa_0 and kappa_0(h_theta, h_theta) = 2.
  return highest_coroot_norm(g, killing_form(g)) / 4;
}

InvariantForm standard_form(const SimpleLieAlgebra& g) {
  RatMatrix k = killing_form(g);
  Rational scale = Rational(2) / highest_coroot_norm(g, k);
  k *= scale;
  return InvariantForm{k, FormNormalization::Standard};
}

InvariantForm critical_form(const SimpleLieAlgebra& g) {
  InvariantForm f = standard_form(g);
  f.gram *= Rational(-dual_coxeter_number(g));
  f.normalization = FormNormalization::Critical;
  return f;
}

DualBasisPair dual_bases(const SimpleLieAlgebra& g, const InvariantForm& form) {
  auto inv = inverse(form.gram);
  if (!inv) throw std::invalid_argument("dual_bases: invariant form is singular");
  DualBasisPair out;
  out.dim = g.dim();
  out.dual.assign(g.dim(), Vec(g.dim(), Rational(0)));
  // J^a = sum_b (K^{-1})_{ba} J_b
  for (std::size_t a = 0; a < g.dim(); ++a)
    for (std::size_t b = 0; b < g.dim(); ++b) out.dual[a][b] = (*inv)(b, a);
  return out;
}

Vec cartan_element(const SimpleLieAlgebra& g, const InvariantForm& form, const Weight& lambda) {
  const std::size_t l = g.rank();
  RatMatrix gram(l, l), rhs(l, 1);
  for (std::size_t i = 0; i < l; ++i) {
    rhs(i, 0) = lambda[i];
    for (std::size_t j = 0; j < l; ++j) gram(i, j) = form.gram(g.h_index(i), g.h_index(j));
  }
  auto c = solve(gram, rhs);
  if (!c) throw std::invalid_argument("cartan_element: form is degenerate on h");
  Vec x(g.dim(), Rational(0));
  for (std::size_t j = 0; j < l; ++j) x[g.h_index(j)] = (*c)(j, 0);
  return x;
}

Rational weight_pairing(const SimpleLieAlgebra& g, const InvariantForm& form, const Weight& a, const Weight& b) {
  Vec hb = cartan_element(g, form, b);
  Rational s = 0;
  for (std::size_t i = 0; i < g.rank(); ++i) s += a[i] * hb[g.h_index(i)];
  return s;
}

Rational evaluate_weight(const SimpleLieAlgebra& g, const Weight& lambda, const Vec& x) {
  Rational s = 0;
  for (std::size_t i = 0; i < g.rank(); ++i) s += lambda[i] * x[g.h_index(i)];
  return s;
}

Weight rho(const SimpleLieAlgebra& g) { return Weight(g.rank(), Rational(1)); }

PrincipalData principal_data(const SimpleLieAlgebra& g) {
  const std::size_t l = g.rank();
  PrincipalData pd;
  pd.p_minus1.assign(g.dim(), Rational(0));
  for (std::size_t i = 0; i < l; ++i) pd.p_minus1[g.f_index(g.simple_root_index(i))] = 1;

  // 2 rho^vee = sum c_j h_j with alpha_i(2 rho^vee) = sum_j c_j a_ji = 2.
  RatMatrix at(l, l), two(l, 1);
  for (std::size_t i = 0; i < l; ++i) {
    two(i, 0) = 2;
    for (std::size_t j = 0; j < l; ++j) at(i, j) = g.cartan(j, i);
  }
  auto c = solve(at, two);
  pd.two_rho_check.assign(g.dim(), Rational(0));
  pd.p_1.assign(g.dim(), Rational(0));
  for (std::size_t j = 0; j < l; ++j) {
    pd.two_rho_check[g.h_index(j)] = (*c)(j, 0);
    pd.p_1[g.e_index(g.simple_root_index(j))] = (*c)(j, 0);
  }

  int h = 0;
  for (const auto& r : g.positive_roots()) h = std::max(h, r.height);
  pd.coxeter_number = h + 1;
  pd.gradation_dims.assign(static_cast<std::size_t>(2 * h + 1), 0);
  for (std::size_t a = 0; a < g.dim(); ++a) pd.gradation_dims[static_cast<std::size_t>(g.principal_degree(a) + h)]++;

  if (g.has_defining_representation()) {
    RatMatrix p1 = g.to_defining(pd.p_1);
    RatMatrix power = p1;
    for (int d : g.exponents()) {
      pd.canonical.push_back(g.from_defining(power));
      pd.canonical_degrees.push_back(d);
      power = power * p1;
    }
  } else {
    RatMatrix ad_p1 = g.ad(pd.p_1);
    for (int d = 1; d <= h; ++d) {
      std::vector<std::size_t> cols;
      for (std::size_t a = 0; a < g.dim(); ++a)
        if (g.principal_degree(a) == d) cols.push_back(a);
      std::vector<std::size_t> all(g.dim());
      std::iota(all.begin(), all.end(), 0);
      RatMatrix block(g.dim(), cols.size());
      for (std::size_t r = 0; r < g.dim(); ++r)
        for (std::size_t k = 0; k < cols.size(); ++k) block(r, k) = ad_p1(r, cols[k]);
      for (auto& v : nullspace(block)) {
        Vec x(g.dim(), Rational(0));
        for (std::size_t k = 0; k < cols.size(); ++k) x[cols[k]] = v[k];
        pd.canonical.push_back(x);
        pd.canonical_degrees.push_back(d);
      }
    }
  }
  return pd;
}

Sl2Triple sl2_triple_for_root(const SimpleLieAlgebra& g, const std::vector<int>& root_coeffs) {
  auto k = g.find_positive_root(root_coeffs);
  if (!k) throw std::invalid_argument("sl2_triple_for_root: not a positive root");
  Sl2Triple t;
  t.e = g.basis_vector(g.e_index(*k));
  t.f = g.basis_vector(g.f_index(*k));
  t.h = g.bracket(t.e, t.f);
  return t;
}

bool is_regular(const SimpleLieAlgebra& g, const Vec& x) {
  return g.dim() - rank(g.ad(x)) == g.rank();
}

}  // namespace glab
