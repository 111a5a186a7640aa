#include "glab/repr.hpp"

#include <algorithm>
#include <functional>
#include <optional>
#include <set>
#include <stdexcept>

namespace glab {

SparseRat Module::action(const Vec& x) const {
  SparseRat out(dim(), dim());
  for (std::size_t a = 0; a < x.size(); ++a)
    if (!is_zero(x[a])) out.add_scaled(generators[a], x[a]);
  return out;
}

std::map<Weight, std::vector<std::size_t>> Module::weight_spaces() const {
  std::map<Weight, std::vector<std::size_t>> out;
  for (std::size_t i = 0; i < weights.size(); ++i) out[weights[i]].push_back(i);
  return out;
}

nlohmann::json sparse_to_json(const SparseRat& m) {
  nlohmann::json triplets = nlohmann::json::array();
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (const auto& [c, v] : m.row(r)) triplets.push_back({r, c, to_string(v)});
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"entries", triplets}};
}

nlohmann::json Module::to_json() const {
  nlohmann::json j;
  j["schema"] = "glab.module/1";
  j["algebra"] = algebra->label();
  std::vector<std::string> hw;
  for (const auto& q : highest_weight) hw.push_back(to_string(q));
  j["highest_weight"] = hw;
  j["dim"] = dim();
  nlohmann::json ws = nlohmann::json::array();
  for (const auto& w : weights) {
    std::vector<std::string> s;
    for (const auto& q : w) s.push_back(to_string(q));
    ws.push_back(s);
  }
  j["weights"] = ws;
  nlohmann::json gens = nlohmann::json::object();
  for (std::size_t a = 0; a < generators.size(); ++a)
    gens[algebra->basis_labels()[a]] = sparse_to_json(generators[a]);
  j["generators"] = gens;
  return j;
}

namespace {

Weight weight_at(const SimpleLieAlgebra& g, const Weight& lambda, const std::vector<int>& coords) {
  Weight mu = lambda;
  for (std::size_t j = 0; j < g.rank(); ++j)
    for (std::size_t m = 0; m < g.rank(); ++m) mu[j] -= coords[m] * g.cartan(j, m);
  return mu;
}

// One weight space mu = lambda - sum k_i alpha_i of the irreducible quotient.
struct Level {
  std::size_t dim = 0;
  RatMatrix gram;
  std::vector<std::optional<RatMatrix>> lower;  // f_i: level k - e_i -> k
  std::vector<std::optional<RatMatrix>> raise;  // e_i: level k -> k - e_i
};

RatMatrix sub_block(const RatMatrix& m, const std::vector<std::size_t>& rows, std::size_t c0, std::size_t nc) {
  RatMatrix out(rows.size(), nc);
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < nc; ++c) out(r, c) = m(rows[r], c0 + c);
  return out;
}

}  // namespace

ModulePtr build_irrep(AlgebraPtr g, const std::vector<int>& labels) {
  Weight w;
  for (int x : labels) w.push_back(Rational(x));
  return build_irrep(std::move(g), w);
}

ModulePtr build_irrep(AlgebraPtr g, const Weight& lambda) {
  const std::size_t l = g->rank();
  if (lambda.size() != l) throw std::invalid_argument("build_irrep: weight has wrong length");
  for (const auto& x : lambda)
    if (x.get_den() != 1 || sgn(x) < 0)
      throw std::invalid_argument("build_irrep: highest weight must be integral dominant");

  std::map<std::vector<int>, Level> levels;
  std::vector<std::vector<int>> order;
  const std::vector<int> top(l, 0);
  {
    Level root;
    root.dim = 1;
    root.gram = RatMatrix::identity(1);
    root.lower.resize(l);
    root.raise.resize(l);
    levels.emplace(top, std::move(root));
    order.push_back(top);
  }

  auto shifted = [](std::vector<int> k, std::size_t i, int by) {
    k[i] += by;
    return k;
  };

  std::vector<std::vector<int>> frontier{top};
  while (!frontier.empty()) {
    std::set<std::vector<int>> next;
    for (const auto& p : frontier)
      for (std::size_t i = 0; i < l; ++i) next.insert(shifted(p, i, 1));
    frontier.clear();

    for (const auto& k : next) {
      std::vector<const Level*> parent(l, nullptr);
      std::vector<std::size_t> offset(l + 1, 0);
      for (std::size_t i = 0; i < l; ++i) {
        if (k[i] > 0) {
          auto it = levels.find(shifted(k, i, -1));
          if (it != levels.end()) parent[i] = &it->second;
        }
        offset[i + 1] = offset[i] + (parent[i] ? parent[i]->dim : 0);
      }
      const std::size_t ncand = offset[l];
      if (ncand == 0) continue;

      // e_i f_j acting on the parent level j, written in the basis of parent level i.
      std::vector<std::vector<RatMatrix>> m(l, std::vector<RatMatrix>(l));
      for (std::size_t i = 0; i < l; ++i) {
        if (!parent[i]) continue;
        Weight wi = weight_at(*g, lambda, shifted(k, i, -1));
        for (std::size_t j = 0; j < l; ++j) {
          if (!parent[j]) continue;
          RatMatrix mij(parent[i]->dim, parent[j]->dim);
          const auto& f_j = parent[i]->lower[j];
          const auto& e_i = parent[j]->raise[i];
          if (f_j && e_i) mij = *f_j * *e_i;
          if (i == j)
            for (std::size_t b = 0; b < parent[i]->dim; ++b) mij(b, b) += wi[i];
          m[i][j] = std::move(mij);
        }
      }

      RatMatrix cand(ncand, ncand);
      for (std::size_t i = 0; i < l; ++i) {
        if (!parent[i]) continue;
        for (std::size_t j = 0; j < l; ++j) {
          if (!parent[j]) continue;
          RatMatrix block = parent[i]->gram * m[i][j];
          for (std::size_t r = 0; r < block.rows(); ++r)
            for (std::size_t c = 0; c < block.cols(); ++c) cand(offset[i] + r, offset[j] + c) = block(r, c);
        }
      }

      auto ech = row_reduce(cand);
      const auto& sel = ech.pivot_cols;
      if (sel.empty()) continue;

      Level lev;
      lev.dim = sel.size();
      lev.gram = RatMatrix(lev.dim, lev.dim);
      for (std::size_t r = 0; r < lev.dim; ++r)
        for (std::size_t c = 0; c < lev.dim; ++c) lev.gram(r, c) = cand(sel[r], sel[c]);
      auto ginv = inverse(lev.gram);
      if (!ginv) throw std::logic_error("build_irrep: singular reduced Gram matrix");
      lev.lower.resize(l);
      lev.raise.resize(l);
      for (std::size_t i = 0; i < l; ++i) {
        if (!parent[i]) continue;
        lev.lower[i] = *ginv * sub_block(cand, sel, offset[i], parent[i]->dim);
        RatMatrix up(parent[i]->dim, lev.dim);
        for (std::size_t s = 0; s < lev.dim; ++s) {
          std::size_t j = 0;
          while (sel[s] >= offset[j + 1]) ++j;
          std::size_t b = sel[s] - offset[j];
          for (std::size_t r = 0; r < parent[i]->dim; ++r) up(r, s) = m[i][j](r, b);
        }
        lev.raise[i] = std::move(up);
      }
      levels.emplace(k, std::move(lev));
      order.push_back(k);
      frontier.push_back(k);
    }
  }

  auto module = std::make_shared<Module>();
  module->algebra = g;
  module->highest_weight = lambda;
  std::map<std::vector<int>, std::size_t> start;
  std::size_t total = 0;
  for (const auto& k : order) {
    start[k] = total;
    Weight mu = weight_at(*g, lambda, k);
    for (std::size_t b = 0; b < levels.at(k).dim; ++b) module->weights.push_back(mu);
    total += levels.at(k).dim;
  }
  module->generators.assign(g->dim(), SparseRat(total, total));
  for (std::size_t idx = 0; idx < total; ++idx)
    for (std::size_t i = 0; i < l; ++i) module->generators[g->h_index(i)].add(idx, idx, module->weights[idx][i]);

  for (const auto& k : order) {
    const Level& lev = levels.at(k);
    for (std::size_t i = 0; i < l; ++i) {
      if (!lev.lower[i]) continue;
      std::size_t p0 = start.at(shifted(k, i, -1)), k0 = start.at(k);
      const RatMatrix& fm = *lev.lower[i];
      const RatMatrix& em = *lev.raise[i];
      auto& f = module->generators[g->f_index(g->simple_root_index(i))];
      auto& e = module->generators[g->e_index(g->simple_root_index(i))];
      for (std::size_t r = 0; r < fm.rows(); ++r)
        for (std::size_t c = 0; c < fm.cols(); ++c) f.add(k0 + r, p0 + c, fm(r, c));
      for (std::size_t r = 0; r < em.rows(); ++r)
        for (std::size_t c = 0; c < em.cols(); ++c) e.add(p0 + r, k0 + c, em(r, c));
    }
  }

  // Remaining root vectors from brackets with simple ones, in order of height.
  const auto& roots = g->positive_roots();
  for (std::size_t r = 0; r < roots.size(); ++r) {
    if (roots[r].height < 2) continue;
    bool done = false;
    for (std::size_t i = 0; i < l && !done; ++i) {
      auto beta = roots[r].coeffs;
      if (beta[i] == 0) continue;
      --beta[i];
      auto b = g->find_positive_root(beta);
      if (!b) continue;
      std::size_t si = g->simple_root_index(i);
      for (bool raising : {true, false}) {
        std::size_t xa = raising ? g->e_index(si) : g->f_index(si);
        std::size_t xb = raising ? g->e_index(*b) : g->f_index(*b);
        std::size_t target = raising ? g->e_index(r) : g->f_index(r);
        Rational c = 0;
        for (const auto& [idx, v] : g->bracket_basis(xa, xb))
          if (idx == target) c = v;
        if (is_zero(c)) throw std::logic_error("build_irrep: root vector not reachable by brackets");
        module->generators[target] =
            commutator(module->generators[xa], module->generators[xb]).scaled(Rational(1) / c);
      }
      done = true;
    }
    if (!done) throw std::logic_error("build_irrep: no simple decomposition for a root");
  }
  return module;
}

std::size_t kostant_partition(const SimpleLieAlgebra& g, const std::vector<int>& coords) {
  const auto& roots = g.positive_roots();
  std::function<std::size_t(std::vector<int>&, std::size_t)> count = [&](std::vector<int>& rest,
                                                                          std::size_t from) -> std::size_t {
    if (std::all_of(rest.begin(), rest.end(), [](int x) { return x == 0; })) return 1;
    std::size_t total = 0;
    for (std::size_t r = from; r < roots.size(); ++r) {
      bool fits = true;
      for (std::size_t i = 0; i < rest.size(); ++i) fits = fits && rest[i] >= roots[r].coeffs[i];
      if (!fits) continue;
      for (std::size_t i = 0; i < rest.size(); ++i) rest[i] -= roots[r].coeffs[i];
      total += count(rest, r);
      for (std::size_t i = 0; i < rest.size(); ++i) rest[i] += roots[r].coeffs[i];
    }
    return total;
  };
  std::vector<int> rest = coords;
  return count(rest, 0);
}

VermaTruncation::VermaTruncation(AlgebraPtr g, Weight lambda, int depth)
    : g_(g), lambda_(std::move(lambda)), depth_(depth), u_(g, 1) {
  if (depth < 0) throw std::invalid_argument("VermaTruncation: negative depth");
  if (lambda_.size() != g_->rank()) throw std::invalid_argument("VermaTruncation: weight has wrong length");
  const auto& roots = g_->positive_roots();
  Word word;
  std::vector<int> coords(g_->rank(), 0);
  std::function<void(std::size_t, int)> grow = [&](std::size_t from, int height) {
    basis_[coords].push_back(word);
    for (std::size_t r = from; r < roots.size(); ++r) {
      if (height + roots[r].height > depth_) continue;
      word.push_back(static_cast<std::uint16_t>(g_->f_index(r)));
      for (std::size_t i = 0; i < coords.size(); ++i) coords[i] += roots[r].coeffs[i];
      grow(r, height + roots[r].height);
      for (std::size_t i = 0; i < coords.size(); ++i) coords[i] -= roots[r].coeffs[i];
      word.pop_back();
    }
  };
  grow(0, 0);
}

std::size_t VermaTruncation::weight_space_dim(const std::vector<int>& coords) const {
  auto it = basis_.find(coords);
  return it == basis_.end() ? 0 : it->second.size();
}

Weight VermaTruncation::weight_of(const std::vector<int>& coords) const { return weight_at(*g_, lambda_, coords); }

std::map<Word, Rational> VermaTruncation::read_on_highest(const UElement& normal) const {
  const std::size_t l = g_->rank(), p = g_->num_positive_roots();
  std::map<Word, Rational> out;
  for (const auto& [w, c] : normal) {
    Word fpart;
    Rational coeff = c;
    bool killed = false;
    for (auto gen : w) {
      if (gen >= l + p) {
        fpart.push_back(gen);
      } else if (gen < l) {
        coeff *= lambda_[gen];
      } else {
        killed = true;
        break;
      }
    }
    if (killed || is_zero(coeff)) continue;
    auto& v = out[fpart];
    v += coeff;
    if (is_zero(v)) out.erase(fpart);
  }
  return out;
}

std::map<Word, Rational> VermaTruncation::act(const UElement& x, const Word& monomial, bool* truncated) const {
  UElement m;
  m[monomial] = 1;
  auto image = read_on_highest(u_.multiply(x, m));
  const std::size_t l = g_->rank(), p = g_->num_positive_roots();
  for (auto it = image.begin(); it != image.end();) {
    int h = 0;
    for (auto gen : it->first) h += g_->positive_roots()[gen - l - p].height;
    if (h > depth_) {
      if (truncated) *truncated = true;
      it = image.erase(it);
    } else {
      ++it;
    }
  }
  return image;
}

RatMatrix VermaTruncation::shapovalov(const std::vector<int>& coords) const {
  auto it = basis_.find(coords);
  if (it == basis_.end()) return RatMatrix(0, 0);
  const auto& words = it->second;
  const std::size_t p = g_->num_positive_roots();
  RatMatrix gram(words.size(), words.size());
  for (std::size_t a = 0; a < words.size(); ++a)
    for (std::size_t b = 0; b < words.size(); ++b) {
      Word w;
      for (auto r = words[a].rbegin(); r != words[a].rend(); ++r)
        w.push_back(static_cast<std::uint16_t>(*r - p));  // f_alpha -> e_alpha
      w.insert(w.end(), words[b].begin(), words[b].end());
      UElement x;
      x[w] = 1;
      auto image = read_on_highest(u_.normal_order(x));
      auto c = image.find(Word{});
      if (c != image.end()) gram(a, b) = c->second;
    }
  return gram;
}

TensorSpace::TensorSpace(std::vector<ModulePtr> factors) : factors_(std::move(factors)) {
  if (factors_.empty()) throw std::invalid_argument("TensorSpace: no factors");
  for (const auto& f : factors_)
    if (f->algebra->label() != factors_.front()->algebra->label())
      throw std::invalid_argument("TensorSpace: factors over different algebras");
  for (const auto& f : factors_) dim_ *= f->dim();

  const std::size_t gd = algebra()->dim();
  table_.reserve(sites() * gd);
  std::size_t left = 1;
  for (std::size_t s = 0; s < sites(); ++s) {
    std::size_t right = dim_ / (left * factors_[s]->dim());
    auto il = SparseRat::identity(left), ir = SparseRat::identity(right);
    for (std::size_t a = 0; a < gd; ++a)
      table_.push_back(SparseRat::kron(SparseRat::kron(il, factors_[s]->generators[a]), ir));
    left *= factors_[s]->dim();
  }

  weights_.reserve(dim_);
  for (std::size_t idx = 0; idx < dim_; ++idx) {
    auto loc = local_indices(idx);
    Weight w(algebra()->rank(), Rational(0));
    for (std::size_t s = 0; s < sites(); ++s)
      for (std::size_t i = 0; i < w.size(); ++i) w[i] += factors_[s]->weights[loc[s]][i];
    blocks_[w].push_back(idx);
    weights_.push_back(std::move(w));
  }
}

std::size_t TensorSpace::index(const std::vector<std::size_t>& local) const {
  if (local.size() != sites()) throw std::invalid_argument("TensorSpace: wrong number of local indices");
  std::size_t idx = 0;
  for (std::size_t s = 0; s < sites(); ++s) idx = idx * factors_[s]->dim() + local[s];
  return idx;
}

std::vector<std::size_t> TensorSpace::local_indices(std::size_t index) const {
  std::vector<std::size_t> loc(sites());
  for (std::size_t s = sites(); s-- > 0;) {
    loc[s] = index % factors_[s]->dim();
    index /= factors_[s]->dim();
  }
  return loc;
}

const SparseRat& TensorSpace::site_generator(std::size_t site, std::size_t a) const {
  if (site >= sites()) throw std::out_of_range("TensorSpace: site out of range");
  return table_[site * algebra()->dim() + a];
}

SparseRat TensorSpace::site_action(std::size_t site, const Vec& x) const {
  SparseRat out(dim_, dim_);
  for (std::size_t a = 0; a < x.size(); ++a)
    if (!is_zero(x[a])) out.add_scaled(site_generator(site, a), x[a]);
  return out;
}

SparseRat TensorSpace::diagonal_action(const Vec& x) const {
  SparseRat out(dim_, dim_);
  for (std::size_t s = 0; s < sites(); ++s) out.add_scaled(site_action(s, x), Rational(1));
  return out;
}

}  // namespace glab
