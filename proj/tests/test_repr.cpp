#include <doctest.h>

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <random>

#include "glab/repr.hpp"

using namespace glab;

namespace {

void check_brackets(const Module& v) {
  const auto& g = *v.algebra;
  for (std::size_t a = 0; a < g.dim(); ++a)
    for (std::size_t b = 0; b < g.dim(); ++b) {
      auto lhs = commutator(v.generators[a], v.generators[b]);
      auto rhs = v.action(g.bracket(g.basis_vector(a), g.basis_vector(b)));
      REQUIRE(lhs == rhs);
    }
}

std::map<Weight, std::size_t> multiplicities(const Module& v) {
  std::map<Weight, std::size_t> out;
  for (const auto& [w, idx] : v.weight_spaces()) out[w] = idx.size();
  return out;
}

// s_i(mu) = mu - <mu, alpha_i^vee> alpha_i
Weight reflect(const SimpleLieAlgebra& g, const Weight& mu, std::size_t i) {
  Weight out = mu;
  for (std::size_t j = 0; j < g.rank(); ++j) out[j] -= mu[i] * g.cartan(j, i);
  return out;
}

}  // namespace

TEST_CASE("irreps of small dimension") {
  auto a1 = SimpleLieAlgebra::from_type("A1");
  auto v = build_irrep(a1, std::vector<int>{1});
  CHECK(v->dim() == 2);
  check_brackets(*v);
  // e annihilates the highest weight vector
  for (std::size_t c = 0; c < v->dim(); ++c) CHECK(v->generators[a1->e_index(0)].at(c, 0) == 0);

  auto a2 = SimpleLieAlgebra::from_type("A2");
  CHECK(build_irrep(a2, std::vector<int>{1, 0})->dim() == 3);
  auto adj = build_irrep(a2, std::vector<int>{1, 1});
  CHECK(adj->dim() == 8);
  CHECK(multiplicities(*adj).at(Weight{Rational(0), Rational(0)}) == 2);
  check_brackets(*adj);
}

TEST_CASE("invalid highest weights") {
  auto a2 = SimpleLieAlgebra::from_type("A2");
  CHECK_THROWS_AS(build_irrep(a2, std::vector<int>{-1, 0}), std::invalid_argument);
  CHECK_THROWS_AS(build_irrep(a2, Weight{Rational(1, 2), Rational(0)}), std::invalid_argument);
}

TEST_CASE("Weyl dimension sweep and W-invariance") {
  for (const char* label : {"A1", "A2", "A3"}) {
    auto g = SimpleLieAlgebra::from_type(label);
    const std::size_t l = g->rank();
    std::vector<int> lab(l, 0);
    const int cap = 3;
    while (true) {
      auto v = build_irrep(g, lab);
      CHECK(Rational(static_cast<long>(v->dim())) == g->weyl_dimension(lab));
      auto mult = multiplicities(*v);
      for (const auto& [mu, m] : mult)
        for (std::size_t i = 0; i < l; ++i) {
          auto it = mult.find(reflect(*g, mu, i));
          REQUIRE(it != mult.end());
          CHECK(it->second == m);
        }
      if (v->dim() <= 30) check_brackets(*v);
      std::size_t pos = 0;
      while (pos < l && lab[pos] == cap) lab[pos++] = 0;
      if (pos == l) break;
      ++lab[pos];
    }
  }
}

TEST_CASE("Verma truncation") {
  auto a1 = SimpleLieAlgebra::from_type("A1");
  VermaTruncation m1(a1, Weight{Rational(7, 3)}, 2);
  for (int k = 0; k <= 2; ++k) CHECK(m1.weight_space_dim({k}) == 1);

  auto a2 = SimpleLieAlgebra::from_type("A2");
  VermaTruncation m2(a2, Weight{Rational(1, 3), Rational(-5, 2)}, 4);
  CHECK(m2.weight_space_dim({1, 1}) == 2);
  for (const auto& [coords, words] : m2.basis()) {
    CHECK(words.size() == kostant_partition(*a2, coords));
    auto s = m2.shapovalov(coords);
    CHECK(s == s.transpose());
  }

  // <lambda, alpha^vee> = 1: f^2 v is singular
  VermaTruncation m3(a1, Weight{Rational(1)}, 2);
  CHECK(m3.shapovalov({2})(0, 0) == 0);
  CHECK(m3.shapovalov({1})(0, 0) == 1);

  // e f^2 v = 2(lambda - 1) f v
  Enveloping u(a1);
  auto e = u.linear(0, a1->basis_vector(a1->e_index(0)));
  const std::uint16_t f = static_cast<std::uint16_t>(a1->f_index(0));
  auto img = m1.act(e, Word{f, f});
  CHECK(img.at(Word{f}) == 2 * (Rational(7, 3) - 1));
  bool trunc = false;
  auto fm = u.linear(0, a1->basis_vector(a1->f_index(0)));
  CHECK(m1.act(fm, Word{f, f}, &trunc).empty());
  CHECK(trunc);
}

TEST_CASE("tensor products") {
  auto a1 = SimpleLieAlgebra::from_type("A1");
  auto v = build_irrep(a1, std::vector<int>{1});
  TensorSpace t({v, v});
  CHECK(t.dim() == 4);
  // h acts diagonally on the top vector by <lambda + mu, alpha^vee> = 2
  std::vector<Rational> top(4, Rational(0));
  top[0] = 1;
  auto ht = t.act_diagonal(a1->basis_vector(0), top);
  CHECK(ht[0] == 2);

  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> d(-5, 5);
  std::vector<Rational> r(4);
  for (auto& x : r) x = d(rng);
  auto e1 = t.site_action(0, a1->basis_vector(a1->e_index(0)));
  auto f2 = t.site_action(1, a1->basis_vector(a1->f_index(0)));
  CHECK(commutator(e1, f2).apply(r) == std::vector<Rational>(4, Rational(0)));

  // diagonal Casimir sum J_a J^a
  auto form = standard_form(*a1);
  auto duals = dual_bases(*a1, form);
  SparseRat cas(4, 4);
  for (std::size_t a = 0; a < a1->dim(); ++a)
    cas = cas + t.diagonal_action(a1->basis_vector(a)) * t.diagonal_action(duals.dual[a]);
  auto dense = cas.to_dense();
  Eigen::MatrixXd m(4, 4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) m(i, j) = dense(i, j).get_d();
  Eigen::EigenSolver<Eigen::MatrixXd> es(m);
  std::vector<double> ev;
  for (int i = 0; i < 4; ++i) ev.push_back(es.eigenvalues()[i].real());
  std::sort(ev.begin(), ev.end());
  CHECK(ev[0] == doctest::Approx(0.0));
  for (int i = 1; i < 4; ++i) CHECK(ev[i] == doctest::Approx(4.0));

  CHECK(t.weight_blocks().size() == 3);
  CHECK_THROWS(t.site_generator(2, 0));
}
