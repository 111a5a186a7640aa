#include <doctest.h>

#include "glab/liealg.hpp"

using namespace glab;

namespace {

Vec jacobi(const SimpleLieAlgebra& g, std::size_t a, std::size_t b, std::size_t c) {
  Vec x = g.basis_vector(a), y = g.basis_vector(b), z = g.basis_vector(c);
  Vec s = g.bracket(x, g.bracket(y, z));
  Vec t = g.bracket(y, g.bracket(z, x));
  Vec u = g.bracket(z, g.bracket(x, y));
  for (std::size_t i = 0; i < s.size(); ++i) s[i] += t[i] + u[i];
  return s;
}

bool is_zero_vec(const Vec& v) {
  for (const auto& x : v)
    if (!is_zero(x)) return false;
  return true;
}

}  // namespace

TEST_CASE("type A data") {
  auto a1 = SimpleLieAlgebra::from_type("A1");
  CHECK(a1->dim() == 3);
  CHECK(a1->num_positive_roots() == 1);

  auto a2 = SimpleLieAlgebra::from_type("A2");
  CHECK(a2->dim() == 8);
  CHECK(a2->num_positive_roots() == 3);
  CHECK(a2->exponents() == std::vector<int>{1, 2});

  auto a3 = SimpleLieAlgebra::from_type("A3");
  int borel = 0;
  for (int d : a3->exponents()) borel += d + 1;
  CHECK(borel == 9);
  CHECK(static_cast<std::size_t>(borel) == a3->rank() + a3->num_positive_roots());

  CHECK_THROWS_AS(SimpleLieAlgebra::from_type("B2"), std::invalid_argument);
  CHECK_THROWS_AS(SimpleLieAlgebra::from_type("A0"), std::invalid_argument);
  CHECK_THROWS_AS(SimpleLieAlgebra::from_type("Ax"), std::invalid_argument);
}

TEST_CASE("basis order: Cartan, then e by height, then f mirrored") {
  auto g = SimpleLieAlgebra::from_type("A2");
  CHECK(g->basis_labels() == std::vector<std::string>{"h1", "h2", "e12", "e23", "e13", "f12", "f23", "f13"});
}

TEST_CASE("Jacobi identity and Chevalley relations are exact") {
  for (const char* label : {"A1", "A2", "A3"}) {
    auto g = SimpleLieAlgebra::from_type(label);
    for (std::size_t a = 0; a < g->dim(); ++a)
      for (std::size_t b = 0; b < g->dim(); ++b)
        for (std::size_t c = 0; c < g->dim(); ++c) REQUIRE(is_zero_vec(jacobi(*g, a, b, c)));
    for (std::size_t k = 0; k < g->num_positive_roots(); ++k) {
      Vec h = g->bracket(g->basis_vector(g->e_index(k)), g->basis_vector(g->f_index(k)));
      for (std::size_t a = g->rank(); a < g->dim(); ++a) CHECK(is_zero(h[a]));
      // [h_i, e_alpha] = <alpha, alpha_i^vee> e_alpha
      Weight w = g->root_weight(g->positive_roots()[k].coeffs);
      for (std::size_t i = 0; i < g->rank(); ++i) {
        Vec br = g->bracket(g->basis_vector(g->h_index(i)), g->basis_vector(g->e_index(k)));
        Vec expect(g->dim(), Rational(0));
        expect[g->e_index(k)] = w[i];
        CHECK(br == expect);
      }
    }
  }
}

TEST_CASE("standard form is the trace form and ad-invariant") {
  for (const char* label : {"A1", "A2", "A3"}) {
    auto g = SimpleLieAlgebra::from_type(label);
    InvariantForm k = standard_form(*g);
    for (std::size_t a = 0; a < g->dim(); ++a)
      for (std::size_t b = 0; b < g->dim(); ++b) {
        RatMatrix prod = g->defining_matrices()[a] * g->defining_matrices()[b];
        Rational tr = 0;
        for (std::size_t i = 0; i < prod.rows(); ++i) tr += prod(i, i);
        REQUIRE(k.gram(a, b) == tr);
      }
    for (std::size_t x = 0; x < g->dim(); ++x)
      for (std::size_t y = 0; y < g->dim(); ++y)
        for (std::size_t z = 0; z < g->dim(); ++z) {
          Vec X = g->basis_vector(x), Y = g->basis_vector(y), Z = g->basis_vector(z);
          REQUIRE(k(g->bracket(X, Y), Z) + k(Y, g->bracket(X, Z)) == 0);
        }
  }
  auto a2 = SimpleLieAlgebra::from_type("A2");
  CHECK(dual_coxeter_number(*a2) == 3);
  CHECK(critical_form(*a2).gram(0, 0) == -3 * standard_form(*a2).gram(0, 0));
}

TEST_CASE("dual bases for A1 with the trace form") {
  auto g = SimpleLieAlgebra::from_type("A1");
  auto duals = dual_bases(*g, standard_form(*g));
  // basis (h, e, f) -> duals (h/2, f, e)
  CHECK(duals.dual[0] == Vec{Rational(1, 2), 0, 0});
  CHECK(duals.dual[1] == Vec{0, 0, 1});
  CHECK(duals.dual[2] == Vec{0, 1, 0});

  // sum_a J_a J^a on the 2-dim module is 3/2 times the identity
  RatMatrix cas(2, 2);
  for (std::size_t a = 0; a < 3; ++a) cas += g->to_defining(g->basis_vector(a)) * g->to_defining(duals.dual[a]);
  CHECK(cas == Rational(3, 2) * RatMatrix::identity(2));

  InvariantForm singular{RatMatrix(3, 3), FormNormalization::Standard};
  CHECK_THROWS_AS(dual_bases(*g, singular), std::invalid_argument);
}

TEST_CASE("dual pairing and split Casimir invariance") {
  for (const char* label : {"A2", "A3"}) {
    auto g = SimpleLieAlgebra::from_type(label);
    InvariantForm k = standard_form(*g);
    auto duals = dual_bases(*g, k);
    for (std::size_t a = 0; a < g->dim(); ++a)
      for (std::size_t b = 0; b < g->dim(); ++b) CHECK(k(g->basis_vector(a), duals.dual[b]) == (a == b ? 1 : 0));
    // sum_a [x, J_a] (x) J^a + J_a (x) [x, J^a] = 0, as a d x d coefficient table
    const std::size_t d = g->dim();
    for (std::size_t x = 0; x < d; ++x) {
      RatMatrix t(d, d);
      Vec X = g->basis_vector(x);
      for (std::size_t a = 0; a < d; ++a) {
        Vec l = g->bracket(X, g->basis_vector(a));
        Vec r = g->bracket(X, duals.dual[a]);
        for (std::size_t i = 0; i < d; ++i)
          for (std::size_t j = 0; j < d; ++j) t(i, j) += l[i] * duals.dual[a][j] + (i == a ? r[j] : Rational(0));
      }
      CHECK(t.is_zero_matrix());
    }
  }
}

TEST_CASE("principal sl2 triple and canonical subspace") {
  auto a1 = SimpleLieAlgebra::from_type("A1");
  auto p = principal_data(*a1);
  CHECK(p.p_minus1 == a1->basis_vector(a1->f_index(0)));
  CHECK(p.two_rho_check == a1->basis_vector(a1->h_index(0)));
  CHECK(p.p_1 == a1->basis_vector(a1->e_index(0)));

  for (const char* label : {"A2", "A3", "A4"}) {
    auto g = SimpleLieAlgebra::from_type(label);
    auto pd = principal_data(*g);
    Vec twice = pd.p_1;
    for (auto& x : twice) x *= 2;
    CHECK(g->bracket(pd.two_rho_check, pd.p_1) == twice);
    CHECK(g->bracket(pd.p_1, pd.p_minus1) == pd.two_rho_check);
    Vec minus_twice = pd.p_minus1;
    for (auto& x : minus_twice) x *= -2;
    CHECK(g->bracket(pd.two_rho_check, pd.p_minus1) == minus_twice);
    CHECK(pd.canonical.size() == g->rank());
    CHECK(pd.canonical_degrees == g->exponents());
    for (std::size_t j = 0; j < pd.canonical.size(); ++j) {
      Vec br = g->bracket(pd.p_1, pd.canonical[j]);
      for (const auto& x : br) CHECK(is_zero(x));
      for (std::size_t a = 0; a < g->dim(); ++a)
        if (!is_zero(pd.canonical[j][a])) CHECK(g->principal_degree(a) == pd.canonical_degrees[j]);
    }
    // dim g_d from the height distribution of roots
    const int h = pd.coxeter_number - 1;
    for (int d = -h; d <= h; ++d) {
      std::size_t count = d == 0 ? g->rank() : 0;
      for (const auto& r : g->positive_roots())
        if (r.height == std::abs(d)) ++count;
      CHECK(pd.gradation_dims[static_cast<std::size_t>(d + h)] == count);
    }
  }
  auto a2 = SimpleLieAlgebra::from_type("A2");
  CHECK(principal_data(*a2).canonical.size() == 2);
}

TEST_CASE("sl2 triples for roots") {
  auto a1 = SimpleLieAlgebra::from_type("A1");
  auto t1 = sl2_triple_for_root(*a1, {1});
  CHECK(t1.h == a1->basis_vector(0));

  auto g = SimpleLieAlgebra::from_type("A2");
  auto t = sl2_triple_for_root(*g, {1, 1});
  Vec expect(g->dim(), Rational(0));
  expect[0] = 1;
  expect[1] = 1;
  CHECK(t.h == expect);
  Vec two_e = t.e;
  for (auto& x : two_e) x *= 2;
  CHECK(g->bracket(t.h, t.e) == two_e);
  CHECK_THROWS_AS(sl2_triple_for_root(*g, {2, 1}), std::invalid_argument);
}

TEST_CASE("regularity and weight pairings") {
  auto g = SimpleLieAlgebra::from_type("A2");
  InvariantForm k = standard_form(*g);
  CHECK(is_regular(*g, cartan_element(*g, k, Weight{1, 2})));
  CHECK_FALSE(is_regular(*g, cartan_element(*g, k, Weight{1, -1})));  // alpha_1 + alpha_2 vanishes
  CHECK_FALSE(is_regular(*g, Vec(g->dim(), Rational(0))));
  CHECK(is_regular(*g, principal_data(*g).p_1));
  // (alpha, alpha) = 2 for every root
  for (const auto& r : g->positive_roots()) {
    Weight w = g->root_weight(r.coeffs);
    CHECK(weight_pairing(*g, k, w, w) == 2);
  }
  CHECK(g->weyl_dimension({1, 1}) == 8);
  CHECK(g->weyl_dimension({1, 0}) == 3);
}

TEST_CASE("algebra serialization") {
  auto g = SimpleLieAlgebra::from_type("A1");
  auto j = g->to_json();
  CHECK(j["schema"] == "glab.algebra/1");
  CHECK(j["dim"] == 3);
  bool found = false;
  for (const auto& t : j["structure_constants"])
    if (t[0] == 0 && t[1] == 1 && t[2] == 1) {
      CHECK(t[3] == "2");
      found = true;
    }
  CHECK(found);
}
