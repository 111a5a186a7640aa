#include <doctest.h>

#include <random>

#include "glab/hamiltonians.hpp"

using namespace glab;

namespace {

std::vector<Rational> rat(std::initializer_list<long> xs) {
  std::vector<Rational> out;
  for (long x : xs) out.emplace_back(x);
  return out;
}

Weight random_weight(std::mt19937_64& rng, std::size_t l) {
  std::uniform_int_distribution<long> num(-9, 9), den(1, 5);
  Weight w;
  for (std::size_t i = 0; i < l; ++i) w.push_back(make_rational(num(rng), den(rng)));
  return w;
}

Weight random_regular(std::mt19937_64& rng, const SimpleLieAlgebra& g, const InvariantForm& form) {
  while (true) {
    Weight w = random_weight(rng, g.rank());
    if (!singular_root(g, form, w)) return w;
  }
}

}  // namespace

TEST_CASE("quadratic Gaudin Hamiltonians") {
  auto a1 = SimpleLieAlgebra::from_type("A1");
  auto form = standard_form(*a1);
  auto v = build_irrep(a1, std::vector<int>{1});
  TensorSpace t2({v, v});
  auto z = rat({0, 1});
  auto x1 = gaudin(t2, z, 0, form), x2 = gaudin(t2, z, 1, form);
  CHECK((x1 + x2).is_zero_matrix());

  auto blocks = to_blocks(x1, t2, "Xi");
  std::vector<std::pair<double, std::size_t>> found;
  std::map<long, std::size_t> count;
  for (const auto& b : blocks) {
    auto s = spectrum(b);
    for (std::size_t k = 0; k < s.eigenvalues.size(); ++k)
      count[std::lround(2 * s.eigenvalues[k].real())] += s.multiplicities[k];
  }
  CHECK(count[-1] == 3);
  CHECK(count[3] == 1);

  TensorSpace t3({v, v, v});
  auto z3 = rat({0, 1, 2});
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      CHECK(commutator(gaudin(t3, z3, i, form), gaudin(t3, z3, j, form)).is_zero_matrix());

  CHECK_THROWS_AS(gaudin(t2, rat({1, 1}), 0, form), std::invalid_argument);
}

TEST_CASE("shifted Gaudin Hamiltonians") {
  auto a1 = SimpleLieAlgebra::from_type("A1");
  auto form = standard_form(*a1);
  auto v = build_irrep(a1, std::vector<int>{1});
  TensorSpace t2({v, v});
  auto z = rat({0, 1});
  Weight chi{Rational(2)};  // the simple root, i.e. h under the form
  auto x1 = gaudin_shifted(t2, z, chi, 0, form), x2 = gaudin_shifted(t2, z, chi, 1, form);
  CHECK(commutator(x1, x2).is_zero_matrix());
  CHECK(x1 + x2 == t2.diagonal_action(cartan_element(*a1, form, chi)));
  CHECK(gaudin_shifted(t2, z, Weight{Rational(0)}, 0, form) == gaudin(t2, z, 0, form));

  auto h = t2.diagonal_action(a1->basis_vector(0));
  CHECK(commutator_residual(x1, h).zero);
  auto t = dmt_diagonal(t2, Weight{Rational(1)}, Weight{Rational(3, 7)}, form);
  // The diagonal DMT operator contains the total Casimir, which does not commute with chi^{(1)}.
  auto mixed = commutator_residual(x1, t);
  CHECK_FALSE(mixed.zero);
  CHECK(commutator_residual(x1 + x2, t).zero);
  auto r = commutator_residual(block_of(x1, t2, Weight{Rational(0)}, "Xi"), block_of(x1, t2, Weight{Rational(0)}, "Xi"));
  CHECK(r.zero);
  CHECK(r.exact);
  CHECK_THROWS_AS(commutator_residual(block_of(x1, t2, Weight{Rational(0)}, "Xi"),
                                      block_of(x1, t2, Weight{Rational(2)}, "Xi")),
                  std::invalid_argument);
}

TEST_CASE("m = 0 eigenvalue of the shifted Hamiltonian") {
  auto a2 = SimpleLieAlgebra::from_type("A2");
  auto form = standard_form(*a2);
  Weight l1{Rational(1), Rational(0)}, l2{Rational(0), Rational(1)};
  TensorSpace t({build_irrep(a2, l1), build_irrep(a2, l2)});
  auto z = std::vector<Rational>{Rational(1, 3), Rational(-2)};
  Weight chi{Rational(3, 2), Rational(-1, 5)};
  auto x = gaudin_shifted(t, z, chi, 0, form);
  Rational expected =
      weight_pairing(*a2, form, l1, l2) / (z[0] - z[1]) + weight_pairing(*a2, form, chi, l1);
  CHECK(x.at(0, 0) == expected);
  for (std::size_t r = 1; r < t.dim(); ++r) CHECK(x.at(r, 0) == 0);
}

TEST_CASE("DMT Hamiltonians") {
  auto a1 = SimpleLieAlgebra::from_type("A1");
  auto f1 = standard_form(*a1);
  auto v = build_irrep(a1, std::vector<int>{1});
  Weight alpha{Rational(2)};
  auto t = dmt(*v, alpha, alpha, f1);
  CHECK(t == SparseRat::identity(2));
  CHECK_THROWS_AS(dmt(*v, alpha, Weight{Rational(0)}, f1), std::invalid_argument);

  auto a2 = SimpleLieAlgebra::from_type("A2");
  auto form = standard_form(*a2);
  auto adj = build_irrep(a2, std::vector<int>{1, 1});
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 3; ++trial) {
    Weight chi = random_regular(rng, *a2, form);
    Weight g1{Rational(1), Rational(0)}, g2{Rational(0), Rational(1)};
    auto t1 = dmt(*adj, g1, chi, form), t2 = dmt(*adj, g2, chi, form);
    CHECK(commutator(t1, t2).is_zero_matrix());
    Weight gg = random_weight(rng, 2), gh = random_weight(rng, 2);
    Rational a = make_rational(3, 4), b = make_rational(-5, 3);
    Weight comb{a * gg[0] + b * gh[0], a * gg[1] + b * gh[1]};
    CHECK(dmt(*adj, comb, chi, form) == dmt(*adj, gg, chi, form).scaled(a) + dmt(*adj, gh, chi, form).scaled(b));
  }

  Weight bad{Rational(1), Rational(-1)};
  try {
    dmt(*adj, bad, bad, form);
    FAIL("expected rejection");
  } catch (const std::invalid_argument& e) {
    CHECK(std::string(e.what()).find("(1,1)") != std::string::npos);
  }
}

TEST_CASE("truncated Casimirs") {
  auto a2 = SimpleLieAlgebra::from_type("A2");
  auto form = standard_form(*a2);
  auto v = build_irrep(a2, std::vector<int>{2, 1});
  for (std::size_t r = 0; r < a2->num_positive_roots(); ++r) {
    auto c = truncated_casimir(*a2, v->generators, r, form);
    auto gens = v->generators;
    gens[a2->e_index(r)] = gens[a2->e_index(r)].scaled(Rational(7, 2));
    gens[a2->f_index(r)] = gens[a2->f_index(r)].scaled(Rational(2, 7));
    CHECK(truncated_casimir(*a2, gens, r, form) == c);
  }
}

TEST_CASE("enveloping-algebra forms agree with the operators") {
  auto a2 = SimpleLieAlgebra::from_type("A2");
  auto form = standard_form(*a2);
  auto v = build_irrep(a2, std::vector<int>{1, 0});
  TensorSpace t({v, v});
  Enveloping u(a2, 2);
  auto z = rat({2, -1});
  Weight chi{Rational(1, 2), Rational(3)};
  for (std::size_t i = 0; i < 2; ++i)
    CHECK(u.represent(gaudin_shifted_element(u, z, chi, i, form), t.generator_table(), t.dim()) ==
          gaudin_shifted(t, z, chi, i, form));

  Enveloping u1(a2, 1);
  auto adj = build_irrep(a2, std::vector<int>{1, 1});
  Weight gamma{Rational(2), Rational(-1)};
  CHECK(u1.represent(dmt_element(u1, gamma, chi, form), adj->generators, adj->dim()) == dmt(*adj, gamma, chi, form));
}

TEST_CASE("symmetrization of the quadratic Casimir") {
  auto a1 = SimpleLieAlgebra::from_type("A1");
  auto form = standard_form(*a1);
  auto duals = dual_bases(*a1, form);
  Enveloping u(a1);
  Polynomial p(3);
  for (std::size_t a = 0; a < 3; ++a)
    for (std::size_t b = 0; b < 3; ++b)
      p += Polynomial::variable(3, a) * Polynomial::variable(3, b) * (duals.dual[a][b] / 2);
  auto q = symmetrize_quantize(u, p);
  UElement direct;
  for (std::size_t a = 0; a < 3; ++a)
    for (std::size_t b = 0; b < 3; ++b)
      if (!is_zero(duals.dual[a][b]))
        direct[Word{static_cast<std::uint16_t>(a), static_cast<std::uint16_t>(b)}] += duals.dual[a][b] / 2;
  CHECK(q == u.normal_order(direct));
  CHECK(u.symbol(q) == p);
  auto v = build_irrep(a1, std::vector<int>{1});
  CHECK(u.represent(q, v->generators, 2) == SparseRat::identity(2).scaled(Rational(3, 4)));
}

TEST_CASE("spectral data bookkeeping") {
  auto a2 = SimpleLieAlgebra::from_type("A2");
  auto form = standard_form(*a2);
  auto v = build_irrep(a2, std::vector<int>{1, 0});
  TensorSpace t({v, v, v});
  auto z = rat({0, 1, 3});
  auto x = gaudin_shifted(t, z, Weight{Rational(1), Rational(2)}, 1, form);
  for (const auto& b : to_blocks(x, t, "Xi_chi")) {
    auto s = spectrum(b);
    std::size_t total = 0;
    for (auto m : s.multiplicities) total += m;
    CHECK(total == b.dim());
    CHECK(s.residual < 1e-9);
    auto rep = block_report(b, {}, true);
    CHECK(rep["dim"] == b.dim());
  }
}
