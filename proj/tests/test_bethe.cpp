#include <doctest.h>

#include <random>

#include "glab/bethe.hpp"

using namespace glab;

namespace {

BetheProblem a1_pair(const Rational& c, std::size_t m) {
  BetheProblem p;
  p.g = SimpleLieAlgebra::from_type("A1");
  p.z = {Complex(0.0), Complex(1.0)};
  p.lambda = {Weight{Rational(1)}, Weight{Rational(1)}};
  p.chi = Weight{c};
  p.colors.assign(m, 0);
  return p;
}

}  // namespace

TEST_CASE("Bethe residuals") {
  BetheProblem one;
  one.g = SimpleLieAlgebra::from_type("A1");
  one.z = {Complex(0.0)};
  one.lambda = {Weight{Rational(3)}};
  one.chi = Weight{Rational(2)};
  one.colors = {0};
  CHECK(residual(one, {Complex(1.5)})[0] < 1e-15);
  CHECK(residual(one, {Complex(1.0)})[0] > 0.1);

  one.colors.clear();
  CHECK(residual(one, {}).empty());

  // 1/w + 1/(w-1) = c  <=>  c w^2 - (2 + c) w + 1 = 0
  const double c = 1.7;
  auto p = a1_pair(make_rational(17, 10), 1);
  double disc = std::sqrt((2 + c) * (2 + c) - 4 * c);
  for (double w : {((2 + c) + disc) / (2 * c), ((2 + c) - disc) / (2 * c)}) CHECK(residual(p, {Complex(w)})[0] < 1e-14);
  CHECK_THROWS_AS(residual(p, {Complex(0.0)}), std::invalid_argument);

  // same-colour permutation symmetry
  auto p2 = a1_pair(make_rational(3, 2), 2);
  std::vector<Complex> w{Complex(0.3, 0.2), Complex(-1.1, 0.5)}, sw{w[1], w[0]};
  auto r = residual(p2, w), rs = residual(p2, sw);
  CHECK(r[0] == doctest::Approx(rs[1]));
  CHECK(r[1] == doctest::Approx(rs[0]));
}

TEST_CASE("solver finds the expected classes") {
  const double c = 1.7;
  auto p = a1_pair(make_rational(17, 10), 1);
  auto rep = solve(p);
  REQUIRE(rep.solutions.size() == 2);
  double disc = std::sqrt((2 + c) * (2 + c) - 4 * c);
  std::vector<double> expect{((2 + c) - disc) / (2 * c), ((2 + c) + disc) / (2 * c)};
  std::vector<double> got{rep.solutions[0].w[0].real(), rep.solutions[1].w[0].real()};
  std::sort(got.begin(), got.end());
  CHECK(got[0] == doctest::Approx(expect[0]).epsilon(1e-10));
  CHECK(got[1] == doctest::Approx(expect[1]).epsilon(1e-10));

  CHECK(solve(a1_pair(Rational(2), 0)).solutions.size() == 1);
  CHECK(solve(a1_pair(make_rational(7, 3), 2)).solutions.size() == 1);

  // large chi: one root near each point, w ~ z_i + <lambda_i, alpha^vee> / <chi, alpha^vee>
  auto big = a1_pair(Rational(1000), 1);
  auto br = solve(big);
  REQUIRE(br.solutions.size() == 2);
  for (const auto& s : br.solutions) {
    double w = s.w[0].real();
    double near = std::abs(w) < 0.5 ? 0.0 : 1.0;
    CHECK(std::abs(w - (near + 1.0 / 1000)) < 1e-5);
  }

  // scaling covariance (z, w, chi) -> (c z, c w, chi / c)
  auto scaled = a1_pair(make_rational(17, 20), 1);
  scaled.z = {Complex(0.0), Complex(2.0)};
  for (const auto& s : rep.solutions) CHECK(residual(scaled, {2.0 * s.w[0]})[0] < 1e-12);
}

TEST_CASE("Bethe vectors and eigenvector checks") {
  auto a1 = SimpleLieAlgebra::from_type("A1");
  auto form = standard_form(*a1);
  auto v1 = build_irrep(a1, std::vector<int>{1});
  TensorSpace space({v1, v1});

  auto p0 = a1_pair(make_rational(5, 4), 0);
  auto vec0 = bethe_vector(p0, space, solve(p0).solutions.at(0));
  CHECK(vec0.full[0] == Complex(1.0));
  CHECK(vec0.summands == 1);

  auto p = a1_pair(make_rational(5, 4), 1);
  auto sols = solve(p).solutions;
  REQUIRE(sols.size() == 2);
  auto ops = hamiltonian_family(p, space, form);
  for (const auto& s : sols) {
    auto v = bethe_vector(p, space, s);
    CHECK(v.weight == Weight{Rational(0)});
    CHECK(v.summands == 2);
    // f^{(1)} v (x) v / (w - z_1) + v (x) f^{(2)} v / (w - z_2)
    std::vector<Complex> hw(4, 0.0);
    hw[0] = 1.0;
    auto f1 = space.site_generator(0, a1->f_index(0)).cast<Complex>().apply(hw);
    auto f2 = space.site_generator(1, a1->f_index(0)).cast<Complex>().apply(hw);
    double err = 0.0;
    for (std::size_t k = 0; k < 4; ++k)
      err = std::max(err, std::abs(v.full[k] - f1[k] / s.w[0] - f2[k] / (s.w[0] - 1.0)));
    CHECK(err < 1e-14);
    auto c = eigen_check(v, ops);
    CHECK(c.pass);
    CHECK(c.max_residual <= 1e-8);
  }

  // eigenvalue of the empty solution
  auto ops0 = hamiltonian_family(p0, space, form);
  auto c0 = eigen_check(vec0 = bethe_vector(p0, space, solve(p0).solutions.at(0)), ops0);
  REQUIRE(c0.pass);
  // (lambda_1, lambda_2)/(z_1 - z_2) + (-chi, lambda_1)
  double expect = weight_pairing(*a1, form, Weight{Rational(1)}, Weight{Rational(1)}).get_d() / (0.0 - 1.0) -
                  weight_pairing(*a1, form, Weight{make_rational(5, 4)}, Weight{Rational(1)}).get_d();
  CHECK(std::abs(c0.eigenvalues[0] - expect) < 1e-12);
}

TEST_CASE("census") {
  auto a1 = SimpleLieAlgebra::from_type("A1");
  auto form = standard_form(*a1);
  auto v1 = build_irrep(a1, std::vector<int>{1});
  TensorSpace space({v1, v1});
  auto base = a1_pair(make_rational(9, 7), 0);
  std::vector<std::size_t> classes;
  std::size_t total = 0;
  for (const auto& [w, idx] : space.weight_blocks()) {
    auto e = census(base, space, w, form);
    classes.push_back(e.solution_classes);
    CHECK(e.matched_eigenvectors == e.block_dimension);
    total += e.matched_eigenvectors;
  }
  std::sort(classes.begin(), classes.end());
  CHECK(classes == std::vector<std::size_t>{1, 1, 2});
  CHECK(total == 4);

  auto v3 = build_irrep(a1, std::vector<int>{3});
  TensorSpace one({v3});
  BetheProblem b;
  b.g = a1;
  b.z = {Complex(0.5)};
  b.lambda = {Weight{Rational(3)}};
  b.chi = Weight{make_rational(-2, 3)};
  for (const auto& [w, idx] : one.weight_blocks()) {
    auto e = census(b, one, w, form);
    CHECK(e.solution_classes == 1);
    CHECK(e.matched_eigenvectors == 1);
  }

  auto csv = solutions_csv(a1_pair(Rational(1), 1), solve(a1_pair(Rational(1), 1)).solutions);
  CHECK(csv.rfind("class,color,w_re,w_im,residual\n", 0) == 0);
  CHECK_THROWS_AS(validate(a1_pair(Rational(0), 1), form), std::invalid_argument);
}

TEST_CASE("A2 Bethe vectors") {
  auto a2 = SimpleLieAlgebra::from_type("A2");
  auto form = standard_form(*a2);
  auto v = build_irrep(a2, std::vector<int>{1, 0});
  TensorSpace space({v, v});
  BetheProblem base;
  base.g = a2;
  base.z = {Complex(0.0), Complex(1.0)};
  base.lambda = {Weight{Rational(1), Rational(0)}, Weight{Rational(1), Rational(0)}};
  base.chi = Weight{make_rational(3, 2), make_rational(-2, 5)};
  std::size_t total = 0;
  for (const auto& [w, idx] : space.weight_blocks()) {
    auto e = census(base, space, w, form);
    CHECK(e.matched_eigenvectors == e.block_dimension);
    total += e.matched_eigenvectors;
  }
  CHECK(total == 9);
}
