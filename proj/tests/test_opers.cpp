#include <doctest.h>

#include <Eigen/Dense>

#include <numbers>
#include <numeric>
#include <random>

#include "glab/opers.hpp"

using namespace glab;

namespace {

using RFQ = RationalFunction<Rational>;

BorelPart<Rational> cartan_borel(const SimpleLieAlgebra& g, const std::vector<RFQ>& labels) {
  BorelPart<Rational> b(g.dim());
  auto form = standard_form(g);
  for (std::size_t i = 0; i < labels.size(); ++i) {
    Weight unit(g.rank(), Rational(0));
    unit[i] = 1;
    Vec h = cartan_element(g, form, unit);
    for (std::size_t a = 0; a < g.dim(); ++a)
      if (!is_zero(h[a])) b[a] += labels[i].scaled(h[a]);
  }
  return b;
}

RFQ random_rf(std::mt19937_64& rng, int max_order) {
  std::uniform_int_distribution<int> coef(-3, 3), pick(0, 2), order(0, max_order);
  const Rational pts[] = {Rational(0), Rational(1), make_rational(-1, 2)};
  RFQ f = RFQ::constant(Rational(coef(rng)));
  for (int k = 0; k < 2; ++k) {
    int o = order(rng);
    if (o > 0) f += RFQ::pole(pts[pick(rng)], o, Rational(coef(rng)));
  }
  return f;
}

BorelPart<Rational> random_borel(const SimpleLieAlgebra& g, std::mt19937_64& rng, bool strictly_positive) {
  BorelPart<Rational> b(g.dim());
  for (std::size_t a = 0; a < g.dim(); ++a) {
    int d = g.principal_degree(a);
    if (d > 0 || (d == 0 && !strictly_positive)) b[a] = random_rf(rng, 2);
  }
  return b;
}

bool same(const CanonicalOper<Rational>& a, const CanonicalOper<Rational>& b) { return a.v == b.v; }

BetheProblem a1_problem(std::vector<double> z, std::vector<int> lambda, const Rational& chi, std::size_t m) {
  BetheProblem p;
  p.g = SimpleLieAlgebra::from_type("A1");
  for (double x : z) p.z.push_back(Complex(x));
  for (int l : lambda) p.lambda.push_back(Weight{Rational(l)});
  p.chi = Weight{chi};
  p.colors.assign(m, 0);
  return p;
}

}  // namespace

TEST_CASE("A1 canonical form: v = beta^2 + beta'") {
  auto g = SimpleLieAlgebra::from_type("A1");
  auto zero = canonicalize<Rational>(*g, BorelPart<Rational>(g->dim()));
  REQUIRE(zero.v.size() == 1);
  CHECK(zero.v[0].is_zero());

  // b = beta h (label 2 beta)
  auto c = canonicalize<Rational>(*g, cartan_borel(*g, {RFQ::constant(Rational(6))}));
  CHECK(c.v[0] == RFQ::constant(Rational(9)));

  const Rational kappa(5);
  auto k = canonicalize<Rational>(*g, cartan_borel(*g, {RFQ::pole(Rational(0), 1, 2 * kappa)}));
  CHECK(k.v[0] == RFQ::pole(Rational(0), 2, kappa * kappa - kappa));

  BorelPart<Rational> bad(g->dim());
  bad[g->f_index(0)] = RFQ::constant(Rational(1));
  CHECK_THROWS_AS(canonicalize<Rational>(*g, bad), std::invalid_argument);
}

TEST_CASE("canonical form is idempotent and gauge invariant") {
  std::mt19937_64 rng(7);
  for (const char* type : {"A1", "A2", "A3"}) {
    auto g = SimpleLieAlgebra::from_type(type);
    for (int trial = 0; trial < 10; ++trial) {
      auto b = random_borel(*g, rng, false);
      auto c = canonicalize(*g, b);
      c.g = g;
      CHECK(same(canonicalize(*g, borel_part(c)), c));
      auto n = random_borel(*g, rng, true);
      CHECK(same(canonicalize(*g, gauge_transform(*g, b, n)), c));
    }
    BorelPart<Rational> wrong(g->dim());
    wrong[0] = RFQ::constant(Rational(1));
    CHECK_THROWS_AS(gauge_transform(*g, wrong, wrong), std::invalid_argument);
  }
}

TEST_CASE("singularity order and residue_m") {
  auto g = SimpleLieAlgebra::from_type("A1");
  CanonicalOper<Rational> o;
  o.g = g;
  o.v = {RFQ::pole(Rational(0), 2, make_rational(3, 4)) + RFQ::pole(Rational(1), 4, Rational(2))};
  CHECK(o.singularity_order(Rational(0)) == 1);
  CHECK(o.singularity_order(Rational(1)) == 2);
  CHECK(o.singularity_order(Rational(5)) == 0);
  CHECK(residue_m(o, Rational(0), 1)[0] == Rational(1));
  CHECK(residue_m(o, Rational(1), 2)[0] == Rational(2));
  CHECK(residue_m(o, Rational(5), 1)[0] == make_rational(1, 4));
  CHECK_THROWS_AS(residue_m(o, Rational(1), 1), std::invalid_argument);

  // lambda = n at a regular singularity: residue ((n+1)/2)^2 = slice coordinate of -lambda - rho
  for (int n = 0; n < 5; ++n) {
    auto c = canonicalize<Rational>(*g, cartan_borel(*g, {RFQ::pole(Rational(0), 1, Rational(-n))}));
    c.g = g;
    Rational want = Rational(n + 1) * Rational(n + 1) / 4;
    CHECK(residue_m(c, Rational(0), 1)[0] == want);
    CHECK(expected_residue(*g, standard_form(*g), Weight{Rational(n)})[0] == want);
  }
}

TEST_CASE("A2 residues match the slice coordinates of -lambda - rho") {
  auto g = SimpleLieAlgebra::from_type("A2");
  auto form = standard_form(*g);
  for (auto lam : {Weight{Rational(1), Rational(0)}, Weight{Rational(2), Rational(1)}, Weight{Rational(0), Rational(3)}}) {
    CartanConnection<Rational> c;
    c.g = g;
    for (const auto& l : lam) c.labels.push_back(RFQ::pole(Rational(0), 1, -l) + RFQ::constant(Rational(1)));
    auto o = miura(c, form);
    CHECK(o.singularity_order(Rational(0)) == 1);
    CHECK(residue_m(o, Rational(0), 1) == expected_residue(*g, form, lam));
  }
}

TEST_CASE("Miura poles at Bethe roots cancel exactly when the Bethe equations hold") {
  auto g = SimpleLieAlgebra::from_type("A1");
  auto form = standard_form(*g);
  // lambda = 3 at 0, chi = 2: root at 3/2
  for (auto [w, ok] : {std::pair{make_rational(3, 2), true}, std::pair{Rational(1), false}}) {
    auto c = bethe_connection(*g, {Rational(0)}, {Weight{Rational(3)}}, Weight{Rational(2)}, {0}, {w});
    for (auto& f : c.labels) f = -f;
    auto o = miura(c, form);
    CHECK((o.v[0].pole_order(w) == 0) == ok);
  }

  // A2, one root of each colour, exact rational data
  auto a2 = SimpleLieAlgebra::from_type("A2");
  BetheProblem p;
  p.g = a2;
  p.z = {Complex(0.0), Complex(1.0)};
  p.lambda = {Weight{Rational(1), Rational(0)}, Weight{Rational(0), Rational(1)}};
  p.chi = Weight{Rational(1), Rational(2)};
  p.colors = {0, 1};
  auto rep = solve(p);
  REQUIRE(!rep.solutions.empty());
  for (const auto& s : rep.solutions) {
    auto o = oper_from_bethe(p, s);
    for (auto w : s.w)
      for (const auto& f : o.v) CHECK(principal_magnitude(f, w) < 1e-7);
    auto moved = s;
    moved.w[0] += 0.01;
    CHECK_THROWS_AS(oper_from_bethe(p, moved), std::invalid_argument);
    auto c = bethe_connection(p, moved.w);
    for (auto& f : c.labels) f = -f;
    auto bad = miura(c, standard_form(*a2));
    double worst = 0.0;
    for (const auto& f : bad.v) worst = std::max(worst, principal_magnitude(f, moved.w[0]));
    CHECK(worst > 1e-3);
  }
}

TEST_CASE("behaviour at infinity") {
  for (const char* type : {"A1", "A2"}) {
    auto g = SimpleLieAlgebra::from_type(type);
    auto form = standard_form(*g);
    std::vector<Rational> z = {Rational(0), Rational(2)};
    std::vector<Weight> lam(2, Weight(g->rank(), Rational(1)));
    Weight chi(g->rank());
    for (std::size_t i = 0; i < chi.size(); ++i) chi[i] = Rational(static_cast<long>(i) + 2);
    std::vector<std::size_t> colors(g->rank());
    std::iota(colors.begin(), colors.end(), 0);
    std::vector<Rational> w;
    for (std::size_t j = 0; j < colors.size(); ++j) w.push_back(make_rational(static_cast<long>(j) + 3, 7));
    auto lambda = bethe_connection(*g, z, lam, chi, colors, w);

    // 1/s coefficient of the expansion: -(sum lambda_i - sum alpha + 2 rho)
    auto inf = infinity_expansion(lambda);
    Weight target = lam[0];
    for (std::size_t k = 0; k < target.size(); ++k) {
      target[k] += lam[1][k];
      for (auto c : colors) target[k] -= g->cartan(k, c);
    }
    for (std::size_t k = 0; k < target.size(); ++k)
      CHECK(inf.labels[k].principal_coefficient(Rational(0), 1) == -(target[k] + 2));

    // the oper of -lambda, seen at infinity, is the Miura oper of -lambda_infinity
    auto neg = lambda;
    for (auto& f : neg.labels) f = -f;
    auto o = miura(neg, form);
    auto at_inf = oper_at_infinity(o);
    for (auto& f : inf.labels) f = -f;
    CHECK(same(at_inf, miura(inf, form)));

    // irregular of order 2 at infinity with 2-residue given by -chi
    CHECK(at_inf.singularity_order(Rational(0)) == 2);
    Weight mchi = chi;
    for (auto& x : mchi) x = -x;
    CHECK(residue_m(at_inf, Rational(0), 2) == slice_coordinates(*g, form, mchi));
  }
  // zero connection: -2 rho / s
  auto g = SimpleLieAlgebra::from_type("A2");
  CartanConnection<Rational> c{g, {RFQ{}, RFQ{}}, {}};
  auto inf = infinity_expansion(c);
  CHECK(inf.labels[0] == RFQ::pole(Rational(0), 1, Rational(-2)));
}

TEST_CASE("A1 eigenvalue function of the Bethe oper") {
  auto g = SimpleLieAlgebra::from_type("A1");
  auto form = standard_form(*g);
  auto p = a1_problem({0.0, 1.0, -1.5}, {1, 2, 1}, make_rational(3, 2), 2);
  auto v1 = build_irrep(g, std::vector<int>{1});
  auto v2 = build_irrep(g, std::vector<int>{2});
  TensorSpace space({v1, v2, v1});
  auto ops = hamiltonian_family(p, space, form);
  auto rep = solve(p);
  REQUIRE(rep.solutions.size() >= 2);
  for (const auto& s : rep.solutions) {
    auto chk = eigen_check(bethe_vector(p, space, s), ops);
    REQUIRE(chk.pass);
    auto o = oper_from_bethe(p, s);
    auto f = quadratic_eigenvalue_function(p, chk.eigenvalues, form);
    for (std::size_t i = 0; i < p.z.size(); ++i) {
      CHECK(std::abs(o.v[0].principal_coefficient(p.z[i], 2) - f.principal_coefficient(p.z[i], 2)) < 1e-9);
      CHECK(std::abs(o.v[0].principal_coefficient(p.z[i], 1) - f.principal_coefficient(p.z[i], 1)) < 1e-8);
    }
    CHECK(std::abs(o.v[0].polynomial().at(0) - f.polynomial().at(0)) < 1e-12);
  }
}

TEST_CASE("monodromy") {
  auto control = a1_control_oper(0.65);
  auto around = monodromy_around(control, Complex(0.0), 0.5, {Complex(0.0)});
  CHECK(around.ok);
  CHECK(around.projective_distance > 0.1);
  CHECK(around.det_error < 1e-8);
  // exponents 1/2 +- kappa: eigenvalue ratio exp(4 pi i kappa)
  Eigen::Matrix2cd m;
  m << around.matrix[0][0], around.matrix[0][1], around.matrix[1][0], around.matrix[1][1];
  Eigen::ComplexEigenSolver<Eigen::Matrix2cd> es(m);
  Complex ratio = es.eigenvalues()(0) / es.eigenvalues()(1);
  Complex want = std::exp(Complex(0.0, 4 * std::numbers::pi * 0.65));
  CHECK(std::min(std::abs(ratio - want), std::abs(1.0 / ratio - want)) < 1e-7);

  auto contractible = monodromy_around(control, Complex(2.0), 0.5, {Complex(0.0)});
  CHECK(contractible.projective_distance < 1e-8);
  CHECK(std::abs(contractible.matrix[0][0] - 1.0) < 1e-8);

  auto p = a1_problem({0.0, 1.0}, {1, 1}, make_rational(3, 2), 1);
  for (const auto& s : solve(p).solutions) {
    auto o = oper_from_bethe(p, s);
    std::vector<Complex> sing = p.z;
    sing.insert(sing.end(), s.w.begin(), s.w.end());
    auto gm = global_monodromy(o, sing);
    for (const auto& l : gm.local) {
      CHECK(l.ok);
      CHECK(l.projective_distance < 1e-6);
    }
    CHECK(gm.composite_distance < 1e-6);
  }
}

TEST_CASE("global monodromy loop ordering") {
  // two Fuchsian points with non-trivial local monodromy: the product of based loops equals the outer circle
  CanonicalOper<Complex> o;
  o.g = SimpleLieAlgebra::from_type("A1");
  o.v = {RationalFunction<Complex>::pole(Complex(0.0), 2, Complex(0.1)) +
         RationalFunction<Complex>::pole(Complex(1.0, 0.3), 2, Complex(-0.07)) +
         RationalFunction<Complex>::pole(Complex(0.0), 1, Complex(0.3)) +
         RationalFunction<Complex>::pole(Complex(1.0, 0.3), 1, Complex(-0.3))};
  auto gm = global_monodromy(o, {Complex(0.0), Complex(1.0, 0.3)});
  for (const auto& l : gm.local) CHECK(l.projective_distance > 1e-2);
  CHECK(gm.composite_distance < 1e-7);
}
