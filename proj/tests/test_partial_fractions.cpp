#include <doctest.h>

#include "glab/partial_fractions.hpp"
#include "glab/polynomial.hpp"

using namespace glab;

namespace {

using PF = PartialFractions<Rational, Rational>;

Rational direct(const PF& f, const Rational& x) {
  Rational v = 0, xp = 1;
  for (const auto& a : f.polynomial()) {
    v += a * xp;
    xp *= x;
  }
  for (const auto& [p, pr] : f.poles()) {
    Rational inv = 1 / Rational(x - p), ip = inv;
    for (const auto& c : pr) {
      v += c * ip;
      ip *= inv;
    }
  }
  return v;
}

PF sample_a() {
  return PF::monomial(Rational(2), 2) + PF::constant(Rational(-1)) + PF::pole(Rational(1), 2, Rational(3)) +
         PF::pole(Rational(-1, 2), 1, Rational(5, 7));
}
PF sample_b() {
  return PF::monomial(Rational(1, 3), 1) + PF::pole(Rational(1), 1, Rational(-2)) +
         PF::pole(Rational(2), 3, Rational(1, 4)) + PF::pole(Rational(0), 1, Rational(1));
}

}  // namespace

TEST_CASE("partial-fraction arithmetic matches pointwise evaluation") {
  PF a = sample_a(), b = sample_b();
  for (const Rational x : {Rational(3, 5), Rational(-7, 3), Rational(11, 2), Rational(1, 9)}) {
    CHECK(direct(a * b, x) == direct(a, x) * direct(b, x));
    CHECK(direct(a + b, x) == direct(a, x) + direct(b, x));
    CHECK(direct(a * a * b, x) == direct(a, x) * direct(a, x) * direct(b, x));
    CHECK(a.evaluate(x) == direct(a, x));
    CHECK(direct(a.invert_variable(), x) == direct(a, 1 / x));
    CHECK(direct(b.invert_variable(), x) == direct(b, 1 / x));
  }
  CHECK((a - a).is_zero());
  CHECK((a * b).pole_order(Rational(1)) == 3);
  CHECK((a * b).principal_coefficient(Rational(1), 3) == -6);
}

TEST_CASE("derivative and Laurent expansion") {
  PF a = sample_a();
  auto d = a.derivative();
  Rational x = Rational(1, 3), h = Rational(1, 1000000);
  // exact check of the rational derivative through a symmetric difference bound
  Rational fd = (direct(a, x + h) - direct(a, x - h)) / (2 * h);
  CHECK(std::abs(Rational(fd - direct(d, x)).get_d()) < 1e-6);

  // Laurent at the double pole 1: coefficients reproduce the function near 1
  auto l = a.laurent(Rational(1), 4);
  REQUIRE(l.size() == 7);
  CHECK(l[0] == 3);
  CHECK(l[1] == 0);
  Rational t = Rational(1, 100), approx = 0, tp = 1 / (t * t);
  for (const auto& c : l) {
    approx += c * tp;
    tp *= t;
  }
  CHECK(std::abs(Rational(approx - direct(a, 1 + t)).get_d()) < 1e-8);
  CHECK_THROWS_AS(a.evaluate(Rational(1)), std::domain_error);
}

TEST_CASE("complex and polynomial coefficients") {
  using PFC = PartialFractions<Complex, Complex>;
  PFC f = PFC::pole(Complex(0, 1), 2, Complex(1, 0)) + PFC::monomial(Complex(0.5, 0), 1);
  PFC g = PFC::pole(Complex(0, -1), 1, Complex(2, 1));
  Complex x(0.3, 0.7);
  auto fx = 1.0 / ((x - Complex(0, 1)) * (x - Complex(0, 1))) + 0.5 * x;
  auto gx = Complex(2, 1) / (x - Complex(0, -1));
  CHECK(std::abs((f * g).evaluate(x) - fx * gx) < 1e-12);

  using PFP = PartialFractions<Polynomial, Rational>;
  auto xv = Polynomial::variable(2, 0), yv = Polynomial::variable(2, 1);
  PFP m = PFP::pole(Rational(0), 1, xv) + PFP::pole(Rational(1), 1, yv);
  auto sq = m * m;
  // x^2/t^2 + y^2/(t-1)^2 + 2xy (1/(t-1) - 1/t)
  CHECK(sq.principal_coefficient(Rational(0), 2) == xv * xv);
  CHECK(sq.principal_coefficient(Rational(1), 1) == xv * yv * Rational(2));
  CHECK(sq.principal_coefficient(Rational(0), 1) == xv * yv * Rational(-2));
  CHECK(sq.polynomial().empty());
}
