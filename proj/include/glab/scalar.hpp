#pragma once

#include <gmpxx.h>

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace glab {

using Rational = mpq_class;
using Complex = std::complex<double>;

/// Parses "p", "p/q" or a decimal literal such as "-0.25" into an exact rational.
Rational parse_rational(const std::string& text);

/// Canonical "p/q" (or "p" when q = 1) form used by every serializer.
std::string to_string(const Rational& q);

inline Rational make_rational(long num, long den = 1) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

// Field operations shared by the exact and the floating code paths.

inline bool is_zero(const Rational& x) { return sgn(x) == 0; }
inline bool is_zero(const Complex& x) { return x == Complex(0.0, 0.0); }
inline bool is_zero(double x) { return x == 0.0; }

inline double magnitude(const Rational& x) { return std::abs(x.get_d()); }
inline double magnitude(const Complex& x) { return std::abs(x); }
inline double magnitude(double x) { return std::abs(x); }

template <class T>
T from_rational(const Rational& q);

template <>
inline Rational from_rational<Rational>(const Rational& q) {
  return q;
}
template <>
inline Complex from_rational<Complex>(const Rational& q) {
  return Complex(q.get_d(), 0.0);
}
template <>
inline double from_rational<double>(const Rational& q) {
  return q.get_d();
}

inline Complex to_complex(const Rational& q) { return Complex(q.get_d(), 0.0); }
inline Complex to_complex(const Complex& z) { return z; }

/// Binomial coefficient C(n, k) as an exact integer, 0 outside the range.
Rational binomial(long n, long k);

/// Total order on scalars so they can key ordered containers.
struct ScalarLess {
  bool operator()(const Rational& a, const Rational& b) const { return a < b; }
  bool operator()(const Complex& a, const Complex& b) const {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  }
};

template <class T>
std::vector<T> convert_vector(const std::vector<Rational>& v) {
  std::vector<T> out;
  out.reserve(v.size());
  for (const auto& q : v) out.push_back(from_rational<T>(q));
  return out;
}

}  // namespace glab
