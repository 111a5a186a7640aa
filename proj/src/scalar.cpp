#include "glab/scalar.hpp"

#include <cctype>

namespace glab {

Rational parse_rational(const std::string& raw) {
  std::string text;
  for (char c : raw)
    if (!std::isspace(static_cast<unsigned char>(c))) text.push_back(c);
  if (text.empty()) throw std::invalid_argument("empty rational literal");

  auto dot = text.find('.');
  if (dot != std::string::npos) {
    if (text.find('/') != std::string::npos || text.find_first_of("eE") != std::string::npos)
      throw std::invalid_argument("unsupported rational literal: " + raw);
    bool negative = text[0] == '-';
    std::string body = (text[0] == '-' || text[0] == '+') ? text.substr(1) : text;
    dot = body.find('.');
    std::string digits = body.substr(0, dot) + body.substr(dot + 1);
    if (digits.empty()) throw std::invalid_argument("bad decimal literal: " + raw);
    for (char c : digits)
      if (!std::isdigit(static_cast<unsigned char>(c)))
        throw std::invalid_argument("bad decimal literal: " + raw);
    std::string den = "1" + std::string(body.size() - dot - 1, '0');
    mpz_class num_z(digits), den_z(den);
    Rational q(num_z, den_z);
    q.canonicalize();
    return negative ? Rational(-q) : q;
  }
  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    bool ok = std::isdigit(static_cast<unsigned char>(c)) || c == '/' ||
              ((c == '-' || c == '+') && (i == 0 || text[i - 1] == '/'));
    if (!ok) throw std::invalid_argument("bad rational literal: " + raw);
  }
  Rational q;
  try {
    q = Rational(text[0] == '+' ? text.substr(1) : text);
  } catch (const std::exception&) {
    throw std::invalid_argument("bad rational literal: " + raw);
  }
  if (q.get_den() == 0) throw std::invalid_argument("zero denominator: " + raw);
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) {
  Rational c = q;
  c.canonicalize();
  return c.get_str();
}

Rational binomial(long n, long k) {
  if (k < 0 || n < 0 || k > n) return Rational(0);
  mpz_class out;
  mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return Rational(out);
}

}  // namespace glab
