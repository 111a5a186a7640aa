#include "glab/polynomial.hpp"

#include <algorithm>
#include <stdexcept>

namespace glab {

Polynomial::Polynomial(std::size_t nvars) : nvars_(nvars) {
  if (nvars > kMaxVars) throw std::invalid_argument("Polynomial: too many variables");
}

Polynomial Polynomial::constant(std::size_t nvars, const Rational& c) {
  Polynomial p(nvars);
  p.add_term(0, c);
  return p;
}

Polynomial Polynomial::variable(std::size_t nvars, std::size_t var, const Rational& coeff) {
  if (var >= nvars) throw std::invalid_argument("Polynomial: variable out of range");
  Polynomial p(nvars);
  p.add_term(unit(var), coeff);
  return p;
}

unsigned Polynomial::total_degree(Monomial m) {
  unsigned d = 0;
  while (m != 0) {
    d += static_cast<unsigned>(m & 15);
    m >>= 4;
  }
  return d;
}

std::vector<unsigned> Polynomial::exponents(Monomial m) const {
  std::vector<unsigned> e(nvars_);
  for (std::size_t i = 0; i < nvars_; ++i) e[i] = exponent(m, i);
  return e;
}

int Polynomial::degree() const {
  int d = -1;
  for (const auto& [m, c] : terms_) d = std::max(d, static_cast<int>(total_degree(m)));
  return d;
}

Polynomial Polynomial::homogeneous_part(int d) const {
  Polynomial out(nvars_);
  for (const auto& [m, c] : terms_)
    if (static_cast<int>(total_degree(m)) == d) out.terms_.emplace(m, c);
  return out;
}

void Polynomial::add_term(Monomial m, const Rational& c) {
  if (glab::is_zero(c)) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (glab::is_zero(it->second)) terms_.erase(it);
  }
}

void Polynomial::unify(const Polynomial& o) {
  // A default-constructed polynomial is a zero of any arity.
  if (nvars_ == o.nvars_ || o.nvars_ == 0) return;
  if (nvars_ == 0 && terms_.empty()) {
    nvars_ = o.nvars_;
    return;
  }
  throw std::invalid_argument("Polynomial: arity mismatch");
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  unify(o);
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  unify(o);
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

Polynomial& Polynomial::operator*=(const Rational& s) {
  if (glab::is_zero(s)) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, c] : terms_) c *= s;
  return *this;
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
  if (terms_.empty() || o.terms_.empty()) return Polynomial(std::max(nvars_, o.nvars_));
  if (nvars_ != o.nvars_) throw std::invalid_argument("Polynomial: arity mismatch");
  if (degree() + o.degree() > static_cast<int>(kMaxExponent))
    throw std::overflow_error("Polynomial: degree exceeds packed exponent range");
  Polynomial out(nvars_);
  out.terms_.reserve(terms_.size() * o.terms_.size());
  Rational prod;
  for (const auto& [m1, c1] : terms_)
    for (const auto& [m2, c2] : o.terms_) {
      prod = c1 * c2;
      out.add_term(m1 + m2, prod);
    }
  return out;
}

bool Polynomial::operator==(const Polynomial& o) const {
  if (terms_.empty() && o.terms_.empty()) return true;
  if (nvars_ != o.nvars_ || terms_.size() != o.terms_.size()) return false;
  for (const auto& [m, c] : terms_) {
    auto it = o.terms_.find(m);
    if (it == o.terms_.end() || it->second != c) return false;
  }
  return true;
}

Polynomial Polynomial::derivative(std::size_t var) const {
  Polynomial out(nvars_);
  for (const auto& [m, c] : terms_) {
    unsigned e = exponent(m, var);
    if (e == 0) continue;
    out.add_term(m - unit(var), c * e);
  }
  return out;
}

Polynomial Polynomial::directional_derivative(const std::vector<Rational>& direction) const {
  if (direction.size() != nvars_) throw std::invalid_argument("directional_derivative: arity mismatch");
  Polynomial out(nvars_);
  for (const auto& [m, c] : terms_)
    for (std::size_t v = 0; v < nvars_; ++v) {
      unsigned e = exponent(m, v);
      if (e == 0 || glab::is_zero(direction[v])) continue;
      out.add_term(m - unit(v), c * e * direction[v]);
    }
  return out;
}

Rational Polynomial::evaluate(const std::vector<Rational>& point) const {
  if (point.size() != nvars_) throw std::invalid_argument("evaluate: arity mismatch");
  Rational total = 0;
  for (const auto& [m, c] : terms_) {
    Rational t = c;
    for (std::size_t v = 0; v < nvars_ && !glab::is_zero(t); ++v)
      for (unsigned e = exponent(m, v); e > 0; --e) t *= point[v];
    total += t;
  }
  return total;
}

std::vector<Rational> Polynomial::gradient(const std::vector<Rational>& point) const {
  std::vector<Rational> g(nvars_);
  for (std::size_t v = 0; v < nvars_; ++v) g[v] = derivative(v).evaluate(point);
  return g;
}

std::vector<Rational> Polynomial::linear_coefficients() const {
  std::vector<Rational> out(nvars_, Rational(0));
  for (const auto& [m, c] : terms_) {
    if (total_degree(m) != 1) throw std::invalid_argument("linear_coefficients: polynomial is not linear");
    for (std::size_t v = 0; v < nvars_; ++v)
      if (exponent(m, v) == 1) out[v] = c;
  }
  return out;
}

Polynomial embed_site(const Polynomial& p, std::size_t site, std::size_t sites) {
  Polynomial out(p.nvars() * sites);
  for (const auto& [m, c] : p.terms()) out.add_term(m << (4 * p.nvars() * site), c);
  return out;
}

namespace {

std::vector<std::pair<Monomial, Rational>> sorted_terms(
    const std::unordered_map<Monomial, Rational, MonomialHash>& terms) {
  std::vector<std::pair<Monomial, Rational>> out(terms.begin(), terms.end());
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

}  // namespace

nlohmann::json Polynomial::to_json() const {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& [m, c] : sorted_terms(terms_)) j.push_back({exponents(m), glab::to_string(c)});
  return j;
}

std::string Polynomial::to_string(const std::vector<std::string>& names) const {
  if (terms_.empty()) return "0";
  std::string s;
  for (const auto& [m, c] : sorted_terms(terms_)) {
    if (!s.empty()) s += " + ";
    s += "(" + glab::to_string(c) + ")";
    for (std::size_t v = 0; v < nvars_; ++v) {
      unsigned e = exponent(m, v);
      if (e == 0) continue;
      s += "*" + (v < names.size() ? names[v] : "x" + std::to_string(v));
      if (e > 1) s += "^" + std::to_string(e);
    }
  }
  return s;
}

}  // namespace glab
