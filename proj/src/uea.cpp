#include "glab/uea.hpp"

#include <algorithm>
#include <stdexcept>

namespace glab {

Enveloping::Enveloping(AlgebraPtr g, std::size_t sites) : g_(std::move(g)), sites_(sites) {
  const std::size_t d = g_->dim(), l = g_->rank(), p = g_->num_positive_roots();
  if (sites_ * d > 0xffff)
    throw std::invalid_argument("Enveloping: too many generators");
  key_.resize(sites_ * d);
  for (std::size_t s = 0; s < sites_; ++s)
    for (std::size_t a = 0; a < d; ++a) {
      int local;
      if (a < l)
        local = static_cast<int>(p + a);  // h
      else if (a < l + p)
        local = static_cast<int>(p + l + (a - l));  // e
      else
        local = static_cast<int>(a - l - p);  // f
      key_[s * d + a] = static_cast<int>(s * d) + local;
    }
}

UElement Enveloping::scalar(const Rational& c) {
  UElement x;
  if (!is_zero(c)) x[Word{}] = c;
  return x;
}

UElement Enveloping::linear(std::size_t site, const Vec& x) const {
  if (site >= sites_) throw std::out_of_range("Enveloping: site out of range");
  UElement out;
  for (std::size_t a = 0; a < x.size(); ++a)
    if (!is_zero(x[a])) out[Word{static_cast<std::uint16_t>(generator(site, a))}] = x[a];
  return out;
}

void Enveloping::bracket_into(std::uint16_t a, std::uint16_t b,
                              std::vector<std::pair<std::uint16_t, Rational>>& out) const {
  out.clear();
  const std::size_t d = g_->dim();
  if (a / d != b / d) return;
  const std::size_t offset = (a / d) * d;
  for (const auto& [c, s] : g_->bracket_basis(a % d, b % d))
    out.push_back({static_cast<std::uint16_t>(offset + c), s});
}

UElement Enveloping::normal_order(const UElement& x) const {
  UElement done;
  std::map<Word, Rational> todo(x.begin(), x.end());
  std::vector<std::pair<std::uint16_t, Rational>> br;
  auto accumulate = [](std::map<Word, Rational>& m, Word w, const Rational& c) {
    if (is_zero(c)) return;
    auto [it, inserted] = m.try_emplace(std::move(w), c);
    if (!inserted) {
      it->second += c;
      if (is_zero(it->second)) m.erase(it);
    }
  };
  while (!todo.empty()) {
    auto node = todo.extract(todo.begin());
    Word w = std::move(node.key());
    Rational c = std::move(node.mapped());
    std::size_t i = 0;
    while (i + 1 < w.size() && key_[w[i]] <= key_[w[i + 1]]) ++i;
    if (i + 1 >= w.size()) {
      accumulate(done, std::move(w), c);
      continue;
    }
    bracket_into(w[i], w[i + 1], br);
    for (const auto& [k, s] : br) {
      Word shorter;
      shorter.reserve(w.size() - 1);
      shorter.insert(shorter.end(), w.begin(), w.begin() + static_cast<long>(i));
      shorter.push_back(k);
      shorter.insert(shorter.end(), w.begin() + static_cast<long>(i) + 2, w.end());
      accumulate(todo, std::move(shorter), c * s);
    }
    std::swap(w[i], w[i + 1]);
    accumulate(todo, std::move(w), c);
  }
  return done;
}

UElement Enveloping::add(const UElement& x, const UElement& y, const Rational& s) const {
  UElement out = x;
  for (const auto& [w, c] : y) {
    auto& v = out[w];
    v += c * s;
    if (is_zero(v)) out.erase(w);
  }
  return out;
}

UElement Enveloping::multiply(const UElement& x, const UElement& y) const {
  UElement raw;
  for (const auto& [w1, c1] : x)
    for (const auto& [w2, c2] : y) {
      Word w = w1;
      w.insert(w.end(), w2.begin(), w2.end());
      auto& v = raw[w];
      v += c1 * c2;
      if (is_zero(v)) raw.erase(w);
    }
  return normal_order(raw);
}

UElement Enveloping::commutator(const UElement& x, const UElement& y) const {
  return add(multiply(x, y), multiply(y, x), -1);
}

int Enveloping::degree(const UElement& x) {
  int d = -1;
  for (const auto& [w, c] : x) d = std::max(d, static_cast<int>(w.size()));
  return d;
}

Polynomial Enveloping::commutative_image(const UElement& x, int only_degree) const {
  Polynomial p(num_generators());
  for (const auto& [w, c] : x) {
    if (only_degree >= 0 && static_cast<int>(w.size()) != only_degree) continue;
    Monomial m = 0;
    for (auto gen : w) m += Polynomial::unit(gen);
    p.add_term(m, c);
  }
  return p;
}

Polynomial Enveloping::symbol(const UElement& x) const {
  UElement n = normal_order(x);
  return commutative_image(n, std::max(degree(n), 0));
}

UElement Enveloping::symmetrize(const Polynomial& p) const {
  if (p.nvars() != num_generators()) throw std::invalid_argument("symmetrize: arity mismatch");
  UElement raw;
  for (const auto& [m, c] : p.terms()) {
    Word letters;
    Rational weight = 1;
    for (std::size_t v = 0; v < p.nvars(); ++v) {
      unsigned e = Polynomial::exponent(m, v);
      for (unsigned k = 0; k < e; ++k) letters.push_back(static_cast<std::uint16_t>(v));
      for (unsigned k = 2; k <= e; ++k) weight *= k;
    }
    for (std::size_t k = 2; k <= letters.size(); ++k) weight /= static_cast<long>(k);
    // Distinct arrangements each carry prod(e_v!)/d!.
    std::sort(letters.begin(), letters.end());
    do {
      auto& v = raw[letters];
      v += c * weight;
      if (is_zero(v)) raw.erase(letters);
    } while (std::next_permutation(letters.begin(), letters.end()));
  }
  return normal_order(raw);
}

Polynomial Enveloping::unsymmetrize(const UElement& x) const {
  Polynomial out(num_generators());
  UElement rest = normal_order(x);
  while (!rest.empty()) {
    Polynomial top = commutative_image(rest, degree(rest));
    out += top;
    rest = add(rest, symmetrize(top), -1);
  }
  return out;
}

}  // namespace glab
