#include "glab/bethe.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <numbers>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>

namespace glab {

namespace {

double max_abs(const std::vector<Complex>& v) {
  double m = 0.0;
  for (const auto& x : v) m = std::max(m, std::abs(x));
  return m;
}

double norm2(const std::vector<Complex>& v) {
  double s = 0.0;
  for (const auto& x : v) s += std::norm(x);
  return std::sqrt(s);
}

nlohmann::json complex_json(const Complex& z) { return {z.real(), z.imag()}; }

nlohmann::json weight_json(const Weight& w) {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& q : w) j.push_back(to_string(q));
  return j;
}

double label(const Weight& w, std::size_t i) { return w[i].get_d(); }

struct Separation {
  double roots = std::numeric_limits<double>::infinity();
  double points = std::numeric_limits<double>::infinity();
};

Separation separation(const BetheProblem& p, const std::vector<Complex>& w) {
  Separation s;
  for (std::size_t j = 0; j < w.size(); ++j) {
    for (std::size_t k = j + 1; k < w.size(); ++k) s.roots = std::min(s.roots, std::abs(w[j] - w[k]));
    for (const auto& z : p.z) s.points = std::min(s.points, std::abs(w[j] - z));
  }
  return s;
}

// F(w) with chi scaled by t, and its Jacobian.
std::vector<Complex> equations(const BetheProblem& p, const std::vector<Complex>& w, Complex t) {
  const auto& g = *p.g;
  std::vector<Complex> f(w.size());
  for (std::size_t j = 0; j < w.size(); ++j) {
    const std::size_t c = p.colors[j];
    Complex acc = -t * label(p.chi, c);
    for (std::size_t i = 0; i < p.z.size(); ++i) acc += label(p.lambda[i], c) / (w[j] - p.z[i]);
    for (std::size_t s = 0; s < w.size(); ++s)
      if (s != j) acc -= static_cast<double>(g.cartan(c, p.colors[s])) / (w[j] - w[s]);
    f[j] = acc;
  }
  return f;
}

Eigen::MatrixXcd jacobian(const BetheProblem& p, const std::vector<Complex>& w) {
  const auto& g = *p.g;
  const auto m = static_cast<Eigen::Index>(w.size());
  Eigen::MatrixXcd jac = Eigen::MatrixXcd::Zero(m, m);
  for (std::size_t j = 0; j < w.size(); ++j) {
    const std::size_t c = p.colors[j];
    Complex diag = 0.0;
    for (std::size_t i = 0; i < p.z.size(); ++i) diag -= label(p.lambda[i], c) / ((w[j] - p.z[i]) * (w[j] - p.z[i]));
    for (std::size_t s = 0; s < w.size(); ++s) {
      if (s == j) continue;
      Complex d = static_cast<double>(g.cartan(c, p.colors[s])) / ((w[j] - w[s]) * (w[j] - w[s]));
      diag += d;
      jac(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(s)) = -d;
    }
    jac(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(j)) = diag;
  }
  return jac;
}

bool finite(const std::vector<Complex>& w) {
  return std::all_of(w.begin(), w.end(), [](const Complex& x) { return std::isfinite(x.real()) && std::isfinite(x.imag()); });
}

// Damped Newton; returns true once max|F| <= tol.
bool newton(const BetheProblem& p, std::vector<Complex>& w, Complex t, const SolveStrategy& st) {
  auto f = equations(p, w, t);
  double fn = max_abs(f);
  // terms grow like t chi along the continuation; the target residual is relative to that
  double chi_max = 0.0;
  for (auto c : p.colors) chi_max = std::max(chi_max, std::abs(label(p.chi, c)));
  const double tol = st.tol * std::max(1.0, std::abs(t) * chi_max);
  for (std::size_t it = 0; it < st.max_iterations; ++it) {
    if (!finite(w) || max_abs(w) > 1e8) return false;
    if (fn <= tol) {
      // two polishing steps
      for (int k = 0; k < 2; ++k) {
        Eigen::VectorXcd rhs(static_cast<Eigen::Index>(w.size()));
        for (std::size_t j = 0; j < w.size(); ++j) rhs(static_cast<Eigen::Index>(j)) = -f[j];
        Eigen::VectorXcd d = jacobian(p, w).fullPivLu().solve(rhs);
        auto trial = w;
        for (std::size_t j = 0; j < w.size(); ++j) trial[j] += d(static_cast<Eigen::Index>(j));
        auto tf = equations(p, trial, t);
        if (finite(trial) && max_abs(tf) < fn) {
          w = trial;
          f = tf;
          fn = max_abs(tf);
        }
      }
      return true;
    }
    Eigen::VectorXcd rhs(static_cast<Eigen::Index>(w.size()));
    for (std::size_t j = 0; j < w.size(); ++j) rhs(static_cast<Eigen::Index>(j)) = -f[j];
    Eigen::VectorXcd d = jacobian(p, w).fullPivLu().solve(rhs);
    double step = 1.0;
    bool moved = false;
    while (step > 1e-6) {
      auto trial = w;
      for (std::size_t j = 0; j < w.size(); ++j) trial[j] += step * d(static_cast<Eigen::Index>(j));
      auto tf = equations(p, trial, t);
      double tn = max_abs(tf);
      if (finite(trial) && std::isfinite(tn) && tn < fn) {
        w = std::move(trial);
        f = std::move(tf);
        fn = tn;
        moved = true;
        break;
      }
      step *= 0.5;
    }
    if (!moved) return fn <= tol;
  }
  return fn <= tol;
}

}  // namespace

Weight BetheProblem::target_weight() const {
  Weight w(g->rank(), Rational(0));
  for (const auto& l : lambda)
    for (std::size_t i = 0; i < w.size(); ++i) w[i] += l[i];
  for (auto c : colors)
    for (std::size_t i = 0; i < w.size(); ++i) w[i] -= g->cartan(i, c);
  return w;
}

nlohmann::json BetheProblem::to_json() const {
  nlohmann::json j;
  j["algebra"] = g->label();
  j["z"] = nlohmann::json::array();
  for (const auto& x : z) j["z"].push_back(complex_json(x));
  j["lambda"] = nlohmann::json::array();
  for (const auto& l : lambda) j["lambda"].push_back(weight_json(l));
  j["chi"] = weight_json(chi);
  j["colors"] = colors;
  j["target_weight"] = weight_json(target_weight());
  return j;
}

void validate(const BetheProblem& p, const InvariantForm& form) {
  if (!p.g) throw std::invalid_argument("BetheProblem: missing algebra");
  if (p.z.size() != p.lambda.size() || p.z.empty())
    throw std::invalid_argument("BetheProblem: need one highest weight per point");
  for (std::size_t i = 0; i < p.z.size(); ++i)
    for (std::size_t k = i + 1; k < p.z.size(); ++k)
      if (std::abs(p.z[i] - p.z[k]) == 0.0) throw std::invalid_argument("BetheProblem: coincident points");
  for (const auto& l : p.lambda)
    if (l.size() != p.g->rank()) throw std::invalid_argument("BetheProblem: wrong number of labels");
  if (p.chi.size() != p.g->rank()) throw std::invalid_argument("BetheProblem: wrong number of labels in chi");
  for (auto c : p.colors)
    if (c >= p.g->rank()) throw std::invalid_argument("BetheProblem: color out of range");
  if (singular_root(*p.g, form, p.chi)) throw std::invalid_argument("BetheProblem: chi is not regular");
}

std::optional<std::vector<std::size_t>> coloring_for_weight(const SimpleLieAlgebra& g,
                                                            const std::vector<Weight>& lambda, const Weight& target) {
  const std::size_t l = g.rank();
  RatMatrix c(l, l);
  for (std::size_t i = 0; i < l; ++i)
    for (std::size_t j = 0; j < l; ++j) c(i, j) = g.cartan(i, j);
  Vec diff(l, Rational(0));
  for (const auto& lam : lambda)
    for (std::size_t i = 0; i < l; ++i) diff[i] += lam[i];
  for (std::size_t i = 0; i < l; ++i) diff[i] -= target[i];
  auto inv = inverse(c);
  Vec n = (*inv) * diff;
  std::vector<std::size_t> colors;
  for (std::size_t i = 0; i < l; ++i) {
    if (n[i] < 0 || n[i].get_den() != 1) return std::nullopt;
    for (long k = 0; k < n[i].get_num().get_si(); ++k) colors.push_back(i);
  }
  return colors;
}

nlohmann::json BetheSolution::to_json() const {
  nlohmann::json j;
  j["w"] = nlohmann::json::array();
  for (const auto& x : w) j["w"].push_back(complex_json(x));
  j["residual"] = residual;
  j["min_root_separation"] = std::isfinite(min_root_separation) ? nlohmann::json(min_root_separation) : nullptr;
  j["min_point_separation"] = std::isfinite(min_point_separation) ? nlohmann::json(min_point_separation) : nullptr;
  j["degenerate"] = degenerate;
  j["class_id"] = class_id;
  return j;
}

std::vector<Complex> bethe_equations(const BetheProblem& p, const std::vector<Complex>& w) {
  if (w.size() != p.m()) throw std::invalid_argument("bethe_equations: expected one root per color");
  return equations(p, w, 1.0);
}

std::vector<double> residual(const BetheProblem& p, const std::vector<Complex>& w, double floor) {
  if (w.size() != p.m()) throw std::invalid_argument("residual: expected one root per color");
  auto sep = separation(p, w);
  if (sep.roots < floor || sep.points < floor)
    throw std::invalid_argument("residual: roots collide below the separation floor");
  std::vector<double> r;
  for (const auto& f : equations(p, w, 1.0)) r.push_back(std::abs(f));
  return r;
}

std::vector<Complex> canonical_roots(const BetheProblem& p, const std::vector<Complex>& w) {
  std::vector<std::size_t> order(w.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (p.colors[a] != p.colors[b]) return p.colors[a] < p.colors[b];
    if (std::abs(w[a].real() - w[b].real()) > 1e-9) return w[a].real() < w[b].real();
    return w[a].imag() < w[b].imag();
  });
  std::vector<Complex> out;
  for (auto k : order) out.push_back(w[k]);
  return out;
}

nlohmann::json SolveReport::to_json() const {
  nlohmann::json j;
  j["solutions"] = nlohmann::json::array();
  for (const auto& s : solutions) j["solutions"].push_back(s.to_json());
  j["attempts"] = attempts;
  j["converged"] = converged;
  j["duplicates"] = duplicates;
  j["rejected"] = rejected;
  return j;
}

namespace {

double min_separation(const BetheProblem& p, const std::vector<Complex>& w) {
  auto s = separation(p, w);
  return std::min(s.roots, s.points);
}

// Continuation from chi scale t0 down to 1 along tau(s) = t0^s exp(i a sin(pi s)), s: 1 -> 0. The
// path leaves the real axis so that real roots meeting and turning complex is not a branch point.
// Secant predictor with step control; a corrector that moves further than a quarter of the local
// spacing is refused.
bool track(const BetheProblem& q, std::vector<Complex>& w, double t0, const SolveStrategy& st) {
  const double lt = std::log(t0);
  auto tau = [&](double s) { return std::exp(Complex(s * lt, 0.4 * std::sin(std::numbers::pi * s))); };
  double s = 1.0, h = 0.05;
  std::vector<Complex> prev;
  double sprev = 0.0;
  while (s > 0.0) {
    const double sn = std::max(0.0, s - h);
    auto guess = w;
    if (!prev.empty()) {
      const double r = (s - sn) / (sprev - s);
      for (std::size_t j = 0; j < w.size(); ++j) guess[j] += r * (w[j] - prev[j]);
    }
    auto trial = guess;
    const double spacing = min_separation(q, w);
    double moved = 0.0;
    bool ok = newton(q, trial, tau(sn), st);
    if (ok)
      for (std::size_t j = 0; j < w.size(); ++j) moved = std::max(moved, std::abs(trial[j] - guess[j]));
    if (ok && moved <= 0.25 * spacing + 1e-12) {
      prev = w;
      sprev = s;
      w = std::move(trial);
      s = sn;
      h = std::min(0.1, h * 1.5);
    } else {
      h /= 2;
      if (h < 1e-7) return false;
    }
  }
  return true;
}

// Multistart on a single-point problem (z = 0), returned in the rescaled variable.
std::vector<std::vector<Complex>> local_solutions(const BetheProblem& one, const SolveStrategy& st) {
  std::vector<std::vector<Complex>> out;
  const std::size_t m = one.m();
  if (m == 0) return {{}};
  std::mt19937_64 rng(st.seed * 7919 + m);
  double reach = 1.0;
  for (auto c : one.colors) reach = std::max(reach, (label(one.lambda[0], c) + 2.0 * static_cast<double>(m)) / std::abs(label(one.chi, c)));
  std::uniform_real_distribution<double> box(-reach, reach);
  SolveStrategy local = st;
  for (std::size_t k = 0; k < 64 + 32 * m; ++k) {
    std::vector<Complex> w(m);
    for (auto& x : w) x = Complex(box(rng), box(rng));
    if (!newton(one, w, 1.0, local)) continue;
    if (min_separation(one, w) < st.collision_radius * reach) continue;
    auto c = canonical_roots(one, w);
    bool dup = false;
    for (const auto& s : out) {
      double d = 0.0;
      for (std::size_t j = 0; j < m; ++j) d = std::max(d, std::abs(s[j] - c[j]));
      dup = dup || d <= st.dedup_radius * reach;
    }
    if (!dup) out.push_back(c);
  }
  return out;
}

// Distributions of the color counts among n points.
void distribute(const std::vector<std::size_t>& counts, std::size_t n, std::size_t color,
                std::vector<std::vector<std::size_t>>& cur, std::vector<std::vector<std::vector<std::size_t>>>& out) {
  if (color == counts.size()) {
    out.push_back(cur);
    return;
  }
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t site, std::size_t left) {
    if (site + 1 == n) {
      cur[site][color] = left;
      distribute(counts, n, color + 1, cur, out);
      cur[site][color] = 0;
      return;
    }
    for (std::size_t k = 0; k <= left; ++k) {
      cur[site][color] = k;
      rec(site + 1, left - k);
    }
    cur[site][color] = 0;
  };
  rec(0, counts[color]);
}

}  // namespace

SolveReport solve(const BetheProblem& p, const SolveStrategy& st) {
  SolveReport rep;
  const std::size_t m = p.m();
  if (m == 0) {
    rep.attempts = rep.converged = 1;
    BetheSolution s;
    s.min_root_separation = s.min_point_separation = std::numeric_limits<double>::infinity();
    rep.solutions.push_back(s);
    return rep;
  }
  // Roots are kept in color-sorted order so the canonical form only reorders inside groups.
  BetheProblem q = p;
  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return p.colors[a] < p.colors[b]; });
  for (std::size_t j = 0; j < m; ++j) q.colors[j] = p.colors[order[j]];

  double scale = 1.0;
  for (const auto& z : p.z) scale = std::max(scale, std::abs(z));
  double gap = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < p.z.size(); ++i)
    for (std::size_t k = i + 1; k < p.z.size(); ++k) gap = std::min(gap, std::abs(p.z[i] - p.z[k]));
  if (!std::isfinite(gap)) gap = scale;

  std::mt19937_64 rng(st.seed);
  auto accept = [&](std::vector<Complex> w) {
    ++rep.converged;
    auto sep = separation(q, w);
    if (std::min(sep.roots, sep.points) < std::max(st.separation_floor, st.collision_radius * gap)) {
      ++rep.rejected;
      return;
    }
    w = canonical_roots(q, w);
    for (const auto& s : rep.solutions) {
      double d = 0.0;
      for (std::size_t j = 0; j < m; ++j) d = std::max(d, std::abs(s.w[order[j]] - w[j]));
      if (d <= st.dedup_radius) {
        ++rep.duplicates;
        return;
      }
    }
    BetheSolution s;
    s.w.resize(m);
    for (std::size_t j = 0; j < m; ++j) s.w[order[j]] = w[j];
    s.residual = residual(p, s.w, st.separation_floor);
    s.min_root_separation = sep.roots;
    s.min_point_separation = sep.points;
    Eigen::FullPivLU<Eigen::MatrixXcd> lu(jacobian(q, w));
    s.degenerate = lu.rank() < static_cast<Eigen::Index>(m);
    s.class_id = rep.solutions.size();
    rep.solutions.push_back(s);
  };
  auto done = [&] { return st.expected > 0 && rep.solutions.size() >= st.expected; };

  double chi_min = std::numeric_limits<double>::infinity();
  for (auto c : q.colors) chi_min = std::min(chi_min, std::abs(label(q.chi, c)));

  if (st.homotopy && chi_min > 0) {
    // For t chi large the roots gather around the points in clusters of size 1/t, each
    // solving the one-point problem of its point.
    std::vector<std::size_t> counts(p.g->rank(), 0);
    for (auto c : q.colors) ++counts[c];
    std::vector<std::vector<std::size_t>> cur(p.z.size(), std::vector<std::size_t>(counts.size(), 0));
    std::vector<std::vector<std::vector<std::size_t>>> dists;
    distribute(counts, p.z.size(), 0, cur, dists);

    std::map<std::pair<std::size_t, std::vector<std::size_t>>, std::vector<std::vector<Complex>>> cache;
    auto local = [&](std::size_t i, const std::vector<std::size_t>& cnt) -> const std::vector<std::vector<Complex>>& {
      auto key = std::make_pair(i, cnt);
      auto it = cache.find(key);
      if (it != cache.end()) return it->second;
      BetheProblem one;
      one.g = p.g;
      one.z = {Complex(0.0)};
      one.lambda = {p.lambda[i]};
      one.chi = p.chi;
      for (std::size_t c = 0; c < cnt.size(); ++c) one.colors.insert(one.colors.end(), cnt[c], c);
      return cache.emplace(key, local_solutions(one, st)).first->second;
    };

    double reach = 1.0;
    for (auto c : q.colors) reach = std::max(reach, (2.0 * static_cast<double>(m) + 4.0) / std::abs(label(q.chi, c)));
    const double t0 = 1e3 * reach / gap;
    for (const auto& dist : dists) {
      if (done()) break;
      // cartesian product of the local solution sets
      std::vector<const std::vector<std::vector<Complex>>*> sets;
      bool empty = false;
      for (std::size_t i = 0; i < p.z.size(); ++i) {
        sets.push_back(&local(i, dist[i]));
        empty = empty || sets.back()->empty();
      }
      if (empty) continue;
      std::vector<std::size_t> pick(p.z.size(), 0);
      while (!done()) {
        ++rep.attempts;
        // assemble in color-sorted order
        std::vector<std::vector<Complex>> by_color(counts.size());
        for (std::size_t i = 0; i < p.z.size(); ++i) {
          const auto& u = (*sets[i])[pick[i]];
          std::size_t k = 0;
          for (std::size_t c = 0; c < counts.size(); ++c)
            for (std::size_t r = 0; r < dist[i][c]; ++r) by_color[c].push_back(p.z[i] + u[k++] / t0);
        }
        std::vector<Complex> w;
        for (const auto& v : by_color) w.insert(w.end(), v.begin(), v.end());
        if (newton(q, w, t0, st) && track(q, w, t0, st)) accept(w);

        std::size_t i = 0;
        while (i < pick.size() && ++pick[i] == sets[i]->size()) pick[i++] = 0;
        if (i == pick.size()) break;
      }
    }
  }

  std::uniform_real_distribution<double> box(-2.0 * scale, 2.0 * scale);
  Complex center = 0.0;
  for (const auto& z : p.z) center += z / static_cast<double>(p.z.size());
  const std::size_t budget = st.expected > 0 ? std::max(st.random_seeds, st.max_random_seeds) : st.random_seeds;
  for (std::size_t k = 0; k < budget && !(k >= st.random_seeds && done()); ++k) {
    ++rep.attempts;
    std::vector<Complex> w(m);
    for (auto& x : w) x = center + Complex(box(rng), box(rng));
    if (newton(q, w, 1.0, st)) accept(w);
  }
  return rep;
}

BetheVector bethe_vector(const BetheProblem& p, const TensorSpace& space, const BetheSolution& s) {
  const auto& g = *p.g;
  const std::size_t m = p.m(), n = p.z.size();
  if (s.w.size() != m) throw std::invalid_argument("bethe_vector: solution does not match the coloring");
  if (space.sites() != n) throw std::invalid_argument("bethe_vector: tensor space has the wrong number of sites");

  BetheVector out;
  out.weight = p.target_weight();
  out.full.assign(space.dim(), Complex(0.0));
  double scale = 0.0;

  std::vector<std::size_t> perm(m);
  std::iota(perm.begin(), perm.end(), 0);
  // cut positions: composition of m into n parts
  std::vector<std::vector<std::size_t>> compositions;
  {
    std::vector<std::size_t> cur;
    std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t part, std::size_t left) {
      if (part + 1 == n) {
        cur.push_back(left);
        compositions.push_back(cur);
        cur.pop_back();
        return;
      }
      for (std::size_t a = 0; a <= left; ++a) {
        cur.push_back(a);
        rec(part + 1, left - a);
        cur.pop_back();
      }
    };
    rec(0, m);
  }

  do {
    for (const auto& comp : compositions) {
      ++out.summands;
      Complex coeff = 1.0;
      std::vector<std::vector<Complex>> local(n);
      std::size_t pos = 0;
      bool zero = false;
      for (std::size_t k = 0; k < n && !zero; ++k) {
        const auto& mod = space.factor(k);
        std::vector<Complex> v(mod.dim(), Complex(0.0));
        v[0] = 1.0;
        const std::size_t a = comp[k];
        // f_{j_1} ... f_{j_a} v / ((w_{j_1} - w_{j_2}) ... (w_{j_a} - z_k))
        for (std::size_t r = a; r-- > 0;) {
          const std::size_t j = perm[pos + r];
          const auto& f = mod.generators[g.f_index(g.simple_root_index(p.colors[j]))];
          v = f.template cast<Complex>().apply(v);
          Complex next = (r + 1 < a) ? s.w[perm[pos + r + 1]] : p.z[k];
          coeff /= (s.w[j] - next);
        }
        pos += a;
        if (max_abs(v) == 0.0) zero = true;
        local[k] = std::move(v);
      }
      if (zero) continue;
      // tensor product of the local vectors
      std::vector<std::size_t> idx(n, 0);
      std::vector<std::vector<std::size_t>> support(n);
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t b = 0; b < local[k].size(); ++b)
          if (std::abs(local[k][b]) > 0.0) support[k].push_back(b);
      std::vector<std::size_t> ptr(n, 0);
      while (true) {
        Complex val = coeff;
        for (std::size_t k = 0; k < n; ++k) {
          idx[k] = support[k][ptr[k]];
          val *= local[k][idx[k]];
        }
        out.full[space.index(idx)] += val;
        scale += std::abs(val);
        std::size_t k = 0;
        while (k < n && ++ptr[k] == support[k].size()) ptr[k++] = 0;
        if (k == n) break;
      }
    }
  } while (std::next_permutation(perm.begin(), perm.end()));

  auto it = space.weight_blocks().find(out.weight);
  if (it != space.weight_blocks().end()) {
    out.block_indices = it->second;
    for (auto i : it->second) out.block.push_back(out.full[i]);
  }
  out.norm = norm2(out.full);
  out.zero = out.norm <= 1e-10 * std::max(1.0, scale);
  return out;
}

std::vector<FloatOperator> hamiltonian_family(const BetheProblem& p, const TensorSpace& space,
                                              const InvariantForm& form) {
  Weight neg = p.chi;
  for (auto& x : neg) x = -x;
  std::vector<FloatOperator> out;
  const Weight block = p.target_weight();
  for (std::size_t i = 0; i < p.z.size(); ++i) {
    auto h = gaudin_shifted<Complex>(space, p.z, neg, i, form);
    out.push_back(block_of(h, space, block, "Xi_{" + std::to_string(i) + ",-chi}",
                           {{"site", i}, {"chi", weight_json(neg)}}));
  }
  return out;
}

nlohmann::json EigenCheck::to_json() const {
  nlohmann::json j;
  j["eigenvalues"] = nlohmann::json::array();
  for (const auto& e : eigenvalues) j["eigenvalues"].push_back(complex_json(e));
  j["residuals"] = residuals;
  j["max_residual"] = max_residual;
  j["zero_vector"] = zero_vector;
  j["pass"] = pass;
  j["note"] = note;
  return j;
}

EigenCheck eigen_check(const BetheVector& v, const std::vector<FloatOperator>& ops, double tol) {
  EigenCheck c;
  if (v.zero) {
    c.zero_vector = true;
    c.note = "zero Bethe vector";
    return c;
  }
  const double nrm = norm2(v.block);
  for (const auto& op : ops) {
    if (op.indices != v.block_indices) throw std::invalid_argument("eigen_check: operator block does not match");
    auto hv = op.matrix * v.block;
    Complex num = 0.0, den = 0.0;
    for (std::size_t k = 0; k < hv.size(); ++k) {
      num += std::conj(v.block[k]) * hv[k];
      den += std::conj(v.block[k]) * v.block[k];
    }
    Complex mu = num / den;
    for (std::size_t k = 0; k < hv.size(); ++k) hv[k] -= mu * v.block[k];
    double r = norm2(hv) / nrm;
    c.eigenvalues.push_back(mu);
    c.residuals.push_back(r);
    c.max_residual = std::max(c.max_residual, r);
  }
  c.pass = c.max_residual <= tol;
  if (!c.pass) c.note = "not an eigenvector within tolerance";
  return c;
}

nlohmann::json CensusEntry::to_json() const {
  nlohmann::json j;
  j["block"] = weight_json(block);
  j["colors"] = colors;
  j["bethe_solution_classes"] = solution_classes;
  j["block_dimension"] = block_dimension;
  j["matched_eigenvectors"] = matched_eigenvectors;
  j["zero_vectors"] = zero_vectors;
  j["solver_incomplete"] = solver_incomplete;
  j["solver"] = report.to_json();
  j["checks"] = nlohmann::json::array();
  for (const auto& c : checks) j["checks"].push_back(c.to_json());
  return j;
}

CensusEntry census(const BetheProblem& base, const TensorSpace& space, const Weight& block,
                   const InvariantForm& form, const SolveStrategy& strategy) {
  CensusEntry e;
  e.block = block;
  auto colors = coloring_for_weight(*base.g, base.lambda, block);
  if (!colors) throw std::invalid_argument("census: block is not below the top weight");
  e.colors = *colors;
  auto it = space.weight_blocks().find(block);
  e.block_dimension = it == space.weight_blocks().end() ? 0 : it->second.size();

  BetheProblem p = base;
  p.colors = *colors;
  validate(p, form);
  SolveStrategy st = strategy;
  if (st.expected == 0) st.expected = e.block_dimension;
  e.report = solve(p, st);
  e.solution_classes = e.report.solutions.size();
  if (e.block_dimension == 0) return e;

  auto ops = hamiltonian_family(p, space, form);
  std::vector<SpectralData> spectra;
  for (const auto& op : ops) spectra.push_back(spectrum(op));

  for (const auto& s : e.report.solutions) {
    auto v = bethe_vector(p, space, s);
    auto c = eigen_check(v, ops);
    if (c.zero_vector) ++e.zero_vectors;
    if (c.pass) {
      // every Rayleigh quotient must be an eigenvalue of the exact block spectrum
      for (std::size_t i = 0; i < ops.size() && c.pass; ++i) {
        bool found = false;
        for (const auto& ev : spectra[i].eigenvalues)
          if (std::abs(ev - c.eigenvalues[i]) <= 1e-8 * std::max(1.0, std::abs(ev))) found = true;
        if (!found) {
          c.pass = false;
          c.note = "eigenvalue not in the exact spectrum";
        }
      }
    }
    if (c.pass) ++e.matched_eigenvectors;
    e.checks.push_back(c);
  }
  e.solver_incomplete = e.solution_classes < e.block_dimension;
  return e;
}

std::string solutions_csv(const BetheProblem& p, const std::vector<BetheSolution>& sols) {
  std::ostringstream os;
  os.precision(17);
  os << "class,color,w_re,w_im,residual\n";
  for (const auto& s : sols)
    for (std::size_t j = 0; j < s.w.size(); ++j)
      os << s.class_id << ',' << p.colors[j] << ',' << s.w[j].real() << ',' << s.w[j].imag() << ','
         << s.residual[j] << '\n';
  return os.str();
}

}  // namespace glab
