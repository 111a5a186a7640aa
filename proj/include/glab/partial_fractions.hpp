#pragma once

#include <algorithm>
#include <iterator>
#include <map>
#include <stdexcept>
#include <vector>

#include "glab/scalar.hpp"

namespace glab {

namespace detail {
// Unqualified call so the overload for the coefficient type is found at instantiation.
template <class T>
bool zero_coefficient(const T& x) {
  return is_zero(x);
}
}  // namespace detail

/// Rational function of one variable t in partial-fraction normal form
///   sum_k a_k t^k + sum_p sum_{k>=1} c_{p,k} (t - p)^{-k},
/// with coefficients in C (a module over the scalar field S of pole positions).
template <class C, class S>
class PartialFractions {
 public:
  using Principal = std::vector<C>;  // entry k-1 multiplies (t - p)^{-k}

  PartialFractions() = default;
  static PartialFractions constant(const C& c) {
    PartialFractions f;
    f.poly_ = {c};
    f.trim();
    return f;
  }
  static PartialFractions monomial(const C& c, int k) {
    PartialFractions f;
    f.poly_.assign(static_cast<std::size_t>(k) + 1, C{});
    f.poly_[static_cast<std::size_t>(k)] = c;
    f.trim();
    return f;
  }
  /// c (t - p)^{-k}, k >= 1.
  static PartialFractions pole(const S& p, int k, const C& c) {
    PartialFractions f;
    if (k < 1) throw std::invalid_argument("PartialFractions::pole: order must be positive");
    Principal pr(static_cast<std::size_t>(k), C{});
    pr.back() = c;
    f.poles_[p] = pr;
    f.trim();
    return f;
  }

  const std::vector<C>& polynomial() const { return poly_; }
  const std::map<S, Principal, ScalarLess>& poles() const { return poles_; }
  bool is_zero() const { return poly_.empty() && poles_.empty(); }

  /// Coefficient of (t - p)^{-k}; zero when absent.
  C principal_coefficient(const S& p, int k) const {
    auto it = poles_.find(p);
    if (it == poles_.end() || k < 1 || static_cast<std::size_t>(k) > it->second.size()) return C{};
    return it->second[static_cast<std::size_t>(k) - 1];
  }
  int pole_order(const S& p) const {
    auto it = poles_.find(p);
    return it == poles_.end() ? 0 : static_cast<int>(it->second.size());
  }
  int polynomial_degree() const { return static_cast<int>(poly_.size()) - 1; }

  PartialFractions& operator+=(const PartialFractions& o) {
    add_vec(poly_, o.poly_, S(1));
    for (const auto& [p, pr] : o.poles_) add_vec(poles_[p], pr, S(1));
    trim();
    return *this;
  }
  PartialFractions& operator-=(const PartialFractions& o) {
    add_vec(poly_, o.poly_, S(-1));
    for (const auto& [p, pr] : o.poles_) add_vec(poles_[p], pr, S(-1));
    trim();
    return *this;
  }
  friend PartialFractions operator+(PartialFractions a, const PartialFractions& b) { return a += b; }
  friend PartialFractions operator-(PartialFractions a, const PartialFractions& b) { return a -= b; }
  PartialFractions operator-() const { return scaled(S(-1)); }

  PartialFractions scaled(const S& s) const {
    PartialFractions out = *this;
    for (auto& c : out.poly_) c = c * s;
    for (auto& [p, pr] : out.poles_)
      for (auto& c : pr) c = c * s;
    out.trim();
    return out;
  }

  PartialFractions operator*(const PartialFractions& o) const {
    PartialFractions out;
    // polynomial x polynomial
    if (!poly_.empty() && !o.poly_.empty()) {
      out.poly_.assign(poly_.size() + o.poly_.size() - 1, C{});
      for (std::size_t i = 0; i < poly_.size(); ++i)
        for (std::size_t j = 0; j < o.poly_.size(); ++j) out.poly_[i + j] = out.poly_[i + j] + poly_[i] * o.poly_[j];
    }
    for (const auto& [p, pr] : o.poles_) out.add_poly_times_principal(poly_, p, pr);
    for (const auto& [p, pr] : poles_) out.add_poly_times_principal(o.poly_, p, pr);
    for (const auto& [p, a] : poles_)
      for (const auto& [q, b] : o.poles_) out.add_principal_product(p, a, q, b);
    out.trim();
    return out;
  }

  PartialFractions derivative() const {
    PartialFractions out;
    for (std::size_t k = 1; k < poly_.size(); ++k) out.poly_.push_back(poly_[k] * S(static_cast<long>(k)));
    for (const auto& [p, pr] : poles_) {
      Principal d(pr.size() + 1, C{});
      for (std::size_t k = 1; k <= pr.size(); ++k) d[k] = pr[k - 1] * S(-static_cast<long>(k));
      out.poles_[p] = d;
    }
    out.trim();
    return out;
  }

  /// Taylor/Laurent coefficients of (t - x)^k for k = -pole_order(x) .. max_order.
  /// Returned vector index i corresponds to k = i - pole_order(x).
  std::vector<C> laurent(const S& x, int max_order) const {
    const int lo = pole_order(x);
    std::vector<C> out(static_cast<std::size_t>(lo + max_order + 1), C{});
    auto at = [&](int k) -> C& { return out[static_cast<std::size_t>(k + lo)]; };
    if (lo > 0) {
      const auto& pr = poles_.at(x);
      for (int k = 1; k <= lo; ++k) at(-k) = pr[static_cast<std::size_t>(k) - 1];
    }
    // polynomial part shifted to x
    auto shifted = taylor_shift(poly_, x);
    for (int k = 0; k <= max_order && static_cast<std::size_t>(k) < shifted.size(); ++k)
      at(k) = at(k) + shifted[static_cast<std::size_t>(k)];
    // other poles: (t-q)^{-m} = (-1)^m (q-x)^{-m} sum_j C(m+j-1, j) ((t-x)/(q-x))^j
    for (const auto& [q, pr] : poles_) {
      if (!ScalarLess{}(q, x) && !ScalarLess{}(x, q)) continue;
      S inv = S(1) / S(q - x);
      for (std::size_t m = 1; m <= pr.size(); ++m) {
        if (detail::zero_coefficient(pr[m - 1])) continue;
        S base = power(S(-1) * inv, static_cast<int>(m));
        S invj = S(1);
        for (int j = 0; j <= max_order; ++j) {
          S coeff = base * invj * from_rational<S>(binomial(static_cast<long>(m) + j - 1, j));
          at(j) = at(j) + pr[m - 1] * coeff;
          invj = invj * inv;
        }
      }
    }
    return out;
  }

  /// f(1/s) as a partial-fraction expansion in s.
  PartialFractions invert_variable() const {
    PartialFractions out;
    // sum a_k t^k -> sum a_k s^{-k}
    if (!poly_.empty()) {
      out.poly_ = {poly_[0]};
      if (poly_.size() > 1) {
        Principal pr(poly_.size() - 1, C{});
        for (std::size_t k = 1; k < poly_.size(); ++k) pr[k - 1] = poly_[k];
        out.poles_[S(0)] = pr;
      }
    }
    for (const auto& [p, pr] : poles_) {
      if (detail::zero_coefficient(p)) {
        // t^{-k} = s^k
        PartialFractions part;
        part.poly_.assign(pr.size() + 1, C{});
        for (std::size_t k = 1; k <= pr.size(); ++k) part.poly_[k] = pr[k - 1];
        out += part;
        continue;
      }
      // (1/s - p)^{-k} = (-1/p)^k (1 + q/(s - q))^k with q = 1/p
      S q = S(1) / p;
      for (std::size_t k = 1; k <= pr.size(); ++k) {
        if (detail::zero_coefficient(pr[k - 1])) continue;
        S lead = power(S(-1) * q, static_cast<int>(k));
        PartialFractions part;
        part.poly_ = {pr[k - 1] * lead};
        Principal sub(k, C{});
        S qj = S(1);
        for (std::size_t j = 1; j <= k; ++j) {
          qj = qj * q;
          sub[j - 1] = pr[k - 1] * (lead * qj * from_rational<S>(binomial(static_cast<long>(k), static_cast<long>(j))));
        }
        part.poles_[q] = sub;
        part.trim();
        out += part;
      }
    }
    out.trim();
    return out;
  }

  /// Value at a point that is not a pole.
  C evaluate(const S& x) const {
    if (pole_order(x) > 0) throw std::domain_error("PartialFractions::evaluate at a pole");
    return laurent(x, 0)[0];
  }

  /// Removes coefficients with magnitude <= tol (floating coefficients only).
  PartialFractions& prune(double tol) {
    for (auto& c : poly_)
      if (magnitude(c) <= tol) c = C{};
    for (auto& [p, pr] : poles_)
      for (auto& c : pr)
        if (magnitude(c) <= tol) c = C{};
    trim();
    return *this;
  }

  double max_abs() const {
    double m = 0.0;
    for (const auto& c : poly_) m = std::max(m, magnitude(c));
    for (const auto& [p, pr] : poles_)
      for (const auto& c : pr) m = std::max(m, magnitude(c));
    return m;
  }

  bool operator==(const PartialFractions& o) const { return poly_ == o.poly_ && poles_ == o.poles_; }
  bool operator!=(const PartialFractions& o) const { return !(*this == o); }

 private:
  static S power(S base, int k) {
    S out = S(1);
    for (int i = 0; i < k; ++i) out = out * base;
    return out;
  }

  static void add_vec(std::vector<C>& dst, const std::vector<C>& src, const S& s) {
    if (dst.size() < src.size()) dst.resize(src.size(), C{});
    for (std::size_t i = 0; i < src.size(); ++i) dst[i] = dst[i] + src[i] * s;
  }

  // Coefficients of P(t) in powers of (t - x).
  static std::vector<C> taylor_shift(const std::vector<C>& poly, const S& x) {
    std::vector<C> out(poly.size(), C{});
    for (std::size_t i = 0; i < poly.size(); ++i) {
      if (detail::zero_coefficient(poly[i])) continue;
      S xp = S(1);
      for (std::size_t m = i + 1; m-- > 0;) {
        // term C(i, m) x^{i-m} for m = i, i-1, ..., 0
        out[m] = out[m] + poly[i] * (xp * from_rational<S>(binomial(static_cast<long>(i), static_cast<long>(m))));
        xp = xp * x;
      }
    }
    return out;
  }

  // Adds P(t) * sum_k c_k (t - x)^{-k}.
  void add_poly_times_principal(const std::vector<C>& poly, const S& x, const Principal& pr) {
    if (poly.empty()) return;
    auto a = taylor_shift(poly, x);
    for (std::size_t k = 1; k <= pr.size(); ++k) {
      if (detail::zero_coefficient(pr[k - 1])) continue;
      for (std::size_t m = 0; m < a.size(); ++m) {
        if (detail::zero_coefficient(a[m])) continue;
        C c = a[m] * pr[k - 1];
        if (m < k) {
          auto& dst = poles_[x];
          if (dst.size() < k - m) dst.resize(k - m, C{});
          dst[k - m - 1] = dst[k - m - 1] + c;
        } else {
          // (t - x)^j expanded in powers of t
          std::size_t j = m - k;
          if (poly_.size() < j + 1) poly_.resize(j + 1, C{});
          S xp = S(1);
          for (std::size_t i = j + 1; i-- > 0;) {
            S coeff = xp * from_rational<S>(binomial(static_cast<long>(j), static_cast<long>(i)));
            poly_[i] = poly_[i] + c * coeff;
            xp = xp * S(S(0) - x);
          }
        }
      }
    }
  }

  // Adds (sum_a A_a (t-p)^{-a}) (sum_b B_b (t-q)^{-b}).
  void add_principal_product(const S& p, const Principal& a, const S& q, const Principal& b) {
    const bool same = !ScalarLess{}(p, q) && !ScalarLess{}(q, p);
    for (std::size_t i = 1; i <= a.size(); ++i) {
      if (detail::zero_coefficient(a[i - 1])) continue;
      for (std::size_t j = 1; j <= b.size(); ++j) {
        if (detail::zero_coefficient(b[j - 1])) continue;
        C c = a[i - 1] * b[j - 1];
        if (same) {
          auto& dst = poles_[p];
          if (dst.size() < i + j) dst.resize(i + j, C{});
          dst[i + j - 1] = dst[i + j - 1] + c;
          continue;
        }
        // 1/((t-p)^i (t-q)^j) = sum_{r=1}^{i} C(i+j-r-1, j-1) (-1)^{i-r} (p-q)^{-(i+j-r)} (t-p)^{-r}
        //                      + sum_{r=1}^{j} C(i+j-r-1, i-1) (-1)^{j-r} (q-p)^{-(i+j-r)} (t-q)^{-r}
        S dpq = S(1) / S(p - q), dqp = S(1) / S(q - p);
        auto& dp = poles_[p];
        if (dp.size() < i) dp.resize(i, C{});
        for (std::size_t r = 1; r <= i; ++r) {
          S coeff = from_rational<S>(binomial(static_cast<long>(i + j - r - 1), static_cast<long>(j - 1))) *
                    power(dpq, static_cast<int>(i + j - r)) * S((i - r) % 2 ? -1 : 1);
          dp[r - 1] = dp[r - 1] + c * coeff;
        }
        auto& dq = poles_[q];
        if (dq.size() < j) dq.resize(j, C{});
        for (std::size_t r = 1; r <= j; ++r) {
          S coeff = from_rational<S>(binomial(static_cast<long>(i + j - r - 1), static_cast<long>(i - 1))) *
                    power(dqp, static_cast<int>(i + j - r)) * S((j - r) % 2 ? -1 : 1);
          dq[r - 1] = dq[r - 1] + c * coeff;
        }
      }
    }
  }

  void trim() {
    while (!poly_.empty() && detail::zero_coefficient(poly_.back())) poly_.pop_back();
    for (auto it = poles_.begin(); it != poles_.end();) {
      auto& pr = it->second;
      while (!pr.empty() && detail::zero_coefficient(pr.back())) pr.pop_back();
      it = pr.empty() ? poles_.erase(it) : std::next(it);
    }
  }

  std::vector<C> poly_;
  std::map<S, Principal, ScalarLess> poles_;
};

template <class C, class S>
bool is_zero(const PartialFractions<C, S>& f) {
  return f.is_zero();
}

}  // namespace glab
