#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "glab/scalar.hpp"

namespace glab {

/// Row-major dense matrix over an exact or floating field.
template <class T>
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}

  static DenseMatrix identity(std::size_t n) {
    DenseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  DenseMatrix operator*(const DenseMatrix& o) const {
    if (cols_ != o.rows_) throw std::invalid_argument("DenseMatrix: shape mismatch in product");
    DenseMatrix out(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < cols_; ++k) {
        const T& a = (*this)(i, k);
        if (is_zero(a)) continue;
        for (std::size_t j = 0; j < o.cols_; ++j) {
          const T& b = o(k, j);
          if (!is_zero(b)) out(i, j) += a * b;
        }
      }
    return out;
  }

  std::vector<T> operator*(const std::vector<T>& v) const {
    if (v.size() != cols_) throw std::invalid_argument("DenseMatrix: shape mismatch in apply");
    std::vector<T> out(rows_, T(0));
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < cols_; ++k)
        if (!is_zero((*this)(i, k)) && !is_zero(v[k])) out[i] += (*this)(i, k) * v[k];
    return out;
  }

  DenseMatrix& operator+=(const DenseMatrix& o) {
    check_same(o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
    return *this;
  }
  DenseMatrix& operator-=(const DenseMatrix& o) {
    check_same(o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
    return *this;
  }
  DenseMatrix& operator*=(const T& s) {
    for (auto& x : data_) x *= s;
    return *this;
  }
  friend DenseMatrix operator+(DenseMatrix a, const DenseMatrix& b) { return a += b; }
  friend DenseMatrix operator-(DenseMatrix a, const DenseMatrix& b) { return a -= b; }
  friend DenseMatrix operator*(const T& s, DenseMatrix a) { return a *= s; }

  DenseMatrix transpose() const {
    DenseMatrix out(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
    return out;
  }

  bool is_zero_matrix() const {
    return std::all_of(data_.begin(), data_.end(), [](const T& x) { return is_zero(x); });
  }

  double max_abs() const {
    double m = 0.0;
    for (const auto& x : data_) m = std::max(m, magnitude(x));
    return m;
  }

  bool operator==(const DenseMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
  }

  const std::vector<T>& data() const { return data_; }

 private:
  void check_same(const DenseMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("DenseMatrix: shape mismatch");
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using RatMatrix = DenseMatrix<Rational>;

/// Compressed-row sparse matrix; rows hold (column, value) pairs sorted by column.
template <class T>
class SparseMatrix {
 public:
  using Entry = std::pair<std::size_t, T>;

  SparseMatrix() = default;
  SparseMatrix(std::size_t rows, std::size_t cols) : cols_(cols), rows_(rows) {}

  static SparseMatrix identity(std::size_t n) {
    SparseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.rows_[i].push_back({i, T(1)});
    return m;
  }

  std::size_t rows() const { return rows_.size(); }
  std::size_t cols() const { return cols_; }
  const std::vector<Entry>& row(std::size_t r) const { return rows_[r]; }

  /// Adds value into (r, c); rows are re-sorted lazily by finalize().
  void add(std::size_t r, std::size_t c, const T& value) {
    if (is_zero(value)) return;
    auto& row = rows_[r];
    auto it = std::lower_bound(row.begin(), row.end(), c,
                               [](const Entry& e, std::size_t col) { return e.first < col; });
    if (it != row.end() && it->first == c) {
      it->second += value;
      if (is_zero(it->second)) row.erase(it);
    } else {
      row.insert(it, {c, value});
    }
  }

  T at(std::size_t r, std::size_t c) const {
    const auto& row = rows_[r];
    auto it = std::lower_bound(row.begin(), row.end(), c,
                               [](const Entry& e, std::size_t col) { return e.first < col; });
    return (it != row.end() && it->first == c) ? it->second : T(0);
  }

  SparseMatrix operator*(const SparseMatrix& o) const {
    if (cols_ != o.rows()) throw std::invalid_argument("SparseMatrix: shape mismatch in product");
    SparseMatrix out(rows(), o.cols_);
    std::map<std::size_t, T> acc;
    for (std::size_t i = 0; i < rows(); ++i) {
      acc.clear();
      for (const auto& [k, a] : rows_[i])
        for (const auto& [j, b] : o.rows_[k]) acc[j] += a * b;
      for (auto& [j, v] : acc)
        if (!is_zero(v)) out.rows_[i].push_back({j, v});
    }
    return out;
  }

  std::vector<T> apply(const std::vector<T>& v) const {
    if (v.size() != cols_) throw std::invalid_argument("SparseMatrix: shape mismatch in apply");
    std::vector<T> out(rows(), T(0));
    for (std::size_t i = 0; i < rows(); ++i)
      for (const auto& [j, a] : rows_[i]) out[i] += a * v[j];
    return out;
  }

  SparseMatrix& add_scaled(const SparseMatrix& o, const T& s) {
    if (rows() != o.rows() || cols_ != o.cols_) throw std::invalid_argument("SparseMatrix: shape mismatch");
    if (is_zero(s)) return *this;
    for (std::size_t i = 0; i < rows(); ++i)
      for (const auto& [j, a] : o.rows_[i]) add(i, j, a * s);
    return *this;
  }

  SparseMatrix operator+(const SparseMatrix& o) const { return SparseMatrix(*this).add_scaled(o, T(1)); }
  SparseMatrix operator-(const SparseMatrix& o) const { return SparseMatrix(*this).add_scaled(o, T(-1)); }
  SparseMatrix scaled(const T& s) const {
    SparseMatrix out(rows(), cols_);
    if (is_zero(s)) return out;
    for (std::size_t i = 0; i < rows(); ++i)
      for (const auto& [j, a] : rows_[i]) out.rows_[i].push_back({j, a * s});
    return out;
  }

  bool is_zero_matrix() const {
    return std::all_of(rows_.begin(), rows_.end(), [](const auto& r) { return r.empty(); });
  }
  bool operator==(const SparseMatrix& o) const { return cols_ == o.cols_ && rows_ == o.rows_; }

  double max_abs() const {
    double m = 0.0;
    for (const auto& r : rows_)
      for (const auto& e : r) m = std::max(m, magnitude(e.second));
    return m;
  }

  /// Kronecker product A (x) B.
  static SparseMatrix kron(const SparseMatrix& a, const SparseMatrix& b) {
    SparseMatrix out(a.rows() * b.rows(), a.cols_ * b.cols_);
    for (std::size_t i = 0; i < a.rows(); ++i)
      for (const auto& [j, x] : a.rows_[i])
        for (std::size_t k = 0; k < b.rows(); ++k)
          for (const auto& [l, y] : b.rows_[k]) out.rows_[i * b.rows() + k].push_back({j * b.cols_ + l, x * y});
    return out;
  }

  DenseMatrix<T> restrict(const std::vector<std::size_t>& row_idx, const std::vector<std::size_t>& col_idx) const {
    DenseMatrix<T> out(row_idx.size(), col_idx.size());
    std::map<std::size_t, std::size_t> col_pos;
    for (std::size_t c = 0; c < col_idx.size(); ++c) col_pos[col_idx[c]] = c;
    for (std::size_t r = 0; r < row_idx.size(); ++r)
      for (const auto& [j, a] : rows_[row_idx[r]]) {
        auto it = col_pos.find(j);
        if (it != col_pos.end()) out(r, it->second) = a;
      }
    return out;
  }

  DenseMatrix<T> to_dense() const {
    DenseMatrix<T> out(rows(), cols_);
    for (std::size_t i = 0; i < rows(); ++i)
      for (const auto& [j, a] : rows_[i]) out(i, j) = a;
    return out;
  }

  static SparseMatrix from_dense(const DenseMatrix<T>& d) {
    SparseMatrix out(d.rows(), d.cols());
    for (std::size_t i = 0; i < d.rows(); ++i)
      for (std::size_t j = 0; j < d.cols(); ++j)
        if (!is_zero(d(i, j))) out.rows_[i].push_back({j, d(i, j)});
    return out;
  }

  template <class U>
  SparseMatrix<U> cast() const {
    SparseMatrix<U> out(rows(), cols_);
    for (std::size_t i = 0; i < rows(); ++i)
      for (const auto& [j, a] : rows_[i]) out.add(i, j, convert_scalar<U>(a));
    return out;
  }

 private:
  template <class U>
  static U convert_scalar(const T& a) {
    if constexpr (std::is_same_v<T, U>) {
      return a;
    } else {
      return from_rational<U>(a);
    }
  }

  std::size_t cols_ = 0;
  std::vector<std::vector<Entry>> rows_;
};

using SparseRat = SparseMatrix<Rational>;

template <class T>
DenseMatrix<T> commutator(const DenseMatrix<T>& a, const DenseMatrix<T>& b) {
  return a * b - b * a;
}

template <class T>
SparseMatrix<T> commutator(const SparseMatrix<T>& a, const SparseMatrix<T>& b) {
  return a * b - b * a;
}

/// Result of Gaussian elimination to reduced row echelon form.
template <class T>
struct Echelon {
  DenseMatrix<T> reduced;
  std::vector<std::size_t> pivot_cols;
  std::size_t rank() const { return pivot_cols.size(); }
};

/// Reduced row echelon form. Floating scalars use partial pivoting with an
/// absolute threshold `tol`; exact scalars ignore it.
template <class T>
Echelon<T> row_reduce(DenseMatrix<T> m, double tol = 0.0) {
  Echelon<T> out;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t best = m.rows();
    double best_mag = tol;
    for (std::size_t r = row; r < m.rows(); ++r) {
      if (is_zero(m(r, col))) continue;
      double mag = magnitude(m(r, col));
      if constexpr (std::is_same_v<T, Rational>) {
        best = r;
        break;
      } else if (mag > best_mag) {
        best = r;
        best_mag = mag;
      }
    }
    if (best == m.rows()) continue;
    if (best != row)
      for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m(row, c), m(best, c));
    T inv = T(1) / m(row, col);
    for (std::size_t c = col; c < m.cols(); ++c) m(row, c) *= inv;
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == row || is_zero(m(r, col))) continue;
      T f = m(r, col);
      for (std::size_t c = col; c < m.cols(); ++c)
        if (!is_zero(m(row, c))) m(r, c) -= f * m(row, c);
    }
    out.pivot_cols.push_back(col);
    ++row;
  }
  out.reduced = std::move(m);
  return out;
}

template <class T>
std::size_t rank(const DenseMatrix<T>& m, double tol = 0.0) {
  return row_reduce(m, tol).rank();
}

/// Basis of the right kernel {x : m x = 0}, one vector per free column.
template <class T>
std::vector<std::vector<T>> nullspace(const DenseMatrix<T>& m, double tol = 0.0) {
  auto ech = row_reduce(m, tol);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : ech.pivot_cols) is_pivot[c] = true;
  std::vector<std::vector<T>> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    std::vector<T> v(m.cols(), T(0));
    v[free] = T(1);
    for (std::size_t r = 0; r < ech.rank(); ++r) v[ech.pivot_cols[r]] = -ech.reduced(r, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Solves A X = B for square nonsingular A; nullopt when A is singular.
template <class T>
std::optional<DenseMatrix<T>> solve(const DenseMatrix<T>& a, const DenseMatrix<T>& b, double tol = 0.0) {
  if (a.rows() != a.cols() || b.rows() != a.rows()) throw std::invalid_argument("solve: shape mismatch");
  std::size_t n = a.rows();
  DenseMatrix<T> aug(n, n + b.cols());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
    for (std::size_t j = 0; j < b.cols(); ++j) aug(i, n + j) = b(i, j);
  }
  auto ech = row_reduce(std::move(aug), tol);
  if (ech.rank() < n || ech.pivot_cols[n - 1] != n - 1) return std::nullopt;
  DenseMatrix<T> x(n, b.cols());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) x(i, j) = ech.reduced(i, n + j);
  return x;
}

template <class T>
std::optional<DenseMatrix<T>> inverse(const DenseMatrix<T>& a, double tol = 0.0) {
  return solve(a, DenseMatrix<T>::identity(a.rows()), tol);
}

}  // namespace glab
