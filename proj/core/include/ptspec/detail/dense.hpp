#pragma once

// Small dense matrices and polynomials over an exact field (mpq_class or
// FieldElement). Everything here is exact; pivoting picks the first nonzero.

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

#include "ptspec/field.hpp"

namespace ptspec::detail {

template <class T>
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, T(0L)) {}

  static DenseMatrix identity(std::size_t n) {
    DenseMatrix out(n, n);
    for (std::size_t i = 0; i < n; ++i) out(i, i) = T(1L);
    return out;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  bool is_zero() const {
    for (const auto& x : data_)
      if (!ptspec::is_zero(x)) return false;
    return true;
  }

  /// True when the matrix equals value * identity.
  bool is_scalar(T* value = nullptr) const {
    if (rows_ != cols_ || rows_ == 0) return false;
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) {
        if (i == j) {
          if (!(data_[i * cols_ + j] == data_[0])) return false;
        } else if (!ptspec::is_zero(data_[i * cols_ + j])) {
          return false;
        }
      }
    if (value) *value = data_[0];
    return true;
  }

  friend DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b) {
    DenseMatrix out(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const T& aik = a(i, k);
        if (ptspec::is_zero(aik)) continue;
        for (std::size_t j = 0; j < b.cols_; ++j)
          if (!ptspec::is_zero(b(k, j))) out(i, j) += aik * b(k, j);
      }
    return out;
  }

  friend DenseMatrix operator+(DenseMatrix a, const DenseMatrix& b) {
    for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] += b.data_[i];
    return a;
  }

  friend DenseMatrix operator-(DenseMatrix a, const DenseMatrix& b) {
    for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] -= b.data_[i];
    return a;
  }

  DenseMatrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    DenseMatrix out(nr, nc);
    for (std::size_t i = 0; i < nr; ++i)
      for (std::size_t j = 0; j < nc; ++j) out(i, j) = (*this)(r0 + i, c0 + j);
    return out;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

/// Reduced row echelon form in place; returns pivot column of each pivot row.
template <class T>
std::vector<std::size_t> row_reduce(DenseMatrix<T>& a) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < a.cols() && row < a.rows(); ++col) {
    std::size_t p = row;
    while (p < a.rows() && ptspec::is_zero(a(p, col))) ++p;
    if (p == a.rows()) continue;
    if (p != row)
      for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(p, j), a(row, j));
    T inv = T(1L) / a(row, col);
    for (std::size_t j = col; j < a.cols(); ++j) a(row, j) *= inv;
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (i == row || ptspec::is_zero(a(i, col))) continue;
      T f = a(i, col);
      for (std::size_t j = col; j < a.cols(); ++j)
        if (!ptspec::is_zero(a(row, j))) a(i, j) -= f * a(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

template <class T>
std::optional<DenseMatrix<T>> inverse(const DenseMatrix<T>& a) {
  const std::size_t n = a.rows();
  DenseMatrix<T> aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
    aug(i, n + i) = T(1L);
  }
  auto piv = row_reduce(aug);
  if (piv.size() < n || piv[n - 1] != n - 1) return std::nullopt;
  return aug.block(0, n, n, n);
}

/// Column basis of the null space of a.
template <class T>
std::vector<std::vector<T>> null_space(const DenseMatrix<T>& a) {
  DenseMatrix<T> r = a;
  auto piv = row_reduce(r);
  std::vector<bool> is_pivot(a.cols(), false);
  for (auto c : piv) is_pivot[c] = true;
  std::vector<std::vector<T>> basis;
  for (std::size_t free = 0; free < a.cols(); ++free) {
    if (is_pivot[free]) continue;
    std::vector<T> v(a.cols(), T(0L));
    v[free] = T(1L);
    for (std::size_t i = 0; i < piv.size(); ++i) v[piv[i]] = -r(i, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Indices of a maximal set of linearly independent columns.
template <class T>
std::vector<std::size_t> column_basis(const DenseMatrix<T>& a) {
  DenseMatrix<T> r = a;
  return row_reduce(r);
}

/// Polynomial with coefficients low to high degree.
template <class T>
using Poly = std::vector<T>;

template <class T>
void trim(Poly<T>& p) {
  while (!p.empty() && ptspec::is_zero(p.back())) p.pop_back();
}

template <class T>
T evaluate(const Poly<T>& p, const T& x) {
  T acc(0L);
  for (std::size_t i = p.size(); i-- > 0;) acc = acc * x + p[i];
  return acc;
}

template <class T>
Poly<T> multiply(const Poly<T>& a, const Poly<T>& b) {
  if (a.empty() || b.empty()) return {};
  Poly<T> out(a.size() + b.size() - 1, T(0L));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  trim(out);
  return out;
}

template <class T>
Poly<T> derivative(const Poly<T>& p) {
  Poly<T> out;
  for (std::size_t i = 1; i < p.size(); ++i) out.push_back(p[i] * T(static_cast<long>(i)));
  trim(out);
  return out;
}

/// Quotient and remainder of a / b (b nonzero).
template <class T>
std::pair<Poly<T>, Poly<T>> divide(Poly<T> a, Poly<T> b) {
  trim(a);
  trim(b);
  if (b.empty()) throw std::domain_error("polynomial division by zero");
  if (a.size() < b.size()) return {{}, a};
  Poly<T> q(a.size() - b.size() + 1, T(0L));
  T lead_inv = T(1L) / b.back();
  for (std::size_t k = q.size(); k-- > 0;) {
    T c = a[k + b.size() - 1] * lead_inv;
    q[k] = c;
    if (ptspec::is_zero(c)) continue;
    for (std::size_t j = 0; j < b.size(); ++j) a[k + j] -= c * b[j];
  }
  a.resize(b.size() - 1);
  trim(a);
  trim(q);
  return {q, a};
}

template <class T>
Poly<T> monic(Poly<T> p) {
  trim(p);
  if (p.empty()) return p;
  T inv = T(1L) / p.back();
  for (auto& c : p) c *= inv;
  return p;
}

template <class T>
Poly<T> gcd(Poly<T> a, Poly<T> b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    auto r = divide(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return monic(a);
}

/// p / gcd(p, p'): same roots, all simple.
template <class T>
Poly<T> squarefree_part(const Poly<T>& p) {
  auto g = gcd(p, derivative(p));
  return monic(divide(p, g).first);
}

/// Monic characteristic polynomial det(x I - a) via Faddeev-LeVerrier.
template <class T>
Poly<T> characteristic_polynomial(const DenseMatrix<T>& a) {
  const std::size_t n = a.rows();
  Poly<T> c(n + 1, T(0L));
  c[n] = T(1L);
  DenseMatrix<T> m(n, n);  // M_0 = 0
  for (std::size_t k = 1; k <= n; ++k) {
    // M_k = A M_{k-1} + c_{n-k+1} I
    DenseMatrix<T> next = a * m;
    for (std::size_t i = 0; i < n; ++i) next(i, i) += c[n - k + 1];
    m = std::move(next);
    DenseMatrix<T> am = a * m;
    T tr(0L);
    for (std::size_t i = 0; i < n; ++i) tr += am(i, i);
    c[n - k] = -tr / T(static_cast<long>(k));
  }
  return c;
}

}  // namespace ptspec::detail
