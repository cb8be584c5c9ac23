#pragma once

// Dense exact matrices and the elimination routines the cohomology and
// character-table code is built on: rational RREF, kernels, column bases,
// ranks modulo a prime, and Smith normal form over the integers.

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <cstdlib>
#include <limits>
#include <span>
#include <utility>
#include <vector>

#include "equilef/error.hpp"
#include "equilef/rational.hpp"

namespace equilef {

template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, T fill = T(0))
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool empty() const noexcept { return rows_ == 0 || cols_ == 0; }

  T& operator()(std::size_t i, std::size_t j) {
    assert(i < rows_ && j < cols_);
    return data_[i * cols_ + j];
  }
  const T& operator()(std::size_t i, std::size_t j) const {
    assert(i < rows_ && j < cols_);
    return data_[i * cols_ + j];
  }

  std::span<T> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const T> row(std::size_t i) const {
    return {data_.data() + i * cols_, cols_};
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j)
      std::swap(data_[a * cols_ + j], data_[b * cols_ + j]);
  }
  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < rows_; ++i)
      std::swap(data_[i * cols_ + a], data_[i * cols_ + b]);
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  template <class U>
  Matrix<U> cast() const {
    Matrix<U> out(rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) out(i, j) = U((*this)(i, j));
    return out;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_)
      throw std::invalid_argument("matrix product: dimension mismatch");
    Matrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const T& aik = a(i, k);
        if (aik == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
      }
    return c;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using IntMatrix = Matrix<long long>;
using QMatrix = Matrix<Rational>;
using ZMatrix = Matrix<Integer>;

inline QMatrix to_rational(const IntMatrix& m) {
  QMatrix q(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (m(i, j) != 0) q(i, j) = Rational(Integer(static_cast<long>(m(i, j))));
  return q;
}

inline ZMatrix to_integer(const IntMatrix& m) {
  ZMatrix z(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (m(i, j) != 0) z(i, j) = Integer(static_cast<long>(m(i, j)));
  return z;
}

// Brings `m` to reduced row echelon form in place, pivoting only within
// the first `pivot_limit` columns (the rest is carried along, as for an
// augmented system). Returns the pivot columns in order.
inline std::vector<std::size_t> rref(QMatrix& m,
                                     std::size_t pivot_limit = std::numeric_limits<std::size_t>::max()) {
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  pivot_limit = std::min(pivot_limit, cols);
  std::vector<std::size_t> pivots;
  std::vector<std::size_t> support;
  std::size_t r = 0;
  for (std::size_t c = 0; c < pivot_limit && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && sgn(m(p, c)) == 0) ++p;
    if (p == rows) continue;
    m.swap_rows(p, r);
    const Rational inv = 1 / m(r, c);
    support.clear();
    for (std::size_t j = c; j < cols; ++j) {
      if (sgn(m(r, j)) == 0) continue;
      m(r, j) *= inv;
      support.push_back(j);
    }
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || sgn(m(i, c)) == 0) continue;
      const Rational f = m(i, c);
      for (std::size_t j : support) m(i, j) -= f * m(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

inline std::size_t rank(QMatrix m) { return rref(m).size(); }
inline std::size_t rank(const IntMatrix& m) { return rank(to_rational(m)); }

// Basis of {x : m x = 0}, one vector per free column.
inline std::vector<std::vector<Rational>> kernel_basis(QMatrix m) {
  const auto pivots = rref(m);
  const std::size_t n = m.cols();
  std::vector<char> is_pivot(n, 0);
  for (auto c : pivots) is_pivot[c] = 1;
  std::vector<std::vector<Rational>> basis;
  for (std::size_t f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    std::vector<Rational> v(n);
    v[f] = 1;
    for (std::size_t k = 0; k < pivots.size(); ++k) v[pivots[k]] = -m(k, f);
    basis.push_back(std::move(v));
  }
  return basis;
}

// Indices of a maximal independent set of columns, chosen greedily left to
// right.
inline std::vector<std::size_t> independent_columns(QMatrix m) { return rref(m); }

inline QMatrix from_columns(std::size_t rows, const std::vector<std::vector<Rational>>& cols) {
  QMatrix m(rows, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j)
    for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
  return m;
}

inline std::vector<Rational> column(const QMatrix& m, std::size_t j) {
  std::vector<Rational> v(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) v[i] = m(i, j);
  return v;
}

// Left inverse of a full-column-rank matrix: L with L * p = I.
inline QMatrix left_inverse(const QMatrix& p) {
  const std::size_t n = p.rows();
  const std::size_t m = p.cols();
  QMatrix aug(n, m + n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) aug(i, j) = p(i, j);
    aug(i, m + i) = 1;
  }
  const auto pivots = rref(aug, m);
  if (pivots.size() != m)
    throw InvariantViolation("left_inverse: matrix is not of full column rank");
  QMatrix l(m, n);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) l(i, j) = aug(i, m + j);
  return l;
}

inline Rational determinant(QMatrix m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant: matrix not square");
  const std::size_t n = m.rows();
  Rational det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && sgn(m(p, c)) == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      m.swap_rows(p, c);
      det = -det;
    }
    det *= m(c, c);
    for (std::size_t i = c + 1; i < n; ++i) {
      if (sgn(m(i, c)) == 0) continue;
      const Rational f = m(i, c) / m(c, c);
      for (std::size_t j = c; j < n; ++j) m(i, j) -= f * m(c, j);
    }
  }
  return det;
}

// ---------------------------------------------------------------------------
// Arithmetic modulo a word-sized prime.

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
}

inline std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1 % p;
  a %= p;
  while (e) {
    if (e & 1) r = mulmod(r, a, p);
    a = mulmod(a, a, p);
    e >>= 1;
  }
  return r;
}

inline std::uint64_t invmod(std::uint64_t a, std::uint64_t p) {
  if (a % p == 0) throw InvariantViolation("invmod: zero has no inverse");
  return powmod(a, p - 2, p);
}

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

inline std::uint64_t reduce_mod(long long v, std::uint64_t p) {
  long long r = v % static_cast<long long>(p);
  if (r < 0) r += static_cast<long long>(p);
  return static_cast<std::uint64_t>(r);
}

using ModMatrix = Matrix<std::uint64_t>;

inline ModMatrix reduce_mod(const IntMatrix& m, std::uint64_t p) {
  ModMatrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = reduce_mod(m(i, j), p);
  return r;
}

// RREF over F_p in place; returns pivot columns.
inline std::vector<std::size_t> rref_mod(ModMatrix& m, std::uint64_t p) {
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t q = r;
    while (q < rows && m(q, c) == 0) ++q;
    if (q == rows) continue;
    m.swap_rows(q, r);
    const std::uint64_t inv = invmod(m(r, c), p);
    for (std::size_t j = c; j < cols; ++j) m(r, j) = mulmod(m(r, j), inv, p);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || m(i, c) == 0) continue;
      const std::uint64_t f = m(i, c);
      for (std::size_t j = c; j < cols; ++j) {
        if (m(r, j) == 0) continue;
        m(i, j) = (m(i, j) + p - mulmod(f, m(r, j), p)) % p;
      }
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

inline std::size_t rank_mod(const IntMatrix& m, std::uint64_t p) {
  auto r = reduce_mod(m, p);
  return rref_mod(r, p).size();
}

inline std::vector<std::vector<std::uint64_t>> kernel_basis_mod(ModMatrix m, std::uint64_t p) {
  const auto pivots = rref_mod(m, p);
  const std::size_t n = m.cols();
  std::vector<char> is_pivot(n, 0);
  for (auto c : pivots) is_pivot[c] = 1;
  std::vector<std::vector<std::uint64_t>> basis;
  for (std::size_t f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    std::vector<std::uint64_t> v(n, 0);
    v[f] = 1;
    for (std::size_t k = 0; k < pivots.size(); ++k) v[pivots[k]] = (p - m(k, f)) % p;
    basis.push_back(std::move(v));
  }
  return basis;
}

// ---------------------------------------------------------------------------
// Smith normal form.

// Nonzero diagonal entries d_1 | d_2 | ... of the Smith normal form of `a`,
// all positive. The count is the rank of `a`.
inline std::vector<Integer> elementary_divisors(ZMatrix a) {
  const std::size_t rows = a.rows();
  const std::size_t cols = a.cols();
  std::vector<Integer> diag;
  std::size_t t = 0;
  while (t < rows && t < cols) {
    // Smallest nonzero entry of the trailing block becomes the pivot.
    bool found = false;
    std::size_t pi = t, pj = t;
    Integer best;
    for (std::size_t i = t; i < rows; ++i)
      for (std::size_t j = t; j < cols; ++j) {
        if (sgn(a(i, j)) == 0) continue;
        Integer mag = abs(a(i, j));
        if (!found || mag < best) {
          found = true;
          best = mag;
          pi = i;
          pj = j;
        }
      }
    if (!found) break;
    a.swap_rows(t, pi);
    a.swap_cols(t, pj);

    bool dirty = true;
    while (dirty) {
      dirty = false;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (sgn(a(i, t)) == 0) continue;
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), a(i, t).get_mpz_t(), a(t, t).get_mpz_t());
        for (std::size_t j = t; j < cols; ++j)
          if (sgn(a(t, j)) != 0) a(i, j) -= q * a(t, j);
        if (sgn(a(i, t)) != 0) {
          a.swap_rows(t, i);
          dirty = true;
        }
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (sgn(a(t, j)) == 0) continue;
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), a(t, j).get_mpz_t(), a(t, t).get_mpz_t());
        for (std::size_t i = t; i < rows; ++i)
          if (sgn(a(i, t)) != 0) a(i, j) -= q * a(i, t);
        if (sgn(a(t, j)) != 0) {
          a.swap_cols(t, j);
          dirty = true;
        }
      }
      if (dirty) continue;
      // Enforce divisibility of the trailing block by the pivot.
      for (std::size_t i = t + 1; i < rows && !dirty; ++i)
        for (std::size_t j = t + 1; j < cols; ++j) {
          if (sgn(a(i, j)) == 0) continue;
          if (!mpz_divisible_p(a(i, j).get_mpz_t(), a(t, t).get_mpz_t())) {
            for (std::size_t k = t; k < cols; ++k) a(t, k) += a(i, k);
            dirty = true;
            break;
          }
        }
    }
    diag.push_back(abs(a(t, t)));
    ++t;
  }
  return diag;
}

}  // namespace equilef
