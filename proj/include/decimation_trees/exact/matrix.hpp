#pragma once

// Dense matrices over exact rings and the elimination routines built on them.

#include <algorithm>
#include <cstddef>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "decimation_trees/exact/polynomial.hpp"
#include "decimation_trees/exact/rational.hpp"

namespace dtrees {

/// Worker count for internal parallel loops: DECIMATION_TREES_THREADS when
/// set to a positive integer, otherwise the hardware concurrency.
inline unsigned thread_budget() {
  if (const char* env = std::getenv("DECIMATION_TREES_THREADS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && v > 0) return static_cast<unsigned>(v);
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1U : hw;
}

template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}
  Matrix(std::size_t rows, std::size_t cols, std::vector<T> data)
      : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (data_.size() != rows_ * cols_) throw std::invalid_argument("matrix data size mismatch");
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(a, c), (*this)(b, c));
  }
  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t r = 0; r < rows_; ++r) std::swap((*this)(r, a), (*this)(r, b));
  }

  /// Rows and columns picked by index lists (either may repeat or reorder).
  Matrix select(const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) const {
    Matrix m(rows.size(), cols.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
      for (std::size_t j = 0; j < cols.size(); ++j) m(i, j) = (*this)(rows[i], cols[j]);
    return m;
  }

  template <class U, class Fn>
  Matrix<U> map(Fn fn) const {
    std::vector<U> out;
    out.reserve(data_.size());
    for (const auto& v : data_) out.push_back(fn(v));
    return Matrix<U>(rows_, cols_, std::move(out));
  }

  friend Matrix operator+(const Matrix& a, const Matrix& b) {
    check_same_shape(a, b);
    Matrix r = a;
    for (std::size_t i = 0; i < r.data_.size(); ++i) r.data_[i] = r.data_[i] + b.data_[i];
    return r;
  }
  friend Matrix operator-(const Matrix& a, const Matrix& b) {
    check_same_shape(a, b);
    Matrix r = a;
    for (std::size_t i = 0; i < r.data_.size(); ++i) r.data_[i] = r.data_[i] - b.data_[i];
    return r;
  }
  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product shape mismatch");
    Matrix r(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const T& aik = a(i, k);
        if (aik == T(0)) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) r(i, j) = r(i, j) + aik * b(k, j);
      }
    return r;
  }
  friend Matrix operator*(const T& s, const Matrix& a) {
    Matrix r = a;
    for (auto& v : r.data_) v = s * v;
    return r;
  }
  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  static void check_same_shape(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("matrix shape mismatch");
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using IntegerMatrix = Matrix<Integer>;
using RationalMatrix = Matrix<Rational>;

namespace detail {

template <class T, class Fn>
void for_rows(std::size_t begin, std::size_t end, unsigned workers, Fn fn) {
  const std::size_t count = end > begin ? end - begin : 0;
  if (workers <= 1 || count < 64) {
    for (std::size_t i = begin; i < end; ++i) fn(i);
    return;
  }
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, count / 16 + 1));
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([=] {
      for (std::size_t i = begin + w; i < end; i += workers) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace detail

/// Fraction-free (Bareiss) determinant over an integral domain. Every
/// division is exact, so integer inputs never leave the integers. Row updates
/// within one elimination step are independent and may run on several
/// threads; the result does not depend on the split.
template <class T>
T bareiss_determinant(Matrix<T> m, unsigned workers = 1) {
  if (!m.is_square()) throw std::invalid_argument("determinant of a non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return T(1);
  T prev(1);
  bool negate = false;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == T(0)) {
      std::size_t p = k + 1;
      while (p < n && m(p, k) == T(0)) ++p;
      if (p == n) return T(0);
      m.swap_rows(k, p);
      negate = !negate;
    }
    const T pivot = m(k, k);
    detail::for_rows<T>(k + 1, n, workers, [&](std::size_t i) {
      const T lead = m(i, k);
      for (std::size_t j = k + 1; j < n; ++j) {
        T v = m(i, j) * pivot - lead * m(k, j);
        m(i, j) = exact_quotient(v, prev);
      }
      m(i, k) = T(0);
    });
    prev = pivot;
  }
  T det = m(n - 1, n - 1);
  return negate ? T(-det) : det;
}

/// Exact determinant of a rational matrix: rows are scaled to integers and
/// eliminated fraction-free.
inline Rational determinant(const RationalMatrix& m) {
  if (!m.is_square()) throw std::invalid_argument("determinant of a non-square matrix");
  IntegerMatrix im(m.rows(), m.cols());
  Integer scale(1);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Integer l(1);
    for (std::size_t j = 0; j < m.cols(); ++j) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(i, j).get_den_mpz_t());
    for (std::size_t j = 0; j < m.cols(); ++j) im(i, j) = Integer(m(i, j).get_num() * (l / m(i, j).get_den()));
    scale *= l;
  }
  return make_rational(bareiss_determinant(std::move(im)), scale);
}

/// Solves A X = B over a field by Gauss-Jordan elimination.
/// Throws std::domain_error when A is singular.
template <class F>
Matrix<F> solve(Matrix<F> a, Matrix<F> b) {
  if (!a.is_square() || a.rows() != b.rows()) throw std::invalid_argument("solve: shape mismatch");
  const std::size_t n = a.rows();
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && a(p, k) == F(0)) ++p;
    if (p == n) throw std::domain_error("solve: singular matrix");
    a.swap_rows(k, p);
    b.swap_rows(k, p);
    const F inv = F(1) / a(k, k);
    for (std::size_t j = k; j < n; ++j) a(k, j) = a(k, j) * inv;
    for (std::size_t j = 0; j < b.cols(); ++j) b(k, j) = b(k, j) * inv;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k || a(i, k) == F(0)) continue;
      const F f = a(i, k);
      for (std::size_t j = k; j < n; ++j) a(i, j) = a(i, j) - f * a(k, j);
      for (std::size_t j = 0; j < b.cols(); ++j) b(i, j) = b(i, j) - f * b(k, j);
    }
  }
  return b;
}

/// Characteristic polynomial det(M - xI) of a square rational matrix.
///
/// Reduces M to upper Hessenberg form by exact similarity transforms and then
/// expands the Hessenberg determinant with the usual three-term recurrence.
inline RationalPolynomial charpoly(const RationalMatrix& m) {
  if (!m.is_square()) throw std::invalid_argument("characteristic polynomial of a non-square matrix");
  const std::size_t n = m.rows();
  RationalMatrix h = m;
  for (std::size_t c = 1; c + 1 < n; ++c) {
    std::size_t p = c;
    while (p < n && sgn(h(p, c - 1)) == 0) ++p;
    if (p == n) continue;
    if (p != c) {
      h.swap_rows(p, c);
      h.swap_cols(p, c);
    }
    const Rational pivot = h(c, c - 1);
    for (std::size_t i = c + 1; i < n; ++i) {
      if (sgn(h(i, c - 1)) == 0) continue;
      const Rational u = h(i, c - 1) / pivot;
      for (std::size_t j = 0; j < n; ++j) h(i, j) -= u * h(c, j);
      for (std::size_t j = 0; j < n; ++j) h(j, c) += u * h(j, i);
    }
  }
  // p[k] = det(xI - H_k) for the leading k x k block.
  std::vector<RationalPolynomial> p(n + 1);
  p[0] = RationalPolynomial(Rational(1));
  const RationalPolynomial x = RationalPolynomial::x();
  for (std::size_t k = 1; k <= n; ++k) {
    RationalPolynomial acc = (x - RationalPolynomial(h(k - 1, k - 1))) * p[k - 1];
    Rational t(1);
    for (std::size_t i = k - 1; i-- > 0;) {
      t *= h(i + 1, i);
      if (sgn(t) == 0) break;
      acc -= p[i].scaled(Rational(t * h(i, k - 1)));
    }
    p[k] = std::move(acc);
  }
  return (n % 2 == 0) ? p[n] : -p[n];
}

}  // namespace dtrees
