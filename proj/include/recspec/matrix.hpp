#ifndef RECSPEC_MATRIX_HPP
#define RECSPEC_MATRIX_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace recspec {

using Complex = std::complex<double>;

/// Dense row-major matrix with value semantics.
template <typename T>
class Matrix
{
public:
  Matrix() = default;

  Matrix(std::size_t rows, std::size_t cols, T fill = T{})
    : rows_(rows), cols_(cols), data_(rows * cols, fill)
  {}

  Matrix(std::initializer_list<std::initializer_list<T>> rows)
    : rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0)
  {
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
      if (r.size() != cols_)
        throw ArgumentError("matrix rows have unequal length");
      data_.insert(data_.end(), r.begin(), r.end());
    }
  }

  static Matrix identity(std::size_t n)
  {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
      m(i, i) = T(1);
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }

  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<T> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const T> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

  std::span<const T> data() const noexcept { return data_; }

  template <typename U, typename F>
  Matrix<U> map(F&& f) const
  {
    Matrix<U> out(rows_, cols_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c)
        out(r, c) = f((*this)(r, c));
    return out;
  }

  friend bool operator==(const Matrix&, const Matrix&) = default;

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

template <typename T>
Matrix<T> operator*(const Matrix<T>& a, const Matrix<T>& b)
{
  if (a.cols() != b.rows())
    throw ArgumentError("matrix product: inner dimensions differ");
  Matrix<T> out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const T aik = a(i, k);
      if (aik == T{})
        continue;
      for (std::size_t j = 0; j < b.cols(); ++j)
        out(i, j) += aik * b(k, j);
    }
  return out;
}

template <typename T>
Matrix<T> operator+(Matrix<T> a, const Matrix<T>& b)
{
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw ArgumentError("matrix sum: shapes differ");
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      a(i, j) += b(i, j);
  return a;
}

template <typename T>
Matrix<T> operator*(T s, Matrix<T> a)
{
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      a(i, j) *= s;
  return a;
}

template <typename T>
Matrix<T> transpose(const Matrix<T>& a)
{
  Matrix<T> t(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      t(j, i) = a(i, j);
  return t;
}

template <typename T>
T trace(const Matrix<T>& a)
{
  T s{};
  for (std::size_t i = 0; i < std::min(a.rows(), a.cols()); ++i)
    s += a(i, i);
  return s;
}

template <typename T>
double max_abs(const Matrix<T>& a)
{
  double m = 0.0;
  for (const T& v : a.data())
    m = std::max(m, static_cast<double>(std::abs(v)));
  return m;
}

/// Row vector times matrix.
template <typename T>
std::vector<T> left_multiply(std::span<const T> v, const Matrix<T>& a)
{
  if (v.size() != a.rows())
    throw ArgumentError("vector-matrix product: dimensions differ");
  std::vector<T> out(a.cols(), T{});
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      out[j] += v[i] * a(i, j);
  return out;
}

/// [A, A^2, ..., A^count] by successive multiplication.
template <typename T>
std::vector<Matrix<T>> successive_powers(const Matrix<T>& a, std::size_t count)
{
  std::vector<Matrix<T>> powers;
  powers.reserve(count);
  if (count == 0)
    return powers;
  powers.push_back(a);
  while (powers.size() < count)
    powers.push_back(powers.back() * a);
  return powers;
}

/// Solves A x = b by Gaussian elimination with partial pivoting.
template <typename T>
std::vector<T> solve_linear(Matrix<T> a, std::vector<T> b)
{
  const std::size_t n = a.rows();
  if (!a.square() || b.size() != n)
    throw ArgumentError("solve_linear: system is not square");
  const double scale = std::max(max_abs(a), 1.0);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(a(r, col)) > std::abs(a(pivot, col)))
        pivot = r;
    if (std::abs(a(pivot, col)) <= 1e-300 * scale)
      throw NumericalError("solve_linear: matrix is singular", 0.0);
    if (pivot != col) {
      for (std::size_t c = 0; c < n; ++c)
        std::swap(a(col, c), a(pivot, c));
      std::swap(b[col], b[pivot]);
    }
    for (std::size_t r = col + 1; r < n; ++r) {
      const T f = a(r, col) / a(col, col);
      if (f == T{})
        continue;
      for (std::size_t c = col; c < n; ++c)
        a(r, c) -= f * a(col, c);
      b[r] -= f * b[col];
    }
  }
  std::vector<T> x(n);
  for (std::size_t i = n; i-- > 0;) {
    T s = b[i];
    for (std::size_t c = i + 1; c < n; ++c)
      s -= a(i, c) * x[c];
    x[i] = s / a(i, i);
  }
  return x;
}

/// Determinant by Gaussian elimination with partial pivoting.
template <typename T>
T determinant(Matrix<T> a)
{
  if (!a.square())
    throw ArgumentError("determinant: matrix is not square");
  const std::size_t n = a.rows();
  T det{1};
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(a(r, col)) > std::abs(a(pivot, col)))
        pivot = r;
    if (a(pivot, col) == T{})
      return T{};
    if (pivot != col) {
      for (std::size_t c = 0; c < n; ++c)
        std::swap(a(col, c), a(pivot, c));
      det = -det;
    }
    det *= a(col, col);
    for (std::size_t r = col + 1; r < n; ++r) {
      const T f = a(r, col) / a(col, col);
      for (std::size_t c = col; c < n; ++c)
        a(r, c) -= f * a(col, c);
    }
  }
  return det;
}

} // namespace recspec

#endif // RECSPEC_MATRIX_HPP
