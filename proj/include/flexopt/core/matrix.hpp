#pragma once

#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <vector>

namespace flexopt {

/**
 * Dense column-major matrix used to hold optimization coordinates and
 * gradients.  Any type with the same interface (elem_type, rows(), cols(),
 * element access, and the free functions below) can be substituted for it in
 * the optimizers.
 */
template<typename T>
class DenseMatrix
{
 public:
  using elem_type = T;

  DenseMatrix() : rows_(0), cols_(0) {}

  DenseMatrix(std::size_t rows, std::size_t cols, T fillValue = T(0))
      : rows_(rows), cols_(cols), data_(rows * cols, fillValue) {}

  // Column vector from a braced list.
  DenseMatrix(std::initializer_list<T> values)
      : rows_(values.size()), cols_(1), data_(values) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t size() const { return data_.size(); }

  T& operator[](std::size_t i) { return data_[i]; }
  const T& operator[](std::size_t i) const { return data_[i]; }

  T& operator()(std::size_t r, std::size_t c) { return data_[c * rows_ + r]; }
  const T& operator()(std::size_t r, std::size_t c) const
  { return data_[c * rows_ + r]; }

  T* data() { return data_.data(); }
  const T* data() const { return data_.data(); }

  void fill(T value) { data_.assign(data_.size(), value); }

  void set_size(std::size_t rows, std::size_t cols)
  {
    rows_ = rows;
    cols_ = cols;
    data_.assign(rows * cols, T(0));
  }

  bool same_shape(const DenseMatrix& other) const
  { return rows_ == other.rows_ && cols_ == other.cols_; }

  DenseMatrix& operator+=(const DenseMatrix& other)
  {
    check_shape(other);
    for (std::size_t i = 0; i < data_.size(); ++i)
      data_[i] += other.data_[i];
    return *this;
  }

  DenseMatrix& operator-=(const DenseMatrix& other)
  {
    check_shape(other);
    for (std::size_t i = 0; i < data_.size(); ++i)
      data_[i] -= other.data_[i];
    return *this;
  }

  DenseMatrix& operator*=(T scalar)
  {
    for (T& v : data_)
      v *= scalar;
    return *this;
  }

  bool operator==(const DenseMatrix& other) const
  {
    return rows_ == other.rows_ && cols_ == other.cols_ &&
        data_ == other.data_;
  }

 private:
  void check_shape(const DenseMatrix& other) const
  {
    if (!same_shape(other))
      throw std::invalid_argument("DenseMatrix: shape mismatch");
  }

  std::size_t rows_;
  std::size_t cols_;
  std::vector<T> data_;
};

template<typename T>
DenseMatrix<T> operator+(DenseMatrix<T> a, const DenseMatrix<T>& b)
{ return a += b; }

template<typename T>
DenseMatrix<T> operator-(DenseMatrix<T> a, const DenseMatrix<T>& b)
{ return a -= b; }

template<typename T>
DenseMatrix<T> operator*(T scalar, DenseMatrix<T> m)
{ return m *= scalar; }

template<typename T>
DenseMatrix<T> operator*(DenseMatrix<T> m, T scalar)
{ return m *= scalar; }

template<typename T>
DenseMatrix<T> operator-(const DenseMatrix<T>& m)
{
  DenseMatrix<T> out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.size(); ++i)
    out[i] = -m[i];
  return out;
}

// Elementwise product.
template<typename T>
DenseMatrix<T> hadamard(const DenseMatrix<T>& a, const DenseMatrix<T>& b)
{
  DenseMatrix<T> out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.size(); ++i)
    out[i] = a[i] * b[i];
  return out;
}

template<typename T>
DenseMatrix<T> square(const DenseMatrix<T>& m)
{ return hadamard(m, m); }

template<typename T>
DenseMatrix<T> sqrt_elem(const DenseMatrix<T>& m)
{
  DenseMatrix<T> out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.size(); ++i)
    out[i] = std::sqrt(m[i]);
  return out;
}

template<typename T>
DenseMatrix<T> abs_elem(const DenseMatrix<T>& m)
{
  DenseMatrix<T> out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.size(); ++i)
    out[i] = std::abs(m[i]);
  return out;
}

template<typename T>
T dot(const DenseMatrix<T>& a, const DenseMatrix<T>& b)
{
  T sum = T(0);
  for (std::size_t i = 0; i < a.size(); ++i)
    sum += a[i] * b[i];
  return sum;
}

// Euclidean norm.
template<typename T>
T norm(const DenseMatrix<T>& m)
{ return std::sqrt(dot(m, m)); }

// Max (infinity) norm.
template<typename T>
T inf_norm(const DenseMatrix<T>& m)
{
  T best = T(0);
  for (std::size_t i = 0; i < m.size(); ++i)
  {
    const T a = std::abs(m[i]);
    if (a > best)
      best = a;
  }
  return best;
}

// Matrix product a (r x k) * b (k x c).
template<typename T>
DenseMatrix<T> matmul(const DenseMatrix<T>& a, const DenseMatrix<T>& b)
{
  if (a.cols() != b.rows())
    throw std::invalid_argument("matmul: inner dimensions do not match");
  DenseMatrix<T> out(a.rows(), b.cols());
  for (std::size_t c = 0; c < b.cols(); ++c)
    for (std::size_t k = 0; k < a.cols(); ++k)
    {
      const T bv = b(k, c);
      for (std::size_t r = 0; r < a.rows(); ++r)
        out(r, c) += a(r, k) * bv;
    }
  return out;
}

template<typename T>
DenseMatrix<T> transpose(const DenseMatrix<T>& m)
{
  DenseMatrix<T> out(m.cols(), m.rows());
  for (std::size_t c = 0; c < m.cols(); ++c)
    for (std::size_t r = 0; r < m.rows(); ++r)
      out(c, r) = m(r, c);
  return out;
}

template<typename T>
bool all_finite(const DenseMatrix<T>& m)
{
  for (std::size_t i = 0; i < m.size(); ++i)
    if (!std::isfinite(static_cast<double>(m[i])))
      return false;
  return true;
}

using Mat = DenseMatrix<double>;
using FMat = DenseMatrix<float>;
using IMat = DenseMatrix<int>;

}  // namespace flexopt
