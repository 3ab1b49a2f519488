#pragma once

// Dense row-major matrices over an exact field. Zero-row and zero-column
// matrices are ordinary values.

#include "detic/field.hpp"

#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace detic {

template <Field F>
class Matrix {
 public:
  using field_type = F;
  using value_type = typename F::value_type;

  Matrix(F field, std::size_t rows, std::size_t cols)
      : field_(std::move(field)), rows_(rows), cols_(cols), data_(rows * cols, field_.zero()) {}

  Matrix(F field, std::size_t rows, std::size_t cols, std::vector<value_type> data)
      : field_(std::move(field)), rows_(rows), cols_(cols), data_(std::move(data)) {
    if (data_.size() != rows_ * cols_) throw std::invalid_argument("matrix data size does not match shape");
  }

  /// Builds from integer rows, reducing every entry into the field.
  static Matrix from_ints(F field, std::initializer_list<std::initializer_list<std::int64_t>> rows) {
    std::size_t r = rows.size();
    std::size_t c = r == 0 ? 0 : rows.begin()->size();
    Matrix m(field, r, c);
    std::size_t i = 0;
    for (const auto& row : rows) {
      if (row.size() != c) throw std::invalid_argument("ragged matrix literal");
      std::size_t j = 0;
      for (auto v : row) m(i, j++) = m.field_.from_int(v);
      ++i;
    }
    return m;
  }

  static Matrix identity(F field, std::size_t n) {
    Matrix m(field, n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = m.field_.one();
    return m;
  }

  template <class Rng>
  static Matrix random(F field, std::size_t rows, std::size_t cols, Rng& rng) {
    Matrix m(field, rows, cols);
    for (auto& v : m.data_) v = m.field_.random(rng);
    return m;
  }

  const F& field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  value_type& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const value_type& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<const value_type> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }
  const std::vector<value_type>& data() const { return data_; }

  bool is_zero() const {
    for (const auto& v : data_)
      if (!field_.is_zero(v)) return false;
    return true;
  }

  Matrix transpose() const {
    Matrix t(field_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  /// Contiguous sub-block [r0, r0+nr) x [c0, c0+nc).
  Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    if (r0 + nr > rows_ || c0 + nc > cols_) throw std::out_of_range("block outside matrix");
    Matrix b(field_, nr, nc);
    for (std::size_t i = 0; i < nr; ++i)
      for (std::size_t j = 0; j < nc; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
    return b;
  }
  Matrix rows_range(std::size_t r0, std::size_t nr) const { return block(r0, 0, nr, cols_); }
  Matrix cols_range(std::size_t c0, std::size_t nc) const { return block(0, c0, rows_, nc); }

  Matrix select_rows(std::span<const std::size_t> idx) const {
    Matrix s(field_, idx.size(), cols_);
    for (std::size_t i = 0; i < idx.size(); ++i)
      for (std::size_t j = 0; j < cols_; ++j) s(i, j) = (*this)(idx[i], j);
    return s;
  }
  Matrix select_cols(std::span<const std::size_t> idx) const {
    Matrix s(field_, rows_, idx.size());
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < idx.size(); ++j) s(i, j) = (*this)(i, idx[j]);
    return s;
  }

  std::vector<value_type> apply(std::span<const value_type> x) const {
    if (x.size() != cols_) throw std::invalid_argument("vector length does not match matrix columns");
    std::vector<value_type> y(rows_, field_.zero());
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) y[i] = field_.add(y[i], field_.mul((*this)(i, j), x[j]));
    return y;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product shape mismatch");
    Matrix c(a.field_, a.rows_, b.cols_);
    const F& f = a.field_;
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const auto& aik = a(i, k);
        if (f.is_zero(aik)) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) = f.add(c(i, j), f.mul(aik, b(k, j)));
      }
    return c;
  }

  friend Matrix operator+(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("matrix sum shape mismatch");
    Matrix c = a;
    for (std::size_t k = 0; k < c.data_.size(); ++k) c.data_[k] = a.field_.add(a.data_[k], b.data_[k]);
    return c;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  std::string to_string() const {
    std::string s = "[";
    for (std::size_t i = 0; i < rows_; ++i) {
      s += i == 0 ? "[" : ", [";
      for (std::size_t j = 0; j < cols_; ++j) {
        if (j) s += ", ";
        s += field_.to_string((*this)(i, j));
      }
      s += "]";
    }
    return s + "]";
  }

 private:
  F field_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<value_type> data_;
};

/// [A B]
template <Field F>
Matrix<F> hconcat(const Matrix<F>& a, const Matrix<F>& b) {
  if (a.rows() != b.rows()) throw std::invalid_argument("hconcat row mismatch");
  Matrix<F> c(a.field(), a.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j);
    for (std::size_t j = 0; j < b.cols(); ++j) c(i, a.cols() + j) = b(i, j);
  }
  return c;
}

/// [A; B]
template <Field F>
Matrix<F> vconcat(const Matrix<F>& a, const Matrix<F>& b) {
  if (a.cols() != b.cols()) throw std::invalid_argument("vconcat column mismatch");
  Matrix<F> c(a.field(), a.rows() + b.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j);
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) c(a.rows() + i, j) = b(i, j);
  return c;
}

/// [[A, B], [C, D]] with conformable blocks.
template <Field F>
Matrix<F> block2x2(const Matrix<F>& a, const Matrix<F>& b, const Matrix<F>& c, const Matrix<F>& d) {
  return vconcat(hconcat(a, b), hconcat(c, d));
}

template <Field F>
Matrix<F> zeros(const F& field, std::size_t rows, std::size_t cols) {
  return Matrix<F>(field, rows, cols);
}

/// Block-diagonal matrix with the given blocks.
template <Field F>
Matrix<F> block_diag(const F& field, std::initializer_list<const Matrix<F>*> blocks) {
  std::size_t r = 0;
  std::size_t c = 0;
  for (const auto* b : blocks) {
    r += b->rows();
    c += b->cols();
  }
  Matrix<F> out(field, r, c);
  std::size_t r0 = 0;
  std::size_t c0 = 0;
  for (const auto* b : blocks) {
    for (std::size_t i = 0; i < b->rows(); ++i)
      for (std::size_t j = 0; j < b->cols(); ++j) out(r0 + i, c0 + j) = (*b)(i, j);
    r0 += b->rows();
    c0 += b->cols();
  }
  return out;
}

}  // namespace detic
