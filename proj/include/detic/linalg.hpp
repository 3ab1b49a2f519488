#pragma once

// Exact linear algebra: echelon forms, kernels, bases, left inverses and
// subspace counting. Prime fields use ordinary modular Gauss-Jordan
// elimination; the rationals go through fraction-free (Bareiss) forward
// elimination over the integers before normalizing.

#include "detic/field.hpp"
#include "detic/matrix.hpp"

#include <cstddef>
#include <numeric>
#include <stdexcept>
#include <type_traits>
#include <utility>
#include <vector>

namespace detic {

/// Raised for contract violations of the linear-algebra routines
/// ("not a basis", "no left inverse", shape mismatches).
class linalg_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

template <Field F>
struct RrefResult {
  Matrix<F> rref;
  std::vector<std::size_t> pivot_cols;
  std::size_t rank = 0;
};

namespace detail {

template <Field F>
void back_substitute(Matrix<F>& m, const std::vector<std::size_t>& pivots) {
  const F& f = m.field();
  for (std::size_t r = 0; r < pivots.size(); ++r) {
    const std::size_t c = pivots[r];
    auto inv = f.inv(m(r, c));
    for (std::size_t j = c; j < m.cols(); ++j) m(r, j) = f.mul(m(r, j), inv);
    for (std::size_t i = 0; i < r; ++i) {
      auto factor = m(i, c);
      if (f.is_zero(factor)) continue;
      for (std::size_t j = c; j < m.cols(); ++j) m(i, j) = f.sub(m(i, j), f.mul(factor, m(r, j)));
    }
  }
}

template <Field F>
RrefResult<F> gauss_jordan(Matrix<F> m) {
  const F& f = m.field();
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && f.is_zero(m(p, c))) ++p;
    if (p == m.rows()) continue;
    if (p != r)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
    auto inv = f.inv(m(r, c));
    for (std::size_t j = c; j < m.cols(); ++j) m(r, j) = f.mul(m(r, j), inv);
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r) continue;
      auto factor = m(i, c);
      if (f.is_zero(factor)) continue;
      for (std::size_t j = c; j < m.cols(); ++j) m(i, j) = f.sub(m(i, j), f.mul(factor, m(r, j)));
    }
    pivots.push_back(c);
    ++r;
  }
  return {std::move(m), pivots, pivots.size()};
}

// Fraction-free forward elimination on an integer copy of each row, then
// rational normalization of the echelon form.
inline RrefResult<RationalField> bareiss_rref(const Matrix<RationalField>& in) {
  using boost::multiprecision::denominator;
  using boost::multiprecision::numerator;
  const std::size_t rows = in.rows();
  const std::size_t cols = in.cols();
  std::vector<BigInt> a(rows * cols);
  for (std::size_t i = 0; i < rows; ++i) {
    BigInt lcm = 1;
    for (std::size_t j = 0; j < cols; ++j) lcm = boost::multiprecision::lcm(lcm, BigInt(denominator(in(i, j))));
    for (std::size_t j = 0; j < cols; ++j) a[i * cols + j] = numerator(in(i, j)) * (lcm / denominator(in(i, j)));
  }
  auto at = [&](std::size_t i, std::size_t j) -> BigInt& { return a[i * cols + j]; };

  std::vector<std::size_t> pivots;
  BigInt prev = 1;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && at(p, c) == 0) ++p;
    if (p == rows) continue;
    if (p != r)
      for (std::size_t j = 0; j < cols; ++j) std::swap(at(p, j), at(r, j));
    for (std::size_t i = r + 1; i < rows; ++i) {
      for (std::size_t j = c + 1; j < cols; ++j) at(i, j) = (at(r, c) * at(i, j) - at(i, c) * at(r, j)) / prev;
      at(i, c) = 0;
    }
    prev = at(r, c);
    pivots.push_back(c);
    ++r;
  }

  Matrix<RationalField> m(in.field(), rows, cols);
  for (std::size_t i = 0; i < pivots.size(); ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = BigRational(at(i, j));
  back_substitute(m, pivots);
  return {std::move(m), pivots, pivots.size()};
}

}  // namespace detail

/// Reduced row echelon form, pivot columns and rank.
template <Field F>
RrefResult<F> rank_rref(const Matrix<F>& m) {
  if constexpr (std::is_same_v<F, RationalField>) {
    return detail::bareiss_rref(m);
  } else {
    return detail::gauss_jordan(m);
  }
}

template <Field F>
std::size_t rank(const Matrix<F>& m) {
  if (m.empty()) return 0;
  return rank_rref(m).rank;
}

/// Columns form a basis of the right kernel {x : M x = 0}.
template <Field F>
Matrix<F> null_space_basis(const Matrix<F>& m) {
  const F& f = m.field();
  auto [rref, pivots, r] = rank_rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : pivots) is_pivot[c] = true;
  Matrix<F> basis(f, m.cols(), m.cols() - r);
  std::size_t k = 0;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    basis(free, k) = f.one();
    for (std::size_t i = 0; i < r; ++i) basis(pivots[i], k) = f.neg(rref(i, free));
    ++k;
  }
  return basis;
}

/// The pivot columns of M.
template <Field F>
Matrix<F> column_space_basis(const Matrix<F>& m) {
  auto res = rank_rref(m);
  return m.select_cols(res.pivot_cols);
}

/// Indices of the lexicographically-first maximal independent set of rows.
template <Field F>
std::vector<std::size_t> pivot_rows(const Matrix<F>& m) {
  return rank_rref(m.transpose()).pivot_cols;
}

/// Columns completing the independent columns of B to a basis of the ambient
/// space, chosen greedily among e_0, e_1, ... in order.
template <Field F>
Matrix<F> extend_to_basis(const Matrix<F>& b) {
  const std::size_t n = b.rows();
  const std::size_t k = b.cols();
  auto res = rank_rref(hconcat(b, Matrix<F>::identity(b.field(), n)));
  if (res.rank < k || (k > 0 && res.pivot_cols[k - 1] != k - 1)) throw linalg_error("not a basis");
  std::vector<std::size_t> units;
  for (std::size_t i = k; i < res.pivot_cols.size(); ++i) units.push_back(res.pivot_cols[i] - k);
  return Matrix<F>::identity(b.field(), n).select_cols(units);
}

/// L with L * M = I, for M of full column rank.
template <Field F>
Matrix<F> left_inverse(const Matrix<F>& m) {
  auto rows = pivot_rows(m);
  if (rows.size() != m.cols()) throw linalg_error("no left inverse");
  const std::size_t n = m.cols();
  auto square = m.select_rows(rows);
  auto res = rank_rref(hconcat(square, Matrix<F>::identity(m.field(), n)));
  Matrix<F> out(m.field(), n, m.rows());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out(i, rows[j]) = res.rref(i, n + j);
  return out;
}

template <Field F>
Matrix<F> inverse(const Matrix<F>& m) {
  if (m.rows() != m.cols()) throw linalg_error("inverse of a non-square matrix");
  return left_inverse(m);
}

/// dim(span(A) ∩ span(B)) = rank A + rank B - rank [A B].
template <Field F>
std::size_t subspace_intersection_dim(const Matrix<F>& a, const Matrix<F>& b) {
  if (a.rows() != b.rows()) throw linalg_error("ambient dimension mismatch");
  return rank(a) + rank(b) - rank(hconcat(a, b));
}

/// Number of k-dimensional subspaces of F_q^l.
inline BigInt gaussian_binomial(unsigned l, unsigned k, std::uint64_t q) {
  if (k > l) throw std::invalid_argument("gaussian_binomial requires k <= l");
  BigInt num = 1;
  BigInt den = 1;
  for (unsigned i = 0; i < k; ++i) {
    num *= boost::multiprecision::pow(BigInt(q), l - i) - 1;
    den *= boost::multiprecision::pow(BigInt(q), k - i) - 1;
  }
  return num / den;
}

}  // namespace detic
