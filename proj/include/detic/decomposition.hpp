#pragma once

// Invertible row/column transforms that bring a cross-channel matrix H into
// the block form
//
//     W * H * V = [[D, 0],
//                  [0, 0]]
//
// with D invertible (r x r). Over the reals this is what an SVD provides; the
// default construction here uses a dual basis and works over every field.

#include "detic/linalg.hpp"

#include <cstddef>

namespace detic {

enum class DecompositionVariant {
  dual_basis,  // U from H * (row-space complement), W = U^{-1}; never fails
  transpose,   // U = [basis R(H), basis N(H^T)], W = U^T; fails on self-orthogonal degeneracy
};

template <Field F>
struct InterferenceDecomposition {
  std::size_t rank = 0;
  Matrix<F> u_basis;  // n x n; first `rank` columns span R(H)
  Matrix<F> w;        // n x n; inverse of u_basis, applied at the receiver
  Matrix<F> v_basis;  // m x m; last m - rank columns span N(H)
  Matrix<F> d;        // rank x rank, invertible

  std::size_t out_dim() const { return w.rows(); }
  std::size_t in_dim() const { return v_basis.rows(); }

  Matrix<F> u_range() const { return u_basis.cols_range(0, rank); }
  Matrix<F> u_complement() const { return u_basis.cols_range(rank, out_dim() - rank); }
  Matrix<F> w_top() const { return w.rows_range(0, rank); }
  Matrix<F> w_bot() const { return w.rows_range(rank, out_dim() - rank); }
  /// Columns completing the null space (the signalling directions seen through H).
  Matrix<F> v_range() const { return v_basis.cols_range(0, rank); }
  /// Basis of N(H): directions invisible through H.
  Matrix<F> v_null() const { return v_basis.cols_range(rank, in_dim() - rank); }
};

template <Field F>
InterferenceDecomposition<F> interference_decomposition(const Matrix<F>& h) {
  auto v_null = null_space_basis(h);
  auto v_rest = extend_to_basis(v_null);
  auto u_range = h * v_rest;
  auto u_rest = extend_to_basis(u_range);
  InterferenceDecomposition<F> dec{v_rest.cols(), hconcat(u_range, u_rest), Matrix<F>(h.field(), 0, 0),
                                   hconcat(v_rest, v_null), Matrix<F>(h.field(), 0, 0)};
  dec.w = inverse(dec.u_basis);
  dec.d = dec.w_top() * h * dec.v_range();
  return dec;
}

/// Builds a decomposition from caller-supplied bases, with the receiver
/// transform W = U^T. `u_cols` is [basis of R(H) | basis of N(H^T)] and
/// `v_cols` is [basis of R(H^T) | basis of N(H)].
template <Field F>
InterferenceDecomposition<F> decomposition_from_bases(const Matrix<F>& h, const Matrix<F>& u_cols,
                                                      const Matrix<F>& v_cols) {
  const std::size_t n = h.rows();
  const std::size_t m = h.cols();
  if (u_cols.rows() != n || u_cols.cols() != n || v_cols.rows() != m || v_cols.cols() != m)
    throw linalg_error("decomposition bases have the wrong shape");
  const std::size_t r = rank(h);
  auto w = u_cols.transpose();
  if (rank(w) != n) throw linalg_error("receiver transform U^T is singular");
  if (rank(v_cols) != m) throw linalg_error("transmitter basis V is singular");
  auto t = w * h * v_cols;
  auto d = t.block(0, 0, r, r);
  if (rank(d) != r) throw linalg_error("interference block D is singular");
  if (!t.block(0, r, n, m - r).is_zero() || !t.block(r, 0, n - r, r).is_zero())
    throw linalg_error("bases do not block-diagonalize H");
  return {r, inverse(w), std::move(w), v_cols, std::move(d)};
}

/// The transpose-based construction: U = [R(H) | N(H^T)], V = [R(H^T) | N(H)].
template <Field F>
InterferenceDecomposition<F> transpose_decomposition(const Matrix<F>& h) {
  auto ht = h.transpose();
  return decomposition_from_bases(h, hconcat(column_space_basis(h), null_space_basis(ht)),
                                  hconcat(column_space_basis(ht), null_space_basis(h)));
}

template <Field F>
InterferenceDecomposition<F> decompose(const Matrix<F>& h, DecompositionVariant variant) {
  return variant == DecompositionVariant::transpose ? transpose_decomposition(h) : interference_decomposition(h);
}

/// Checks every structural invariant of a decomposition of h.
template <Field F>
bool decomposition_holds(const Matrix<F>& h, const InterferenceDecomposition<F>& dec) {
  const std::size_t n = h.rows();
  const std::size_t m = h.cols();
  const std::size_t r = dec.rank;
  if (r != rank(h) || dec.w.rows() != n || dec.w.cols() != n || dec.v_basis.rows() != m || dec.v_basis.cols() != m)
    return false;
  if (!(dec.w * dec.u_basis == Matrix<F>::identity(h.field(), n))) return false;
  if (rank(dec.v_basis) != m || rank(dec.d) != r) return false;
  auto t = dec.w * h * dec.v_basis;
  auto expected = block2x2(dec.d, zeros(h.field(), r, m - r), zeros(h.field(), n - r, r), zeros(h.field(), n - r, m - r));
  if (!(t == expected)) return false;
  if (!(h * dec.v_null()).is_zero() || !(dec.w_bot() * h).is_zero()) return false;
  return rank(hconcat(dec.u_range(), h)) == r;
}

}  // namespace detic
