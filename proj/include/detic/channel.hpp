#pragma once

// The two-user MIMO linear deterministic interference channel
//
//     y1 = H11 x1 + H12 x2
//     y2 = H21 x1 + H22 x2
//
// and its capacity region, expressed through ranks of the four channel
// matrices and two block matrices.

#include "detic/decomposition.hpp"
#include "detic/region.hpp"

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace detic {

template <Field F>
class ChannelQuadruple {
 public:
  ChannelQuadruple(Matrix<F> h11, Matrix<F> h12, Matrix<F> h21, Matrix<F> h22)
      : h11_(std::move(h11)), h12_(std::move(h12)), h21_(std::move(h21)), h22_(std::move(h22)) {
    if (h11_.rows() != h12_.rows() || h21_.rows() != h22_.rows() || h11_.cols() != h21_.cols() ||
        h12_.cols() != h22_.cols())
      throw std::invalid_argument("channel matrices have inconsistent dimensions");
    if (!(h11_.field() == h12_.field() && h11_.field() == h21_.field() && h11_.field() == h22_.field()))
      throw std::invalid_argument("channel matrices are over different fields");
  }

  const F& field() const { return h11_.field(); }
  const Matrix<F>& h11() const { return h11_; }
  const Matrix<F>& h12() const { return h12_; }
  const Matrix<F>& h21() const { return h21_; }
  const Matrix<F>& h22() const { return h22_; }

  std::size_t m1() const { return h11_.cols(); }
  std::size_t m2() const { return h12_.cols(); }
  std::size_t n1() const { return h11_.rows(); }
  std::size_t n2() const { return h21_.rows(); }

  /// [H11 H12; H21 H22]
  Matrix<F> full() const { return block2x2(h11_, h12_, h21_, h22_); }

  /// The channel seen with the user indices exchanged.
  ChannelQuadruple swapped() const { return ChannelQuadruple(h22_, h21_, h12_, h11_); }

  friend bool operator==(const ChannelQuadruple&, const ChannelQuadruple&) = default;

 private:
  Matrix<F> h11_;
  Matrix<F> h12_;
  Matrix<F> h21_;
  Matrix<F> h22_;
};

/// [[H11, H12], [H21, 0]]
template <Field F>
Matrix<F> cross_block_1(const ChannelQuadruple<F>& ch) {
  return block2x2(ch.h11(), ch.h12(), ch.h21(), zeros(ch.field(), ch.n2(), ch.m2()));
}

/// [[H21, H22], [0, H12]]
template <Field F>
Matrix<F> cross_block_2(const ChannelQuadruple<F>& ch) {
  return block2x2(ch.h21(), ch.h22(), zeros(ch.field(), ch.n1(), ch.m1()), ch.h12());
}

/// Which outputs and inputs survived reduction, as indices into the original.
struct ReductionReport {
  std::vector<std::size_t> rows1;
  std::vector<std::size_t> rows2;
  std::vector<std::size_t> cols1;
  std::vector<std::size_t> cols2;
};

template <Field F>
struct ReducedChannel {
  ChannelQuadruple<F> channel;
  ReductionReport report;
};

template <Field F>
bool is_reduced(const ChannelQuadruple<F>& ch) {
  return rank(hconcat(ch.h11(), ch.h12())) == ch.n1() && rank(hconcat(ch.h21(), ch.h22())) == ch.n2() &&
         rank(vconcat(ch.h11(), ch.h21())) == ch.m1() && rank(vconcat(ch.h12(), ch.h22())) == ch.m2();
}

/// Discards received symbols that are combinations of the others at the same
/// receiver, then transmitted dimensions that are combinations of the same
/// transmitter's other dimensions. Every rank quantity of the region is
/// preserved.
template <Field F>
ReducedChannel<F> reduce_channel(const ChannelQuadruple<F>& ch) {
  ReductionReport rep;
  rep.rows1 = pivot_rows(hconcat(ch.h11(), ch.h12()));
  rep.rows2 = pivot_rows(hconcat(ch.h21(), ch.h22()));
  auto h11 = ch.h11().select_rows(rep.rows1);
  auto h12 = ch.h12().select_rows(rep.rows1);
  auto h21 = ch.h21().select_rows(rep.rows2);
  auto h22 = ch.h22().select_rows(rep.rows2);
  rep.cols1 = rank_rref(vconcat(h11, h21)).pivot_cols;
  rep.cols2 = rank_rref(vconcat(h12, h22)).pivot_cols;
  ChannelQuadruple<F> out(h11.select_cols(rep.cols1), h12.select_cols(rep.cols2), h21.select_cols(rep.cols1),
                          h22.select_cols(rep.cols2));
  return {std::move(out), std::move(rep)};
}

struct RankProfile {
  std::size_t r11 = 0;
  std::size_t r12 = 0;
  std::size_t r21 = 0;
  std::size_t r22 = 0;
  std::size_t cross1 = 0;  // rank [[H11, H12], [H21, 0]]
  std::size_t cross2 = 0;  // rank [[H21, H22], [0, H12]]
  std::size_t a = 0;       // rank of receiver-1 leakage W_bot(H12) H11 Vnull(H21)
  std::size_t b = 0;       // rank of receiver-2 leakage W_bot(H21) H22 Vnull(H12)
  friend bool operator==(const RankProfile&, const RankProfile&) = default;
};

/// Receiver-1 leakage block: the part of H11 invisible both to the
/// interference from x2 and, on the input side, to receiver 2.
template <Field F>
Matrix<F> leakage_1(const ChannelQuadruple<F>& ch, const InterferenceDecomposition<F>& dec12,
                    const InterferenceDecomposition<F>& dec21) {
  return dec12.w_bot() * ch.h11() * dec21.v_null();
}

template <Field F>
Matrix<F> leakage_2(const ChannelQuadruple<F>& ch, const InterferenceDecomposition<F>& dec12,
                    const InterferenceDecomposition<F>& dec21) {
  return dec21.w_bot() * ch.h22() * dec12.v_null();
}

/// All rank quantities of the region. The block ranks are computed directly
/// and cross-checked against the decomposition form (cross = a + r21 + r12).
template <Field F>
RankProfile rank_profile(const ChannelQuadruple<F>& ch) {
  RankProfile p;
  p.r11 = rank(ch.h11());
  p.r12 = rank(ch.h12());
  p.r21 = rank(ch.h21());
  p.r22 = rank(ch.h22());
  p.cross1 = rank(cross_block_1(ch));
  p.cross2 = rank(cross_block_2(ch));
  auto dec12 = interference_decomposition(ch.h12());
  auto dec21 = interference_decomposition(ch.h21());
  p.a = rank(leakage_1(ch, dec12, dec21));
  p.b = rank(leakage_2(ch, dec12, dec21));
  if (p.cross1 != p.a + p.r21 + p.r12 || p.cross2 != p.b + p.r21 + p.r12)
    throw std::logic_error("block-rank identity violated: cross1=" + std::to_string(p.cross1) +
                           " cross2=" + std::to_string(p.cross2) + " a=" + std::to_string(p.a) +
                           " b=" + std::to_string(p.b));
  return p;
}

enum class RegionForm {
  theorem,  // block ranks of [[H11,H12],[H21,0]] and [[H21,H22],[0,H12]]
  reduced,  // decomposition leakage ranks a, b
};

/// The seven capacity constraints, in order, before redundancy removal.
template <Field F>
std::vector<Inequality> capacity_inequalities(const ChannelQuadruple<F>& ch, RegionForm form) {
  const auto n1 = static_cast<std::int64_t>(ch.n1());
  const auto n2 = static_cast<std::int64_t>(ch.n2());
  const auto m1 = static_cast<std::int64_t>(ch.m1());
  const auto m2 = static_cast<std::int64_t>(ch.m2());
  const auto r11 = static_cast<std::int64_t>(rank(ch.h11()));
  const auto r12 = static_cast<std::int64_t>(rank(ch.h12()));
  const auto r21 = static_cast<std::int64_t>(rank(ch.h21()));
  const auto r22 = static_cast<std::int64_t>(rank(ch.h22()));
  std::vector<Inequality> q = {
      {1, 0, r11},
      {0, 1, r22},
      {1, 1, n1 + m2 - r12},
      {1, 1, n2 + m1 - r21},
  };
  if (form == RegionForm::theorem) {
    const auto c1 = static_cast<std::int64_t>(rank(cross_block_1(ch)));
    const auto c2 = static_cast<std::int64_t>(rank(cross_block_2(ch)));
    q.push_back({1, 1, c1 + c2 - r21 - r12});
    q.push_back({2, 1, n1 + m1 + c2 - r21 - r12});
    q.push_back({1, 2, n2 + m2 + c1 - r21 - r12});
  } else {
    auto dec12 = interference_decomposition(ch.h12());
    auto dec21 = interference_decomposition(ch.h21());
    const auto a = static_cast<std::int64_t>(rank(leakage_1(ch, dec12, dec21)));
    const auto b = static_cast<std::int64_t>(rank(leakage_2(ch, dec12, dec21)));
    q.push_back({1, 1, a + b + r21 + r12});
    q.push_back({2, 1, n1 + m1 + b});
    q.push_back({1, 2, n2 + m2 + a});
  }
  return q;
}

/// Capacity region of a reduced channel, redundant constraints removed.
template <Field F>
RateRegion capacity_region(const ChannelQuadruple<F>& ch, RegionForm form = RegionForm::theorem) {
  if (!is_reduced(ch)) throw std::invalid_argument("capacity_region requires a reduced channel");
  return remove_redundant(RateRegion(capacity_inequalities(ch, form)));
}

}  // namespace detic
