#pragma once

// Achievability: common/private rate splitting with random spreading and
// zero-forcing precoders.
//
// Transmitter 1 writes x1 = V(H21) [E1c d1c; E1p d1p]. The first r21
// coordinates of V(H21) reach receiver 2, the remaining m1 - r21 span N(H21),
// so the private symbols d1p never interfere at receiver 2. Receiver 1 applies
// W(H12) and sees
//
//     y1' = M1 [d1c; d1p; d2c],  M1 = [A1 E1c | A2 E1p | [D12; 0] E2c]
//
// where [A1 A2] = W(H12) H11 V(H21). Decoding is a left inverse of M1.
// Everything for user 2 is mirrored.

#include "detic/channel.hpp"
#include "detic/errors.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace detic {

/// Right-hand sides of the seven sufficient full-column-rank conditions for
/// one receiver's decode matrix [A1 E1 | A2 E2 | A3 E3], where E1 carries the
/// own common symbols, E2 the own private symbols and E3 the other user's
/// common symbols.
struct ReceiverBounds {
  std::size_t own_common = 0;           // rank A1
  std::size_t own_private = 0;          // rank A2
  std::size_t other_common = 0;         // rank A3
  std::size_t own_total = 0;            // rank [A1 A2]
  std::size_t own_common_other = 0;     // rank [A1 A3]
  std::size_t own_private_other = 0;    // rank [A2 A3]
  std::size_t all = 0;                  // rank [A1 A2 A3]

  std::array<std::size_t, 7> as_array() const {
    return {own_common, own_private, other_common, own_total, own_common_other, own_private_other, all};
  }

  /// The seven conditions for own common k1, own private k2, other common k3.
  bool admits(std::int64_t k1, std::int64_t k2, std::int64_t k3) const {
    auto le = [](std::int64_t k, std::size_t bound) { return k <= static_cast<std::int64_t>(bound); };
    return le(k1, own_common) && le(k2, own_private) && le(k3, other_common) && le(k1 + k2, own_total) &&
           le(k1 + k3, own_common_other) && le(k2 + k3, own_private_other) && le(k1 + k2 + k3, all);
  }
};

template <Field F>
ReceiverBounds receiver_bounds(const Matrix<F>& a1, const Matrix<F>& a2, const Matrix<F>& a3) {
  ReceiverBounds rb;
  rb.own_common = rank(a1);
  rb.own_private = rank(a2);
  rb.other_common = rank(a3);
  rb.own_total = rank(hconcat(a1, a2));
  rb.own_common_other = rank(hconcat(a1, a3));
  rb.own_private_other = rank(hconcat(a2, a3));
  rb.all = rank(hconcat(hconcat(a1, a2), a3));
  return rb;
}

struct SplitBounds {
  ReceiverBounds rx1;  // unknowns (d1c, d1p, d2c)
  ReceiverBounds rx2;  // unknowns (d2c, d2p, d1c)
};

struct RateSplit {
  std::int64_t r1c = 0;
  std::int64_t r1p = 0;
  std::int64_t r2c = 0;
  std::int64_t r2p = 0;

  std::int64_t r1() const { return r1c + r1p; }
  std::int64_t r2() const { return r2c + r2p; }
  bool satisfies(const SplitBounds& b) const {
    return r1c >= 0 && r1p >= 0 && r2c >= 0 && r2p >= 0 && b.rx1.admits(r1c, r1p, r2c) && b.rx2.admits(r2c, r2p, r1c);
  }
  friend bool operator==(const RateSplit&, const RateSplit&) = default;
};

/// Receiver-side blocks (A1, A2, A3) for both receivers.
template <Field F>
struct ReceiverBlocks {
  Matrix<F> a1, a2, a3;
};

template <Field F>
ReceiverBlocks<F> receiver1_blocks(const ChannelQuadruple<F>& ch, const InterferenceDecomposition<F>& dec12,
                                   const InterferenceDecomposition<F>& dec21) {
  auto h11p = dec12.w * ch.h11() * dec21.v_basis;
  auto lambda = dec12.w * ch.h12() * dec12.v_basis;
  const auto r21 = dec21.rank;
  return {h11p.cols_range(0, r21), h11p.cols_range(r21, ch.m1() - r21), lambda.cols_range(0, dec12.rank)};
}

template <Field F>
ReceiverBlocks<F> receiver2_blocks(const ChannelQuadruple<F>& ch, const InterferenceDecomposition<F>& dec12,
                                   const InterferenceDecomposition<F>& dec21) {
  auto h22p = dec21.w * ch.h22() * dec12.v_basis;
  auto lambda = dec21.w * ch.h21() * dec21.v_basis;
  const auto r12 = dec12.rank;
  return {h22p.cols_range(0, r12), h22p.cols_range(r12, ch.m2() - r12), lambda.cols_range(0, dec21.rank)};
}

/// dec12 decomposes H12 (receiver 1 / transmitter 2), dec21 decomposes H21
/// (receiver 2 / transmitter 1).
template <Field F>
SplitBounds split_bounds(const ChannelQuadruple<F>& ch, const InterferenceDecomposition<F>& dec12,
                         const InterferenceDecomposition<F>& dec21) {
  auto b1 = receiver1_blocks(ch, dec12, dec21);
  auto b2 = receiver2_blocks(ch, dec12, dec21);
  return {receiver_bounds(b1.a1, b1.a2, b1.a3), receiver_bounds(b2.a1, b2.a2, b2.a3)};
}

template <Field F>
SplitBounds split_bounds(const ChannelQuadruple<F>& ch) {
  return split_bounds(ch, interference_decomposition(ch.h12()), interference_decomposition(ch.h21()));
}

/// Lexicographically smallest (R1c, R2c) split of an integer target, or
/// nullopt when none satisfies the fourteen conditions.
inline std::optional<RateSplit> find_split(const SplitBounds& bounds, std::int64_t r1, std::int64_t r2) {
  if (r1 < 0 || r2 < 0) return std::nullopt;
  for (std::int64_t c1 = 0; c1 <= r1; ++c1)
    for (std::int64_t c2 = 0; c2 <= r2; ++c2) {
      RateSplit s{c1, r1 - c1, c2, r2 - c2};
      if (s.satisfies(bounds)) return s;
    }
  return std::nullopt;
}

template <Field F>
struct SpreadingMatrices {
  Matrix<F> e1c;  // r21 x R1c
  Matrix<F> e1p;  // (m1 - r21) x R1p
  Matrix<F> e2c;  // r12 x R2c
  Matrix<F> e2p;  // (m2 - r12) x R2p
};

template <Field F>
struct Codec {
  RateSplit split;
  InterferenceDecomposition<F> dec12;
  InterferenceDecomposition<F> dec21;
  SpreadingMatrices<F> spread;
  Matrix<F> m1;  // n1 x (R1c + R1p + R2c)
  Matrix<F> m2;  // n2 x (R2c + R2p + R1c)
  Matrix<F> m1_left_inv;
  Matrix<F> m2_left_inv;
  std::uint64_t seed = 0;
  unsigned attempts = 1;
};

template <Field F>
std::pair<Matrix<F>, Matrix<F>> decode_matrices(const ChannelQuadruple<F>& ch, const InterferenceDecomposition<F>& dec12,
                                                const InterferenceDecomposition<F>& dec21,
                                                const SpreadingMatrices<F>& e) {
  auto b1 = receiver1_blocks(ch, dec12, dec21);
  auto b2 = receiver2_blocks(ch, dec12, dec21);
  auto m1 = hconcat(hconcat(b1.a1 * e.e1c, b1.a2 * e.e1p), b1.a3 * e.e2c);
  auto m2 = hconcat(hconcat(b2.a1 * e.e2c, b2.a2 * e.e2p), b2.a3 * e.e1c);
  return {std::move(m1), std::move(m2)};
}

/// Assembles a codec from explicit decompositions and spreading matrices.
/// Throws budget_exhausted if either decode matrix lacks full column rank.
template <Field F>
Codec<F> assemble_codec(const ChannelQuadruple<F>& ch, const RateSplit& split, InterferenceDecomposition<F> dec12,
                        InterferenceDecomposition<F> dec21, SpreadingMatrices<F> e) {
  auto shape_ok = [](const Matrix<F>& m, std::size_t r, std::int64_t c) {
    return m.rows() == r && static_cast<std::int64_t>(m.cols()) == c;
  };
  if (!shape_ok(e.e1c, dec21.rank, split.r1c) || !shape_ok(e.e1p, ch.m1() - dec21.rank, split.r1p) ||
      !shape_ok(e.e2c, dec12.rank, split.r2c) || !shape_ok(e.e2p, ch.m2() - dec12.rank, split.r2p))
    throw std::invalid_argument("spreading matrices do not match the split and channel ranks");
  auto [m1, m2] = decode_matrices(ch, dec12, dec21, e);
  const auto rank1 = rank(m1);
  const auto rank2 = rank(m2);
  if (rank1 != m1.cols() || rank2 != m2.cols())
    throw budget_exhausted("decode matrices are column-rank deficient: rank(M1)=" + std::to_string(rank1) + "/" +
                           std::to_string(m1.cols()) + ", rank(M2)=" + std::to_string(rank2) + "/" +
                           std::to_string(m2.cols()));
  auto l1 = left_inverse(m1);
  auto l2 = left_inverse(m2);
  return Codec<F>{split,          std::move(dec12), std::move(dec21), std::move(e), std::move(m1), std::move(m2),
                  std::move(l1),  std::move(l2),    0,                1};
}

inline constexpr unsigned default_retry_budget = 32;

/// Draws spreading matrices from a seeded generator, redrawing with a fresh
/// stream derived from (seed, attempt) until both decode matrices have full
/// column rank.
template <Field F>
Codec<F> build_codec(const ChannelQuadruple<F>& ch, const RateSplit& split, std::uint64_t seed,
                     unsigned retry_budget = default_retry_budget) {
  auto dec12 = interference_decomposition(ch.h12());
  auto dec21 = interference_decomposition(ch.h21());
  if (!split.satisfies(split_bounds(ch, dec12, dec21))) throw infeasible_rate("rate split violates the decoding bounds");
  std::string last_error;
  for (unsigned attempt = 0; attempt < retry_budget; ++attempt) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32U), attempt};
    std::mt19937_64 rng(seq);
    const F& f = ch.field();
    SpreadingMatrices<F> e{
        Matrix<F>::random(f, dec21.rank, static_cast<std::size_t>(split.r1c), rng),
        Matrix<F>::random(f, ch.m1() - dec21.rank, static_cast<std::size_t>(split.r1p), rng),
        Matrix<F>::random(f, dec12.rank, static_cast<std::size_t>(split.r2c), rng),
        Matrix<F>::random(f, ch.m2() - dec12.rank, static_cast<std::size_t>(split.r2p), rng),
    };
    try {
      auto codec = assemble_codec(ch, split, dec12, dec21, std::move(e));
      codec.seed = seed;
      codec.attempts = attempt + 1;
      return codec;
    } catch (const budget_exhausted& err) {
      last_error = err.what();
    }
  }
  throw budget_exhausted("no full-rank codec within " + std::to_string(retry_budget) + " draws; last: " + last_error);
}

template <Field F>
using Symbols = std::vector<typename F::value_type>;

template <Field F>
struct Transmission {
  Symbols<F> x1;
  Symbols<F> x2;
};

template <Field F>
struct Reception {
  Symbols<F> y1;
  Symbols<F> y2;
};

namespace detail {

template <class T>
std::vector<T> slice(const std::vector<T>& v, std::int64_t from, std::int64_t count) {
  return {v.begin() + from, v.begin() + from + count};
}

template <class T>
std::vector<T> concat(std::vector<T> a, const std::vector<T>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

}  // namespace detail

/// d1 = (d1c, d1p), d2 = (d2c, d2p).
template <Field F>
Transmission<F> encode(const Codec<F>& codec, const Symbols<F>& d1, const Symbols<F>& d2) {
  const auto& s = codec.split;
  if (static_cast<std::int64_t>(d1.size()) != s.r1() || static_cast<std::int64_t>(d2.size()) != s.r2())
    throw std::invalid_argument("message lengths do not match the rate split");
  const auto& e = codec.spread;
  auto x1p = detail::concat(e.e1c.apply(detail::slice(d1, 0, s.r1c)), e.e1p.apply(detail::slice(d1, s.r1c, s.r1p)));
  auto x2p = detail::concat(e.e2c.apply(detail::slice(d2, 0, s.r2c)), e.e2p.apply(detail::slice(d2, s.r2c, s.r2p)));
  return {codec.dec21.v_basis.apply(x1p), codec.dec12.v_basis.apply(x2p)};
}

template <Field F>
Reception<F> transmit(const ChannelQuadruple<F>& ch, const Symbols<F>& x1, const Symbols<F>& x2) {
  if (x1.size() != ch.m1() || x2.size() != ch.m2()) throw std::invalid_argument("input lengths do not match channel");
  const F& f = ch.field();
  auto add = [&](Symbols<F> a, const Symbols<F>& b) {
    for (std::size_t i = 0; i < a.size(); ++i) a[i] = f.add(a[i], b[i]);
    return a;
  };
  return {add(ch.h11().apply(x1), ch.h12().apply(x2)), add(ch.h21().apply(x1), ch.h22().apply(x2))};
}

template <Field F>
struct Decoded {
  Symbols<F> own_common;
  Symbols<F> own_private;
  Symbols<F> other_common;

  Symbols<F> own() const { return detail::concat(own_common, own_private); }
};

template <Field F>
Decoded<F> decode_t1(const Codec<F>& codec, const Symbols<F>& y1) {
  auto sol = codec.m1_left_inv.apply(codec.dec12.w.apply(y1));
  const auto& s = codec.split;
  return {detail::slice(sol, 0, s.r1c), detail::slice(sol, s.r1c, s.r1p), detail::slice(sol, s.r1c + s.r1p, s.r2c)};
}

template <Field F>
Decoded<F> decode_t2(const Codec<F>& codec, const Symbols<F>& y2) {
  auto sol = codec.m2_left_inv.apply(codec.dec21.w.apply(y2));
  const auto& s = codec.split;
  return {detail::slice(sol, 0, s.r2c), detail::slice(sol, s.r2c, s.r2p), detail::slice(sol, s.r2c + s.r2p, s.r1c)};
}

/// Encode, transmit and decode once; true iff both users recover their
/// messages and the decoded common symbols of the other user agree.
template <Field F>
bool round_trip(const ChannelQuadruple<F>& ch, const Codec<F>& codec, const Symbols<F>& d1, const Symbols<F>& d2) {
  auto tx = encode(codec, d1, d2);
  auto rx = transmit(ch, tx.x1, tx.x2);
  auto out1 = decode_t1(codec, rx.y1);
  auto out2 = decode_t2(codec, rx.y2);
  const auto& s = codec.split;
  return out1.own() == d1 && out2.own() == d2 && out1.other_common == detail::slice(d2, 0, s.r2c) &&
         out2.other_common == detail::slice(d1, 0, s.r1c);
}

}  // namespace detic
