#include "support.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace detic;
using namespace detic::test;

namespace {

RateRegion mirrored(const RateRegion& r) {
  std::vector<Inequality> out;
  for (const auto& q : r.inequalities()) out.push_back({q.a2, q.a1, q.b});
  return RateRegion(out);
}

template <class F, class Rng>
Matrix<F> random_invertible(const F& f, std::size_t n, Rng& rng) {
  while (true) {
    auto m = Matrix<F>::random(f, n, n, rng);
    if (rank(m) == n) return m;
  }
}

}  // namespace

TEST(Channel, F7RankProfile) {
  auto p = rank_profile(f7_channel());
  EXPECT_EQ(p.r11, 2U);
  EXPECT_EQ(p.r12, 2U);
  EXPECT_EQ(p.r21, 2U);
  EXPECT_EQ(p.r22, 3U);
  EXPECT_EQ(p.cross1, 4U);
  EXPECT_EQ(p.cross2, 4U);
  EXPECT_EQ(p.a, 0U);
  EXPECT_EQ(p.b, 0U);
}

TEST(Channel, F7RegionBothForms) {
  const auto ch = f7_channel();
  ASSERT_TRUE(is_reduced(ch));
  for (auto form : {RegionForm::theorem, RegionForm::reduced}) {
    auto reg = capacity_region(ch, form);
    EXPECT_EQ(reg.to_string(), "{R1 <= 2, R1 + R2 <= 3, 2R1 + R2 <= 4}");
  }
}

TEST(Channel, IdentityChannelIsABox) {
  const RationalField q;
  ChannelQuadruple<RationalField> ch(QM::identity(q, 2), QM(q, 2, 1), QM(q, 1, 2), QM::identity(q, 1));
  EXPECT_EQ(capacity_region(ch).to_string(), "{R1 <= 2, R2 <= 1}");
}

TEST(Channel, ReductionDropsDependentRowsAndColumns) {
  const PrimeField f(7);
  const auto ch = f7_channel();
  // duplicate an output row of receiver 1 and a column of transmitter 2
  auto h11 = vconcat(ch.h11(), ch.h11().rows_range(0, 1));
  auto h12 = vconcat(ch.h12(), ch.h12().rows_range(0, 1));
  h12 = hconcat(h12, h12.cols_range(0, 1));
  auto h22 = hconcat(ch.h22(), ch.h22().cols_range(0, 1));
  ChannelQuadruple<PrimeField> big(h11, h12, ch.h21(), h22);
  EXPECT_FALSE(is_reduced(big));
  EXPECT_THROW(capacity_region(big), std::invalid_argument);
  auto red = reduce_channel(big);
  EXPECT_TRUE(is_reduced(red.channel));
  EXPECT_EQ(red.channel.n1(), 2U);
  EXPECT_EQ(red.channel.m2(), 3U);
  EXPECT_TRUE(region_equal(capacity_region(red.channel), capacity_region(ch)));
}

TEST(Channel, SwapSymmetry) {
  std::mt19937_64 rng(21);
  for (const PrimeField f : {PrimeField(2), PrimeField(7)}) {
    for (int t = 0; t < 200; ++t) {
      auto ch = reduce_channel(oracle::random_channel(f, 4, rng)).channel;
      EXPECT_TRUE(region_equal(capacity_region(ch.swapped()), mirrored(capacity_region(ch))));
    }
  }
}

TEST(Channel, InvariantUnderInvertibleTransforms) {
  // H_ij -> P_i H_ij Q_j changes no rank the region depends on
  std::mt19937_64 rng(22);
  const PrimeField f(11);
  for (int t = 0; t < 200; ++t) {
    auto ch = reduce_channel(oracle::random_channel(f, 4, rng)).channel;
    auto p1 = random_invertible(f, ch.n1(), rng), p2 = random_invertible(f, ch.n2(), rng);
    auto q1 = random_invertible(f, ch.m1(), rng), q2 = random_invertible(f, ch.m2(), rng);
    ChannelQuadruple<PrimeField> moved(p1 * ch.h11() * q1, p1 * ch.h12() * q2, p2 * ch.h21() * q1,
                                       p2 * ch.h22() * q2);
    EXPECT_TRUE(region_equal(capacity_region(moved), capacity_region(ch)));
    EXPECT_EQ(capacity_region(moved).to_string(), capacity_region(ch).to_string());
  }
}

TEST(Channel, NoInterferenceGivesTheBox) {
  std::mt19937_64 rng(23);
  const PrimeField f(5);
  for (int t = 0; t < 50; ++t) {
    auto h11 = oracle::random_with_rank(f, 3, 3, 3, rng);
    auto h22 = oracle::random_with_rank(f, 2, 2, 2, rng);
    ChannelQuadruple<PrimeField> ch(h11, PM(f, 3, 2), PM(f, 2, 3), h22);
    EXPECT_TRUE(region_equal(capacity_region(ch), region_of({{1, 0, 3}, {0, 1, 2}})));
  }
}

TEST(Channel, ConstraintCountBeforeRemoval) {
  EXPECT_EQ(capacity_inequalities(f7_channel(), RegionForm::theorem).size(), 7U);
  EXPECT_EQ(capacity_inequalities(f7_channel(), RegionForm::reduced).size(), 7U);
}
