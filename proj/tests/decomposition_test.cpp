#include "support.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace detic;
using namespace detic::test;

namespace {

template <class F>
void decompose_random(const F& f, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> dim(1, 5);
  for (int t = 0; t < 300; ++t) {
    const auto n = dim(rng), m = dim(rng);
    const auto r = std::uniform_int_distribution<std::size_t>(0, std::min(n, m))(rng);
    auto h = oracle::random_with_rank(f, n, m, r, rng);
    auto dec = interference_decomposition(h);
    ASSERT_TRUE(decomposition_holds(h, dec)) << h.to_string();
    EXPECT_EQ(dec.rank, r);
    EXPECT_TRUE((h * dec.v_null()).is_zero());
    // W H V = [[D, 0], [0, 0]]
    auto t_ = dec.w * h * dec.v_basis;
    EXPECT_EQ(t_.block(0, 0, r, r), dec.d);
    EXPECT_TRUE(t_.block(r, 0, n - r, m).is_zero());
    EXPECT_TRUE(t_.block(0, r, n, m - r).is_zero());
  }
}

}  // namespace

TEST(Decomposition, InvariantsOverF2) { decompose_random(PrimeField(2), 11); }
TEST(Decomposition, InvariantsOverF3) { decompose_random(PrimeField(3), 12); }
TEST(Decomposition, InvariantsOverF7) { decompose_random(PrimeField(7), 13); }
TEST(Decomposition, InvariantsOverF257) { decompose_random(PrimeField(257), 14); }
TEST(Decomposition, InvariantsOverQ) { decompose_random(RationalField(), 15); }

TEST(Decomposition, ZeroAndFullRankExtremes) {
  const PrimeField f(5);
  auto zero = PM(f, 2, 3);
  auto dz = interference_decomposition(zero);
  EXPECT_EQ(dz.rank, 0U);
  EXPECT_TRUE(decomposition_holds(zero, dz));
  auto id = PM::identity(f, 3);
  auto di = interference_decomposition(id);
  EXPECT_EQ(di.rank, 3U);
  EXPECT_EQ(di.v_null().cols(), 0U);
}

TEST(Decomposition, SuppliedBasesForF7Channel) {
  const auto ch = f7_channel();
  const auto codec = f7_codec();
  EXPECT_TRUE(decomposition_holds(ch.h12(), codec.dec12));
  EXPECT_TRUE(decomposition_holds(ch.h21(), codec.dec21));
  EXPECT_EQ(codec.dec12.rank, 2U);
  EXPECT_EQ(codec.dec21.rank, 2U);
  // receiver transform is U^T
  EXPECT_EQ(codec.dec12.w, PM::from_ints(PrimeField(7), {{1, 1}, {0, 1}}));
}

TEST(Decomposition, SuppliedBasesMustDiagonalize) {
  const PrimeField f(7);
  auto h = PM::from_ints(f, {{1, 0}, {0, 0}});
  EXPECT_THROW(decomposition_from_bases(h, PM::identity(f, 2), PM::from_ints(f, {{1, 1}, {0, 1}})), linalg_error);
  EXPECT_THROW(decomposition_from_bases(h, PM::from_ints(f, {{1, 2}, {2, 4}}), PM::identity(f, 2)), linalg_error);
  EXPECT_NO_THROW(decomposition_from_bases(h, PM::identity(f, 2), PM::identity(f, 2)));
}

TEST(Decomposition, TransposeVariantFailsOnSelfOrthogonalColumn) {
  // Over F2 the column (1,1) is orthogonal to itself, so R(H) = N(H^T).
  const PrimeField f(2);
  auto h = PM::from_ints(f, {{1}, {1}});
  EXPECT_THROW(transpose_decomposition(h), linalg_error);
  EXPECT_TRUE(decomposition_holds(h, interference_decomposition(h)));
}

TEST(Decomposition, TransposeVariantAgreesWhenDefined) {
  const RationalField q;
  std::mt19937_64 rng(4);
  for (int t = 0; t < 100; ++t) {
    auto h = QM::random(q, 3, 4, rng);
    auto a = decompose(h, DecompositionVariant::transpose);
    auto b = decompose(h, DecompositionVariant::dual_basis);
    EXPECT_TRUE(decomposition_holds(h, a));
    EXPECT_EQ(a.rank, b.rank);
  }
}
