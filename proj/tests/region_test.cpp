#include "support.hpp"

#include <gtest/gtest.h>

using namespace detic;
using namespace detic::test;

namespace {

std::vector<RatePair> pts(std::initializer_list<std::pair<std::int64_t, std::int64_t>> xs) {
  std::vector<RatePair> out;
  for (auto [a, b] : xs) out.push_back({Rate(a), Rate(b)});
  return out;
}

}  // namespace

TEST(Region, VerticesCounterclockwiseFromOrigin) {
  auto reg = region_of({{1, 0, 2}, {1, 1, 3}, {2, 1, 4}});
  EXPECT_EQ(region_vertices(reg), pts({{0, 0}, {2, 0}, {1, 2}, {0, 3}}));
}

TEST(Region, FractionalVertex) {
  auto reg = region_of({{2, 1, 3}, {1, 2, 3}});
  auto v = region_vertices(reg);
  ASSERT_EQ(v.size(), 4U);
  EXPECT_EQ(v[2], (RatePair{Rate(1), Rate(1)}));
  auto reg2 = region_of({{2, 1, 2}, {1, 2, 2}});
  EXPECT_EQ(region_vertices(reg2)[2], (RatePair{Rate(2, 3), Rate(2, 3)}));
}

TEST(Region, ContainsIsInclusiveAndQuadrantBound) {
  auto reg = region_of({{1, 0, 2}, {0, 1, 2}});
  EXPECT_TRUE(region_contains(reg, {Rate(2), Rate(2)}));
  EXPECT_FALSE(region_contains(reg, {Rate(5, 2), Rate(0)}));
  EXPECT_FALSE(region_contains(reg, {Rate(-1), Rate(0)}));
}

TEST(Region, UnboundedAndNegativeRejected) {
  EXPECT_THROW(region_vertices(region_of({{1, 0, 2}})), std::invalid_argument);
  EXPECT_THROW(RateRegion({{-1, 1, 2}}), std::invalid_argument);
}

TEST(Region, RedundancyRemovalKeepsSimpleBounds) {
  // R1 + R2 <= 3 is implied by the two box bounds here
  auto reg = remove_redundant(region_of({{1, 0, 1}, {0, 1, 1}, {1, 1, 3}, {2, 1, 5}}));
  EXPECT_EQ(reg.to_string(), "{R1 <= 1, R2 <= 1}");
  auto reg2 = remove_redundant(region_of({{1, 0, 2}, {0, 1, 3}, {1, 1, 3}, {2, 1, 4}, {1, 2, 6}}));
  EXPECT_EQ(reg2.to_string(), "{R1 <= 2, R1 + R2 <= 3, 2R1 + R2 <= 4}");
}

TEST(Region, FromVerticesRoundTrip) {
  auto reg = region_of({{1, 0, 2}, {1, 1, 3}, {2, 1, 4}});
  auto back = region_from_vertices(region_vertices(reg));
  EXPECT_TRUE(region_equal(reg, back));
  EXPECT_EQ(region_vertices(back), region_vertices(reg));
}

TEST(Region, DegenerateRegions) {
  auto point = region_of({{1, 0, 0}, {0, 1, 0}});
  EXPECT_EQ(region_vertices(point), pts({{0, 0}}));
  auto segment = region_of({{1, 0, 1}, {0, 1, 0}});
  EXPECT_EQ(region_vertices(segment), pts({{0, 0}, {1, 0}}));
  EXPECT_TRUE(region_equal(region_from_vertices(region_vertices(segment)), segment));
}

TEST(Region, HullOfUnionIsTimeSharing) {
  auto a = region_of({{1, 0, 2}, {0, 1, 0}});
  auto b = region_of({{1, 0, 0}, {0, 1, 2}});
  auto hull = convex_hull_union({a, b});
  EXPECT_TRUE(region_equal(hull, region_of({{1, 1, 2}})));
  EXPECT_TRUE(region_subset(a, hull));
  EXPECT_FALSE(region_subset(hull, a));
}

TEST(Region, JafarRegionShapes) {
  EXPECT_TRUE(region_equal(jafar_region(1, 1, 1, 1), region_of({{1, 1, 1}})));
  EXPECT_TRUE(region_equal(jafar_region(2, 2, 2, 2), region_of({{1, 0, 2}, {0, 1, 2}, {1, 1, 2}})));
  EXPECT_TRUE(region_equal(jafar_region(3, 1, 1, 3), region_of({{1, 1, 1}})));
  EXPECT_TRUE(region_equal(jafar_region(1, 1, 2, 2), region_of({{1, 0, 1}, {0, 1, 1}})));
  EXPECT_THROW(jafar_region(0, 1, 1, 1), std::invalid_argument);
}
