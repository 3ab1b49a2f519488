#pragma once

#include "detic/detic.hpp"

#include <string>

namespace detic::test {

using PM = Matrix<PrimeField>;
using QM = Matrix<RationalField>;

inline std::string data_path(const std::string& name) { return std::string(DETIC_DATA_DIR) + "/" + name; }

/// The 2x2 / 3x3 channel over F7 used by the golden tests.
inline ChannelQuadruple<PrimeField> f7_channel() {
  const PrimeField f(7);
  return {PM::from_ints(f, {{2, 0}, {2, 3}}), PM::from_ints(f, {{2, 1, 0}, {2, 1, 1}}),
          PM::from_ints(f, {{1, 0}, {2, 3}, {2, 3}}), PM::from_ints(f, {{1, 0, 0}, {2, 1, 0}, {2, 1, 1}})};
}

/// Hand-picked bases and spreading matrices for the F7 channel at rate (1, 2).
inline Codec<PrimeField> f7_codec() {
  const PrimeField f(7);
  const auto ch = f7_channel();
  auto dec12 = decomposition_from_bases(ch.h12(), PM::from_ints(f, {{1, 0}, {1, 1}}),
                                        PM::from_ints(f, {{2, 2, 1}, {1, 1, 5}, {0, 1, 0}}));
  auto dec21 = decomposition_from_bases(ch.h21(), PM::from_ints(f, {{1, 0, 0}, {2, 3, 3}, {2, 3, 4}}),
                                        PM::from_ints(f, {{1, 2}, {0, 3}}));
  SpreadingMatrices<PrimeField> e{PM::from_ints(f, {{4}, {3}}), PM(f, 0, 0), PM::from_ints(f, {{2}, {3}}),
                                  PM::from_ints(f, {{3}})};
  return assemble_codec(ch, RateSplit{1, 0, 1, 1}, std::move(dec12), std::move(dec21), std::move(e));
}

inline RateRegion region_of(std::initializer_list<Inequality> q) { return RateRegion(std::vector<Inequality>(q)); }

}  // namespace detic::test
