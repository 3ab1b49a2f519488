#pragma once

// Randomized verification campaigns built from the oracles. Shared by the
// `verify` command and the acceptance run.

#include "detic/netcode.hpp"
#include "detic/oracle.hpp"

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace detic::oracle {

/// The two closed forms of the region agree on reduced random channels.
template <Field F, class Rng>
SuiteReport region_forms_suite(const F& f, std::size_t trials, Rng& rng, std::size_t max_dim = 4) {
  SuiteReport rep;
  for (std::size_t t = 0; t < trials; ++t) {
    ++rep.instances;
    auto ch = reduce_channel(random_channel(f, max_dim, rng)).channel;
    auto a = capacity_region(ch, RegionForm::theorem);
    auto b = capacity_region(ch, RegionForm::reduced);
    if (!region_equal(a, b) || region_vertices(a) != region_vertices(b))
      rep.fail(a.to_string() + " vs " + b.to_string() + " for " + describe(ch));
  }
  return rep;
}

/// Rank a structured block reaches for generic entries: the size of a
/// maximum matching between its rows and the columns they may touch.
/// [[A, B], [C, 0]] with A n1 x m1, B n1 x m2, C n2 x m1.
inline std::size_t generic_cross_rank(std::size_t n1, std::size_t m1, std::size_t m2, std::size_t n2) {
  return std::min({n1 + n2, n1 + m1, m1 + m2});
}

/// Every block, concatenation and cross block at its generic rank.
template <Field F>
bool is_generic(const ChannelQuadruple<F>& ch) {
  const auto m1 = ch.m1(), m2 = ch.m2(), n1 = ch.n1(), n2 = ch.n2();
  return rank(ch.h11()) == std::min(n1, m1) && rank(ch.h12()) == std::min(n1, m2) &&
         rank(ch.h21()) == std::min(n2, m1) && rank(ch.h22()) == std::min(n2, m2) &&
         rank(hconcat(ch.h11(), ch.h12())) == std::min(n1, m1 + m2) &&
         rank(hconcat(ch.h21(), ch.h22())) == std::min(n2, m1 + m2) &&
         rank(vconcat(ch.h11(), ch.h21())) == std::min(n1 + n2, m1) &&
         rank(vconcat(ch.h12(), ch.h22())) == std::min(n1 + n2, m2) &&
         rank(cross_block_1(ch)) == generic_cross_rank(n1, m1, m2, n2) &&
         rank(cross_block_2(ch)) == generic_cross_rank(n2, m2, m1, n1);
}

struct JafarReport {
  SuiteReport suite;
  std::size_t shapes = 0;
  std::size_t redraws = 0;  // non-generic draws discarded
};

/// For every shape with 1 <= m_i, n_i <= max_dim: generic random channels
/// over F_q, reduced, have the MIMO degrees-of-freedom region of their
/// original antenna counts.
template <class Rng>
JafarReport jafar_suite(std::uint64_t q, std::size_t per_shape, Rng& rng, std::size_t max_dim = 4) {
  const PrimeField f(q);
  JafarReport rep;
  for (std::size_t m1 = 1; m1 <= max_dim; ++m1)
    for (std::size_t m2 = 1; m2 <= max_dim; ++m2)
      for (std::size_t n1 = 1; n1 <= max_dim; ++n1)
        for (std::size_t n2 = 1; n2 <= max_dim; ++n2) {
          ++rep.shapes;
          const auto expected = jafar_region(static_cast<std::int64_t>(m1), static_cast<std::int64_t>(m2),
                                             static_cast<std::int64_t>(n1), static_cast<std::int64_t>(n2));
          for (std::size_t t = 0; t < per_shape; ++t) {
            ++rep.suite.instances;
            auto draw = [&] {
              return ChannelQuadruple<PrimeField>(
                  Matrix<PrimeField>::random(f, n1, m1, rng), Matrix<PrimeField>::random(f, n1, m2, rng),
                  Matrix<PrimeField>::random(f, n2, m1, rng), Matrix<PrimeField>::random(f, n2, m2, rng));
            };
            auto ch = draw();
            while (!is_generic(ch)) {
              ++rep.redraws;
              ch = draw();
            }
            auto got = capacity_region(reduce_channel(ch).channel);
            if (!region_equal(got, expected))
              rep.suite.fail(got.to_string() + " vs " + expected.to_string() + " for " + describe(ch));
          }
        }
  return rep;
}

/// Constructive achievability over random reduced channels; one instance per
/// lattice point examined.
inline SuiteReport achievability_suite(std::uint64_t q, std::size_t channels, std::uint64_t seed,
                                       std::size_t max_dim = 4) {
  const PrimeField f(q);
  std::mt19937_64 rng(seed);
  SuiteReport rep;
  for (std::size_t c = 0; c < channels; ++c) {
    auto ch = reduce_channel(random_channel(f, max_dim, rng)).channel;
    auto sweep = achievability_sweep(ch, seed + c);
    for (const auto& pt : sweep.points) {
      ++rep.instances;
      if (!pt.pass)
        rep.fail("(" + std::to_string(pt.r1) + "," + std::to_string(pt.r2) + ") " + pt.detail + " for " +
                 describe(ch));
    }
  }
  return rep;
}

struct EntropyReport {
  SuiteReport suite;
  std::size_t pairs = 0;  // distinct (q, l)
  std::size_t tight = 0;  // instances meeting the bound with equality
};

/// `per_pair` random (A, B) for every q in `primes` and every l with
/// q^l <= limit.
template <class Rng>
EntropyReport entropy_suite(const std::vector<std::uint64_t>& primes, std::size_t per_pair, Rng& rng,
                            std::uint64_t limit = 1U << 16) {
  EntropyReport rep;
  for (auto q : primes) {
    const PrimeField f(q);
    std::uint64_t size = q;
    for (std::size_t l = 1; size <= limit; ++l, size *= q) {
      ++rep.pairs;
      std::uniform_int_distribution<std::size_t> rows(1, l + 1);
      for (std::size_t t = 0; t < per_pair; ++t) {
        ++rep.suite.instances;
        auto draw = [&] {
          const auto r = rows(rng);
          const auto k = std::uniform_int_distribution<std::size_t>(0, std::min(r, l))(rng);
          return random_with_rank(f, r, l, k, rng);
        };
        auto a = draw();
        auto b = draw();
        auto res = entropy_bound_check(a, b);
        if (!res.pass)
          rep.suite.fail("H=" + std::to_string(res.entropy) + " > " + std::to_string(res.bound) +
                         " for A=" + a.to_string() + " B=" + b.to_string());
        std::uint64_t scale = 1;
        for (std::int64_t i = 0; i < res.bound; ++i) scale *= q;
        if (res.joint_support == res.given_support * scale) ++rep.tight;
      }
    }
  }
  return rep;
}

/// Subspace counts against the Gaussian binomial for all l <= max_l.
inline SuiteReport subspace_suite(unsigned max_l, const std::vector<std::uint64_t>& qs) {
  SuiteReport rep;
  for (auto q : qs)
    for (unsigned l = 1; l <= max_l; ++l)
      for (const auto& c : subspace_count_check(l, q)) {
        ++rep.instances;
        if (BigInt(c.enumerated) != c.formula)
          rep.fail("[" + std::to_string(l) + " " + std::to_string(c.k) + "]_" + std::to_string(q) + ": enumerated " +
                   std::to_string(c.enumerated) + ", formula " + c.formula.str());
      }
  return rep;
}

/// Default instance for the concatenation experiment: three 3 x 2 blocks of
/// rank 2, one column drawn through each. All seven conditions are tight or
/// nearly so, so failures are frequent enough to measure.
inline ConcatSpec default_concat_spec() { return {3, {2, 2, 2}, {2, 2, 2}, {1, 1, 1}}; }

inline std::vector<TrialReport> concat_suite(const ConcatSpec& spec, const std::vector<std::uint64_t>& qs,
                                             std::size_t trials, std::uint64_t seed) {
  std::vector<TrialReport> out;
  for (std::size_t i = 0; i < qs.size(); ++i) {
    std::mt19937_64 rng(seed + i);
    out.push_back(concat_rank_trial(spec, qs[i], trials, rng));
  }
  return out;
}

/// Least-squares K for failure ~ K / q through the origin.
inline double fit_inverse_q(const std::vector<TrialReport>& reps) {
  double num = 0, den = 0;
  for (const auto& r : reps) {
    const double x = 1.0 / static_cast<double>(r.field.modulus);
    num += x * r.failure_rate();
    den += x * x;
  }
  return den > 0 ? num / den : 0;
}

struct NetworkReport {
  std::size_t instances = 0;
  std::size_t table1_violations = 0;
  std::size_t containment_violations = 0;
  std::size_t budget_failures = 0;
  std::size_t strict_both = 0;  // proposed region strictly larger than both hulls
  std::vector<std::string> failures;
};

/// Random DAGs: each verified realization must reproduce every min-cut as a
/// rank (recomputed with the independent rank routine) and contain both
/// baseline hulls.
inline NetworkReport network_suite(std::size_t count, std::uint64_t q, std::uint64_t seed, std::size_t max_nodes = 12,
                                   std::size_t max_edges = 24) {
  std::mt19937_64 rng(seed);
  NetworkReport rep;
  auto note = [&](std::string s) {
    if (rep.failures.size() < 8) rep.failures.push_back(std::move(s));
  };
  for (std::size_t i = 0; i < count; ++i) {
    ++rep.instances;
    auto net = random_network(rng, max_nodes, max_edges);
    try {
      auto real = rlnc_transfer(net, FieldSpec::prime(q), seed * 1000003 + i);
      const auto& ch = real.channel;
      const auto& k = real.cuts;
      auto r = [](const Matrix<PrimeField>& m) { return static_cast<std::int64_t>(independent_rank(m)); };
      const bool table1 = r(ch.h11()) == k.k11 && r(ch.h12()) == k.k21 && r(ch.h21()) == k.k12 &&
                          r(ch.h22()) == k.k22 && r(hconcat(ch.h11(), ch.h12())) == k.k12_1 &&
                          r(hconcat(ch.h21(), ch.h22())) == k.k12_2 && r(vconcat(ch.h11(), ch.h21())) == k.k1_12 &&
                          r(vconcat(ch.h12(), ch.h22())) == k.k2_12 &&
                          static_cast<std::int64_t>(ch.n1()) == k.k12_1 &&
                          static_cast<std::int64_t>(ch.n2()) == k.k12_2 &&
                          static_cast<std::int64_t>(ch.m1()) == k.k1_12 && static_cast<std::int64_t>(ch.m2()) == k.k2_12;
      if (!table1) {
        ++rep.table1_violations;
        note("table-1 mismatch on " + network_to_json(net));
      }
      try {
        auto c = containment_check(real);
        if (c.strict123 && c.strict45) ++rep.strict_both;
      } catch (const verification_error& e) {
        ++rep.containment_violations;
        note(std::string(e.what()) + " on " + network_to_json(net));
      }
    } catch (const budget_exhausted& e) {
      ++rep.budget_failures;
      note(std::string(e.what()) + " on " + network_to_json(net));
    }
  }
  return rep;
}

}  // namespace detic::oracle
