#pragma once

// Brute-force and statistical checks of the rank and entropy facts the
// region rests on. Each check recomputes its quantity along a path that does
// not go through the routine it is checking.

#include "detic/ratesplit.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

namespace detic::oracle {

/// Rank by incremental basis insertion: each row is reduced against the
/// basis rows collected so far (keyed by leading column) and kept if nonzero.
/// Shares no code with the Gauss-Jordan / Bareiss routines.
template <Field F>
std::size_t independent_rank(const Matrix<F>& m) {
  const F& f = m.field();
  using V = typename F::value_type;
  std::map<std::size_t, std::vector<V>> basis;  // leading entry normalized to one
  for (std::size_t i = 0; i < m.rows(); ++i) {
    std::vector<V> v(m.row(i).begin(), m.row(i).end());
    for (std::size_t lead = 0; lead < v.size(); ++lead) {
      if (f.is_zero(v[lead])) continue;
      auto it = basis.find(lead);
      if (it == basis.end()) {
        const V inv = f.inv(v[lead]);
        for (auto& x : v) x = f.mul(x, inv);
        basis.emplace(lead, std::move(v));
        break;
      }
      const V factor = v[lead];
      for (std::size_t j = lead; j < v.size(); ++j) v[j] = f.sub(v[j], f.mul(factor, it->second[j]));
    }
  }
  return basis.size();
}

/// Uniform-factor product of exact rank r, redrawn until the rank is met.
template <Field F, class Rng>
Matrix<F> random_with_rank(const F& f, std::size_t rows, std::size_t cols, std::size_t r, Rng& rng) {
  if (r > std::min(rows, cols)) throw std::invalid_argument("rank exceeds the matrix shape");
  while (true) {
    auto m = Matrix<F>::random(f, rows, r, rng) * Matrix<F>::random(f, r, cols, rng);
    if (rank(m) == r) return m;
  }
}

/// Random channel with dimensions in [1, max_dim] and blocks of random
/// (often deficient) rank, so degenerate structure is exercised.
template <Field F, class Rng>
ChannelQuadruple<F> random_channel(const F& f, std::size_t max_dim, Rng& rng) {
  std::uniform_int_distribution<std::size_t> dim(1, max_dim);
  const auto m1 = dim(rng), m2 = dim(rng), n1 = dim(rng), n2 = dim(rng);
  auto block = [&](std::size_t r, std::size_t c) {
    auto k = std::uniform_int_distribution<std::size_t>(0, std::min(r, c))(rng);
    return random_with_rank(f, r, c, k, rng);
  };
  auto h11 = block(n1, m1);
  auto h12 = block(n1, m2);
  auto h21 = block(n2, m1);
  auto h22 = block(n2, m2);
  return ChannelQuadruple<F>(std::move(h11), std::move(h12), std::move(h21), std::move(h22));
}

struct SuiteReport {
  std::size_t instances = 0;
  std::size_t violations = 0;
  std::vector<std::string> failures;  // reproducible descriptions, capped

  void fail(std::string what) {
    ++violations;
    if (failures.size() < 8) failures.push_back(std::move(what));
  }
  bool ok() const { return violations == 0; }
};

template <Field F>
std::string describe(const ChannelQuadruple<F>& ch) {
  return "H11=" + ch.h11().to_string() + " H12=" + ch.h12().to_string() + " H21=" + ch.h21().to_string() +
         " H22=" + ch.h22().to_string() + " over " + ch.field().spec().to_string();
}

/// Block-rank identities for the two cross blocks, and both forms of the
/// product-rank identity rank(AB) = rank A - dim(N(B^T) ∩ R(A^T))
/// = rank B - dim(N(A) ∩ R(B)).
template <Field F, class Rng>
SuiteReport rank_identity_suite(const F& f, std::size_t trials, Rng& rng, std::size_t max_dim = 4) {
  SuiteReport rep;
  std::uniform_int_distribution<std::size_t> dim(1, max_dim);
  for (std::size_t t = 0; t < trials; ++t) {
    ++rep.instances;
    auto ch = random_channel(f, max_dim, rng);
    auto dec12 = interference_decomposition(ch.h12());
    auto dec21 = interference_decomposition(ch.h21());
    const auto r12 = independent_rank(ch.h12());
    const auto r21 = independent_rank(ch.h21());
    const auto lhs1 = independent_rank(cross_block_1(ch));
    const auto rhs1 = rank(leakage_1(ch, dec12, dec21)) + dec21.rank + dec12.rank;
    const auto lhs2 = independent_rank(cross_block_2(ch));
    const auto rhs2 = rank(leakage_2(ch, dec12, dec21)) + dec21.rank + dec12.rank;
    if (r12 != dec12.rank || r21 != dec21.rank || lhs1 != rhs1 || lhs2 != rhs2)
      rep.fail("block rank: " + std::to_string(lhs1) + " vs " + std::to_string(rhs1) + ", " + std::to_string(lhs2) +
               " vs " + std::to_string(rhs2) + " for " + describe(ch));

    const auto p = dim(rng), l = dim(rng), k = dim(rng);
    auto a = random_with_rank(f, p, l, std::uniform_int_distribution<std::size_t>(0, std::min(p, l))(rng), rng);
    auto b = random_with_rank(f, l, k, std::uniform_int_distribution<std::size_t>(0, std::min(l, k))(rng), rng);
    const auto lhs = independent_rank(a * b);
    const auto via_a = rank(a) - subspace_intersection_dim(null_space_basis(b.transpose()),
                                                           column_space_basis(a.transpose()));
    const auto via_b = rank(b) - subspace_intersection_dim(null_space_basis(a), column_space_basis(b));
    if (lhs != via_a || lhs != via_b)
      rep.fail("product rank: rank(AB)=" + std::to_string(lhs) + " forms " + std::to_string(via_a) + ", " +
               std::to_string(via_b) + " for A=" + a.to_string() + " B=" + b.to_string());
  }
  return rep;
}

struct SubspaceCount {
  unsigned l = 0;
  unsigned k = 0;
  std::uint64_t q = 0;
  std::uint64_t enumerated = 0;
  BigInt formula = 0;
};

/// Counts the k-dimensional subspaces of F_q^l for every k by enumerating
/// reduced echelon generator matrices and deduplicating by the full set of
/// vectors each one spans.
inline std::vector<SubspaceCount> subspace_count_check(unsigned l, std::uint64_t q) {
  if (l > 6 || q > 7) throw std::invalid_argument("subspace enumeration too large");
  const PrimeField f(q);
  auto encode = [&](const std::vector<std::uint64_t>& v) {
    std::uint64_t code = 0;
    for (auto x : v) code = code * q + x;
    return code;
  };
  std::vector<SubspaceCount> out;
  for (unsigned k = 0; k <= l; ++k) {
    std::set<std::vector<std::uint64_t>> seen;
    std::vector<unsigned> pivots(k);
    std::iota(pivots.begin(), pivots.end(), 0U);
    auto next_combination = [&]() {
      for (int i = static_cast<int>(k) - 1; i >= 0; --i) {
        if (pivots[i] < l - k + static_cast<unsigned>(i)) {
          ++pivots[i];
          for (unsigned j = i + 1; j < k; ++j) pivots[j] = pivots[j - 1] + 1;
          return true;
        }
      }
      return false;
    };
    do {
      std::vector<std::pair<unsigned, unsigned>> free;
      for (unsigned i = 0; i < k; ++i)
        for (unsigned j = pivots[i] + 1; j < l; ++j)
          if (std::find(pivots.begin(), pivots.end(), j) == pivots.end()) free.emplace_back(i, j);
      std::vector<std::uint64_t> digits(free.size(), 0);
      while (true) {
        std::vector<std::vector<std::uint64_t>> gen(k, std::vector<std::uint64_t>(l, 0));
        for (unsigned i = 0; i < k; ++i) gen[i][pivots[i]] = 1;
        for (std::size_t d = 0; d < free.size(); ++d) gen[free[d].first][free[d].second] = digits[d];
        std::vector<std::uint64_t> span;
        std::vector<std::uint64_t> coeff(k, 0);
        while (true) {
          std::vector<std::uint64_t> v(l, 0);
          for (unsigned i = 0; i < k; ++i)
            for (unsigned j = 0; j < l; ++j) v[j] = f.add(v[j], f.mul(coeff[i], gen[i][j]));
          span.push_back(encode(v));
          std::size_t pos = 0;
          while (pos < k && ++coeff[pos] == q) coeff[pos++] = 0;
          if (pos == k) break;
        }
        std::sort(span.begin(), span.end());
        span.erase(std::unique(span.begin(), span.end()), span.end());
        seen.insert(std::move(span));
        std::size_t pos = 0;
        while (pos < digits.size() && ++digits[pos] == q) digits[pos++] = 0;
        if (pos == digits.size()) break;
      }
    } while (k > 0 && next_combination());
    out.push_back({l, k, q, seen.size(), gaussian_binomial(l, k, q)});
  }
  return out;
}

struct EntropyCheck {
  double entropy = 0;          // H(Ax | Bx) in base-q units
  std::int64_t bound = 0;      // rank [A; B] - rank B
  std::uint64_t joint_support = 0;
  std::uint64_t given_support = 0;
  bool pass = false;
};

/// H(Ax | Bx) for x uniform on F_q^l (or weighted by `weights`, indexed by
/// the base-q code of x), by tabulating the joint distribution of (Ax, Bx)
/// over every input. For uniform x the comparison is exact:
/// joint_support <= given_support * q^bound.
inline EntropyCheck entropy_bound_check(const Matrix<PrimeField>& a, const Matrix<PrimeField>& b,
                                        const std::vector<std::uint64_t>* weights = nullptr) {
  if (a.cols() != b.cols()) throw std::invalid_argument("A and B must act on the same input space");
  const PrimeField& f = a.field();
  const std::uint64_t q = f.modulus();
  const std::size_t l = a.cols();
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < l; ++i) {
    total *= q;
    if (total > (1U << 16)) throw std::invalid_argument("enumeration too large (q^l > 2^16)");
  }
  if (weights && weights->size() != total) throw std::invalid_argument("weight table has the wrong size");

  // Odometer over x; Ax and Bx are updated by one column per digit change.
  std::vector<std::uint64_t> x(l, 0), ax(a.rows(), 0), bx(b.rows(), 0);
  auto code = [&](const std::vector<std::uint64_t>& v) {
    std::uint64_t c = 0;
    for (auto e : v) c = c * q + e;
    return c;
  };
  std::unordered_map<std::uint64_t, std::uint64_t> joint;
  std::unordered_map<std::uint64_t, std::uint64_t> given;
  std::uint64_t bspace = 1;
  for (std::size_t i = 0; i < b.rows(); ++i) bspace *= q;
  std::uint64_t mass = 0;
  for (std::uint64_t step = 0; step < total; ++step) {
    std::uint64_t xcode = code(x);
    std::uint64_t w = weights ? (*weights)[xcode] : 1;
    if (w) {
      auto cb = code(bx);
      joint[code(ax) * bspace + cb] += w;
      given[cb] += w;
      mass += w;
    }
    // Incrementing a digit mod q, wrap included, adds one copy of its column.
    for (std::size_t j = l; j-- > 0;) {
      for (std::size_t i = 0; i < a.rows(); ++i) ax[i] = f.add(ax[i], a(i, j));
      for (std::size_t i = 0; i < b.rows(); ++i) bx[i] = f.add(bx[i], b(i, j));
      const bool wrap = x[j] == q - 1;
      x[j] = wrap ? 0 : x[j] + 1;
      if (!wrap) break;
    }
  }

  EntropyCheck out;
  out.bound = static_cast<std::int64_t>(rank(vconcat(a, b))) - static_cast<std::int64_t>(rank(b));
  out.joint_support = joint.size();
  out.given_support = given.size();
  const long double log_q = std::log(static_cast<long double>(q));
  long double h = 0;
  for (const auto& [key, c] : joint) {
    const auto cz = given.at(key % bspace);
    h += static_cast<long double>(c) * std::log(static_cast<long double>(cz) / static_cast<long double>(c));
  }
  h /= static_cast<long double>(mass) * log_q;
  out.entropy = static_cast<double>(h);
  bool exact_ok = true;
  if (!weights) {
    BigInt rhs = BigInt(out.given_support) * boost::multiprecision::pow(BigInt(q), static_cast<unsigned>(out.bound));
    exact_ok = BigInt(out.joint_support) <= rhs;
  }
  out.pass = exact_ok && h <= static_cast<long double>(out.bound) + 1e-9L;
  return out;
}

/// 95% Wilson score interval for a binomial proportion.
struct Interval {
  double lo = 0;
  double hi = 1;
};

inline Interval wilson_interval(std::size_t successes, std::size_t trials, double z = 1.959963984540054) {
  if (trials == 0) return {};
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  const double denom = 1 + z * z / n;
  const double centre = (p + z * z / (2 * n)) / denom;
  const double half = z * std::sqrt(p * (1 - p) / n + z * z / (4 * n * n)) / denom;
  return {std::max(0.0, centre - half), std::min(1.0, centre + half)};
}

/// Shapes and target counts for the triple-concatenation experiment:
/// A_i is p x l_i of rank rank_i, E_i is l_i x k_i.
struct ConcatSpec {
  std::size_t p = 0;
  std::array<std::size_t, 3> l{};
  std::array<std::size_t, 3> ranks{};
  std::array<std::size_t, 3> k{};
};

struct TrialReport {
  FieldSpec field;
  ConcatSpec spec;
  std::size_t trials = 0;
  std::size_t successes = 0;
  Interval success_ci;

  double success_rate() const { return trials ? static_cast<double>(successes) / static_cast<double>(trials) : 1.0; }
  double failure_rate() const { return 1.0 - success_rate(); }
  /// q * empirical failure rate: the constant K in failure ~ K / q.
  double fitted_k() const { return failure_rate() * static_cast<double>(field.modulus); }
};

/// Repeatedly draws A's with the prescribed ranks satisfying all seven
/// sufficient conditions, then fresh uniform E's, and counts how often
/// [A1 E1 | A2 E2 | A3 E3] has full column rank k1 + k2 + k3.
template <class Rng>
TrialReport concat_rank_trial(const ConcatSpec& spec, std::uint64_t q, std::size_t trials, Rng& rng) {
  const PrimeField f(q);
  for (std::size_t i = 0; i < 3; ++i)
    if (spec.ranks[i] > std::min(spec.p, spec.l[i]) || spec.k[i] > spec.ranks[i])
      throw std::invalid_argument("unsatisfiable rank prescription");
  if (spec.k[0] + spec.k[1] + spec.k[2] > spec.p) throw std::invalid_argument("unsatisfiable rank prescription");
  TrialReport rep{FieldSpec::prime(q), spec, trials, 0, {}};
  for (std::size_t t = 0; t < trials; ++t) {
    std::array<Matrix<PrimeField>, 3> a{Matrix<PrimeField>(f, 0, 0), Matrix<PrimeField>(f, 0, 0),
                                        Matrix<PrimeField>(f, 0, 0)};
    bool ready = false;
    for (int attempt = 0; attempt < 1000 && !ready; ++attempt) {
      for (std::size_t i = 0; i < 3; ++i) a[i] = random_with_rank(f, spec.p, spec.l[i], spec.ranks[i], rng);
      ReceiverBounds rb = receiver_bounds(a[0], a[1], a[2]);
      ready = rb.own_common == spec.ranks[0] && rb.own_private == spec.ranks[1] &&
              rb.other_common == spec.ranks[2] &&
              rb.admits(static_cast<std::int64_t>(spec.k[0]), static_cast<std::int64_t>(spec.k[1]),
                        static_cast<std::int64_t>(spec.k[2]));
    }
    if (!ready) throw std::invalid_argument("unsatisfiable rank prescription");
    Matrix<PrimeField> m(f, spec.p, 0);
    for (std::size_t i = 0; i < 3; ++i)
      m = hconcat(m, a[i] * Matrix<PrimeField>::random(f, spec.l[i], spec.k[i], rng));
    if (independent_rank(m) == m.cols()) ++rep.successes;
  }
  rep.success_ci = wilson_interval(rep.successes, trials);
  return rep;
}

struct SweepPoint {
  std::int64_t r1 = 0;
  std::int64_t r2 = 0;
  bool inside = false;
  bool pass = false;
  std::string detail;
};

struct SweepReport {
  std::vector<SweepPoint> points;
  std::size_t failures() const {
    return static_cast<std::size_t>(std::count_if(points.begin(), points.end(), [](const auto& p) { return !p.pass; }));
  }
};

/// Every integer point of [0, r11] x [0, r22]: points inside the region must
/// split, build a codec and survive `round_trips` random messages exactly;
/// points outside must have no feasible split.
template <Field F>
SweepReport achievability_sweep(const ChannelQuadruple<F>& ch, std::uint64_t seed, std::size_t round_trips = 10,
                                unsigned retry_budget = default_retry_budget) {
  const auto region = capacity_region(ch);
  const auto bounds = split_bounds(ch);
  const auto r11 = static_cast<std::int64_t>(rank(ch.h11()));
  const auto r22 = static_cast<std::int64_t>(rank(ch.h22()));
  std::mt19937_64 rng(seed);
  SweepReport rep;
  for (std::int64_t r1 = 0; r1 <= r11; ++r1)
    for (std::int64_t r2 = 0; r2 <= r22; ++r2) {
      SweepPoint pt{r1, r2, region_contains(region, {Rate(r1), Rate(r2)}), false, {}};
      auto split = find_split(bounds, r1, r2);
      if (!pt.inside) {
        pt.pass = !split.has_value();
        if (!pt.pass) pt.detail = "outside the region but a split was found";
      } else if (!split) {
        pt.detail = "inside the region but no split satisfies the decoding bounds";
      } else {
        try {
          auto codec = build_codec(ch, *split, seed + static_cast<std::uint64_t>(r1 * 1000 + r2), retry_budget);
          pt.pass = true;
          for (std::size_t t = 0; t < round_trips && pt.pass; ++t) {
            Symbols<F> d1(static_cast<std::size_t>(r1)), d2(static_cast<std::size_t>(r2));
            for (auto& v : d1) v = ch.field().random(rng);
            for (auto& v : d2) v = ch.field().random(rng);
            pt.pass = round_trip(ch, codec, d1, d2);
          }
          if (!pt.pass) pt.detail = "round trip did not recover the messages";
        } catch (const budget_exhausted& e) {
          pt.detail = e.what();
        }
      }
      rep.points.push_back(std::move(pt));
    }
  return rep;
}

}  // namespace detic::oracle
