#pragma once

// Exact scalar fields: prime fields F_p (p < 2^61) and the rationals.

#include <boost/multiprecision/cpp_int.hpp>

#include <concepts>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

namespace detic {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

/// Runtime description of a field, used for I/O and reporting.
struct FieldSpec {
  enum class Kind { rational, prime };
  Kind kind = Kind::rational;
  std::uint64_t modulus = 0;  // only meaningful for Kind::prime

  static FieldSpec rational() { return {Kind::rational, 0}; }
  static FieldSpec prime(std::uint64_t p) { return {Kind::prime, p}; }

  bool is_prime() const { return kind == Kind::prime; }
  std::string to_string() const {
    return is_prime() ? "F" + std::to_string(modulus) : std::string("Q");
  }
  friend bool operator==(const FieldSpec&, const FieldSpec&) = default;
};

namespace detail {

inline std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  std::uint64_t result = 1 % m;
  base %= m;
  while (exp > 0) {
    if (exp & 1U) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1U;
  }
  return result;
}

}  // namespace detail

/// Deterministic Miller-Rabin; exact for every 64-bit input.
inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t small : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % small == 0) return n == small;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1U) == 0) {
    d >>= 1U;
    ++s;
  }
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    std::uint64_t x = detail::pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = detail::mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

/// The prime field F_p. Elements are residues in [0, p).
class PrimeField {
 public:
  using value_type = std::uint64_t;
  static constexpr std::uint64_t max_modulus = std::uint64_t{1} << 61;

  explicit PrimeField(std::uint64_t p) : p_(p) {
    if (p >= max_modulus) throw std::invalid_argument("prime modulus must be below 2^61");
    if (!is_prime(p)) throw std::invalid_argument("modulus " + std::to_string(p) + " is not prime");
  }

  std::uint64_t modulus() const { return p_; }
  FieldSpec spec() const { return FieldSpec::prime(p_); }

  value_type zero() const { return 0; }
  value_type one() const { return 1; }
  value_type from_int(std::int64_t v) const {
    const auto p = static_cast<std::int64_t>(p_);
    std::int64_t r = v % p;
    return static_cast<value_type>(r < 0 ? r + p : r);
  }

  value_type add(value_type a, value_type b) const {
    value_type s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  value_type sub(value_type a, value_type b) const { return a >= b ? a - b : a + p_ - b; }
  value_type neg(value_type a) const { return a == 0 ? 0 : p_ - a; }
  value_type mul(value_type a, value_type b) const { return detail::mul_mod(a, b, p_); }
  value_type inv(value_type a) const {
    if (a == 0) throw std::domain_error("division by zero in F_p");
    return detail::pow_mod(a, p_ - 2, p_);
  }
  value_type div(value_type a, value_type b) const { return mul(a, inv(b)); }
  bool is_zero(value_type a) const { return a == 0; }
  bool equal(value_type a, value_type b) const { return a == b; }

  template <class Rng>
  value_type random(Rng& rng) const {
    return std::uniform_int_distribution<value_type>(0, p_ - 1)(rng);
  }

  std::string to_string(value_type a) const { return std::to_string(a); }

  friend bool operator==(const PrimeField&, const PrimeField&) = default;

 private:
  std::uint64_t p_;
};

/// The rationals, with arbitrary-precision numerators and denominators.
class RationalField {
 public:
  using value_type = BigRational;

  FieldSpec spec() const { return FieldSpec::rational(); }

  value_type zero() const { return value_type(0); }
  value_type one() const { return value_type(1); }
  value_type from_int(std::int64_t v) const { return value_type(v); }

  value_type add(const value_type& a, const value_type& b) const { return a + b; }
  value_type sub(const value_type& a, const value_type& b) const { return a - b; }
  value_type neg(const value_type& a) const { return -a; }
  value_type mul(const value_type& a, const value_type& b) const { return a * b; }
  value_type inv(const value_type& a) const {
    if (a == 0) throw std::domain_error("division by zero in Q");
    return value_type(1) / a;
  }
  value_type div(const value_type& a, const value_type& b) const { return a * inv(b); }
  bool is_zero(const value_type& a) const { return a == 0; }
  bool equal(const value_type& a, const value_type& b) const { return a == b; }

  /// Small random rationals n/d with |n| <= 9, 1 <= d <= 4.
  template <class Rng>
  value_type random(Rng& rng) const {
    auto num = std::uniform_int_distribution<int>(-9, 9)(rng);
    auto den = std::uniform_int_distribution<int>(1, 4)(rng);
    return value_type(num) / den;
  }

  std::string to_string(const value_type& a) const {
    using boost::multiprecision::denominator;
    using boost::multiprecision::numerator;
    if (denominator(a) == 1) return numerator(a).str();
    return numerator(a).str() + "/" + denominator(a).str();
  }

  friend bool operator==(const RationalField&, const RationalField&) = default;
};

template <class F>
concept Field = requires(const F& f, const typename F::value_type& a, std::mt19937_64& rng) {
  typename F::value_type;
  { f.zero() } -> std::convertible_to<typename F::value_type>;
  { f.one() } -> std::convertible_to<typename F::value_type>;
  { f.from_int(std::int64_t{}) } -> std::convertible_to<typename F::value_type>;
  { f.add(a, a) } -> std::convertible_to<typename F::value_type>;
  { f.sub(a, a) } -> std::convertible_to<typename F::value_type>;
  { f.mul(a, a) } -> std::convertible_to<typename F::value_type>;
  { f.inv(a) } -> std::convertible_to<typename F::value_type>;
  { f.is_zero(a) } -> std::convertible_to<bool>;
  { f.random(rng) } -> std::convertible_to<typename F::value_type>;
  { f.spec() } -> std::same_as<FieldSpec>;
};

static_assert(Field<PrimeField>);
static_assert(Field<RationalField>);

}  // namespace detic
