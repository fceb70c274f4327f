#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace gwb {

using BigInt = boost::multiprecision::cpp_int;

/// Arbitrary-precision integer with an inline int64 fast path.
///
/// Values that fit in int64 are stored inline; anything larger lives in a
/// shared immutable BigInt. Every operation checks for overflow and promotes
/// transparently, and results that fit are demoted again, so equal values
/// always have the same representation.
class Integer {
 public:
  Integer() = default;
  Integer(int64_t v) : small_(v) {}  // NOLINT(google-explicit-constructor)
  Integer(int v) : small_(v) {}      // NOLINT(google-explicit-constructor)
  explicit Integer(const BigInt& v);

  static Integer parse(std::string_view text);

  bool is_small() const { return !big_; }
  int64_t small_value() const { return small_; }
  BigInt to_big() const;

  bool is_zero() const { return !big_ && small_ == 0; }
  bool is_one() const { return !big_ && small_ == 1; }
  int sign() const;
  Integer abs() const;

  /// Truncating division and remainder (C++ semantics). Divisor must be nonzero.
  static void divmod_trunc(const Integer& a, const Integer& b, Integer& q, Integer& r);
  /// Floor division: r has the sign of b (or is zero).
  static void divmod_floor(const Integer& a, const Integer& b, Integer& q, Integer& r);

  std::string to_string() const;

  friend Integer operator+(const Integer& a, const Integer& b);
  friend Integer operator-(const Integer& a, const Integer& b);
  friend Integer operator*(const Integer& a, const Integer& b);
  friend Integer operator/(const Integer& a, const Integer& b);  // truncating
  friend Integer operator%(const Integer& a, const Integer& b);  // truncating
  Integer operator-() const;

  Integer& operator+=(const Integer& b) { return *this = *this + b; }
  Integer& operator-=(const Integer& b) { return *this = *this - b; }
  Integer& operator*=(const Integer& b) { return *this = *this * b; }

  friend bool operator==(const Integer& a, const Integer& b);
  friend std::strong_ordering operator<=>(const Integer& a, const Integer& b);

 private:
  static Integer from_big(BigInt v);

  int64_t small_ = 0;
  std::shared_ptr<const BigInt> big_;
};

/// Nonnegative gcd; gcd(0, 0) = 0.
Integer gcd(const Integer& a, const Integer& b);

/// Extended gcd: g = s*a + t*b with g = gcd(a, b) >= 0.
struct ExtendedGcd {
  Integer g, s, t;
};
ExtendedGcd extended_gcd(const Integer& a, const Integer& b);

/// True iff n >= 2 is prime (trial division; intended for ring parameters).
bool is_prime(int64_t n);

/// Distinct prime divisors of n >= 1 in increasing order.
std::vector<int64_t> prime_divisors(int64_t n);

}  // namespace gwb
