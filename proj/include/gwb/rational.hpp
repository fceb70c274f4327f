#pragma once

#include <string>
#include <string_view>

#include "gwb/integer.hpp"

namespace gwb {

/// Exact rational number in lowest terms with positive denominator.
///
/// This is the storage type for every coefficient ring element; the ring
/// decides which rationals are legal and how arithmetic is reduced.
class Rational {
 public:
  Rational() = default;
  Rational(int64_t v) : num_(v) {}  // NOLINT(google-explicit-constructor)
  Rational(int v) : num_(v) {}      // NOLINT(google-explicit-constructor)
  Rational(Integer v) : num_(std::move(v)) {}  // NOLINT(google-explicit-constructor)
  Rational(Integer num, Integer den);

  /// Accepts "7", "-3", "1/2", "-5/6".
  static Rational parse(std::string_view text);

  const Integer& num() const { return num_; }
  const Integer& den() const { return den_; }
  bool is_integer() const { return den_.is_one(); }
  bool is_zero() const { return num_.is_zero(); }
  int sign() const { return num_.sign(); }

  std::string to_string() const;

  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend Rational operator/(const Rational& a, const Rational& b);
  Rational operator-() const;
  Rational& operator+=(const Rational& b) { return *this = *this + b; }
  Rational& operator-=(const Rational& b) { return *this = *this - b; }
  Rational& operator*=(const Rational& b) { return *this = *this * b; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

 private:
  Integer num_;
  Integer den_ = 1;
};

}  // namespace gwb
