#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "gwb/rational.hpp"

namespace gwb {

/// One of the four supported principal ideal domains.
///
/// Elements are stored as `Rational`. Integers and prime-field residues
/// always have denominator 1 (residues live in [0, p)); elements of Z[1/n]
/// have denominators whose prime factors all divide n.
class Ring {
 public:
  enum class Kind { Integers, Rationals, PrimeField, LocalizedIntegers };

  static Ring integers() { return Ring(Kind::Integers, 0); }
  static Ring rationals() { return Ring(Kind::Rationals, 0); }
  static Ring prime_field(int64_t p);
  static Ring localized(int64_t n);

  /// Parses "Z", "Q", "Fp:p" and "Zinv:n".
  static Ring parse(std::string_view tag);
  std::string tag() const;

  Kind kind() const { return kind_; }
  int64_t parameter() const { return param_; }
  bool is_field() const { return kind_ == Kind::Rationals || kind_ == Kind::PrimeField; }
  /// Primes inverted in Z[1/n]; empty for the other rings.
  const std::vector<int64_t>& inverted_primes() const { return primes_; }

  bool contains(const Rational& x) const;
  /// Maps x into the ring (reduces residues mod p); throws NotInRing.
  Rational normalize(const Rational& x) const;
  Rational from_int(int64_t v) const { return normalize(Rational(v)); }

  Rational add(const Rational& a, const Rational& b) const;
  Rational sub(const Rational& a, const Rational& b) const;
  Rational mul(const Rational& a, const Rational& b) const;
  Rational neg(const Rational& a) const;

  bool is_unit(const Rational& a) const;
  /// Multiplicative inverse; throws NotInRing when `a` is not a unit.
  Rational inverse(const Rational& a) const;
  /// True iff a divides b (0 divides only 0).
  bool divides(const Rational& a, const Rational& b) const;
  /// b / a, defined when a divides b.
  Rational exact_quotient(const Rational& b, const Rational& a) const;

  /// Euclidean size: 0 for zero, otherwise a positive integer that
  /// strictly decreases along the remainders of `divmod`.
  Integer norm(const Rational& a) const;
  /// a = q*b + r with norm(r) < norm(b); b nonzero.
  void divmod(const Rational& a, const Rational& b, Rational& q, Rational& r) const;

  struct Bezout {
    Rational g, s, t;  // g = s*a + t*b, g the canonical gcd
  };
  Bezout gcdext(const Rational& a, const Rational& b) const;

  /// Canonical associate of `a` (nonnegative integer for Z, 1 for fields,
  /// the part of |num| coprime to n for Z[1/n]); `unit` receives u with
  /// a = u * associate.
  Rational associate(const Rational& a, Rational* unit = nullptr) const;

  /// Integer-level unit test used by the sparse elimination kernels.
  bool is_unit_integer(const Integer& v) const;
  /// Strips every inverted prime from |v| (Z[1/n] only; identity otherwise).
  Integer strip_inverted(const Integer& v) const;

  std::string to_string(const Rational& a) const { return a.to_string(); }

  friend bool operator==(const Ring& a, const Ring& b) {
    return a.kind_ == b.kind_ && a.param_ == b.param_;
  }

 private:
  Ring(Kind kind, int64_t param);

  Kind kind_;
  int64_t param_;
  std::vector<int64_t> primes_;
};

}  // namespace gwb
