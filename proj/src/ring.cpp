#include "gwb/ring.hpp"

#include <charconv>

#include "gwb/errors.hpp"

namespace gwb {

namespace {

Integer mod_positive(const Integer& a, int64_t p) {
  Integer q, r;
  Integer::divmod_floor(a, Integer(p), q, r);
  return r;
}

int64_t parse_parameter(std::string_view text, std::string_view tag) {
  int64_t v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw UnsupportedRing("bad ring tag '" + std::string(tag) + "'");
  }
  return v;
}

}  // namespace

Ring::Ring(Kind kind, int64_t param) : kind_(kind), param_(param) {
  if (kind_ == Kind::LocalizedIntegers) primes_ = prime_divisors(param_);
}

Ring Ring::prime_field(int64_t p) {
  if (!is_prime(p)) throw UnsupportedRing("Fp requires a prime, got " + std::to_string(p));
  return Ring(Kind::PrimeField, p);
}

Ring Ring::localized(int64_t n) {
  if (n < 2) throw UnsupportedRing("Zinv requires n >= 2 (Zinv:1 would be Z), got " + std::to_string(n));
  return Ring(Kind::LocalizedIntegers, n);
}

Ring Ring::parse(std::string_view tag) {
  if (tag == "Z") return integers();
  if (tag == "Q") return rationals();
  if (tag.starts_with("Fp:")) return prime_field(parse_parameter(tag.substr(3), tag));
  if (tag.starts_with("Zinv:")) return localized(parse_parameter(tag.substr(5), tag));
  throw UnsupportedRing("unknown ring tag '" + std::string(tag) + "' (expected Z, Q, Fp:p or Zinv:n)");
}

std::string Ring::tag() const {
  switch (kind_) {
    case Kind::Integers: return "Z";
    case Kind::Rationals: return "Q";
    case Kind::PrimeField: return "Fp:" + std::to_string(param_);
    case Kind::LocalizedIntegers: return "Zinv:" + std::to_string(param_);
  }
  return "?";
}

Integer Ring::strip_inverted(const Integer& v) const {
  Integer m = v.abs();
  if (m.is_zero()) return m;
  for (int64_t p : primes_) {
    Integer q, r;
    for (;;) {
      Integer::divmod_trunc(m, Integer(p), q, r);
      if (!r.is_zero()) break;
      m = q;
    }
  }
  return m;
}

bool Ring::contains(const Rational& x) const {
  switch (kind_) {
    case Kind::Integers: return x.is_integer();
    case Kind::Rationals: return true;
    case Kind::PrimeField:
      return x.is_integer() && x.num().sign() >= 0 && x.num() < Integer(param_);
    case Kind::LocalizedIntegers: return strip_inverted(x.den()).is_one();
  }
  return false;
}

Rational Ring::normalize(const Rational& x) const {
  switch (kind_) {
    case Kind::Integers:
      if (!x.is_integer()) throw NotInRing(x.to_string() + " is not an integer");
      return x;
    case Kind::Rationals: return x;
    case Kind::PrimeField: {
      if (x.is_integer()) return Rational(mod_positive(x.num(), param_));
      Integer den = mod_positive(x.den(), param_);
      if (den.is_zero()) throw NotInRing(x.to_string() + " has denominator divisible by p");
      auto e = extended_gcd(den, Integer(param_));
      return Rational(mod_positive(x.num() * e.s, param_));
    }
    case Kind::LocalizedIntegers:
      if (!contains(x)) throw NotInRing(x.to_string() + " is not in " + tag());
      return x;
  }
  return x;
}

Rational Ring::add(const Rational& a, const Rational& b) const {
  if (kind_ == Kind::PrimeField) return Rational(mod_positive(a.num() + b.num(), param_));
  return a + b;
}

Rational Ring::sub(const Rational& a, const Rational& b) const {
  if (kind_ == Kind::PrimeField) return Rational(mod_positive(a.num() - b.num(), param_));
  return a - b;
}

Rational Ring::mul(const Rational& a, const Rational& b) const {
  if (kind_ == Kind::PrimeField) return Rational(mod_positive(a.num() * b.num(), param_));
  return a * b;
}

Rational Ring::neg(const Rational& a) const {
  if (kind_ == Kind::PrimeField) return Rational(mod_positive(-a.num(), param_));
  return -a;
}

bool Ring::is_unit(const Rational& a) const {
  if (a.is_zero()) return false;
  switch (kind_) {
    case Kind::Integers: return a.num().abs().is_one();
    case Kind::Rationals:
    case Kind::PrimeField: return true;
    case Kind::LocalizedIntegers: return strip_inverted(a.num()).is_one();
  }
  return false;
}

bool Ring::is_unit_integer(const Integer& v) const {
  if (v.is_zero()) return false;
  switch (kind_) {
    case Kind::Integers: return v.abs().is_one();
    case Kind::Rationals: return true;
    case Kind::PrimeField: return !mod_positive(v, param_).is_zero();
    case Kind::LocalizedIntegers: return strip_inverted(v).is_one();
  }
  return false;
}

Rational Ring::inverse(const Rational& a) const {
  if (!is_unit(a)) throw NotInRing(a.to_string() + " is not a unit in " + tag());
  if (kind_ == Kind::PrimeField) {
    auto e = extended_gcd(a.num(), Integer(param_));
    return Rational(mod_positive(e.s, param_));
  }
  return Rational(1) / a;
}

bool Ring::divides(const Rational& a, const Rational& b) const {
  if (a.is_zero()) return b.is_zero();
  switch (kind_) {
    case Kind::Integers: return (b.num() % a.num()).is_zero();
    case Kind::Rationals:
    case Kind::PrimeField: return true;
    case Kind::LocalizedIntegers: return (b.num() % strip_inverted(a.num())).is_zero();
  }
  return false;
}

Rational Ring::exact_quotient(const Rational& b, const Rational& a) const {
  if (!divides(a, b)) throw NotInRing(a.to_string() + " does not divide " + b.to_string());
  if (a.is_zero()) return Rational(0);
  if (kind_ == Kind::PrimeField) return mul(b, inverse(a));
  return b / a;
}

Integer Ring::norm(const Rational& a) const {
  if (a.is_zero()) return 0;
  switch (kind_) {
    case Kind::Integers: return a.num().abs();
    case Kind::Rationals:
    case Kind::PrimeField: return 1;
    case Kind::LocalizedIntegers: return strip_inverted(a.num());
  }
  return 0;
}

Rational Ring::associate(const Rational& a, Rational* unit) const {
  if (a.is_zero()) {
    if (unit) *unit = Rational(1);
    return Rational(0);
  }
  switch (kind_) {
    case Kind::Integers:
      if (unit) *unit = Rational(a.sign());
      return Rational(a.num().abs());
    case Kind::Rationals:
    case Kind::PrimeField:
      if (unit) *unit = a;
      return Rational(1);
    case Kind::LocalizedIntegers: {
      Integer m = strip_inverted(a.num());
      if (unit) *unit = a / Rational(m);
      return Rational(m);
    }
  }
  return a;
}

void Ring::divmod(const Rational& a, const Rational& b, Rational& q, Rational& r) const {
  if (b.is_zero()) throw std::domain_error("ring division by zero");
  switch (kind_) {
    case Kind::Integers: {
      Integer iq, ir;
      Integer::divmod_trunc(a.num(), b.num(), iq, ir);
      q = Rational(iq);
      r = Rational(ir);
      return;
    }
    case Kind::Rationals:
    case Kind::PrimeField:
      q = exact_quotient(a, b);
      r = Rational(0);
      return;
    case Kind::LocalizedIntegers: {
      if (a.is_zero()) {
        q = Rational(0);
        r = Rational(0);
        return;
      }
      Rational ua, ub;
      Rational ma = associate(a, &ua);
      Rational mb = associate(b, &ub);
      Integer iq, ir;
      Integer::divmod_trunc(ma.num(), mb.num(), iq, ir);
      q = ua * Rational(iq) / ub;
      r = ua * Rational(ir);
      return;
    }
  }
}

Ring::Bezout Ring::gcdext(const Rational& a, const Rational& b) const {
  switch (kind_) {
    case Kind::Integers: {
      auto e = extended_gcd(a.num(), b.num());
      return {Rational(e.g), Rational(e.s), Rational(e.t)};
    }
    case Kind::Rationals:
    case Kind::PrimeField:
      if (!a.is_zero()) return {Rational(1), inverse(a), Rational(0)};
      if (!b.is_zero()) return {Rational(1), Rational(0), inverse(b)};
      return {Rational(0), Rational(0), Rational(0)};
    case Kind::LocalizedIntegers: {
      Rational ua, ub;
      Rational ma = associate(a, &ua);
      Rational mb = associate(b, &ub);
      auto e = extended_gcd(ma.num(), mb.num());
      Rational s = a.is_zero() ? Rational(0) : Rational(e.s) / ua;
      Rational t = b.is_zero() ? Rational(0) : Rational(e.t) / ub;
      return {Rational(e.g), s, t};
    }
  }
  return {};
}

}  // namespace gwb
