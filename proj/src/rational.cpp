#include "gwb/rational.hpp"

#include <stdexcept>

namespace gwb {

Rational::Rational(Integer num, Integer den) {
  if (den.is_zero()) throw std::domain_error("rational with zero denominator");
  if (den.sign() < 0) {
    num = -num;
    den = -den;
  }
  Integer g = gcd(num, den);
  if (!g.is_one() && !g.is_zero()) {
    num = num / g;
    den = den / g;
  }
  if (num.is_zero()) den = 1;
  num_ = std::move(num);
  den_ = std::move(den);
}

Rational Rational::parse(std::string_view text) {
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(Integer::parse(text));
  return Rational(Integer::parse(text.substr(0, slash)), Integer::parse(text.substr(slash + 1)));
}

std::string Rational::to_string() const {
  if (is_integer()) return num_.to_string();
  return num_.to_string() + "/" + den_.to_string();
}

Rational operator+(const Rational& a, const Rational& b) {
  if (a.is_integer() && b.is_integer()) return Rational(a.num_ + b.num_);
  return Rational(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

Rational operator-(const Rational& a, const Rational& b) {
  if (a.is_integer() && b.is_integer()) return Rational(a.num_ - b.num_);
  return Rational(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
}

Rational operator*(const Rational& a, const Rational& b) {
  if (a.is_integer() && b.is_integer()) return Rational(a.num_ * b.num_);
  return Rational(a.num_ * b.num_, a.den_ * b.den_);
}

Rational operator/(const Rational& a, const Rational& b) {
  if (b.is_zero()) throw std::domain_error("rational division by zero");
  return Rational(a.num_ * b.den_, a.den_ * b.num_);
}

Rational Rational::operator-() const {
  Rational out = *this;
  out.num_ = -out.num_;
  return out;
}

}  // namespace gwb
